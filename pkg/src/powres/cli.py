"""Command-line surface: one subcommand per operation, human or JSON output.

Exit codes are stable: 0 success, 1 domain error, 2 usage error (including
empty ranges), 3 scale-cap error.  JSON mode writes the data document to
stdout and keeps diagnostics on stderr, so pipelines never see mixed
streams.

Size caps can be overridden through the environment:

    POWRES_ENUM_CAP   subgroup enumeration cap (default 2**22)
    POWRES_BSGS_CAP   discrete-log modulus cap (default 2**40)
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (EmptyRange, InsufficientData, PowresError, ScaleLimit,
                     TrivialSubgroup)
from .expsums import (empirical_delta, expsum_profile,
                      orthogonality_decomposition)
from .modmath import build_prime_context
from .residues import (BSGS_CAP_DEFAULT, ENUM_CAP_DEFAULT, compute_k,
                       nth_root_solutions, principal_nth_root,
                       roots_of_unity_subgroup)
from .sweep import (SweepConfig, enumerate_cases, fit_exponent, run_case,
                    run_sweep, write_records)


def _enum_cap() -> int:
    return int(os.environ.get("POWRES_ENUM_CAP", ENUM_CAP_DEFAULT))


def _bsgs_cap() -> int:
    return int(os.environ.get("POWRES_BSGS_CAP", BSGS_CAP_DEFAULT))


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        for line in human_lines:
            print(line)


def cmd_compute(args) -> int:
    ctx = build_prime_context(args.p)
    result = compute_k(ctx, args.n, enum_cap=_enum_cap())
    if args.n == 1:
        sandwich = "skipped"
    else:
        sandwich = "pass" if result.sandwich_holds() else "fail"
    payload = {
        "p": result.p, "n": result.n, "k": result.k,
        "lower_num": result.lower.numerator,
        "lower_den": result.lower.denominator,
        "upper_num": result.upper_exclusive.numerator,
        "upper_den": result.upper_exclusive.denominator,
        "sandwich": sandwich,
    }
    lines = [
        f"k({result.p}, {result.n}) = {result.k}",
        f"bounds: {result.lower} <= k < {result.upper_exclusive}",
        "sandwich: SKIPPED (upper bound degenerates at n = 1)"
        if sandwich == "skipped" else f"sandwich: {sandwich.upper()}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_roots(args) -> int:
    ctx = build_prime_context(args.p)
    x0 = principal_nth_root(ctx, args.n, args.m, bsgs_cap=_bsgs_cap())
    roots = sorted(nth_root_solutions(ctx, args.n, args.m,
                                      bsgs_cap=_bsgs_cap()))
    h_gen = pow(ctx.g, (ctx.p - 1) // args.n, ctx.p)
    payload = {"p": ctx.p, "n": args.n, "m": args.m % ctx.p, "roots": roots,
               "x0": x0, "g": ctx.g, "h_generator": h_gen}
    lines = [
        f"solutions of x^{args.n} = {args.m} (mod {ctx.p}): "
        + "{" + ", ".join(map(str, roots)) + "}",
        f"x0 = {x0}, g = {ctx.g}, subgroup generator = {h_gen}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_expsum(args) -> int:
    ctx = build_prime_context(args.p)
    subgroup = roots_of_unity_subgroup(ctx, args.n, enum_cap=_enum_cap())
    if subgroup.elements is None:
        raise ScaleLimit(
            f"subgroup order {args.n} exceeds the cap {_enum_cap()}")
    profile = expsum_profile(subgroup)
    try:
        delta = empirical_delta(profile)
    except TrivialSubgroup:
        delta = None
    ratio = profile.max_magnitude / profile.subgroup_order
    payload = {
        "p": profile.p, "n": args.n, "subgroup_order": profile.subgroup_order,
        "max_magnitude": profile.max_magnitude, "max_ratio": ratio,
        "argmax_a": profile.argmax_a, "delta_emp": delta,
        "parseval_residual": profile.parseval_residual,
    }
    lines = [
        f"max |S(a)| over a != 0: {profile.max_magnitude:.12g} "
        f"(at a = {profile.argmax_a})",
        f"max |S| / |H| = {ratio:.12g}",
        f"delta_emp = {'n/a' if delta is None else format(delta, '.12g')}",
        f"parseval residual = {profile.parseval_residual:.6g}",
    ]
    if args.profile:
        payload["cosets"] = [
            {"a": a, "re": s.real, "im": s.imag, "magnitude": abs(s)}
            for a, s in profile.coset_values
        ]
        lines.append("cosets:")
        lines.extend(f"  a = {a:>8}  |S| = {abs(s):.12g}"
                     for a, s in profile.coset_values)
    _emit(args, payload, lines)
    return 0


def cmd_decompose(args) -> int:
    ctx = build_prime_context(args.p)
    result = orthogonality_decomposition(ctx, args.n, args.m, args.K,
                                         enum_cap=_enum_cap(),
                                         bsgs_cap=_bsgs_cap())
    residual = abs(result.reconstruction - result.exact_count)
    payload = {
        "p": ctx.p, "n": args.n, "m": result.m, "K": result.K,
        "exact_count": result.exact_count, "main_term": result.main_term,
        "error_term": result.error_term,
        "reconstruction": result.reconstruction, "residual": residual,
    }
    lines = [
        f"exact count of roots with |x| <= {result.K}: {result.exact_count}",
        f"main term     = {result.main_term:.12g}",
        f"error term    = {result.error_term:.12g}",
        f"reconstruction = {result.reconstruction:.12g}",
        f"residual      = {residual:.3e}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_sweep(args) -> int:
    config = SweepConfig(p_min=args.p_min, p_max=args.p_max,
                         n_min=args.n_min, epsilon=args.epsilon,
                         n_policy=args.policy, fixed_n=args.fixed_n,
                         with_expsums=args.with_expsums, workers=args.workers,
                         enum_cap=_enum_cap(), bsgs_cap=_bsgs_cap())
    records = run_sweep(config)
    write_records(records, args.out, args.format)
    completed = [r for r in records if r.k is not None]
    skipped = len(records) - len(completed)
    try:
        fit = fit_exponent(records)
        slope, r2 = fit.slope, fit.r_squared
    except InsufficientData:
        slope = r2 = None
    norms = [r.normalized for r in completed if r.normalized is not None]
    payload = {
        "cases": len(records), "completed": len(completed),
        "skipped": skipped, "slope": slope, "r_squared": r2,
        "normalized_min": min(norms) if norms else None,
        "normalized_max": max(norms) if norms else None,
        "out": args.out, "format": args.format,
    }
    lines = [
        f"cases: {len(records)} ({skipped} skipped)",
        f"fitted slope of ln k vs ln p: "
        + ("n/a" if slope is None else f"{slope:.4f} (r^2 = {r2:.4f})"),
        f"normalized k*2n/(p-1): "
        + ("n/a" if not norms else f"[{min(norms):.4f}, {max(norms):.4f}]"),
        f"wrote {len(records)} records to {args.out} ({args.format})",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    config = SweepConfig(p_min=5, p_max=args.p_max, n_min=3, epsilon=0.0,
                         n_policy="all_odd_divisors", enum_cap=_enum_cap())
    cases = enumerate_cases(config)
    violations = []
    for p, n in cases:
        record = run_case(p, n, enum_cap=config.enum_cap)
        if record.k is None or not (record.lower <= record.k
                                    < record.upper_exclusive):
            violations.append(record)
    payload = {
        "p_max": args.p_max, "cases": len(cases), "ok": not violations,
        "violations": [{"p": r.p, "n": r.n, "k": r.k} for r in violations],
    }
    if violations:
        lines = [f"counterexample: p={r.p} n={r.n} k={r.k} "
                 f"bounds [{r.lower}, {r.upper_exclusive})"
                 for r in violations]
        lines.append(f"{len(violations)} of {len(cases)} cases FAILED")
        _emit(args, payload, lines)
        return 1
    _emit(args, payload, [f"all {len(cases)} cases pass"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powres",
        description="Covering numbers of n-th power residues modulo a prime, "
                    "subgroup exponential sums, and batch growth sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true",
                       help="emit a JSON document on stdout")

    p_compute = sub.add_parser("compute", help="compute k(p, n) with bounds")
    p_compute.add_argument("p", type=int)
    p_compute.add_argument("n", type=int)
    add_json(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_roots = sub.add_parser("roots", help="all n solutions of x^n = m mod p")
    p_roots.add_argument("p", type=int)
    p_roots.add_argument("n", type=int)
    p_roots.add_argument("m", type=int)
    add_json(p_roots)
    p_roots.set_defaults(func=cmd_roots)

    p_expsum = sub.add_parser(
        "expsum", help="subgroup exponential-sum maximum and profile")
    p_expsum.add_argument("p", type=int)
    p_expsum.add_argument("n", type=int)
    mode = p_expsum.add_mutually_exclusive_group()
    mode.add_argument("--max-only", action="store_true",
                      help="summary statistics only (default)")
    mode.add_argument("--profile", action="store_true",
                      help="also dump per-coset magnitudes")
    add_json(p_expsum)
    p_expsum.set_defaults(func=cmd_expsum)

    p_dec = sub.add_parser(
        "decompose", help="orthogonality split of the root count in |x| <= K")
    p_dec.add_argument("p", type=int)
    p_dec.add_argument("n", type=int)
    p_dec.add_argument("m", type=int)
    p_dec.add_argument("K", type=int)
    add_json(p_dec)
    p_dec.set_defaults(func=cmd_decompose)

    p_sweep = sub.add_parser("sweep", help="batch-run cases and persist records")
    p_sweep.add_argument("--p-min", type=int, default=5)
    p_sweep.add_argument("--p-max", type=int, required=True)
    p_sweep.add_argument("--n-min", type=int, default=3)
    p_sweep.add_argument("--epsilon", type=float, default=0.0)
    p_sweep.add_argument("--policy", choices=("all_odd_divisors",
                                              "largest_odd_divisor",
                                              "fixed_n"),
                         default="all_odd_divisors")
    p_sweep.add_argument("--fixed-n", type=int, default=None)
    p_sweep.add_argument("--with-expsums", action="store_true")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_sweep.add_argument("--workers", type=int, default=1)
    add_json(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser(
        "verify", help="check the covering sandwich for every case up to p-max")
    p_verify.add_argument("--p-max", type=int, required=True)
    add_json(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EmptyRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScaleLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PowresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
