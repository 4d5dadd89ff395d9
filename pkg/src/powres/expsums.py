"""Exponential sums over multiplicative subgroups and interval kernels.

S(a, H) = sum_{h in H} e(a*h/p) with e(x) = exp(2*pi*i*x).  S is constant on
cosets a*H (reindexing h -> h'*h), so a profile stores one value per coset:
(p-1)/|H| sums of |H| terms each, i.e. p - 1 phase evaluations total instead
of the O(p*|H|) full scan.

Every phase is reduced exactly in integer arithmetic ((a*h) mod p) before the
single trigonometric evaluation, and partial sums accumulate through
math.fsum, so no angle recurrences can drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import cos, fsum, pi, sin

from .errors import (BadRadius, NotEnumerated, ScaleLimit, TrivialSubgroup,
                     ZeroFrequency)
from .modmath import PrimeContext
from .residues import (BSGS_CAP_DEFAULT, ENUM_CAP_DEFAULT, SubgroupSpec,
                       nth_root_solutions, principal_nth_root,
                       roots_of_unity_subgroup)


def _check_radius(p: int, K: int) -> None:
    if not isinstance(K, int) or K < 1 or K > (p - 1) // 2:
        raise BadRadius(f"K must be an integer in [1, {(p - 1) // 2}], got {K}")


def subgroup_expsum(H: SubgroupSpec, a: int) -> complex:
    """S(a, H) = sum of e(a*h/p) over the enumerated subgroup."""
    if H.elements is None:
        raise NotEnumerated("subgroup elements were not enumerated")
    p = H.p
    a %= p
    angles = [2.0 * pi * ((a * h) % p) / p for h in H.elements]
    return complex(fsum(map(cos, angles)), fsum(map(sin, angles)))


@dataclass(frozen=True)
class ExpSumProfile:
    """Per-coset values of S(a, H) plus summary statistics.

    coset_values lists (representative g**i, S) for i = 0..(p-1)/|H| - 1,
    which by coset constancy covers every a in F_p^*.  max_magnitude is the
    maximum of |S(a)| over a != 0; parseval_residual is the absolute defect
    |sum_{a=0}^{p-1} |S(a)|^2 - p*|H||, where the a = 0 term |H|^2 is
    included even though the maximum excludes it.
    """

    p: int
    subgroup_order: int
    coset_values: tuple[tuple[int, complex], ...]
    max_magnitude: float
    argmax_a: int
    parseval_residual: float


def expsum_profile(H: SubgroupSpec) -> ExpSumProfile:
    """Evaluate S once per coset of H in F_p^* and summarize."""
    if H.elements is None:
        raise NotEnumerated("subgroup elements were not enumerated")
    p, d = H.p, H.order
    values = []
    rep = 1
    for _ in range((p - 1) // d):
        values.append((rep, subgroup_expsum(H, rep)))
        rep = rep * H.primitive_root % p
    max_magnitude = -1.0
    argmax_a = 0
    for a, s in values:
        magnitude = abs(s)
        if magnitude > max_magnitude:
            max_magnitude, argmax_a = magnitude, a
    total_square = d * fsum(abs(s) ** 2 for _, s in values) + float(d * d)
    return ExpSumProfile(
        p=p,
        subgroup_order=d,
        coset_values=tuple(values),
        max_magnitude=max_magnitude,
        argmax_a=argmax_a,
        parseval_residual=abs(total_square - p * d),
    )


def empirical_delta(profile: ExpSumProfile) -> float:
    """Exponent -ln(max|S|/|H|) / (3 ln p) read off a measured profile.

    Inverts the shape of the subgroup-sum bound on observed data; a
    diagnostic to report, never an assertion against the non-effective
    constant in the bound itself.
    """
    if profile.subgroup_order < 2:
        raise TrivialSubgroup("|H| = 1 pins max|S|/|H| at 1")
    ratio = profile.max_magnitude / profile.subgroup_order
    return -math.log(ratio) / (3.0 * math.log(profile.p))


def interval_expsum(p: int, r: int, K: int) -> complex:
    """D(r, K) = sum over 1 <= |x| <= K of e(-r*x/p).

    Closed form: the Dirichlet kernel sin((2K+1)*pi*r/p) / sin(pi*r/p)
    minus the x = 0 term, or 2K when r == 0 mod p.  The +-x pairing makes
    the sum real, so the imaginary part is identically zero.  The kernel
    argument is reduced mod 2p in integer arithmetic first, keeping the
    value accurate near the zeros of the numerator.
    """
    _check_radius(p, K)
    r %= p
    if r == 0:
        return complex(2 * K, 0.0)
    t = (2 * K + 1) * r % (2 * p)
    return complex(sin(pi * t / p) / sin(pi * r / p) - 1.0, 0.0)


def interval_bound(p: int, r: int, K: int) -> float:
    """Provable envelope min(2K, 1/(2*||r/p||) + 1) for |D(r, K)|.

    ||r/p|| = min(r, p - r)/p is the distance from r/p to the nearest
    integer; it controls the incomplete geometric sum away from r = 0.
    """
    _check_radius(p, K)
    r %= p
    if r == 0:
        raise ZeroFrequency("||r/p|| = 0 at r = 0; use the trivial bound 2K")
    dist = min(r, p - r) / p
    return min(2.0 * K, 1.0 / (2.0 * dist) + 1.0)


def harmonic_bound_check(p: int) -> tuple[float, float, bool]:
    """Direct sum of 1/||r/p|| over r = 1..p-1 against 2p(1 + ln((p-1)/2)).

    The left side equals 2p * H_{(p-1)/2} by the r <-> p - r symmetry, so
    the logarithmic majorization must hold for every p >= 5; both sides are
    returned for reporting.
    """
    lhs = fsum(p / min(r, p - r) for r in range(1, p))
    rhs = 2.0 * p * (1.0 + math.log((p - 1) / 2.0))
    return lhs, rhs, lhs <= rhs


def count_solutions_in_interval(ctx: PrimeContext, n: int, m: int, K: int, *,
                                bsgs_cap: int = BSGS_CAP_DEFAULT) -> int:
    """Exact number of solutions of x**n == m with 1 <= |x| <= K.

    Each root s in [1, p-1] meets the symmetric interval iff s <= K
    (positive representative) or p - s <= K (negative representative);
    with 2K <= p - 1 the two cases are exclusive.
    """
    _check_radius(ctx.p, K)
    roots = nth_root_solutions(ctx, n, m, bsgs_cap=bsgs_cap)
    p = ctx.p
    return sum(1 for s in roots if s <= K or p - s <= K)


@dataclass(frozen=True)
class DecompositionResult:
    """Orthogonality split of the root count over 1 <= |x| <= K.

    exact_count is computed independently from the root set; main_term is
    (n/p) * 2K and error_term the r = 1..p-1 frequency sum, so in exact
    arithmetic main_term + error_term == exact_count.
    """

    m: int
    K: int
    exact_count: int
    main_term: float
    error_term: float
    reconstruction: float


def orthogonality_decomposition(ctx: PrimeContext, n: int, m: int, K: int, *,
                                enum_cap: int = ENUM_CAP_DEFAULT,
                                bsgs_cap: int = BSGS_CAP_DEFAULT,
                                ) -> DecompositionResult:
    """Split the interval root count into its main and error terms.

    count = (1/p) * sum_{r=1}^{p} S(r*x0, H) * D(r, K): the r = p term is
    the main term (n/p)*2K, and the rest is evaluated with one cached S
    value per coset.  The pairing r <-> p - r conjugates both factors, so
    the error sum is real; its imaginary residue is asserted tiny.
    """
    _check_radius(ctx.p, K)
    p = ctx.p
    H = roots_of_unity_subgroup(ctx, n, enum_cap=enum_cap)
    if H.elements is None:
        raise ScaleLimit(f"subgroup order {n} exceeds the cap {enum_cap}")
    x0 = principal_nth_root(ctx, n, m, bsgs_cap=bsgs_cap)
    profile = expsum_profile(H)
    s_by_residue: dict[int, complex] = {}
    for a, s in profile.coset_values:
        for h in H.elements:
            s_by_residue[a * h % p] = s
    real_parts = []
    imag_parts = []
    for r in range(1, p):
        d_val = interval_expsum(p, r, K).real
        s_val = s_by_residue[r * x0 % p]
        real_parts.append(s_val.real * d_val)
        imag_parts.append(s_val.imag * d_val)
    error_term = fsum(real_parts) / p
    imag_residue = fsum(imag_parts) / p
    assert abs(imag_residue) < 1e-6, "error sum must be real up to rounding"
    main_term = (n / p) * 2.0 * K
    exact = count_solutions_in_interval(ctx, n, m, K, bsgs_cap=bsgs_cap)
    return DecompositionResult(m=m, K=K, exact_count=exact,
                               main_term=main_term, error_term=error_term,
                               reconstruction=main_term + error_term)
