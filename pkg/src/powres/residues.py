"""Multiplicative subgroups, n-th roots, and the covering number k(p, n).

k(p, n) is the least k such that the n-th powers of +-1, +-2, ..., +-k hit
every non-zero n-th power residue mod p.  Throughout, n must be a positive
odd divisor of p - 1: oddness makes (-x)**n = -(x**n), which is what lets a
single magnitude x cover a symmetric pair of residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import BadN, BadResidue, NotResidue, ScaleLimit
from .modmath import PrimeContext

ENUM_CAP_DEFAULT = 1 << 22
BSGS_CAP_DEFAULT = 1 << 40


def _require_valid_n(p: int, n: int) -> None:
    if n < 1:
        raise BadN(f"n must be positive, got {n}")
    if n % 2 == 0:
        raise BadN(f"n must be odd, got {n}")
    if (p - 1) % n != 0:
        raise BadN(f"n must divide p - 1 = {p - 1}, got {n}")


@dataclass(frozen=True)
class SubgroupSpec:
    """Cyclic subgroup of F_p^* of order `order`, generated by `generator`.

    `elements` holds (generator**j mod p for j = 0..order-1) when the order
    is within the enumeration cap, else None.  `primitive_root` is the
    ambient generator of F_p^*, kept so cosets can be indexed as powers of g.
    """

    p: int
    order: int
    generator: int
    primitive_root: int
    elements: tuple[int, ...] | None = None


def _subgroup_of_order(ctx: PrimeContext, d: int, enum_cap: int) -> SubgroupSpec:
    """The unique subgroup of order d | p - 1, generated by g**((p-1)/d)."""
    p = ctx.p
    w = pow(ctx.g, (p - 1) // d, p)
    elements = None
    if d <= enum_cap:
        elems = []
        h = 1
        for _ in range(d):
            elems.append(h)
            h = h * w % p
        elements = tuple(elems)
    return SubgroupSpec(p=p, order=d, generator=w,
                        primitive_root=ctx.g, elements=elements)


def roots_of_unity_subgroup(ctx: PrimeContext, n: int, *,
                            enum_cap: int = ENUM_CAP_DEFAULT) -> SubgroupSpec:
    """The order-n subgroup of n-th roots of unity mod p."""
    _require_valid_n(ctx.p, n)
    return _subgroup_of_order(ctx, n, enum_cap)


def power_residue_subgroup(ctx: PrimeContext, n: int, *,
                           enum_cap: int = ENUM_CAP_DEFAULT) -> SubgroupSpec:
    """The subgroup {x**n : x in F_p^*} of order (p - 1)/n, generated by g**n."""
    _require_valid_n(ctx.p, n)
    return _subgroup_of_order(ctx, (ctx.p - 1) // n, enum_cap)


def is_nth_residue(ctx: PrimeContext, n: int, m: int) -> bool:
    """Order criterion: m is an n-th power residue iff m**((p-1)/n) == 1."""
    _require_valid_n(ctx.p, n)
    m %= ctx.p
    if m == 0:
        raise BadResidue("m must be non-zero mod p")
    return pow(m, (ctx.p - 1) // n, ctx.p) == 1


def _bsgs_log(ctx: PrimeContext, target: int) -> int:
    """Discrete log of target to base ctx.g via baby-step giant-step."""
    p, g = ctx.p, ctx.g
    m = isqrt(p - 2) + 1
    table: dict[int, int] = {}
    cur = 1
    for j in range(m):
        table[cur] = j
        cur = cur * g % p
    giant = pow(g, p - 1 - m, p)
    cur = target
    for i in range(m):
        j = table.get(cur)
        if j is not None:
            return i * m + j
        cur = cur * giant % p
    raise AssertionError("every unit has a discrete log to a primitive root")


def principal_nth_root(ctx: PrimeContext, n: int, m: int, *,
                       bsgs_cap: int = BSGS_CAP_DEFAULT) -> int:
    """One solution x0 of x**n == m mod p, chosen canonically.

    With m = g**t (t found by baby-step giant-step), n divides t and
    x0 = g**(t/n).  Moduli at or above the BSGS cap are rejected rather
    than falling back to probabilistic root extraction.
    """
    if not is_nth_residue(ctx, n, m):
        raise NotResidue(f"{m} is not an n-th power residue mod {ctx.p}")
    if ctx.p >= bsgs_cap:
        raise ScaleLimit(f"p = {ctx.p} exceeds the BSGS cap {bsgs_cap}")
    t = _bsgs_log(ctx, m % ctx.p)
    assert t % n == 0, "n | t whenever m passes the residue criterion"
    return pow(ctx.g, t // n, ctx.p)


def nth_root_solutions(ctx: PrimeContext, n: int, m: int, *,
                       bsgs_cap: int = BSGS_CAP_DEFAULT) -> set[int]:
    """All n solutions of x**n == m mod p: {x0 * g**((p-1)j/n) : j = 0..n-1}."""
    x0 = principal_nth_root(ctx, n, m, bsgs_cap=bsgs_cap)
    p = ctx.p
    w = pow(ctx.g, (p - 1) // n, p)
    roots = set()
    x = x0
    for _ in range(n):
        roots.add(x)
        x = x * w % p
    assert len(roots) == n
    return roots


@dataclass(frozen=True)
class KResult:
    """k(p, n) together with the elementary sandwich bounds.

    lower = (p-1)/(2n) and upper_exclusive = (1/2 - 1/(2n)) * p, both exact
    rationals.  The sandwich is meaningful for n >= 3; at n = 1 the upper
    bound degenerates to 0 and is not checked.
    """

    p: int
    n: int
    k: int
    lower: Fraction
    upper_exclusive: Fraction

    def sandwich_holds(self) -> bool:
        return self.lower <= self.k and self.k < self.upper_exclusive


@dataclass
class CoverState:
    """Mutable coverage tracker over the power-residue subgroup.

    Confined to one worker per (p, n) task; covered_count always equals the
    number of set flags.
    """

    index_map: dict[int, int]
    covered: bytearray
    covered_count: int = 0
    x_current: int = 0

    def mark(self, residue: int) -> None:
        i = self.index_map[residue]
        if not self.covered[i]:
            self.covered[i] = 1
            self.covered_count += 1


def chowla_london_bounds(p: int, n: int) -> tuple[Fraction, Fraction]:
    """Exact rationals ((p-1)/(2n), (1/2 - 1/(2n)) * p); no floating point."""
    _require_valid_n(p, n)
    return Fraction(p - 1, 2 * n), Fraction((n - 1) * p, 2 * n)


def compute_k(ctx: PrimeContext, n: int, *,
              enum_cap: int = ENUM_CAP_DEFAULT) -> KResult:
    """Least k whose signed n-th powers cover every n-th power residue.

    Iterates x = 1, 2, ...; each step takes one modular exponentiation
    r = x**n and marks both r and p - r (valid because n is odd), so the
    scan stops at the exact covering index.  Memory is one flag per element
    of the residue subgroup, which must fit the enumeration cap.
    """
    _require_valid_n(ctx.p, n)
    p = ctx.p
    size = (p - 1) // n
    if size > enum_cap:
        raise ScaleLimit(
            f"residue subgroup has {size} elements, above the cap {enum_cap}")
    subgroup = power_residue_subgroup(ctx, n, enum_cap=enum_cap)
    assert subgroup.elements is not None
    state = CoverState(
        index_map={r: i for i, r in enumerate(subgroup.elements)},
        covered=bytearray(size),
    )
    x = 0
    while state.covered_count < size:
        x += 1
        state.x_current = x
        r = pow(x, n, p)
        state.mark(r)
        state.mark(p - r)
    lower, upper = chowla_london_bounds(p, n)
    return KResult(p=p, n=n, k=x, lower=lower, upper_exclusive=upper)


def brute_force_k(ctx: PrimeContext, n: int) -> int:
    """Definitional oracle for k(p, n): naive, no shared state with compute_k.

    For each candidate k the set {x**n mod p : 1 <= |x| <= k} is rebuilt
    from scratch and compared against the full residue set.  Quadratic by
    design; intended for p < 10**5.
    """
    _require_valid_n(ctx.p, n)
    p = ctx.p
    target = {pow(x, n, p) for x in range(1, p)}
    for k in range(1, (p - 1) // 2 + 1):
        hit = {pow(x, n, p) for x in range(1, k + 1)}
        hit |= {pow(p - x, n, p) for x in range(1, k + 1)}
        if len(hit) == len(target):
            return k
    raise AssertionError("k = (p-1)/2 always covers the full residue set")
