"""Exact 64-bit-range modular arithmetic, primality, factorization, primitive roots.

Moduli are capped at 2**62: every product of two reduced residues then fits
in a 124-bit intermediate, which CPython's arbitrary-precision integers handle
exactly.  Larger moduli are rejected up front instead of silently degrading.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import NotPrime, ScaleLimit, TooSmall

MODULUS_CAP = 1 << 62

# Witness set deterministic for every n < 3.3 * 10**24 (covers the full
# 64-bit range), so the test below is exact, never probabilistic.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 10**6
_trial_primes_cache: tuple[int, ...] | None = None


def mulmod(a: int, b: int, p: int) -> int:
    """(a * b) mod p, exact for all 0 <= a, b < p < 2**62."""
    return a * b % p


def powmod(a: int, e: int, p: int) -> int:
    """a**e mod p by square-and-multiply.

    powmod(0, 0, p) == 1 by the empty-product convention (and so does any
    a with e == 0); callers relying on this corner get a stable answer.
    """
    return pow(a, e, p)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin primality check, exact below 2**62."""
    if m < 2:
        return False
    for q in _MR_BASES:
        if m % q == 0:
            return m == q
    d = m - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(range(q * q, n + 1, q)))
    return [i for i, flag in enumerate(sieve) if flag]


def _trial_primes() -> tuple[int, ...]:
    global _trial_primes_cache
    if _trial_primes_cache is None:
        _trial_primes_cache = tuple(primes_up_to(_TRIAL_BOUND))
    return _trial_primes_cache


def _brent_factor(n: int, x0: int, c: int) -> int:
    """One attempt at a nontrivial factor of composite n; n means failure."""
    y, r, q, g = x0, 1, 1, 1
    x = ys = y
    batch = 128
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += batch
        r <<= 1
    if g == n:
        # Redo the last batch one gcd at a time to isolate the factor.
        g = 1
        y = ys
        for _ in range(batch):
            y = (y * y + c) % n
            g = gcd(abs(x - y), n)
            if g > 1:
                break
        else:
            return n
    return g


def _rho_factor(n: int) -> int:
    """Nontrivial factor of composite n via Brent-cycle Pollard rho.

    The (x0, c) schedule is fixed so repeated runs split n identically.
    """
    for c in range(1, 1000):
        g = _brent_factor(n, 2, c)
        if 1 < g < n:
            return g
    raise AssertionError(f"rho parameter schedule exhausted for {n}")


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization of m >= 1 as [(prime, exponent), ...], ascending.

    Trial division over a cached prime table up to 10**6, with early
    primality escapes, then deterministic Pollard rho for what remains.
    Returns [] for m == 1.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    found: dict[int, int] = {}
    c = m
    for q in _trial_primes():
        if q * q > c:
            break
        if c % q == 0:
            e = 0
            while c % q == 0:
                c //= q
                e += 1
            found[q] = e
            if c > 1 and is_prime(c):
                break
    if c > 1:
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
        else:
            stack = [c]
            while stack:
                v = stack.pop()
                if is_prime(v):
                    found[v] = found.get(v, 0) + 1
                    continue
                f = _rho_factor(v)
                stack.append(f)
                stack.append(v // f)
    return sorted(found.items())


@dataclass(frozen=True)
class PrimeContext:
    """A verified odd prime with factored p - 1 and its least primitive root.

    Immutable after construction; safe to share across parallel workers.
    """

    p: int
    factors: tuple[tuple[int, int], ...]
    g: int


def build_prime_context(p: int) -> PrimeContext:
    """Validate p, factor p - 1, and find the least primitive root.

    Candidates g = 2, 3, ... are tested in order against every prime
    factor q of p - 1 via g**((p-1)/q) != 1, so the returned g is the
    smallest generator and runs are reproducible across machines.
    """
    if p >= MODULUS_CAP:
        raise ScaleLimit(f"p must be below 2**62, got {p}")
    if not is_prime(p):
        raise NotPrime(f"p is not prime (got {p})")
    if p < 5:
        raise TooSmall(f"p must be >= 5, got {p}")
    factors = tuple(factorize(p - 1))
    quotients = [(p - 1) // q for q, _ in factors]
    g = 2
    while any(pow(g, t, p) == 1 for t in quotients):
        g += 1
    return PrimeContext(p=p, factors=factors, g=g)
