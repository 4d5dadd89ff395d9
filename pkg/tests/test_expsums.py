import cmath
import math
import random
from math import fsum

import pytest
from hypothesis import given, settings, strategies as st

from powres import (BadRadius, NotEnumerated, NotResidue, ScaleLimit,
                    TrivialSubgroup, ZeroFrequency, build_prime_context,
                    count_solutions_in_interval, empirical_delta,
                    expsum_profile, harmonic_bound_check, interval_bound,
                    interval_expsum, odd_divisors,
                    orthogonality_decomposition, power_residue_subgroup,
                    primes_up_to, roots_of_unity_subgroup, subgroup_expsum)
from powres.residues import _subgroup_of_order

PRIMES_SMALL = [p for p in primes_up_to(499) if p >= 5]


def all_divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def direct_interval_sum(p, r, K):
    """Term-by-term oracle for D(r, K), via raw complex exponentials."""
    terms = [cmath.exp(-2j * math.pi * r * x / p)
             for x in range(-K, K + 1) if x != 0]
    return complex(fsum(t.real for t in terms), fsum(t.imag for t in terms))


def test_expsum_at_zero_is_order(ctx13):
    H = roots_of_unity_subgroup(ctx13, 3)
    assert abs(subgroup_expsum(H, 0) - 3) < 1e-12


def test_expsum_full_group_is_minus_one(ctx13):
    full = power_residue_subgroup(ctx13, 1)
    for a in range(1, 13):
        assert abs(subgroup_expsum(full, a) - (-1)) < 1e-9


def test_expsum_two_term_value(ctx13):
    # {1, p-1} at a = 1: e(1/13) + e(12/13) = 2 cos(2 pi / 13),
    # frozen from a 40-digit evaluation
    H2 = _subgroup_of_order(ctx13, 2, 1 << 22)
    value = subgroup_expsum(H2, 1)
    assert abs(value.real - 1.7709120513064198) < 1e-13
    assert abs(value.imag) < 1e-13


def test_expsum_requires_enumeration(ctx13):
    H = roots_of_unity_subgroup(ctx13, 3, enum_cap=1)
    with pytest.raises(NotEnumerated):
        subgroup_expsum(H, 1)
    with pytest.raises(NotEnumerated):
        expsum_profile(H)


def test_phase_terms_have_unit_modulus(ctx13):
    H = roots_of_unity_subgroup(ctx13, 3)
    for h in H.elements:
        assert abs(abs(cmath.exp(2j * math.pi * h / 13)) - 1.0) < 1e-12


def test_profile_examples(ctx7, ctx13):
    trivial = roots_of_unity_subgroup(ctx7, 1)
    assert abs(expsum_profile(trivial).max_magnitude - 1.0) < 1e-12
    full = power_residue_subgroup(ctx13, 1)
    assert abs(expsum_profile(full).max_magnitude - 1.0) < 1e-9
    H = roots_of_unity_subgroup(ctx13, 3)
    profile = expsum_profile(H)
    assert len(profile.coset_values) == 4
    # oracle: direct evaluation over every a = 1..12
    direct_max = max(abs(subgroup_expsum(H, a)) for a in range(1, 13))
    assert abs(profile.max_magnitude - direct_max) < 1e-12


def test_profile_covers_every_unit_value(ctx13):
    H = roots_of_unity_subgroup(ctx13, 3)
    profile = expsum_profile(H)
    by_coset = {}
    for a, s in profile.coset_values:
        for h in H.elements:
            by_coset[a * h % 13] = s
    assert set(by_coset) == set(range(1, 13))
    for a in range(1, 13):
        assert abs(by_coset[a] - subgroup_expsum(H, a)) < 1e-10


def test_parseval_small_primes():
    for p in (13, 31, 101):
        ctx = build_prime_context(p)
        for d in all_divisors(p - 1):
            profile = expsum_profile(_subgroup_of_order(ctx, d, 1 << 22))
            assert profile.parseval_residual / (p * d) < 1e-8, (p, d)


def test_coset_constancy():
    rng = random.Random(7)
    for p in (13, 101, 257):
        ctx = build_prime_context(p)
        for d in (2,) + tuple(odd_divisors(p - 1)[1:]):
            if (p - 1) % d:
                continue
            H = _subgroup_of_order(ctx, d, 1 << 22)
            for _ in range(5):
                a = rng.randrange(1, p)
                h = rng.choice(H.elements)
                assert abs(subgroup_expsum(H, a)
                           - subgroup_expsum(H, a * h % p)) < 1e-10


def test_conjugate_symmetry():
    for p in (13, 97):
        ctx = build_prime_context(p)
        for d in all_divisors(p - 1):
            H = _subgroup_of_order(ctx, d, 1 << 22)
            for a in range(1, p):
                s = subgroup_expsum(H, a)
                s_neg = subgroup_expsum(H, p - a)
                assert abs(s_neg - s.conjugate()) < 1e-10
                if p - 1 in H.elements:
                    assert abs(abs(s_neg) - abs(s)) < 1e-10


def test_strict_subtriviality_all_proper_subgroups():
    for p in [q for q in primes_up_to(101) if q >= 5]:
        ctx = build_prime_context(p)
        for d in all_divisors(p - 1):
            if d < 2 or d > p - 2:
                continue
            profile = expsum_profile(_subgroup_of_order(ctx, d, 1 << 22))
            assert profile.max_magnitude <= d
            assert profile.max_magnitude / d < 1.0, (p, d)


def test_empirical_delta_formula(ctx13):
    profile = expsum_profile(roots_of_unity_subgroup(ctx13, 3))
    delta = empirical_delta(profile)
    assert delta > 0
    expected = -math.log(profile.max_magnitude / 3) / (3 * math.log(13))
    assert abs(delta - expected) < 1e-15
    with pytest.raises(TrivialSubgroup):
        empirical_delta(expsum_profile(
            roots_of_unity_subgroup(build_prime_context(7), 1)))


def test_empirical_delta_synthetic_inversion():
    # ratio = p**(-3*delta) must invert back to delta
    from powres import ExpSumProfile
    p, d = 1009, 7
    for delta in (0.0, 0.1, 0.25):
        profile = ExpSumProfile(p=p, subgroup_order=d, coset_values=(),
                                max_magnitude=d * p**(-3 * delta),
                                argmax_a=1, parseval_residual=0.0)
        assert abs(empirical_delta(profile) - delta) < 1e-12


def test_interval_expsum_examples():
    assert interval_expsum(13, 0, 3) == complex(6, 0)
    for r in range(1, 13):
        assert abs(interval_expsum(13, r, 6) - (-1)) < 1e-10
    expected = math.sin(7 * math.pi / 13) / math.sin(math.pi / 13) - 1
    value = interval_expsum(13, 1, 3)
    assert abs(value.real - expected) < 1e-12
    assert value.imag == 0.0


def test_interval_expsum_radius_validation():
    with pytest.raises(BadRadius):
        interval_expsum(13, 1, 0)
    with pytest.raises(BadRadius):
        interval_expsum(13, 1, 7)


@given(st.sampled_from([p for p in primes_up_to(997) if p >= 5]),
       st.data())
@settings(max_examples=60, deadline=None)
def test_interval_closed_form_matches_direct(p, data):
    r = data.draw(st.integers(0, p - 1))
    K = data.draw(st.sampled_from(
        sorted({1, min(int(p**0.7), (p - 1) // 2), (p - 1) // 2})))
    value = interval_expsum(p, r, K)
    direct = direct_interval_sum(p, r, K)
    assert abs(value - direct) < 1e-9


def test_interval_bound_examples():
    assert interval_bound(13, 1, 1) == 2.0  # 2K branch
    assert abs(interval_bound(13, 6, 6) - 25 / 12) < 1e-15
    with pytest.raises(ZeroFrequency):
        interval_bound(13, 13, 3)
    with pytest.raises(ZeroFrequency):
        interval_bound(13, 0, 3)


def test_interval_bound_envelopes_kernel():
    for p in (13, 97):
        for K in (1, 3, (p - 1) // 2):
            for r in range(1, p):
                assert abs(interval_expsum(p, r, K)) <= \
                    interval_bound(p, r, K) + 1e-12


def test_harmonic_bound_examples():
    lhs, rhs, ok = harmonic_bound_check(5)
    assert abs(lhs - 15.0) < 1e-9
    assert abs(rhs - 10 * (1 + math.log(2))) < 1e-12
    assert ok
    lhs, rhs, ok = harmonic_bound_check(7)
    assert abs(lhs - 2 * (7 + 7 / 2 + 7 / 3)) < 1e-9
    assert abs(rhs - 14 * (1 + math.log(3))) < 1e-12
    assert ok


def test_harmonic_terms_symmetric():
    p = 101
    for r in range(1, p):
        assert min(r, p - r) == min(p - r, r)
        assert abs(p / min(r, p - r) - p / min(p - r, r)) == 0.0


def test_count_solutions_examples(ctx13):
    assert count_solutions_in_interval(ctx13, 3, 8, 2) == 1
    assert count_solutions_in_interval(ctx13, 3, 8, 6) == 3
    assert count_solutions_in_interval(ctx13, 3, 1, 6) == 3
    with pytest.raises(NotResidue):
        count_solutions_in_interval(ctx13, 3, 2, 3)
    with pytest.raises(BadRadius):
        count_solutions_in_interval(ctx13, 3, 8, 0)


def test_count_matches_signed_scan():
    rng = random.Random(99)
    for _ in range(30):
        p = rng.choice(PRIMES_SMALL)
        ctx = build_prime_context(p)
        n = rng.choice(odd_divisors(p - 1))
        m = pow(rng.randrange(1, p), n, p)
        K = rng.randrange(1, (p - 1) // 2 + 1)
        direct = sum(1 for x in range(-K, K + 1)
                     if x != 0 and pow(x % p, n, p) == m)
        assert count_solutions_in_interval(ctx, n, m, K) == direct


def test_decomposition_examples(ctx13):
    result = orthogonality_decomposition(ctx13, 3, 8, 6)
    assert result.exact_count == 3
    assert abs(result.main_term - 36 / 13) < 1e-12
    assert abs(result.reconstruction - 3) < 1e-6
    result = orthogonality_decomposition(ctx13, 3, 8, 2)
    assert result.exact_count == 1
    assert abs(result.reconstruction - 1) < 1e-6


def test_decomposition_full_interval_counts_all_roots():
    for p, n in ((13, 3), (31, 5), (101, 25)):
        ctx = build_prime_context(p)
        m = pow(3, n, p)
        result = orthogonality_decomposition(ctx, n, m, (p - 1) // 2)
        assert result.exact_count == n
        assert abs(result.reconstruction - n) < 1e-6


def test_decomposition_respects_caps(ctx13):
    with pytest.raises(ScaleLimit):
        orthogonality_decomposition(ctx13, 3, 8, 6, enum_cap=2)
