from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bianchi.jacobsthal import (
    SievePattern,
    big_j,
    big_j_sq,
    field_sieve,
    little_j,
    little_j_exhaustive,
    longest_blocked_run,
    pattern_of_ideal,
    fixed_point_j,
)
from bianchi.qfield import Disc, Ideal, is_principal, prime_splitting, primes_below

from oracles import oracle_little_j, patterns_up_to

PATTERNS = patterns_up_to(3000)


def test_small_values():
    assert little_j(SievePattern()).value == 1
    assert little_j(SievePattern.of([(2, 1)])).value == 2
    assert little_j(SievePattern.of([(2, 1), (3, 1)])).value == 4
    assert little_j(SievePattern.of([(2, 1), (3, 1), (5, 1)])).value == 6
    # classical Jacobsthal function of 2*3*5*7 is 10
    assert little_j(SievePattern.of([(2, 1), (3, 1), (5, 1), (7, 1)])).value == 10


def test_pattern_validation():
    with pytest.raises(ValueError):
        SievePattern(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        SievePattern(((2, 2),))


@pytest.mark.parametrize("entries", PATTERNS[::7])
def test_branch_and_bound_matches_oracle(entries):
    assert little_j(SievePattern(entries)).value == oracle_little_j(entries)


@pytest.mark.parametrize("entries", [e for e in PATTERNS if SievePattern(e).period <= 210][::3])
def test_full_period_scan_matches_oracle(entries):
    assert little_j_exhaustive(SievePattern(entries)) == oracle_little_j(entries)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PATTERNS))
def test_witness_is_a_real_run(entries):
    w = little_j(SievePattern(entries))
    assert w.check_run()
    assert w.run_length == w.value - 1
    for p, cls in w.adversary_residues:
        m = dict(entries)[p]
        assert len(cls) == m
    per = SievePattern(entries).period
    if per <= 5000:
        assert longest_blocked_run(w.adversary_residues, per) == w.value - 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PATTERNS), st.sampled_from(primes_below(60)), st.integers(1, 2))
def test_adding_a_prime_never_lowers_value(entries, p, m):
    base = dict(entries)
    if p == 2:
        m = 1
    if base.get(p, 0) >= m:
        return
    base[p] = m
    assert little_j(SievePattern.of(base.items())).value >= little_j(SievePattern(entries)).value


@pytest.mark.parametrize("d", [-15, -20, -23, -24, -39, -40, -56, -84, -132, -260])
def test_two_divides_readings_agree(d):
    disc = Disc(d)
    for p in primes_below(20):
        for ideal in prime_splitting(disc, p)[1]:
            for content in (1, 2, 3, 6):
                a = pattern_of_ideal(ideal, content, two_divides="ideal")
                b = pattern_of_ideal(ideal, content, two_divides="prime")
                assert a == b
                assert little_j((content, ideal), "ideal").value == little_j((content, ideal), "prime").value


def test_pattern_of_ideal():
    d = -20
    ideal = Ideal.make(3, 2, d)  # a prime above the split prime 3
    assert pattern_of_ideal(ideal).entries == ((3, 1),)
    assert pattern_of_ideal(ideal, 3).entries == ((3, 2),)
    assert pattern_of_ideal(Ideal.make(2, 2, d), 2).entries == ((2, 1),)


def _big_j_brute(disc, norm_bound):
    # all squarefree products of non-principal primes, scored by the oracle
    prs = []
    for p in primes_below(norm_bound):
        kind, ideals = prime_splitting(disc, p)
        if kind == "inert" or is_principal(ideals[0])[0]:
            continue
        prs.append((p, 2 if kind == "split" and p != 2 else 1))
    best = 1

    def rec(i, norm, ent):
        nonlocal best
        best = max(best, oracle_little_j(ent))
        for k in range(i, len(prs)):
            p, mm = prs[k]
            if norm * p >= norm_bound:
                break
            for m in range(1, mm + 1):
                if norm * p**m < norm_bound:
                    rec(k + 1, norm * p**m, ent + [(p, m)])

    rec(0, 1, [])
    return best


@pytest.mark.parametrize("d,bound", [(-15, 400), (-20, 700), (-23, 1000), (-56, 2000), (-84, 1500), (-260, 3000)])
def test_big_j_matches_brute_force(d, bound):
    assert big_j_sq(bound, Disc(d)) == _big_j_brute(Disc(d), bound)


def test_big_j_pattern_is_admissible():
    disc = Disc(-23)
    value, pattern = field_sieve(disc).big_j_sq(5000)
    assert pattern.norm < 5000
    assert little_j(pattern).value == value
    assert big_j(70, disc) == value


@pytest.mark.parametrize("d", [-3, -4, -7, -8, -11, -19, -43, -67, -163])
def test_j_is_one_for_pids(d):
    assert fixed_point_j(Disc(d)) == 1


# frozen from the oracle-checked search
@pytest.mark.parametrize("d,J", [(-15, 10), (-20, 24), (-23, 18), (-24, 20), (-132, 16), (-143, 30), (-228, 12), (-267, 5), (-388, 10)])
def test_frozen_j_values(d, J):
    assert fixed_point_j(Disc(d)) == J


@pytest.mark.parametrize("d", [-15, -23, -24, -20])
def test_j_by_brute_force(d):
    # least J whose sieve value at 2 max(|delta|, J sqrt|d|) is at most J
    from bianchi.bounds import max_proper_divisor

    disc = Disc(d)
    dsq = max_proper_divisor(disc)[1]
    J = 1
    while True:
        value = _big_j_brute(disc, 4 * max(dsq, J * J * disc.abs))
        if value <= J:
            break
        # the sieve value grows with its argument, so every J below it fails
        J = value
    assert fixed_point_j(disc) == J


def test_ramified_product_at_20():
    # the ideal of norm 10 is the product of the primes above 2 and 5
    ideal = Ideal.make(10, 10, -20)
    pattern = pattern_of_ideal(ideal)
    assert pattern.entries == ((2, 1), (5, 1))
    assert little_j(ideal).value == little_j_exhaustive(pattern) == oracle_little_j(pattern.entries) == 4
    # the prime above 5 is principal, generated by sqrt(-5)
    assert is_principal(Ideal.make(5, 0, -20))[0]
    assert not is_principal(Ideal.make(2, 2, -20))[0]


def test_big_j_at_20():
    disc = Disc(-20)
    # the prime above 2 has norm 2, so it counts as soon as x^2 > 2
    assert big_j(Fraction(7, 5), disc) == 1
    assert big_j(2, disc) == 2
    assert big_j(20, disc) >= 3
    assert fixed_point_j(disc) >= 3
