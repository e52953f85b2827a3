from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bianchi.qfield import (
    AlgInt,
    Disc,
    FieldElem,
    Ideal,
    bezout_solve,
    ideal_from_pair,
    is_coprime,
    is_fundamental,
    is_principal,
    is_singular,
    primes_below,
    prime_splitting,
    lattice_points_near,
    nearest_fundamental,
    reduce_mod,
    singular_points,
)

PIDS = [-3, -4, -7, -8, -11, -19, -43, -67, -163]
DISCS = [-15, -20, -23, -24, -31, -35, -39, -40, -56, -84, -132, -388]


def elem(d):
    return st.tuples(st.integers(-40, 40), st.integers(-40, 40)).map(
        lambda t: AlgInt(2 * t[0] + (t[1] * d) % 2, t[1], d)
    )


def test_fundamental_discriminants():
    fund = [n for n in range(-60, 0) if is_fundamental(n)]
    assert fund == [-59, -56, -55, -52, -51, -47, -43, -40, -39, -35, -31, -24, -23, -20, -19, -15, -11, -8, -7, -4, -3]
    assert not is_fundamental(-12)
    assert all(is_fundamental(x) for x in nearest_fundamental(-12))


@pytest.mark.parametrize("d,h", [(-3, 1), (-4, 1), (-15, 2), (-20, 2), (-23, 3), (-132, 4), (-143, 10), (-228, 4), (-388, 4)])
def test_class_numbers(d, h):
    assert Disc(d).class_number == h


@pytest.mark.parametrize("d", PIDS)
def test_pid_has_no_singular_points(d):
    assert singular_points(Disc(d)) == []


def test_singular_points_are_singular():
    for d in DISCS:
        for z in singular_points(Disc(d)):
            assert is_singular(z)


def test_arithmetic_basics():
    d = -23
    x = AlgInt(1, 1, d)  # theta
    assert x.norm == 6
    assert x * x.conj() == AlgInt(12, 0, d)
    assert (x * x - x + AlgInt(12, 0, d)) == AlgInt(0, 0, d)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(DISCS + PIDS), st.data())
def test_norm_is_multiplicative(d, data):
    x, y = data.draw(elem(d)), data.draw(elem(d))
    assert (x * y).norm == x.norm * y.norm


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(DISCS + PIDS), st.data())
def test_bezout(d, data):
    lam, mu = data.draw(elem(d)), data.draw(elem(d))
    if mu.norm == 0 or not is_coprime(lam, mu):
        return
    alpha, beta = bezout_solve(lam, mu)
    assert beta * lam - alpha * mu == AlgInt(2, 0, d)
    assert reduce_mod(beta, mu).norm == beta.norm


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(DISCS), st.data())
def test_coprime_matches_ideal(d, data):
    lam, mu = data.draw(elem(d)), data.draw(elem(d))
    if lam.norm == 0 and mu.norm == 0:
        return
    c, ideal = ideal_from_pair(lam, mu)
    assert is_coprime(lam, mu) == (c == 1 and ideal.norm == 1)
    assert ideal.contains(lam.exact_div(AlgInt(2 * c, 0, d))) if lam.norm else True


def test_principality_matches_norm_form():
    # a prime ideal of norm p is principal iff p is a norm of an element
    for d in DISCS:
        disc = Disc(d)
        for p in primes_below(60):
            kind, ideals = prime_splitting(disc, p)
            for ideal in ideals:
                if kind != "inert":
                    assert ideal.norm == p
                    assert is_principal(ideal)[0] == disc.represents(p)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(DISCS), st.fractions(-3, 3, max_denominator=50), st.fractions(-3, 3, max_denominator=50), st.fractions(Fraction(1, 10), 3, max_denominator=10))
def test_lattice_points_near_is_complete(d, u, v, rsq):
    z = FieldElem(u, v, d)
    got = lattice_points_near(z, rsq)
    assert all((z - x).norm < rsq for x in got)
    brute = []
    for b in range(-30, 31):
        for a in range(-30, 31):
            if (a - b * d) % 2:
                continue
            x = AlgInt(a, b, d)
            if (z - x).norm < rsq:
                brute.append(x)
    assert sorted(got, key=lambda x: (x.a, x.b)) == sorted(brute, key=lambda x: (x.a, x.b))
