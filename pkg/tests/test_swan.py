import json
import random
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp, mpf

from bianchi.cli import swan_dict
from bianchi.qfield import AlgInt, Disc, FieldElem, bezout_solve, is_coprime, is_singular
from bianchi.swan import (
    Hemisphere,
    _inside,
    candidate_hemispheres,
    covers,
    det,
    emit_generators,
    floor_envelope,
    full_faces,
    height_transform,
    is_reduced_mod,
    swan_number,
)

from oracles import coprime_brute

mp.dps = 50

# computed with the envelope engine and cross-checked below
FROZEN = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 15, -19: 4, -20: 20, -23: 16, -24: 24}

_CACHE = {}


def result(d):
    if d not in _CACHE:
        _CACHE[d] = swan_number(Disc(d))
    return _CACHE[d]


@pytest.mark.parametrize("d,s", sorted(FROZEN.items()))
def test_small_swan_numbers(d, s):
    r = result(d)
    assert r.certified
    assert r.swan_sq == s


def _brute_swan(d, cap):
    # floor faces from a dense grid of sample points, using every coprime pair by brute force
    disc = Disc(d)
    cands = []
    for mu in _all_mu(d, cap):
        for lam in _all_lam(d, mu):
            if coprime_brute(lam, mu):
                cands.append(Hemisphere(lam, mu))
    return cands


def _meets_quarter(h):
    # open disc against the closed quarter rectangle, exactly
    c = h.center
    u = min(max(c.u, Fraction(0)), Fraction(1, 2))
    v = min(max(c.v, Fraction(0)), Fraction(1, 4))
    return (c - FieldElem(u, v, c.d)).norm < h.radius_sq


def _all_mu(d, cap):
    out = []
    for b in range(0, 2 * int((4 * cap / -d) ** 0.5) + 2):
        for a in range(-2 * int(cap**0.5) - 2, 2 * int(cap**0.5) + 3):
            if (a - b * d) % 2 or (a, b) == (0, 0) or (b == 0 and a < 0):
                continue
            mu = AlgInt(a, b, d)
            if mu.norm <= cap:
                out.append(mu)
    return out


def _all_lam(d, mu):
    # lam with lam/mu within one radius of the quarter rectangle
    n = mu.norm
    out = []
    sq = (-d) ** 0.5
    for b in range(-40, 41):
        for a in range(-80, 81):
            if (a - b * d) % 2:
                continue
            lam = AlgInt(a, b, d)
            c = FieldElem.quotient(lam, mu)
            u, y = float(c.u), float(c.v) * sq
            r = n**-0.5
            if -r <= u <= 0.5 + r and -r <= y <= 0.25 * sq + r:
                out.append(lam)
    return out


@pytest.mark.parametrize("d", [-15, -20, -23])
def test_candidates_match_brute_force_enumeration(d):
    cap = 30
    got = {(h.lam, h.mu) for h in candidate_hemispheres(Disc(d), cap) if _meets_quarter(h)}
    want = {(h.lam, h.mu) for h in _brute_swan(d, cap) if _meets_quarter(h)}
    units = Disc(d).units
    norm = lambda pairs: {min(((e * l).a, (e * l).b, (e * m).a, (e * m).b) for e in units) for l, m in pairs}
    assert norm(got) == norm(want)


def _owners(faces, pt):
    return [f.hemi for f in faces if _inside(f.cell, pt) >= 0]


def check_owner_against_argmax(d, points=10_000, seed=1):
    r = result(d)
    assert r.certified
    cands = candidate_hemispheres(Disc(d), r.cap_used_sq)
    cu = np.array([float(h.center.u) for h in cands])
    cv = np.array([float(h.center.v) for h in cands])
    rs = np.array([1.0 / h.norm for h in cands])
    rng = random.Random(seed)
    faces = r.faces
    boxes = [
        (min(p[0] for p in f.cell), max(p[0] for p in f.cell), min(p[1] for p in f.cell), max(p[1] for p in f.cell))
        for f in faces
    ]
    absd = -d
    for _ in range(points):
        pt = (Fraction(rng.randrange(0, 10**6 + 1), 2 * 10**6), Fraction(rng.randrange(0, 10**6 + 1), 4 * 10**6))
        fu, fv = float(pt[0]), float(pt[1])
        pw = rs - (cu - fu) ** 2 - absd * (cv - fv) ** 2
        top = pw.max()
        near = np.nonzero(pw >= top - 1e-9)[0]
        z = FieldElem(pt[0], pt[1], d)
        exact = {i: cands[i].power(z) for i in near}
        best = max(exact.values())
        winners = {cands[i].key() for i, v in exact.items() if v == best}
        owners = [
            f.hemi
            for f, (u0, u1, v0, v1) in zip(faces, boxes)
            if u0 <= pt[0] <= u1 and v0 <= pt[1] <= v1 and _inside(f.cell, pt) >= 0
        ]
        assert owners, pt
        assert all(h.key() in winners for h in owners), pt


@pytest.mark.parametrize("d", [-15, -20, -23, -24])
def test_envelope_owner_is_argmax(d):
    check_owner_against_argmax(d)


def test_floor_envelope_from_candidates():
    disc = Disc(-23)
    faces = floor_envelope(candidate_hemispheres(disc, 23), disc)
    assert max(f.hemi.norm for f in faces) == 16
    assert [f.hemi for f in faces] == result(-23).face_hemispheres()


def test_determinism_across_workers():
    for d in (-23, -132):
        a = swan_number(Disc(d), workers=1)
        b = swan_number(Disc(d), workers=3)
        ja = json.dumps(swan_dict(a, True), indent=2)
        jb = json.dumps(swan_dict(b, True), indent=2)
        assert ja == jb


def test_generators_audit_small():
    for d in (-15, -20, -23, -24):
        r = result(d)
        for m in emit_generators(r):
            assert det(m) == AlgInt(2, 0, d)
            assert m[2].norm <= r.swan_sq
            if m[2].norm:
                assert is_reduced_mod(m[0], m[2])


def test_full_faces_are_coprime_and_unique():
    r = result(-23)
    hs = full_faces(r)
    assert len({(h.center.u, h.center.v) for h in hs}) == len(hs)
    assert all(coprime_brute(h.lam, h.mu) for h in hs)


def test_singular_vertices_are_singular():
    for d in (-15, -20, -23):
        r = result(d)
        assert r.singular_vertices
        for u, v in r.singular_vertices:
            assert is_singular(FieldElem(u, v, d))


def test_uncertified_when_cap_too_small():
    r = swan_number(Disc(-23), cap_sq=4, max_cap_sq=4)
    assert not r.certified


def test_height_transform_against_high_precision():
    rng = random.Random(5)
    d = -23
    checked = 0
    while checked < 200:
        lam = AlgInt(*_rand_elem(rng, d), d)
        mu = AlgInt(*_rand_elem(rng, d), d)
        if mu.norm == 0 or not is_coprime(lam, mu):
            continue
        alpha, beta = bezout_solve(lam, mu)
        z = FieldElem(Fraction(rng.randint(-50, 50), 37), Fraction(rng.randint(-50, 50), 41), d)
        t_sq = Fraction(rng.randint(1, 100), 53)
        got = height_transform(beta, alpha, mu, lam, z, t_sq)
        # apply the Moebius action on the quaternion z + t j in high precision
        sd = mp.sqrt(-d)
        zc = mp.mpc(mpf(z.u.numerator) / z.u.denominator, mpf(z.v.numerator) / z.v.denominator * sd)
        m = mp.mpc(mu.a, mu.b * sd) / 2
        l = mp.mpc(lam.a, lam.b * sd) / 2
        t = mp.sqrt(mpf(t_sq.numerator) / t_sq.denominator)
        new_t = t / (abs(m * zc - l) ** 2 + abs(m) ** 2 * t * t)
        assert abs(new_t**2 - mpf(got.numerator) / got.denominator) < mpf(10) ** -40
        checked += 1


def _rand_elem(rng, d):
    b = rng.randint(-6, 6)
    a = 2 * rng.randint(-8, 8) + (b * d) % 2
    return a, b


def test_height_transform_rejects_bad_matrix():
    d = -23
    with pytest.raises(ValueError):
        height_transform(AlgInt(2, 0, d), AlgInt(2, 0, d), AlgInt(2, 0, d), AlgInt(2, 0, d), FieldElem(0, 0, d), 1)


def test_covers():
    d = -23
    big = Hemisphere(AlgInt(0, 0, d), AlgInt(2, 0, d))  # radius 1 at 0
    z = FieldElem(Fraction(1, 2), 0, d)
    assert covers(big, z, Fraction(1, 4)) == (True, True)
    assert covers(big, z, Fraction(1, 5)) == (True, False)
    assert covers(big, z, Fraction(1, 3)) == (False, False)


def test_witness_face_at_388():
    # the hemisphere centred at 23(1 + sqrt(-97))/47 of radius 1/47 is on the floor
    r = result(-388)
    assert r.certified
    assert r.swan_sq == 2209
    mu = AlgInt(94, 0, -388)
    lam = AlgInt(46, 23, -388)
    # at the centroid of its cell it is strictly the highest among all pairs up to norm 2475
    face = next(f for f in r.faces if f.hemi.norm == 2209)
    assert face.hemi.center == Hemisphere(lam, mu).center
    cu = sum(p[0] for p in face.cell) / len(face.cell)
    cv = sum(p[1] for p in face.cell) / len(face.cell)
    z = FieldElem(cu, cv, -388)
    own = face.hemi.power(z)
    assert own > 0
    for h in candidate_hemispheres(Disc(-388), 2475):
        if h.key() != face.hemi.key():
            assert h.power(z) < own
