"""Floor of the Bianchi polyhedron as an upper envelope, and Swan's number.

Heights are handled through squares.  Above ``z = u + v*sqrt(d)`` the hemisphere
for ``lam/mu`` has squared height ``power = 1/N(mu) - |z - lam/mu|^2``.  After
adding ``|z|^2`` this becomes the affine function

    A(z) = (1 - N(lam) + P*u + Q*v) / N(mu)

with integers ``P = (a1 a2 - b1 b2 d)/2`` and ``Q = |d| (a2 b1 - a1 b2)/2``.  The
floor is the upper envelope of these functions: a power diagram, built here by
exact half-plane clipping.

The computation runs over the quarter rectangle ``0 <= u <= 1/2``,
``0 <= v <= 1/4``.  The full rectangle ``|u| <= 1/2``, ``|v| <= 1/4`` tiles the
plane under translation by O, and the hemisphere set is invariant under
``z -> -z`` and ``z -> conj(z)``, so the quarter sees every face up to symmetry.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .qfield import AlgInt, Disc, FieldElem, bezout_solve, is_coprime, is_singular, reduce_mod

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Hemisphere:
    lam: AlgInt
    mu: AlgInt

    @property
    def norm(self) -> int:
        return self.mu.norm

    @property
    def center(self) -> FieldElem:
        return FieldElem.quotient(self.lam, self.mu)

    @property
    def radius_sq(self) -> Fraction:
        return Fraction(1, self.mu.norm)

    @property
    def affine(self) -> tuple[int, int, int, int]:
        """``(c0, P, Q, N)`` with ``A = (c0 + P u + Q v)/N``."""
        a1, b1, a2, b2, d = self.lam.a, self.lam.b, self.mu.a, self.mu.b, self.lam.d
        return (
            1 - self.lam.norm,
            (a1 * a2 - b1 * b2 * d) // 2,
            -d * (a2 * b1 - a1 * b2) // 2,
            self.mu.norm,
        )

    def power(self, z: FieldElem) -> Fraction:
        """Squared height above ``z`` (negative outside the disc)."""
        return self.radius_sq - (z - self.center).norm

    def key(self):
        return (self.mu.norm, self.center.u, self.center.v, self.mu.a, self.mu.b)

    def __str__(self):
        return f"({self.lam})/({self.mu})"


def canonical_pair(lam: AlgInt, mu: AlgInt, units) -> tuple[AlgInt, AlgInt]:
    """The unit multiple of ``(lam, mu)`` whose ``mu`` is least in ``(a, b)`` order, reversed."""
    best = None
    for e in units:
        m = e * mu
        k = (-m.a, -m.b)
        if best is None or k < best[0]:
            best = (k, e * lam, m)
    return best[1], best[2]


def height_transform(beta: AlgInt, alpha: AlgInt, mu: AlgInt, lam: AlgInt, z: FieldElem, t_sq) -> Fraction:
    """``t(gP)^2`` for ``g = [[beta, -alpha], [-mu, lam]]`` (or any matrix with that bottom row).

    ``t(gP) = t / (|mu z - lam|^2 + |mu|^2 t^2)``.
    """
    one = AlgInt(2, 0, beta.d)
    if beta * lam - alpha * mu != one:
        raise ValueError("matrix must have determinant 1")
    t_sq = Fraction(t_sq)
    denom = (z * mu - lam).norm + mu.norm * t_sq
    return t_sq / (denom * denom)


# -- exact covering test ---------------------------------------------------------


def covers(g: Hemisphere, target: FieldElem, target_radius_sq) -> tuple[bool, bool]:
    """Does the closed ball of ``g`` contain the ball of radius ``r`` about ``target``?

    Tests ``1/|mu| - |target - lam/mu| >= r`` exactly.  Returns
    ``(covers, on_boundary)``.
    """
    rsq = Fraction(target_radius_sq)
    if rsq <= 0:
        raise ValueError("target radius must be positive")
    R2 = g.radius_sq
    e2 = (target - g.center).norm
    # sqrt(R2) - sqrt(e2) >= sqrt(rsq)  <=>  sqrt(R2) >= sqrt(e2) + sqrt(rsq)
    #   <=>  R2 - e2 - rsq >= 2 sqrt(e2 rsq)
    lhs = R2 - e2 - rsq
    if lhs < 0:
        return False, False
    diff = lhs * lhs - 4 * e2 * rsq
    return diff >= 0, diff == 0


# -- exact planar helpers ---------------------------------------------------------


def _lin(func_g, func_f):
    """Integer coefficients of ``N_g N_f (A_g - A_f)`` as ``(l0, lu, lv)``."""
    c0, p, q, n = func_g
    e0, r, s, m = func_f
    return c0 * m - e0 * n, p * m - r * n, q * m - s * n


def _eval(l, pt: Point) -> Fraction:
    return l[0] + l[1] * pt[0] + l[2] * pt[1]


def _clip(poly: list[Point], l, keep_positive: bool) -> list[Point]:
    """Clip a convex polygon to ``l >= 0`` (or ``l <= 0``)."""
    sgn = 1 if keep_positive else -1
    vals = [sgn * _eval(l, p) for p in poly]
    out: list[Point] = []
    k = len(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        fp, fq = vals[i], vals[(i + 1) % k]
        if fp >= 0:
            out.append(p)
        if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return _dedupe(out)


def _dedupe(poly: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in poly:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _area2(poly: list[Point]) -> Fraction:
    s = Fraction(0)
    k = len(poly)
    for i in range(k):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % k]
        s += x1 * y2 - x2 * y1
    return s


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points) -> list[Point]:
    """Counter-clockwise convex hull, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _inside(poly: list[Point], pt: Point) -> int:
    """1 strictly inside, 0 on the boundary, -1 outside (counter-clockwise ``poly``)."""
    res = 1
    k = len(poly)
    for i in range(k):
        c = _cross(poly[i], poly[(i + 1) % k], pt)
        if c < 0:
            return -1
        if c == 0:
            res = 0
    return res


# -- the diagram ------------------------------------------------------------------


@dataclass
class FloorFace:
    hemi: Hemisphere | None
    func: tuple[int, int, int, int]
    cell: list[Point]
    heights_sq: list[Fraction] = field(default_factory=list)

    def value(self, pt: Point) -> Fraction:
        c0, p, q, n = self.func
        return Fraction(c0 + p * pt[0] + q * pt[1], n)


class FloorDiagram:
    """Incremental upper envelope of hemisphere functions over a convex polygon."""

    GRID = 32

    def __init__(self, disc: Disc, region: list[Point] | None = None):
        self.disc = disc
        self.absd = disc.abs
        if region is None:
            region = [(Fraction(0), Fraction(0)), (HALF, Fraction(0)), (HALF, QUARTER), (Fraction(0), QUARTER)]
        self.region = region
        self.sqrt_d = math.sqrt(self.absd)
        us = [float(p[0]) for p in region]
        ys = [float(p[1]) * self.sqrt_d for p in region]
        self.box = (min(us), max(us), min(ys), max(ys))
        m = 100 * (self.absd + 1)
        self.faces: dict[int, FloorFace] = {}
        self.grid: dict[tuple[int, int], set[int]] = {}
        self.face_cells: dict[int, list[tuple[int, int]]] = {}
        self.negative: set[int] = set()
        self._next = 0
        self.version = 0
        self._add_face(FloorFace(None, (-m, 0, 0, 1), list(region)))

    # geometry bookkeeping

    def _height(self, face: FloorFace, pt: Point) -> Fraction:
        return face.value(pt) - pt[0] * pt[0] - self.absd * pt[1] * pt[1]

    def _grid_range(self, x0, x1, y0, y1):
        u0, u1, v0, v1 = self.box
        gu = (u1 - u0) / self.GRID
        gv = (v1 - v0) / self.GRID
        i0 = max(0, int((x0 - u0) / gu) - 1)
        i1 = min(self.GRID - 1, int((x1 - u0) / gu) + 1)
        j0 = max(0, int((y0 - v0) / gv) - 1)
        j1 = min(self.GRID - 1, int((y1 - v0) / gv) + 1)
        return [(i, j) for i in range(i0, i1 + 1) for j in range(j0, j1 + 1)]

    def _add_face(self, face: FloorFace) -> int:
        fid = self._next
        self._next += 1
        face.heights_sq = [self._height(face, p) for p in face.cell]
        self.faces[fid] = face
        xs = [float(p[0]) for p in face.cell]
        ys = [float(p[1]) * self.sqrt_d for p in face.cell]
        cells = self._grid_range(min(xs), max(xs), min(ys), max(ys))
        self.face_cells[fid] = cells
        for c in cells:
            self.grid.setdefault(c, set()).add(fid)
        if min(face.heights_sq) < 0:
            self.negative.add(fid)
        return fid

    def _remove_face(self, fid: int) -> FloorFace:
        for c in self.face_cells.pop(fid):
            self.grid[c].discard(fid)
        self.negative.discard(fid)
        return self.faces.pop(fid)

    def _nearby(self, hemi_float) -> set[int]:
        cu, cy, r = hemi_float
        out = set(self.negative)
        for c in self._grid_range(cu - r, cu + r, cy - r, cy + r):
            out |= self.grid.get(c, set())
        return out

    # insertion

    def insert(self, hemi: Hemisphere) -> bool:
        """Add a hemisphere; returns whether it gained a cell of positive area."""
        func = hemi.affine
        c = hemi.center
        cu, cy = float(c.u), float(c.v) * self.sqrt_d
        r = 1 / math.sqrt(hemi.norm)
        affected = []
        for fid in sorted(self._nearby((cu, cy, r))):
            face = self.faces[fid]
            l = _lin(func, face.func)
            if any(_eval(l, p) > 0 for p in face.cell):
                affected.append((fid, l))
        if not affected:
            return False
        pieces: list[Point] = []
        updates = []
        for fid, l in affected:
            face = self.faces[fid]
            pieces.extend(_clip(face.cell, l, True))
            updates.append((fid, _clip(face.cell, l, False)))
        cell = _hull(pieces)
        if len(cell) < 3 or _area2(cell) == 0:
            return False
        for fid, rest in updates:
            old = self._remove_face(fid)
            if len(rest) >= 3 and _area2(rest) != 0:
                self._add_face(FloorFace(old.hemi, old.func, rest))
        self._add_face(FloorFace(hemi, func, cell))
        self.version += 1
        return True

    # queries

    def vertex_heights(self) -> dict[Point, Fraction]:
        out: dict[Point, Fraction] = {}
        for face in self.faces.values():
            for p, h in zip(face.cell, face.heights_sq):
                out[p] = h
        return out

    def low_vertices(self, bound: float):
        """Arrays ``(u, v, h)`` of vertices with squared height below ``bound``."""
        pts = {}
        for face in self.faces.values():
            for p, h in zip(face.cell, face.heights_sq):
                if float(h) < bound:
                    pts[p] = h
        if not pts:
            return np.empty(0), np.empty(0), np.empty(0)
        keys = list(pts)
        u = np.array([float(p[0]) for p in keys])
        v = np.array([float(p[1]) for p in keys])
        h = np.array([float(pts[p]) for p in keys])
        return u, v, h

    def owner(self, pt: Point) -> list[Hemisphere | None]:
        """Hemispheres whose cells contain ``pt`` (more than one on shared boundaries)."""
        out = []
        for face in self.faces.values():
            if _inside(face.cell, pt) >= 0:
                out.append(face.hemi)
        return out

    def has_dummy(self) -> bool:
        return any(f.hemi is None for f in self.faces.values())

    def sorted_faces(self) -> list[FloorFace]:
        return sorted(
            (f for f in self.faces.values() if f.hemi is not None),
            key=lambda f: f.hemi.key(),
        )


# -- candidates ---------------------------------------------------------------------


def _mu_list(d: int, lo: int, hi: int) -> list[AlgInt]:
    """``mu`` up to sign (and units) with ``lo < N(mu) <= hi``, by ascending ``(N, a, b)``."""
    absd = -d
    out = []
    bmax = math.isqrt(4 * hi // absd)
    for b in range(0, bmax + 1):
        amax = math.isqrt(4 * hi - absd * b * b)
        for a in range(-amax, amax + 1):
            if (a - b * d) % 2:
                continue
            if b == 0 and a <= 0:
                continue
            n = (a * a + absd * b * b) // 4
            if lo < n <= hi:
                out.append(AlgInt(a, b, d))
    if absd in (3, 4):
        # one representative per unit orbit
        units = Disc(d).units
        seen = set()
        keep = []
        for m in out:
            orbit = min(((e * m).a, (e * m).b) for e in units)
            if orbit not in seen:
                seen.add(orbit)
                keep.append(m)
        out = keep
    out.sort(key=lambda x: (x.norm, x.a, x.b))
    return out


def _lambda_batch(mu: AlgInt, region_box, sqrt_d: float):
    """Integer arrays ``(a, b)`` of ``lam`` with ``lam/mu`` within ``1/|mu|`` of the region box.

    Coprimality is tested with ``gcd(N(lam), N(mu), (a1 a2 - b1 b2 d)/2) = 1``.
    """
    d = mu.d
    n = mu.norm
    r = 1 / math.sqrt(n) + 1e-9
    u0, u1, y0, y1 = region_box
    mc = complex(mu)
    corners = [complex(x, y) * mc for x in (u0 - r, u1 + r) for y in (y0 - r, y1 + r)]
    re = [c.real for c in corners]
    im = [c.imag for c in corners]
    amin = math.floor(2 * min(re)) - 1
    amax = math.ceil(2 * max(re)) + 1
    bmin = math.floor(2 * min(im) / sqrt_d) - 1
    bmax = math.ceil(2 * max(im) / sqrt_d) + 1
    A, B = np.meshgrid(np.arange(amin, amax + 1, dtype=np.int64), np.arange(bmin, bmax + 1, dtype=np.int64))
    A = A.ravel()
    B = B.ravel()
    ok = (A - B * d) % 2 == 0
    A, B = A[ok], B[ok]
    a2, b2 = mu.a, mu.b
    P = (A * a2 - B * b2 * d) // 2
    W = a2 * B - A * b2
    cu = P / (2.0 * n)
    cy = W / (4.0 * n) * sqrt_d
    du = np.maximum(np.maximum(u0 - cu, cu - u1), 0.0)
    dy = np.maximum(np.maximum(y0 - cy, cy - y1), 0.0)
    near = du * du + dy * dy < r * r
    A, B, P = A[near], B[near], P[near]
    nl = (A * A - B * B * d) // 4
    g = np.gcd(np.gcd(nl, n), P)
    keep = g == 1
    return A[keep], B[keep]


def candidate_hemispheres(disc: Disc, cap_sq: int, lo: int = 0) -> list[Hemisphere]:
    """Hemispheres with ``lo < N(mu) <= cap_sq`` whose discs meet the quarter rectangle.

    One of ``(lam, mu)``, ``(-lam, -mu)`` is kept (one unit multiple for ``d = -3, -4``).
    """
    if cap_sq < 1:
        raise ValueError("cap_sq must be at least 1")
    sq = math.sqrt(disc.abs)
    box = (0.0, 0.5, 0.0, 0.25 * sq)
    out = []
    for mu in _mu_list(disc.d, lo, cap_sq):
        A, B = _lambda_batch(mu, box, sq)
        for a, b in sorted(zip(A.tolist(), B.tolist())):
            out.append(Hemisphere(AlgInt(a, b, disc.d), mu))
    return out


# -- building the envelope ------------------------------------------------------------


class _Builder:
    """Feeds candidates into a :class:`FloorDiagram` batch by batch (one ``mu`` per batch)."""

    def __init__(self, disc: Disc, workers: int = 1):
        self.disc = disc
        self.diagram = FloorDiagram(disc)
        self.sqrt_d = math.sqrt(disc.abs)
        self.box = (0.0, 0.5, 0.0, 0.25 * self.sqrt_d)
        self.workers = workers
        self.tested = 0
        self.inserted = 0

    def _prefilter(self, mu: AlgInt, A, B):
        """Indices of candidates that may beat the current envelope at some vertex."""
        n = mu.norm
        u, v, h = self.diagram.low_vertices(1.0 / n + 1e-9)
        if len(u) == 0 or len(A) == 0:
            return []
        d = self.disc.d
        a2, b2 = mu.a, mu.b
        cu = ((A * a2 - B * b2 * d) / 2) / (2.0 * n)
        cv = ((a2 * B - A * b2) / 4.0) / n
        keep = np.zeros(len(A), dtype=bool)
        chunk = max(1, 2_000_000 // len(u))
        for s in range(0, len(A), chunk):
            du = u[None, :] - cu[s : s + chunk, None]
            dv = v[None, :] - cv[s : s + chunk, None]
            pw = 1.0 / n - du * du - self.disc.abs * dv * dv
            keep[s : s + chunk] = (pw - h[None, :] > -1e-9).any(axis=1)
        return np.nonzero(keep)[0].tolist()

    def feed(self, mus: list[AlgInt], deadline: float | None = None) -> bool:
        """Process the batches for ``mus``; returns False if the deadline passed."""
        d = self.disc.d
        batch_size = max(1, self.workers) * 8
        for start in range(0, len(mus), batch_size):
            if deadline is not None and time.monotonic() > deadline:
                return False
            chunk = mus[start : start + batch_size]
            if self.workers > 1:
                with ThreadPoolExecutor(self.workers) as ex:
                    lams = list(ex.map(lambda m: _lambda_batch(m, self.box, self.sqrt_d), chunk))
            else:
                lams = [_lambda_batch(m, self.box, self.sqrt_d) for m in chunk]
            for mu, (A, B) in zip(chunk, lams):
                order = np.lexsort((B, A))
                A, B = A[order], B[order]
                for i in self._prefilter(mu, A, B):
                    self.tested += 1
                    hemi = Hemisphere(AlgInt(int(A[i]), int(B[i]), d), mu)
                    if self.diagram.insert(hemi):
                        self.inserted += 1
        return True


def floor_envelope(candidates: list[Hemisphere], disc: Disc) -> list[FloorFace]:
    """Faces of the upper envelope of ``candidates`` over the quarter rectangle.

    Candidates are inserted by ascending norm; the resulting diagram does not
    depend on the order because hemispheres are distinct.
    """
    if not candidates:
        raise ValueError("need at least one candidate")
    diagram = FloorDiagram(disc)
    for h in sorted(candidates, key=lambda h: h.key()):
        diagram.insert(h)
    return diagram.sorted_faces()


@dataclass
class SwanResult:
    disc: Disc
    swan_sq: int | None
    faces: list[FloorFace]
    min_vertex_height_sq: Fraction | None
    cap_used_sq: int
    certified: bool
    singular_vertices: list[Point] = field(default_factory=list)
    reason: str = ""

    def face_hemispheres(self) -> list[Hemisphere]:
        return [f.hemi for f in self.faces]


def _certify(diagram: FloorDiagram, cap_sq: int):
    if diagram.has_dummy():
        return False, None, [], "region not yet covered"
    d = diagram.disc.d
    min_h = None
    singular = []
    for p, h in sorted(diagram.vertex_heights().items()):
        if h < 0:
            return False, None, [], "uncovered vertex"
        if h == 0:
            if not is_singular(FieldElem(p[0], p[1], d)):
                return False, None, [], "non-singular vertex at height 0"
            singular.append(p)
        elif min_h is None or h < min_h:
            min_h = h
    ok = min_h is not None and cap_sq * min_h >= 1
    return ok, min_h, singular, "" if ok else "cap below 1/min vertex height"


def swan_number(
    disc: Disc,
    cap_sq: int | None = None,
    budget_secs: float | None = None,
    max_cap_sq: int | None = None,
    workers: int = 1,
) -> SwanResult:
    """Swan's number squared, certified by the vertex-height criterion.

    Starts from ``cap_sq`` (default ``max(|d|, 16)``) and doubles until every
    non-singular vertex of the floor has squared height at least ``1/cap``.
    """
    if max_cap_sq is None:
        from .bounds import upper_bound

        max_cap_sq = math.floor(upper_bound(disc).a)
    cap = cap_sq if cap_sq is not None else max(disc.abs, 16)
    deadline = None if budget_secs is None else time.monotonic() + budget_secs
    builder = _Builder(disc, workers)
    done = 0
    while True:
        cap = min(cap, max_cap_sq)
        finished = builder.feed(_mu_list(disc.d, done, cap), deadline)
        if not finished:
            return _result(builder.diagram, done, False, None, [], "time budget exhausted")
        done = cap
        ok, min_h, singular, why = _certify(builder.diagram, cap)
        if ok or cap >= max_cap_sq:
            return _result(builder.diagram, cap, ok, min_h, singular, why)
        cap *= 2


def _result(diagram, cap, ok, min_h, singular, why) -> SwanResult:
    faces = diagram.sorted_faces()
    swan_sq = max((f.hemi.norm for f in faces), default=None)
    return SwanResult(diagram.disc, swan_sq, faces, min_h, cap, ok, singular, why)


# -- full face list and generators -------------------------------------------------


def full_faces(result: SwanResult) -> list[Hemisphere]:
    """Face hemispheres over the whole rectangle, one per translation class."""
    d = result.disc.d
    units = result.disc.units
    seen = {}
    for f in result.faces:
        lam, mu = f.hemi.lam, f.hemi.mu
        for l2, m2 in ((lam, mu), (-lam, mu), (lam.conj(), mu.conj()), (-lam.conj(), mu.conj())):
            l2, m2 = canonical_pair(l2, m2, units)
            c = FieldElem.quotient(l2, m2)
            r = c.reduce()
            shift = (c - r)
            t = AlgInt(int(2 * shift.u), int(2 * shift.v), d)
            l3 = l2 - t * m2
            key = (m2.norm, r.u, r.v, m2.a, m2.b)
            seen.setdefault(key, Hemisphere(l3, m2))
    return [seen[k] for k in sorted(seen)]


def emit_generators(result: SwanResult) -> list[tuple[AlgInt, AlgInt, AlgInt, AlgInt]]:
    """Matrices ``(a, b, c, e)`` meaning ``[[a, b], [c, e]]`` generating the group.

    One matrix ``[[beta, -alpha], [-mu, lam]]`` per face, plus the translations
    by 1 and by ``theta``.
    """
    if not result.certified:
        raise ValueError("generators need a certified result")
    d = result.disc.d
    one = AlgInt(2, 0, d)
    zero = AlgInt(0, 0, d)
    mats = [
        (one, one, zero, one),
        (one, Disc(d).theta, zero, one),
    ]
    for h in full_faces(result):
        alpha, beta = bezout_solve(h.lam, h.mu)
        mats.append((beta, -alpha, -h.mu, h.lam))
    return mats


def det(m) -> AlgInt:
    a, b, c, e = m
    return a * e - b * c


def is_reduced_mod(x: AlgInt, mu: AlgInt) -> bool:
    return reduce_mod(x, mu).norm == x.norm
