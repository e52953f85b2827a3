"""Floor-function continued fractions and small two-dimensional approximations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .qfield import AlgInt, FieldElem, is_coprime, lattice_points_near


@dataclass
class CFState:
    """Expansion of a rational ``z`` by ``z_{n+1} = 1/(z_n - floor(z_n))``.

    ``tails[n]`` is ``z_n`` and ``quotients[n]`` its floor.  Convergents are
    indexed from ``-1``: ``p_{-1} = q_0 = 0``, ``q_{-1} = p_0 = 1``, and
    ``convergent(n)`` returns ``(p_n, q_n)``.
    """

    z: Fraction
    quotients: list[int] = field(default_factory=list)
    tails: list[Fraction] = field(default_factory=list)
    ps: list[int] = field(default_factory=lambda: [0, 1])
    qs: list[int] = field(default_factory=lambda: [1, 0])
    terminated: bool = False

    def convergent(self, n: int) -> tuple[int, int]:
        return self.ps[n + 1], self.qs[n + 1]

    @property
    def last_index(self) -> int:
        return len(self.ps) - 2

    @property
    def convergents(self) -> list[tuple[int, int]]:
        """``(p_n, q_n)`` for ``n >= 1``."""
        return list(zip(self.ps[2:], self.qs[2:]))

    def error(self, n: int) -> Fraction:
        """``|q_n z - p_n|``."""
        p, q = self.convergent(n)
        return abs(q * self.z - p)


def cf_expand(z: Fraction, max_steps: int = 10**6) -> CFState:
    """Expand ``z`` until an integral tail or ``max_steps`` quotients."""
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    z = Fraction(z)
    st = CFState(z)
    zn = z
    while len(st.quotients) < max_steps:
        a = math.floor(zn)
        st.tails.append(zn)
        st.quotients.append(a)
        st.ps.append(a * st.ps[-1] + st.ps[-2])
        st.qs.append(a * st.qs[-1] + st.qs[-2])
        if zn == a:
            st.terminated = True
            break
        zn = 1 / (zn - a)
    return st


def cf_identities_hold(st: CFState) -> bool:
    """Check the standard convergent identities at every index where ``z_n`` exists.

    For ``n >= 1``: ``gcd(q_{n-1}, q_n) = 1``, ``|q_n z - p_n| = (-1)^n (p_n - q_n z)``,
    and ``|q_n z - p_n| = |q_{n-1} z - p_{n-1}| / z_n = 1/(z_n q_n + q_{n-1}) <= 1/q_{n+1}``.
    """
    z = st.z
    for n in range(1, len(st.tails)):
        p, q = st.convergent(n)
        p0, q0 = st.convergent(n - 1)
        zn = st.tails[n]
        if math.gcd(q0, q) != 1:
            return False
        err = abs(q * z - p)
        if err != (-1) ** n * (p - q * z):
            return False
        if err != abs(q0 * z - p0) / zn:
            return False
        if err != 1 / (zn * q + q0):
            return False
        if n + 1 <= st.last_index:
            if err > Fraction(1, st.convergent(n + 1)[1]):
                return False
    return True


@dataclass(frozen=True)
class ConvergentHit:
    p: int
    q: int
    index: int
    # q_n <= |q_{n-1} z - p_{n-1}|^{-1} <= 1/eps, strict on the left unless the
    # expansion terminates at n
    bracket_ok: bool


def first_convergent_below(z: Fraction, eps: Fraction) -> ConvergentHit:
    """The first convergent ``p_n/q_n`` (``n >= 1``) with ``|q_n z - p_n| < eps``."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    st = cf_expand(z)
    for n in range(1, st.last_index + 1):
        if st.error(n) < eps:
            p, q = st.convergent(n)
            ok = True
            if n >= 2:
                prev = st.error(n - 1)
                exact = st.error(n) == 0
                ok = (q <= 1 / prev if exact else q < 1 / prev) and 1 / prev <= 1 / eps
            return ConvergentHit(p, q, n, ok)
    raise AssertionError("rational expansion always reaches error 0")


def dirichlet_pair(zeta: FieldElem, rsq: Fraction, max_norm: int | None = None):
    """A pair ``(lam, mu)`` with ``0 < N(mu) < rsq`` and ``|mu*zeta - lam|^2 < |d|/(2*rsq)``.

    Returns ``None`` when no pair exists.  Existence is guaranteed once
    ``rsq >= 16|d|``.  ``mu`` is scanned by ascending norm.
    """
    rsq = Fraction(rsq)
    d = zeta.d
    target = Fraction(-d, 2) / rsq
    limit = math.ceil(rsq) - 1 if max_norm is None else max_norm
    for mu in elements_by_norm(d, limit):
        if mu.norm >= rsq:
            break
        w = zeta * mu
        pts = lattice_points_near(w, target)
        if pts:
            return pts[0], mu
    return None


def elements_by_norm(d: int, max_norm: int, half: bool = True) -> list[AlgInt]:
    """Nonzero elements with norm at most ``max_norm``, ascending by ``(norm, a, b)``.

    With ``half`` only one of each pair ``x, -x`` is kept.
    """
    absd = -d
    out = []
    bmax = math.isqrt(4 * max_norm // absd)
    for b in range(-bmax, bmax + 1):
        rest = 4 * max_norm - absd * b * b
        amax = math.isqrt(rest)
        for a in range(-amax, amax + 1):
            if (a - b * d) % 2 or (a == 0 and b == 0):
                continue
            x = AlgInt(a, b, d)
            if half and x.canonical() != x:
                continue
            out.append(x)
    out.sort(key=lambda x: (x.norm, x.a, x.b))
    return out


def coprime_pairs_near(zeta: FieldElem, mu: AlgInt, rsq: Fraction):
    """Coprime ``(lam, mu)`` with ``|mu*zeta - lam|^2 < rsq``."""
    w = zeta * mu
    return [lam for lam in lattice_points_near(w, rsq) if is_coprime(lam, mu)]
