"""Lower and upper bounds for Swan's number, with exact comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .jacobsthal import fixed_point_j
from .qfield import AlgInt, Disc, FieldElem, factorize, is_coprime, is_singular, lattice_points_near


def surd_sign(a: Fraction, b: Fraction, s: int) -> int:
    """Sign of ``a + b*sqrt(s)`` for ``s >= 0``."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0) if s else 0
    if sb == 0 or sa == sb:
        return sa or sb
    if sa == 0:
        return sb
    # opposite signs: the larger square wins
    diff = a * a - b * b * s
    return sa if diff > 0 else (sb if diff < 0 else 0)


def _split_square(n: int) -> tuple[int, int]:
    """``n = k^2 * s`` with ``s`` squarefree."""
    k, s = 1, 1
    for p, e in factorize(n).items():
        k *= p ** (e // 2)
        if e % 2:
            s *= p
    return k, s


@dataclass(frozen=True)
class SurdValue:
    """A nonnegative real ``x`` given by its exact square ``x^2 = a + b*sqrt(s)``.

    ``s`` is squarefree (``s = 1`` with ``b = 0`` for rational squares).
    """

    a: Fraction
    b: Fraction = Fraction(0)
    s: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.s < 1:
            raise ValueError("s must be positive")
        if self.b and _split_square(self.s)[0] != 1:
            raise ValueError("s must be squarefree")
        if surd_sign(self.a, self.b, self.s) < 0:
            raise ValueError("square must be nonnegative")

    @classmethod
    def from_square(cls, q) -> SurdValue:
        return cls(Fraction(q))

    @classmethod
    def sqrt_of(cls, n) -> SurdValue:
        """``sqrt(n)`` for rational ``n >= 0``."""
        return cls(Fraction(n))

    @property
    def square(self) -> tuple[Fraction, Fraction, int]:
        return self.a, self.b, self.s

    @property
    def is_rational_square(self) -> bool:
        return self.b == 0

    def _cmp(self, other) -> int:
        if not isinstance(other, SurdValue):
            other = Fraction(other)
            if other < 0:
                return 1
            other = SurdValue(other * other)
        if self.b and other.b and self.s != other.s:
            return _cmp_two_surds(self, other)
        s = self.s if self.b else other.s
        return surd_sign(self.a - other.a, self.b - other.b, s)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (SurdValue, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash((self.a, self.b, self.s))

    def scaled(self, k) -> SurdValue:
        """``k * x`` for rational ``k >= 0``."""
        k2 = Fraction(k) ** 2
        return SurdValue(self.a * k2, self.b * k2, self.s)

    def ceil(self) -> int:
        """Least integer ``n >= x``."""
        n = math.isqrt(max(0, math.floor(float(self.a) + float(self.b) * math.sqrt(self.s))))
        while n > 0 and self <= n - 1:
            n -= 1
        while self > n:
            n += 1
        return n

    def decimal(self, digits: int = 12) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 30
            sq = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            if self.b:
                sq += Decimal(self.b.numerator) / Decimal(self.b.denominator) * Decimal(self.s).sqrt()
            val = sq.sqrt() if sq > 0 else Decimal(0)
            ctx.prec = digits
            return +val

    def __float__(self):
        return math.sqrt(max(0.0, float(self.a) + float(self.b) * math.sqrt(self.s)))

    def __str__(self):
        return format(self.decimal(), "f")

    def to_json(self) -> dict:
        return {
            "sq_rational": [self.a.numerator, self.a.denominator],
            "sq_surd_coeff": [self.b.numerator, self.b.denominator],
            "sq_surd_radicand": self.s,
        }


def _cmp_two_surds(x: SurdValue, y: SurdValue) -> int:
    # sign of (xa - ya) + xb*sqrt(xs) - yb*sqrt(ys): isolate and square once
    c = x.a - y.a
    # c + p - q with p = xb*sqrt(xs), q = yb*sqrt(ys)
    lhs_sign = surd_sign(c, x.b, x.s)
    q_sign = (y.b > 0) - (y.b < 0)
    if lhs_sign != q_sign:
        return (lhs_sign > q_sign) - (lhs_sign < q_sign)
    if lhs_sign == 0:
        return 0
    # same sign: compare squares (c + p)^2 vs q^2
    sq = surd_sign(c * c + x.b * x.b * x.s - y.b * y.b * y.s, 2 * c * x.b, x.s)
    return sq * lhs_sign


# -- divisors and the two bounds ----------------------------------------------


def max_proper_divisor(disc: Disc) -> tuple[AlgInt, int]:
    """A proper divisor of ``d`` of largest norm, and that norm."""
    d = disc.d
    p = min(factorize(disc.abs))
    q = d // p
    if q * q >= disc.abs:
        return AlgInt(2 * q, 0, d), q * q
    return disc.sqrt_d, disc.abs


def lower_bound(disc: Disc, round_up: bool = False) -> SurdValue:
    """``max(|delta|/8, (sqrt|d| - 2)/sqrt 3)``; with ``round_up`` the next integer."""
    _, dsq = max_proper_divisor(disc)
    best = SurdValue(Fraction(dsq, 64))
    if disc.abs >= 4:
        # ((sqrt D - 2)/sqrt 3)^2 = (D + 4)/3 - (4/3) sqrt D
        k, s = _split_square(disc.abs)
        other = SurdValue(Fraction(disc.abs + 4, 3), Fraction(-4 * k, 3) if s > 1 else 0, s)
        if s == 1:
            other = SurdValue(Fraction((k - 2) ** 2, 3))
        if other > best:
            best = other
    if round_up:
        return SurdValue(best.ceil() ** 2)
    return best


def delta_dominates(disc: Disc, J: int | None = None) -> bool:
    """Whether ``max(J sqrt|d|, |delta|) = |delta|``."""
    if J is None:
        J = fixed_point_j(disc)
    return max_proper_divisor(disc)[1] > J * J * disc.abs


def upper_bound(disc: Disc, J: int | None = None) -> SurdValue:
    """``14 J max(|delta|, J sqrt|d|)``."""
    _, dsq = max_proper_divisor(disc)
    if J is None:
        J = fixed_point_j(disc, dsq)
    return SurdValue(196 * J * J * max(dsq, J * J * disc.abs))


@dataclass(frozen=True)
class BoundsReport:
    disc: Disc
    delta_norm_sq: int
    J: int
    lower: SurdValue
    upper: SurdValue
    swan_sq: int | None = None

    def bracket_holds(self) -> bool:
        ok = self.lower < self.upper
        if self.swan_sq is not None:
            s = SurdValue(self.swan_sq)
            ok = ok and self.lower < s < self.upper
        return ok


def bounds_report(disc: Disc, swan_sq: int | None = None) -> BoundsReport:
    _, dsq = max_proper_divisor(disc)
    J = fixed_point_j(disc, dsq)
    return BoundsReport(disc, dsq, J, lower_bound(disc), upper_bound(disc, J), swan_sq)


# -- witnesses -------------------------------------------------------------------


def lower_witness(disc: Disc) -> tuple[FieldElem, SurdValue] | None:
    """A non-singular point left uncovered by every hemisphere with ``|mu| < |delta|/8``.

    Only defined when ``|delta| > 4 sqrt|d|``; returns ``None`` otherwise.
    """
    d = disc.d
    _, dsq = max_proper_divisor(disc)
    if dsq <= 16 * disc.abs:
        return None
    p = min(factorize(disc.abs))
    for a, b in ((0, -1), (p, -1)):
        if (a - b * d) % 2:
            continue
        pi = AlgInt(a, b, d)
        if pi.norm % p == 0:
            break
    else:  # pragma: no cover - one of the two always lies over p
        raise AssertionError("no element over p")
    m = pi.norm // p
    inv = pow(p, -1, m) if m > 1 else 0
    zeta = FieldElem.quotient(AlgInt(2 * inv * p, 0, d), pi)
    return zeta, SurdValue(Fraction(dsq, 64))


@dataclass(frozen=True)
class Cover:
    lam: AlgInt
    mu: AlgInt

    @property
    def center(self) -> FieldElem:
        return FieldElem.quotient(self.lam, self.mu)


def verify_uncovered(zeta: FieldElem, cap_sq: int) -> tuple[bool, Cover | None]:
    """Is ``zeta`` outside every hemisphere with ``0 < N(mu) <= cap_sq``?

    Returns ``(True, None)`` or ``(False, cover)`` for the first covering pair
    found by ascending ``N(mu)``.
    """
    from .diophantine import elements_by_norm

    if cap_sq < 1:
        raise ValueError("cap_sq must be at least 1")
    for mu in elements_by_norm(zeta.d, cap_sq):
        w = zeta * mu
        for lam in lattice_points_near(w, Fraction(1)):
            if is_coprime(lam, mu):
                return False, Cover(lam, mu)
    return True, None


def zeta6_check(disc: Disc):
    """Check that ``e^{i pi/3}`` lies in no hemisphere other than those centred at 0 and 1.

    Scans coprime ``(lam, mu)`` with ``N(mu) <= ((sqrt|d| - 2)/sqrt 3)^2`` and
    returns ``(True, None)`` or ``(False, (lam, mu))`` for a pair with
    ``|mu zeta6 - lam| <= 1`` and ``lam/mu`` not 0 or 1.
    """
    from .diophantine import elements_by_norm

    D = disc.abs
    d = disc.d
    if D < 4:
        return True, None
    k, s = _split_square(D)
    sq = SurdValue(Fraction(D + 4, 3), Fraction(-4 * k, 3), s) if s > 1 else SurdValue(Fraction((k - 2) ** 2, 3))
    nmax = math.floor(float(sq.a) + float(sq.b) * math.sqrt(sq.s)) + 1
    sqrt3 = math.sqrt(3)
    sqrtD = math.sqrt(D)
    for mu in elements_by_norm(d, nmax, half=False):
        if SurdValue(mu.norm) > sq:
            continue
        x, y = Fraction(mu.a, 2), Fraction(mu.b, 2)
        # mu*zeta6 as a complex number
        wr = float(x) / 2 - float(y) * sqrtD * sqrt3 / 2
        wi = float(x) * sqrt3 / 2 + float(y) * sqrtD / 2
        for t2 in range(math.floor(2 * (wi - 1.01) / sqrtD), math.ceil(2 * (wi + 1.01) / sqrtD) + 1):
            for s2 in range(math.floor(2 * (wr - 1.01)), math.ceil(2 * (wr + 1.01)) + 1):
                if (s2 - t2 * d) % 2:
                    continue
                lam = AlgInt(s2, t2, d)
                if lam == AlgInt(0, 0, d) or lam == mu or not is_coprime(lam, mu):
                    continue
                sr, ti = Fraction(s2, 2), Fraction(t2, 2)
                q0 = (x / 2 - sr) ** 2 + Fraction(3 * D, 4) * y * y + Fraction(3, 4) * x * x + D * (y / 2 - ti) ** 2
                q1 = -(x / 2 - sr) * y + x * (y / 2 - ti)
                if surd_sign(q0 - 1, q1, 3 * D) <= 0:
                    return False, (lam, mu)
    return True, None
