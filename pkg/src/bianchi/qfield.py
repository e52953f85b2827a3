"""Exact arithmetic in the maximal order of an imaginary quadratic field.

Elements are stored as ``(a + b*sqrt(d))/2`` with ``a = b*d (mod 2)``.  Points of
the field are stored in the coordinates ``(u, v)`` meaning ``u + v*sqrt(d)``, so
that ``|u + v*sqrt(d)|^2 = u^2 + |d| v^2`` stays rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator


def _squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def is_fundamental(d: int) -> bool:
    """True for negative fundamental discriminants."""
    if d >= 0:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def nearest_fundamental(d: int, count: int = 2) -> list[int]:
    """The ``count`` fundamental discriminants closest to ``d`` (ties toward 0)."""
    found = []
    k = 0
    while len(found) < count:
        for c in (d + k, d - k) if k else (d,):
            if c < 0 and is_fundamental(c) and c not in found:
                found.append(c)
        k += 1
    return found[:count]


def factorize(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def primes_below(n: int) -> list[int]:
    if n <= 2:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for k in range(2, math.isqrt(n - 1) + 1):
        if sieve[k]:
            sieve[k * k :: k] = bytearray(len(range(k * k, n, k)))
    return [k for k in range(n) if sieve[k]]


class Disc:
    """A negative fundamental discriminant and its maximal order."""

    def __init__(self, d: int):
        d = int(d)
        if not is_fundamental(d):
            raise ValueError(
                f"{d} is not a negative fundamental discriminant; "
                f"nearest: {nearest_fundamental(d)}"
            )
        self.d = d
        self.abs = -d
        # 0 when d = 0 mod 4, 1 when d = 1 mod 4
        self.parity = d % 2

    def __repr__(self):
        return f"Disc({self.d})"

    def __eq__(self, other):
        return isinstance(other, Disc) and other.d == self.d

    def __hash__(self):
        return hash(("Disc", self.d))

    def __int__(self):
        return self.d

    def elem(self, a: int, b: int = 0) -> AlgInt:
        return AlgInt(a, b, self.d)

    def integer(self, n: int) -> AlgInt:
        return AlgInt(2 * n, 0, self.d)

    @property
    def one(self) -> AlgInt:
        return self.integer(1)

    @property
    def theta(self) -> AlgInt:
        """Second basis vector of O over Z, ``(parity + sqrt(d))/2``."""
        return AlgInt(self.parity, 1, self.d)

    @property
    def sqrt_d(self) -> AlgInt:
        return AlgInt(0, 2, self.d)

    @cached_property
    def units(self) -> list[AlgInt]:
        return [x for x in self.elements_of_norm(1)]

    @cached_property
    def class_number(self) -> int:
        return len(reduced_forms(self.d))

    def elements_of_norm(self, n: int) -> list[AlgInt]:
        """All elements of norm exactly ``n``."""
        out = []
        bmax = math.isqrt(4 * n // self.abs) if n else 0
        for b in range(-bmax, bmax + 1):
            rest = 4 * n - self.abs * b * b
            if rest < 0:
                continue
            a = math.isqrt(rest)
            if a * a != rest or (a - b * self.d) % 2:
                continue
            out.append(AlgInt(a, b, self.d))
            if a:
                out.append(AlgInt(-a, b, self.d))
        return sorted(out, key=lambda x: (x.a, x.b))

    def represents(self, n: int) -> bool:
        """Whether some element has norm ``n``."""
        bmax = math.isqrt(4 * n // self.abs)
        for b in range(bmax + 1):
            rest = 4 * n - self.abs * b * b
            a = math.isqrt(rest)
            if a * a == rest and (a - b * self.d) % 2 == 0:
                return True
        return False


@dataclass(frozen=True)
class AlgInt:
    """The algebraic integer ``(a + b*sqrt(d))/2``."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if (self.a - self.b * self.d) % 2:
            raise ValueError(f"({self.a} + {self.b}*sqrt({self.d}))/2 is not integral")

    def _check(self, other):
        if isinstance(other, int):
            return AlgInt(2 * other, 0, self.d)
        if other.d != self.d:
            raise ValueError("elements of different orders")
        return other

    def __add__(self, other):
        o = self._check(other)
        return AlgInt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return AlgInt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return AlgInt(-self.a, -self.b, self.d)

    def __mul__(self, other):
        o = self._check(other)
        return AlgInt(
            (self.a * o.a + self.b * o.b * self.d) // 2,
            (self.a * o.b + self.b * o.a) // 2,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> AlgInt:
        return AlgInt(self.a, -self.b, self.d)

    @property
    def norm(self) -> int:
        return (self.a * self.a - self.b * self.b * self.d) // 4

    @property
    def trace(self) -> int:
        return self.a

    def __bool__(self):
        return bool(self.a or self.b)

    def exact_div(self, other: AlgInt) -> AlgInt:
        """``self / other``, raising ``ArithmeticError`` when not in O."""
        o = self._check(other)
        n = o.norm
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        p = self * o.conj()
        if p.a % n or p.b % n:
            raise ArithmeticError(f"{other} does not divide {self}")
        return AlgInt(p.a // n, p.b // n, self.d)

    def divides(self, other: AlgInt) -> bool:
        try:
            self._check(other).exact_div(self)
        except ArithmeticError:
            return False
        return True

    def canonical(self) -> AlgInt:
        """Representative of ``{x, -x}`` with ``a > 0``, or ``a = 0`` and ``b >= 0``."""
        if self.a < 0 or (self.a == 0 and self.b < 0):
            return -self
        return self

    def to_point(self) -> FieldElem:
        return FieldElem(Fraction(self.a, 2), Fraction(self.b, 2), self.d)

    def __complex__(self):
        return complex(self.a / 2, self.b * math.sqrt(-self.d) / 2)

    def __str__(self):
        return _format_uv(Fraction(self.a, 2), Fraction(self.b, 2), self.d)


def _format_uv(u: Fraction, v: Fraction, d: int) -> str:
    if d % 4 == 0:
        # u + v*sqrt(d) = u + 2v*sqrt(d/4)
        rad, v = f"sqrt({d // 4})", 2 * v
    else:
        rad = f"sqrt({d})"
    if v == 0:
        return str(u)
    vs = "" if v == 1 else "-" if v == -1 else f"{v}*"
    if u == 0:
        return f"{vs}{rad}"
    sign = "+" if v > 0 else "-"
    vs = "" if abs(v) == 1 else f"{abs(v)}*"
    return f"{u} {sign} {vs}{rad}"


@dataclass(frozen=True)
class FieldElem:
    """The field element ``u + v*sqrt(d)`` with rational ``u``, ``v``."""

    u: Fraction
    v: Fraction
    d: int

    @classmethod
    def from_parts(cls, num: AlgInt, den: int) -> FieldElem:
        return cls(Fraction(num.a, 2 * den), Fraction(num.b, 2 * den), num.d)

    @classmethod
    def quotient(cls, lam: AlgInt, mu: AlgInt) -> FieldElem:
        """``lam / mu`` for nonzero ``mu``."""
        n = mu.norm
        p = lam * mu.conj()
        return cls(Fraction(p.a, 2 * n), Fraction(p.b, 2 * n), lam.d)

    @property
    def den(self) -> int:
        """Least positive integer ``n`` with ``n * self`` in O."""
        den = math.lcm((2 * self.u).denominator, (2 * self.v).denominator)
        if (2 * self.u * den - 2 * self.v * den * self.d) % 2:
            den *= 2
        return den

    @property
    def num(self) -> AlgInt:
        den = self.den
        return AlgInt(int(2 * self.u * den), int(2 * self.v * den), self.d)

    @property
    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def is_integral(self) -> bool:
        return self.den == 1

    def __sub__(self, other):
        if isinstance(other, AlgInt):
            other = other.to_point()
        return FieldElem(self.u - other.u, self.v - other.v, self.d)

    def __add__(self, other):
        if isinstance(other, AlgInt):
            other = other.to_point()
        return FieldElem(self.u + other.u, self.v + other.v, self.d)

    def __neg__(self):
        return FieldElem(-self.u, -self.v, self.d)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElem(self.u * other, self.v * other, self.d)
        if isinstance(other, AlgInt):
            other = other.to_point()
        return FieldElem(
            self.u * other.u + self.v * other.v * self.d,
            self.u * other.v + self.v * other.u,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> FieldElem:
        return FieldElem(self.u, -self.v, self.d)

    def reduce(self) -> FieldElem:
        """Translate by O into the rectangle ``u in [-1/2, 1/2)``, ``v in [-1/4, 1/4)``."""
        k = math.floor(2 * self.v + Fraction(1, 2))
        v = self.v - Fraction(k, 2)
        u = self.u - Fraction(k * (self.d % 2), 2)
        u -= math.floor(u + Fraction(1, 2))
        return FieldElem(u, v, self.d)

    def congruent(self, other: FieldElem) -> bool:
        """Equality modulo translation by O."""
        return self.reduce() == other.reduce()

    def __complex__(self):
        return complex(float(self.u), float(self.v) * math.sqrt(-self.d))

    def __str__(self):
        return _format_uv(self.u, self.v, self.d)


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms ``(a, b, c)`` of discriminant ``d``."""
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


# -- ideals -----------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """The primitive ideal ``Z*a + Z*(b + sqrt(d))/2`` with ``0 <= b < 2a``."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.a <= 0 or not 0 <= self.b < 2 * self.a:
            raise ValueError(f"ideal ({self.a}, {self.b}) is not normalized")
        if (self.b * self.b - self.d) % (4 * self.a):
            raise ValueError(
                f"b^2 = {self.b}^2 is not congruent to {self.d} mod {4 * self.a}"
            )

    @classmethod
    def make(cls, a: int, b: int, d: int) -> Ideal:
        return cls(a, b % (2 * a), d)

    @property
    def norm(self) -> int:
        return self.a

    @property
    def basis(self) -> tuple[AlgInt, AlgInt]:
        return AlgInt(2 * self.a, 0, self.d), AlgInt(self.b, 1, self.d)

    def contains(self, x: AlgInt) -> bool:
        # x = s*a + t*(b + sqrt d)/2 forces t = x.b
        t = x.b
        rest = x.a - t * self.b
        return rest % (2 * self.a) == 0

    def conj(self) -> Ideal:
        return Ideal.make(self.a, -self.b, self.d)

    def is_unit(self) -> bool:
        return self.a == 1

    def __mul__(self, other: Ideal) -> tuple[int, Ideal]:
        """Product as ``(content, primitive ideal)``."""
        x1, y1 = self.basis
        x2, y2 = other.basis
        return module_to_ideal([x1 * x2, x1 * y2, y1 * x2, y1 * y2])

    def __str__(self):
        return f"({self.a}, ({self.b} + sqrt({self.d}))/2)"


def _hnf(vectors: list[tuple[int, int]]) -> tuple[int, int, int]:
    """Hermite form ``[[A, B], [0, C]]`` of the Z-span of integer pairs (x, y).

    The lattice is spanned by ``(A, 0)`` and ``(B, C)`` with ``0 <= B < A``.
    """
    vecs = [v for v in vectors if v != (0, 0)]
    # Euclid on the second coordinate
    pivot = None
    rest = []
    for x, y in vecs:
        if y == 0:
            rest.append(x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        while y:
            q = py // y
            px, py, x, y = x, y, px - q * x, py - q * y
        pivot = (px, py)
        rest.append(x)
    if pivot is None:
        raise ValueError("module has rank < 2")
    px, py = pivot
    if py < 0:
        px, py = -px, -py
    A = 0
    for x in rest:
        A = math.gcd(A, x)
    if A == 0:
        raise ValueError("module has rank < 2")
    return A, px % A, py


def _xy(x: AlgInt) -> tuple[int, int]:
    """Coordinates in the basis ``(1, theta)``."""
    par = x.d % 2
    return (x.a - x.b * par) // 2, x.b


def module_to_ideal(gens: list[AlgInt]) -> tuple[int, Ideal]:
    """The O-ideal spanned over Z by ``gens`` as ``(content, primitive ideal)``.

    ``gens`` must already span an O-module (e.g. products of Z-bases).
    """
    d = gens[0].d
    A, B, C = _hnf([_xy(g) for g in gens])
    if A % C or B % C:
        raise ValueError("generators do not span an O-ideal")
    a = A // C
    b = (2 * (B // C) + d % 2) % (2 * a)
    return C, Ideal(a, b, d)


def ideal_from_pair(lam: AlgInt, mu: AlgInt) -> tuple[int, Ideal]:
    """The ideal generated by ``lam`` and ``mu`` as ``(content, primitive ideal)``."""
    if not lam and not mu:
        raise ValueError("(0, 0) generates the zero ideal")
    th = AlgInt(lam.d % 2, 1, lam.d)
    return module_to_ideal([lam, lam * th, mu, mu * th])


def pair_norm(lam: AlgInt, mu: AlgInt) -> int:
    c, ideal = ideal_from_pair(lam, mu)
    return c * c * ideal.a


def is_coprime(lam: AlgInt, mu: AlgInt) -> bool:
    """Whether ``(lam, mu) = O``.

    Uses that ``(lam, mu)`` times its conjugate is generated by
    ``N(lam), N(mu)`` and ``lam*conj(mu)``, whose trace is rational.
    """
    if not lam and not mu:
        return False
    t = (lam.a * mu.a - lam.b * mu.b * lam.d) // 2
    return math.gcd(math.gcd(lam.norm, mu.norm), t) == 1


def _bilinear4(x: AlgInt, y: AlgInt) -> int:
    """``4 * Re(x * conj(y))``."""
    return x.a * y.a - x.b * y.b * x.d


def _round_div(n: int, m: int) -> int:
    return (2 * n + m) // (2 * m)


def reduce_basis(v1: AlgInt, v2: AlgInt) -> tuple[AlgInt, AlgInt]:
    """Gauss-Lagrange reduction of a rank-2 sublattice of O under the norm form."""
    n1, n2 = v1.norm, v2.norm
    if n1 > n2:
        v1, v2, n1, n2 = v2, v1, n2, n1
    while True:
        q = _round_div(_bilinear4(v1, v2), 4 * n1)
        v2 = v2 - v1 * q
        n2 = v2.norm
        if n2 >= n1:
            return v1, v2
        v1, v2, n1, n2 = v2, v1, n2, n1


def min_vectors(ideal: Ideal) -> list[AlgInt]:
    """All nonzero elements of minimal norm in ``ideal``, sorted by ``(a, b)``."""
    v1, v2 = reduce_basis(*ideal.basis)
    best = v1.norm
    out = set()
    for i in range(-2, 3):
        for j in range(-2, 3):
            x = v1 * i + v2 * j
            if x and x.norm == best:
                out.add(x)
    return sorted(out, key=lambda x: (x.a, x.b))


def min_vector(ideal: Ideal) -> AlgInt:
    """A nonzero element of minimal norm, canonical up to sign, lexicographically least."""
    return min((x.canonical() for x in min_vectors(ideal)), key=lambda x: (x.a, x.b))


def is_principal(ideal: Ideal) -> tuple[bool, AlgInt | None]:
    """Whether ``ideal`` is principal, with a generator when it is."""
    x = min_vector(ideal)
    if x.norm == ideal.a:
        return True, x
    return False, None


def kronecker(d: int, p: int) -> int:
    """Kronecker symbol ``(d/p)`` for a prime ``p``."""
    if d % p == 0:
        return 0
    if p == 2:
        return 1 if d % 8 == 1 else -1
    r = pow(d % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def prime_splitting(disc: Disc, p: int) -> tuple[str, list[Ideal]]:
    """Decomposition type of the rational prime ``p``: split, inert or ramified."""
    k = kronecker(disc.d, p)
    if k == -1:
        return "inert", []
    roots = [b for b in range(2 * p) if (b * b - disc.d) % (4 * p) == 0]
    ideals = sorted({Ideal(p, b, disc.d) for b in roots}, key=lambda i: i.b)
    return ("ramified" if k == 0 else "split"), ideals


def ideals_of_norm(disc: Disc, n: int) -> list[Ideal]:
    """Primitive ideals of norm ``n``."""
    return [Ideal(n, b, disc.d) for b in range(2 * n) if (b * b - disc.d) % (4 * n) == 0]


# -- singular points ----------------------------------------------------------


def _point_ideal(z: FieldElem) -> tuple[Fraction, Ideal]:
    """``(z, 1)`` as ``scale * primitive ideal``."""
    den = z.den
    c, ideal = ideal_from_pair(z.num, AlgInt(2 * den, 0, z.d))
    return Fraction(c, den), ideal


def is_singular(z: FieldElem) -> bool:
    """Whether ``(z, 1)`` is non-principal with all nonzero elements of norm >= 1."""
    scale, ideal = _point_ideal(z)
    principal, _ = is_principal(ideal)
    if principal:
        return False
    return scale * scale * min_vector(ideal).norm >= 1


def singular_points(disc: Disc) -> list[FieldElem]:
    """Singular points modulo translation by O, reduced into the fundamental rectangle.

    Every non-trivial ideal class has an integral ideal of norm at most
    ``sqrt(|d|/3)``; for each such ideal ``b``, each minimal element ``beta``
    and each ``alpha`` with ``(alpha, beta) = b``, the point ``alpha/beta``
    is tested.
    """
    found: dict[tuple[Fraction, Fraction], FieldElem] = {}
    n = 2
    while 3 * n * n <= disc.abs:
        for ideal in ideals_of_norm(disc, n):
            if is_principal(ideal)[0]:
                continue
            for beta in min_vectors(ideal):
                for alpha in _residues_in_ideal(ideal, beta):
                    c, gen = ideal_from_pair(alpha, beta)
                    if c != 1 or gen != ideal:
                        continue
                    z = FieldElem.quotient(alpha, beta).reduce()
                    key = (z.u, z.v)
                    if key not in found and is_singular(z):
                        found[key] = z
        n += 1
    return sorted(found.values(), key=lambda z: (z.u, z.v))


def _residues_in_ideal(ideal: Ideal, beta: AlgInt) -> Iterator[AlgInt]:
    """Representatives of ``ideal / beta*O``."""
    # ideal has Z-basis e1, e2; beta*O has index N(beta)/N(ideal) inside it
    e1, e2 = ideal.basis
    idx = beta.norm // ideal.a
    seen = set()
    for i in range(idx):
        for j in range(idx):
            x = e1 * i + e2 * j
            z = FieldElem.quotient(x, beta).reduce()
            key = (z.u, z.v)
            if key in seen:
                continue
            seen.add(key)
            yield x


# -- lattice search -----------------------------------------------------------


def lattice_points_near(z: FieldElem, rsq: Fraction) -> list[AlgInt]:
    """All ``x`` in O with ``|x - z|^2 < rsq``, sorted by distance then ``(a, b)``."""
    d = z.d
    absd = -d
    out = []
    # |v - b/2|^2 * |d| < rsq
    vr = math.sqrt(float(rsq) / absd) + 1e-9
    bmin = math.floor(2 * (float(z.v) - vr)) - 1
    bmax = math.ceil(2 * (float(z.v) + vr)) + 1
    ur = math.sqrt(float(rsq)) + 1e-9
    for b in range(bmin, bmax + 1):
        dv = z.v - Fraction(b, 2)
        rem = rsq - absd * dv * dv
        if rem <= 0:
            continue
        amin = math.floor(2 * (float(z.u) - ur)) - 1
        amax = math.ceil(2 * (float(z.u) + ur)) + 1
        for a in range(amin, amax + 1):
            if (a - b * d) % 2:
                continue
            du = z.u - Fraction(a, 2)
            if du * du < rem:
                out.append(AlgInt(a, b, d))
    return sorted(out, key=lambda x: ((z - x).norm, x.a, x.b))


def nearest_lattice_points(z: FieldElem) -> list[AlgInt]:
    """Elements of O closest to ``z`` (all ties), sorted by ``(a, b)``."""
    # every point is within |d|/16 + 1/4 + 1 of the lattice (loose)
    rsq = Fraction(-z.d + 4, 4)
    pts = lattice_points_near(z, rsq)
    best = (z - pts[0]).norm
    return sorted((x for x in pts if (z - x).norm == best), key=lambda x: (x.a, x.b))


def reduce_mod(x: AlgInt, mu: AlgInt) -> AlgInt:
    """Minimal-norm representative of ``x + mu*O`` (lexicographic ties)."""
    z = FieldElem.quotient(x, mu)
    cands = [x - mu * k for k in nearest_lattice_points(z)]
    return min(cands, key=lambda y: (y.norm, y.a, y.b))


def _solve_combination(gens: list[AlgInt], target: AlgInt) -> list[int]:
    """Integers ``c`` with ``sum(c_i * gens_i) = target`` (extended Hermite reduction)."""
    k = len(gens)
    rows = [[*_xy(g), *[int(i == j) for j in range(k)]] for i, g in enumerate(gens)]
    # make one row carry gcd of second coordinates
    def combine(col, rows):
        live = [r for r in rows if r[col] != 0]
        dead = [r for r in rows if r[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = []
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [ri - q * pi for ri, pi in zip(r, piv)]
                (nxt if r[col] else dead).append(r)
            live = [piv] + nxt
        return (live[0] if live else None), dead

    piv_y, rest = combine(1, rows)
    piv_x, rest = combine(0, rest)
    tx, ty = _xy(target)
    coeff = [0] * k
    x_acc = 0
    if piv_y is not None:
        if ty % piv_y[1]:
            raise ArithmeticError("target not in module")
        q = ty // piv_y[1]
        coeff = [c + q * r for c, r in zip(coeff, piv_y[2:])]
        x_acc = q * piv_y[0]
    elif ty:
        raise ArithmeticError("target not in module")
    need = tx - x_acc
    if need:
        if piv_x is None or need % piv_x[0]:
            raise ArithmeticError("target not in module")
        q = need // piv_x[0]
        coeff = [c + q * r for c, r in zip(coeff, piv_x[2:])]
    return coeff


def bezout_solve(lam: AlgInt, mu: AlgInt) -> tuple[AlgInt, AlgInt]:
    """``(alpha, beta)`` with ``beta*lam - alpha*mu = 1`` and ``beta`` reduced mod ``mu``."""
    if not mu:
        raise ValueError("mu must be nonzero")
    if not is_coprime(lam, mu):
        raise ValueError(f"({lam}, {mu}) is not coprime")
    d = lam.d
    th = AlgInt(d % 2, 1, d)
    c = _solve_combination([lam, lam * th, -mu, -mu * th], AlgInt(2, 0, d))
    beta = c[0] + th * c[1]
    beta = reduce_mod(beta, mu)
    alpha = (beta * lam - 1).exact_div(mu)
    return alpha, beta
