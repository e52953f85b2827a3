"""Jacobsthal-type sieve functions over imaginary quadratic orders.

For an ideal ``a`` and ``alpha`` in O, an integer ``j`` is *blocked* when some
prime ideal dividing ``a`` contains ``alpha + j``.  Each prime ideal above a
rational prime ``p`` blocks exactly one residue class of ``j`` mod ``p`` (for a
degree-one prime the adversary controls the class through ``alpha``; for an
inert prime by choosing ``alpha`` rational mod ``p``).  So only the multiset of
``(p, m)`` matters, with ``m`` the number of blocked classes mod ``p``.  When
both primes above a split 2 divide ``a``, the side condition on ``alpha`` forces
them to block the same class, so ``m = 1`` for ``p = 2`` always.

``little_j`` is one more than the longest run of blocked consecutive integers,
maximized over the adversary's choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .qfield import Disc, Ideal, factorize, kronecker, primes_below


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SievePattern:
    """Sorted ``(p, m)`` pairs: ``m`` blocked classes modulo the prime ``p``."""

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        ps = [p for p, _ in self.entries]
        if ps != sorted(set(ps)):
            raise ValueError("primes must be distinct and sorted")
        for p, m in self.entries:
            if m not in (1, 2) or (p == 2 and m != 1):
                raise ValueError(f"invalid multiplicity {m} for prime {p}")

    @classmethod
    def of(cls, pairs) -> SievePattern:
        return cls(tuple(sorted(pairs)))

    @property
    def period(self) -> int:
        return math.prod(p for p, _ in self.entries)

    @property
    def norm(self) -> int:
        return math.prod(p**m for p, m in self.entries)

    def __len__(self):
        return len(self.entries)


def pattern_of_ideal(ideal: Ideal, content: int = 1, two_divides: str = "ideal") -> SievePattern:
    """Sieve pattern of ``content * ideal``.

    ``two_divides`` selects how the side condition on ``alpha`` is triggered:
    ``"ideal"`` when ``(2)`` divides the ideal, ``"prime"`` when some prime
    above 2 does.  Both give the same pattern: with a single prime above 2 the
    condition restricts only a class that prime does not see.
    """
    if two_divides not in ("ideal", "prime"):
        raise ValueError("two_divides must be 'ideal' or 'prime'")
    d = ideal.d
    ms: dict[int, int] = {}
    for p in factorize(ideal.a):
        ms[p] = 1
    for p in factorize(content):
        ms[p] = 2 if kronecker(d, p) == 1 else 1
    if 2 in ms and ms[2] == 2:
        # both classes mod 2 are tied together by the constraint
        ms[2] = 1
    return SievePattern.of(ms.items())


@dataclass(frozen=True)
class JacobsthalWitness:
    value: int
    # blocked classes chosen for each prime, aligned with the pattern entries
    adversary_residues: tuple[tuple[int, tuple[int, ...]], ...]
    run_start: int
    run_length: int

    def check_run(self) -> bool:
        for j in range(self.run_start, self.run_start + self.run_length):
            if not any(j % p in cls for p, cls in self.adversary_residues):
                return False
        return True


def longest_blocked_run(residues, period: int) -> int:
    """Longest cyclic run of blocked integers over one full period."""
    if period == 1:
        return 0 if not residues else 1 << 62
    blocked = [False] * period
    for p, cls in residues:
        for c in cls:
            for j in range(c % p, period, p):
                blocked[j] = True
    if all(blocked):
        return 1 << 62
    # rotate to start right after an unblocked position
    k = blocked.index(False)
    best = run = 0
    for i in range(1, period + 1):
        if blocked[(k + i) % period]:
            run += 1
            best = max(best, run)
        else:
            run = 0
    return best


# -- branch and bound ---------------------------------------------------------


def _cover(small: tuple[tuple[int, int], ...], large_slots: int, length: int):
    """Try to block all of ``0 .. length-1``.

    ``small`` lists primes ``p < length`` with their class budgets; primes
    ``p >= length`` see each position in its own class, so together they can
    block any ``large_slots`` positions.  Returns per-prime class lists and the
    positions left to the large primes, or ``None``.
    """
    full = (1 << length) - 1
    masks = {}
    for p, _ in small:
        for r in range(p):
            m = 0
            for j in range(r, length, p):
                m |= 1 << j
            masks[p, r] = m
    failed = set()

    def dfs(covered, budgets, large, chosen):
        free = ~covered & full
        left = free.bit_count()
        if left <= large:
            # the large primes take whatever is left
            rest = tuple((None, j) for j in range(length) if free >> j & 1)
            return chosen + rest
        key = (covered, budgets, large)
        if key in failed:
            return None
        cap = large
        for (p, _), b in zip(small, budgets):
            if b:
                gains = sorted(((masks[p, r] & free).bit_count() for r in range(p)), reverse=True)
                cap += sum(gains[:b])
        if cap < left:
            failed.add(key)
            return None
        x = (free & -free).bit_length() - 1
        for i, ((p, _), b) in enumerate(zip(small, budgets)):
            if not b:
                continue
            nb = budgets[:i] + (b - 1,) + budgets[i + 1 :]
            res = dfs(covered | masks[p, x % p], nb, large, chosen + ((p, x % p),))
            if res is not None:
                return res
        if large:
            res = dfs(covered | (1 << x), budgets, large - 1, chosen + ((None, x),))
            if res is not None:
                return res
        failed.add(key)
        return None

    return dfs(0, tuple(m for _, m in small), large_slots, ())


def _coverable(pattern: SievePattern, length: int):
    small = tuple((p, m) for p, m in pattern.entries if p < length)
    large = sum(m for p, m in pattern.entries if p >= length)
    return _cover_cached(small, large, length)


@lru_cache(maxsize=200_000)
def _cover_cached(small, large, length):
    # primes at least as long as the run act alike, so only their count matters
    return _cover(small, large, length)


def _max_run(pattern: SievePattern, at_least: int = 0) -> tuple[int, tuple]:
    """Longest blockable run, provided it exceeds ``at_least`` (else ``(at_least, ())``)."""
    best, best_choice = at_least, ()
    length = at_least + 1
    while True:
        choice = _coverable(pattern, length)
        if choice is None:
            return best, best_choice
        best, best_choice = length, choice
        length += 1


def little_j(target, two_divides: str = "ideal") -> JacobsthalWitness:
    """Jacobsthal-type value of an ideal (or a :class:`SievePattern`) with a witness.

    ``target`` may be a pattern, an :class:`Ideal`, or a ``(content, Ideal)`` pair.
    """
    if isinstance(target, SievePattern):
        pattern = target
    elif isinstance(target, Ideal):
        pattern = pattern_of_ideal(target, two_divides=two_divides)
    else:
        content, ideal = target
        if content == 0:
            raise ValueError("zero ideal")
        pattern = pattern_of_ideal(ideal, content, two_divides=two_divides)
    g, choice = _max_run(pattern)
    classes: dict[int, list[int]] = {p: [] for p, _ in pattern.entries}
    large_positions = []
    for p, r in choice:
        if p is None:
            large_positions.append(r)
        else:
            classes[p].append(r)
    # hand the leftover positions to primes >= g, one class slot each
    for p, m in pattern.entries:
        if p >= g:
            while len(classes[p]) < m and large_positions:
                classes[p].append(large_positions.pop(0) % p)
    # unused slots are filled with a class already blocked (adds nothing)
    for p, m in pattern.entries:
        while len(classes[p]) < m:
            classes[p].append(classes[p][0] if classes[p] else 0)
    residues = tuple((p, tuple(classes[p])) for p, _ in pattern.entries)
    return JacobsthalWitness(g + 1, residues, 0, g)


def little_j_exhaustive(pattern: SievePattern) -> int:
    """Oracle: maximize over every choice of blocked classes, scanning a full period.

    One class of the largest prime is pinned to 0, which loses nothing since
    shifting all classes shifts the runs.
    """
    if not pattern.entries:
        return 1
    period = pattern.period
    options = []
    for i, (p, m) in enumerate(pattern.entries):
        if m == 1:
            opts = [(r,) for r in range(p)]
        else:
            opts = [c for c in combinations_with_replacement(range(p), 2)]
        if i == len(pattern.entries) - 1:
            opts = [c for c in opts if 0 in c]
        options.append(opts)
    best = 0
    primes = [p for p, _ in pattern.entries]
    for combo in product(*options):
        run = longest_blocked_run(list(zip(primes, combo)), period)
        best = max(best, run)
    return best + 1


# -- the maximal value over ideals of bounded norm ------------------------------


class FieldSieve:
    """Non-principal prime data of one order, used for the maximum of ``little_j``."""

    def __init__(self, disc: Disc):
        self.disc = disc
        self._limit = 2
        self._primes: list[tuple[int, int]] = []

    def _extend(self, limit: int):
        if limit <= self._limit:
            return
        out = []
        for p in primes_below(limit):
            if p < self._limit:
                continue
            k = kronecker(self.disc.d, p)
            if k == -1 or self.disc.represents(p):
                continue
            # split non-principal: both conjugates are non-principal
            m = 2 if (k == 1 and p != 2) else 1
            out.append((p, m))
        self._primes.extend(out)
        self._limit = limit

    def nonprincipal_primes(self, limit: int) -> list[tuple[int, int]]:
        """Primes ``p < limit`` with non-principal primes above them, and max multiplicity."""
        self._extend(limit)
        return [(p, m) for p, m in self._primes if p < limit]

    def big_j_sq(self, norm_bound, known: int = 1) -> tuple[int, SievePattern | None]:
        """Max of ``little_j`` over ideals with no principal prime divisors and norm < ``norm_bound``.

        Only squarefree ideals are searched; repeated primes add norm but not
        blocked classes.  ``known`` is a value already known to be attained,
        used for pruning.  Returns the value and a maximizing pattern (``None``
        if nothing beats ``known``).
        """
        bound = Fraction(norm_bound)
        limit = math.ceil(bound)
        primes = self._primes

        def have(k):
            # extend the prime list lazily; most large primes are never reached
            while k >= len(primes) and self._limit < limit:
                self._extend(min(limit, max(2 * self._limit, 1024)))
            return k < len(primes) and primes[k][0] < limit

        best = [known - 1, None if known > 1 else SievePattern()]

        def ub_fails(entries, norm, i):
            # can the pattern plus cheaper-than-bound extensions block best+1?
            L = best[0] + 1
            cov = sum(m * -(-L // q) for q, m in entries)
            if have(i):
                pn = primes[i][0]
                room = bound / norm
                t = 0
                acc = 1
                while acc * pn < room:
                    acc *= pn
                    t += 1
                cov += t * -(-L // pn)
            return cov < L

        def dfs(i, norm, entries):
            g, _ = _max_run(SievePattern(tuple(entries)), best[0])
            if g > best[0]:
                best[0], best[1] = g, SievePattern(tuple(entries))
            k = i
            while have(k):
                p, mmax = primes[k]
                k += 1
                if norm * p >= bound:
                    break
                if ub_fails(entries, norm, k - 1):
                    break
                for m in range(mmax, 0, -1):
                    if norm * p**m < bound:
                        dfs(k, norm * p**m, entries + [(p, m)])

        dfs(0, 1, [])
        return best[0] + 1, best[1]

    def big_j(self, x) -> int:
        x = Fraction(x)
        if x <= 0:
            raise ValueError("x must be positive")
        return self.big_j_sq(x * x)[0]


_SIEVES: dict[int, FieldSieve] = {}


def field_sieve(disc: Disc) -> FieldSieve:
    if disc.d not in _SIEVES:
        _SIEVES[disc.d] = FieldSieve(disc)
    return _SIEVES[disc.d]


def big_j(x, disc: Disc) -> int:
    """Max of ``little_j`` over ideals without principal prime divisors and ``sqrt(norm) < x``."""
    return field_sieve(disc).big_j(x)


def big_j_sq(norm_bound, disc: Disc) -> int:
    return field_sieve(disc).big_j_sq(norm_bound)[0]


def j_argument_sq(delta_sq: int, disc: Disc, J: int) -> int:
    """``(2 max(|delta|, J sqrt|d|))^2``."""
    return 4 * max(delta_sq, J * J * disc.abs)


def fixed_point_j(disc: Disc, delta_sq: int | None = None, max_j: int = 1000) -> int:
    """Least ``J >= 1`` with ``big_J(2 max(|delta|, J sqrt|d|)) <= J``."""
    if delta_sq is None:
        from .bounds import max_proper_divisor

        delta_sq = max_proper_divisor(disc)[1]
    sieve = field_sieve(disc)
    J, known = 1, 1
    while J <= max_j:
        known = sieve.big_j_sq(j_argument_sq(delta_sq, disc, J), known)[0]
        if known <= J:
            return J
        # every J' < known fails too, since the value only grows with J'
        J = known
    raise SearchBudgetExceeded(f"no J <= {max_j} for {disc}")
