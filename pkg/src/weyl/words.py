"""Word problem, ShortLex normal forms, balls and growth data.

Reduction follows Tits: a word is reduced iff nothing in its braid class
contains two equal adjacent letters, and two reduced words represent the
same element iff they are braid equivalent. Normal forms are the
lexicographically least reduced expressions under the generator order.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .core import INF, CoxeterSystem
from .errors import InvalidThickness, LimitExceeded, UnknownGenerator

BRAID_CLASS_CAP = 200_000
BALL_CAP = 1_000_000

# process-wide defaults used when a call passes ``cap=None``
LIMITS = {"braid_class": BRAID_CLASS_CAP, "ball": BALL_CAP}


def set_limits(braid_class: int | None = None, ball: int | None = None) -> None:
    for key, val in (("braid_class", braid_class), ("ball", ball)):
        if val is not None:
            if val <= 0:
                raise ValueError(f"{key} limit must be positive")
            LIMITS[key] = int(val)


@dataclass(frozen=True)
class NormalForm:
    word: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def __str__(self):
        return " ".join(self.word) if self.word else "e"


IDENTITY = NormalForm()


class _Reducer:
    """Integer-coded reduction engine for one system, with a multiply memo."""

    def __init__(self, sys: CoxeterSystem, cap: int = BRAID_CLASS_CAP):
        self.sys = sys
        self.cap = cap
        n = sys.rank
        # braid relations as pairs of alternating words of length m
        self.moves = []
        for i in range(n):
            for j in range(n):
                m = sys.matrix[i][j]
                if i != j and m != INF:
                    self.moves.append(
                        (tuple(i if k % 2 == 0 else j for k in range(m)),
                         tuple(j if k % 2 == 0 else i for k in range(m)))
                    )
        self._mult: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}

    def _neighbours(self, w):
        for lhs, rhs in self.moves:
            m = len(lhs)
            for p in range(len(w) - m + 1):
                if w[p:p + m] == lhs:
                    yield w[:p] + rhs + w[p + m:]

    def reduce(self, word: tuple[int, ...]) -> tuple[int, ...]:
        w = word
        while True:
            shorter, least = self._class_or_deletion(w)
            if shorter is None:
                return least
            w = shorter

    def _class_or_deletion(self, w):
        """Explore the braid class of ``w``.

        Returns ``(shorter, None)`` as soon as a deletion applies, else
        ``(None, least word of the class)``.
        """
        seen = {w}
        queue = deque([w])
        least = w
        while queue:
            u = queue.popleft()
            for p in range(len(u) - 1):
                if u[p] == u[p + 1]:
                    return u[:p] + u[p + 2:], None
            if u < least:
                least = u
            for v in self._neighbours(u):
                if v not in seen:
                    seen.add(v)
                    if len(seen) > self.cap:
                        raise LimitExceeded(
                            f"braid class exceeds {self.cap} words (length {len(w)})"
                        )
                    queue.append(v)
        return None, least

    def multiply(self, nf: tuple[int, ...], s: int) -> tuple[int, ...]:
        key = (nf, s)
        hit = self._mult.get(key)
        if hit is not None:
            return hit
        if nf and nf[-1] == s:
            # prefixes of ShortLex-least reduced words are ShortLex-least
            out = nf[:-1]
        else:
            out = self.reduce(nf + (s,))
        self._mult[key] = out
        return out


@lru_cache(maxsize=64)
def _cached_reducer(sys: CoxeterSystem, cap: int) -> _Reducer:
    return _Reducer(sys, cap)


def _reducer(sys: CoxeterSystem, cap: int | None = None) -> _Reducer:
    return _cached_reducer(sys, LIMITS["braid_class"] if cap is None else cap)


def _encode(sys: CoxeterSystem, word) -> tuple[int, ...]:
    if isinstance(word, NormalForm):
        word = word.word
    elif isinstance(word, str):
        word = word.split()
    return tuple(sys.index(s) for s in word)


def _decode(sys: CoxeterSystem, code) -> NormalForm:
    return NormalForm(tuple(sys.generators[i] for i in code))


def reduce(sys: CoxeterSystem, word: Iterable[str] | str, cap: int | None = None) -> NormalForm:
    """ShortLex-least reduced expression of the element spelled by ``word``.

    A string is split on whitespace, so ``"s t s"`` and ``["s", "t", "s"]``
    are the same word.
    """
    return _decode(sys, _reducer(sys, cap).reduce(_encode(sys, word)))


def multiply(sys: CoxeterSystem, nf: NormalForm, s: str, cap: int | None = None) -> NormalForm:
    """Normal form of ``nf * s``."""
    code = _encode(sys, nf)
    return _decode(sys, _reducer(sys, cap).multiply(code, sys.index(s)))


def descent_set(sys: CoxeterSystem, nf: NormalForm) -> frozenset:
    """Right descents ``{s : l(ws) < l(w)}``."""
    red = _reducer(sys)
    code = _encode(sys, nf)
    return frozenset(
        sys.generators[i] for i in range(sys.rank) if len(red.multiply(code, i)) < len(code)
    )


def inverse(sys: CoxeterSystem, nf: NormalForm) -> NormalForm:
    return reduce(sys, tuple(reversed(nf.word)))


def product(sys: CoxeterSystem, u: NormalForm, v: NormalForm) -> NormalForm:
    red = _reducer(sys)
    code = _encode(sys, u)
    for i in _encode(sys, v):
        code = red.multiply(code, i)
    return _decode(sys, code)


@dataclass(frozen=True)
class BallCensus:
    radius: int
    elements: tuple[NormalForm, ...]
    sphere_sizes: tuple[int, ...]
    descent_counts: Mapping[frozenset, int]
    descents: Mapping[NormalForm, frozenset] = field(repr=False, compare=False)

    def __len__(self):
        return len(self.elements)


@dataclass
class _CodedBall:
    """Integer-coded ball: elements by sphere, with generator neighbours."""

    spheres: list[list[tuple[int, ...]]]
    neighbours: dict[tuple[int, ...], tuple[tuple[int, ...], ...]]


def _coded_ball(sys: CoxeterSystem, R: int, cap: int | None = None) -> _CodedBall:
    if cap is None:
        cap = LIMITS["ball"]
    if R < 0:
        raise ValueError("radius must be non-negative")
    red = _reducer(sys)
    spheres = [[()]]
    seen = {()}
    neighbours = {}
    for k in range(R + 1):
        nxt = []
        for w in spheres[k]:
            nb = tuple(red.multiply(w, i) for i in range(sys.rank))
            neighbours[w] = nb
            if k == R:
                continue
            for v in nb:
                if len(v) == k + 1 and v not in seen:
                    seen.add(v)
                    nxt.append(v)
                    if len(seen) > cap:
                        raise LimitExceeded(f"ball of radius {R} exceeds {cap} elements")
        if k < R:
            nxt.sort()
            spheres.append(nxt)
    while len(spheres) > 1 and not spheres[-1]:
        spheres.pop()
    return _CodedBall(spheres, neighbours)


def ball(sys: CoxeterSystem, R: int, cap: int | None = None) -> BallCensus:
    """Breadth-first ball of radius ``R`` with sphere sizes and descent census.

    For finite groups the sphere list stops at the longest element.
    """
    cb = _coded_ball(sys, R, cap)
    elements = []
    descents = {}
    counts = Counter()
    for sphere in cb.spheres:
        for w in sphere:
            nf = _decode(sys, w)
            d = frozenset(
                sys.generators[i] for i, v in enumerate(cb.neighbours[w]) if len(v) < len(w)
            )
            elements.append(nf)
            descents[nf] = d
            counts[d] += 1
    return BallCensus(R, tuple(elements), tuple(len(s) for s in cb.spheres), dict(counts), descents)


def validate_thickness(sys: CoxeterSystem, q: Mapping[str, int]) -> dict[str, int]:
    q = dict(q)
    for s in q:
        if s not in sys.generators:
            raise UnknownGenerator(f"thickness given for unknown generator {s!r}")
    for s in sys.generators:
        if s not in q:
            raise InvalidThickness(f"no thickness for generator {s!r}")
        v = q[s]
        if isinstance(v, bool) or not isinstance(v, int) or v < 2:
            raise InvalidThickness(f"thickness of {s!r} must be an integer >= 2, got {v!r}")
    gens = sys.generators
    for i, s in enumerate(gens):
        for t in gens[i + 1:]:
            m = sys.m(s, t)
            if m != INF and m % 2 == 1 and q[s] != q[t]:
                raise InvalidThickness(
                    f"q_{s} = {q[s]} and q_{t} = {q[t]} must agree since m_{s}{t} = {m} is odd"
                )
    return q


def q_weight(word: Sequence[str], q: Mapping[str, int]) -> int:
    return math.prod(q[s] for s in word)


def double_coset_counts(sys: CoxeterSystem, q: Mapping[str, int], N: int,
                        cap: int | None = None) -> Counter:
    """``R(n) = #{w : q_w = n}`` for all ``n <= N``; absent keys count zero.

    Since every ``q_s >= 2``, ``q_w >= 2**l(w)`` and the ball of radius
    ``floor(log2 N)`` already holds every contributing element.
    """
    q = validate_thickness(sys, q)
    if N < 1:
        raise ValueError("N must be >= 1")
    R = N.bit_length() - 1
    counts = Counter()
    for nf in ball(sys, R, cap).elements:
        w = q_weight(nf.word, q)
        if w <= N:
            counts[w] += 1
    return Counter(dict(sorted(counts.items())))


def poincare_partial(sys: CoxeterSystem, R: int, t) -> Fraction:
    """Truncated growth series ``sum_{l(w) <= R} t**l(w)`` as an exact rational."""
    t = Fraction(t)
    sizes = ball(sys, R).sphere_sizes
    return sum((Fraction(c) * t ** k for k, c in enumerate(sizes)), Fraction(0))


def convergence_exponent(sys: CoxeterSystem) -> int:
    """Least ``k`` with ``2**k > |S|``; the growth series converges at ``2**-k``
    since sphere sizes are bounded by ``|S|**l``."""
    k = 1
    while 2 ** k <= sys.rank:
        k += 1
    return k
