"""Davis chamber, its mirrors, and exact relative rational cohomology.

The chamber ``K`` is the order complex of the poset of spherical subsets
(the empty set included, so ``K`` is a cone on it). The mirror ``K_s`` is
the full subcomplex on the spherical subsets containing ``s``. A chain
lies in ``K^{S-J}`` (the union of mirrors ``K_s`` for ``s`` outside ``J``)
iff its smallest member meets ``S - J``; the relative cochains of
``(K, K^{S-J})`` are therefore spanned by the chains whose smallest member
is contained in ``J``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .catalog import SPHERICAL_POSET_CAP, is_spherical, spherical_subsets
from .core import CoxeterSystem
from .errors import LimitExceeded, NotSpherical

SIMPLEX_CAP = 2_000_000


@dataclass(frozen=True)
class ChamberComplex:
    """Order complex of the spherical-subset poset.

    ``simplices[k]`` lists the chains ``T_0 < ... < T_k`` as tuples of
    vertex indices into ``vertices`` (sorted by size, then generator order).
    """

    system: CoxeterSystem
    vertices: tuple[frozenset, ...]
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def mirror(self, s: str) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Simplices of the mirror ``K_s``, by dimension."""
        self.system.index(s)
        return tuple(
            tuple(c for c in layer if s in self.vertices[c[0]]) for layer in self.simplices
        )

    def in_subcomplex(self, chain, outside: frozenset) -> bool:
        """Whether ``chain`` lies in the union of the mirrors of ``outside``."""
        return bool(self.vertices[chain[0]] & outside)


@lru_cache(maxsize=256)
def chamber_complex(sys: CoxeterSystem, cap: int = SIMPLEX_CAP) -> ChamberComplex:
    verts = spherical_subsets(sys, SPHERICAL_POSET_CAP)
    n = len(verts)
    # up[i]: indices of strictly larger spherical subsets
    up = [[j for j in range(i + 1, n) if verts[i] < verts[j]] for i in range(n)]
    layers = [[(i,) for i in range(n)]]
    total = n
    while True:
        nxt = [c + (j,) for c in layers[-1] for j in up[c[-1]]]
        if not nxt:
            break
        total += len(nxt)
        if total > cap:
            raise LimitExceeded(f"Davis chamber has more than {cap} simplices")
        layers.append(nxt)
    return ChamberComplex(sys, verts, tuple(tuple(layer) for layer in layers))


def rank_exact(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{column: entry}`` rows.

    Fraction-free elimination with a fill-reducing pivot rule: the shortest
    remaining row, its rarest column, unit entries first. Non-unit pivots
    combine rows with integer multipliers and divide out the row content,
    so no rationals appear.
    """
    live: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        row = {c: v for c, v in row.items() if v}
        if row:
            live[i] = row
            for c in row:
                cols.setdefault(c, set()).add(i)
    rank = 0
    while live:
        r = min(live, key=lambda i: len(live[i]))
        row = live.pop(r)
        c = min(row, key=lambda k: (abs(row[k]) != 1, len(cols[k])))
        a = row[c]
        for k in row:
            cols[k].discard(r)
        rank += 1
        for r2 in list(cols[c]):
            old = live[r2]
            b = old[c]
            if a in (1, -1):
                new = dict(old)
                f = a * b
                for k, v in row.items():
                    x = new.get(k, 0) - f * v
                    if x:
                        new[k] = x
                    else:
                        new.pop(k, None)
            else:
                new = {k: a * v for k, v in old.items()}
                for k, v in row.items():
                    x = new.get(k, 0) - b * v
                    if x:
                        new[k] = x
                    else:
                        new.pop(k, None)
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            for k in old:
                if k not in new:
                    cols[k].discard(r2)
            for k in new:
                cols.setdefault(k, set()).add(r2)
            if new:
                live[r2] = new
            else:
                del live[r2]
        del cols[c]
    return rank


def _relative_basis(cx: ChamberComplex, outside: frozenset):
    return [
        [c for c in layer if not cx.in_subcomplex(c, outside)] for layer in cx.simplices
    ]


def _boundary_rank(basis, k) -> int:
    """Rank of the relative boundary C_k -> C_{k-1} (faces in the subcomplex dropped)."""
    if k <= 0 or k >= len(basis) or not basis[k] or not basis[k - 1]:
        return 0
    index = {c: i for i, c in enumerate(basis[k - 1])}
    rows = []
    for c in basis[k]:
        row = {}
        for p in range(len(c)):
            face = c[:p] + c[p + 1:]
            i = index.get(face)
            if i is not None:
                row[i] = -1 if p % 2 else 1
        rows.append(row)
    return rank_exact(rows)


class _RelativeComplex:
    """Relative cochain data of ``(K, K^outside)`` with boundary ranks cached."""

    def __init__(self, cx: ChamberComplex, outside: frozenset):
        self.basis = _relative_basis(cx, outside)
        self.top = len(self.basis) - 1
        self._ranks: dict[int, int] = {}

    def rank(self, k: int) -> int:
        if k not in self._ranks:
            self._ranks[k] = _boundary_rank(self.basis, k)
        return self._ranks[k]

    def dim(self, k: int) -> int:
        if k < 0 or k > self.top:
            return 0
        return len(self.basis[k]) - self.rank(k) - self.rank(k + 1)

    def dims(self, degrees=None) -> list[int]:
        ks = range(self.top + 1) if degrees is None else [k for k in degrees if 0 <= k <= self.top]
        out = [0] * (self.top + 1)
        for k in ks:
            out[k] = self.dim(k)
        return out


@lru_cache(maxsize=4096)
def _relative(sys: CoxeterSystem, outside: frozenset) -> _RelativeComplex:
    return _RelativeComplex(chamber_complex(sys), outside)


def relative_cohomology(sys: CoxeterSystem, J, degrees=None) -> list[int]:
    """``dim_Q H^k(K, K^{S-J})`` for ``k = 0 .. dim K``.

    ``degrees`` restricts the computation to the listed degrees (others
    are reported as 0).
    """
    J = sys.subset(J)
    if not is_spherical(sys, J):
        raise NotSpherical(f"{sorted(J)} is not spherical")
    return _relative(sys, frozenset(sys.generators) - J).dims(degrees)


def absolute_cohomology(sys: CoxeterSystem) -> list[int]:
    """``dim_Q H^k(K)``; ``K`` is a cone, so this is ``[1, 0, 0, ...]``."""
    return _relative(sys, frozenset()).dims()


def cohomology_table(sys: CoxeterSystem) -> dict[frozenset, list[int]]:
    return {J: relative_cohomology(sys, J) for J in spherical_subsets(sys)}


def rational_cd(sys: CoxeterSystem) -> int:
    """Largest ``k`` with ``H^k(K, K^{S-J}) != 0`` for some spherical ``J``.

    Degrees are scanned from the top down so that only the boundary ranks
    near the answer are ever computed.
    """
    S = frozenset(sys.generators)
    cells = [_relative(sys, S - J) for J in spherical_subsets(sys)]
    top = chamber_complex(sys).dimension
    for k in range(top, 0, -1):
        if any(c.dim(k) for c in cells):
            return k
    return 0


def more_than_one_end_h1(sys: CoxeterSystem) -> bool:
    """Whether some spherical ``J`` has ``H^1(K, K^{S-J}) != 0``."""
    S = frozenset(sys.generators)
    return any(_relative(sys, S - J).dim(1) for J in spherical_subsets(sys))
