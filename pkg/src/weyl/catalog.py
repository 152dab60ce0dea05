"""Recognition of spherical, affine and hyperbolic irreducible Coxeter systems.

The classification of record is combinatorial: a labelled-graph
isomorphism against the classical finite and affine diagrams, followed by
the proper-subset positivity criterion for hyperbolic types. The
eigenvalue signature of the cosine form is computed alongside as a
cross-check only.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import INF, CoxeterSystem, irreducible_components
from .errors import EmptySystem, LimitExceeded, NotIrreducible

log = logging.getLogger(__name__)

SPHERICAL = "SPHERICAL"
AFFINE = "AFFINE"
HYPERBOLIC_COMPACT = "HYPERBOLIC_COMPACT"
HYPERBOLIC_NONCOMPACT = "HYPERBOLIC_NONCOMPACT"
OTHER_INFINITE = "OTHER_INFINITE"

DEFAULT_TOL = 1e-9
SPHERICAL_POSET_CAP = 2 ** 20


@dataclass(frozen=True)
class TypeLabel:
    family: str
    name: str | None = None
    # None when the signature was not computed; False flags a disagreement
    # between the combinatorial verdict and the eigenvalue count.
    signature_agrees: bool | None = None

    def __str__(self):
        return f"{self.family}({self.name})" if self.name else self.family


# catalog diagrams ----------------------------------------------------
#
# A diagram is (n, {(i, j): m}) on vertices 0..n-1 listing the pairs with
# m != 2. Everything is generated on demand for the requested rank.


def _path(n, labels=None):
    labels = labels or [3] * (n - 1)
    return {(i, i + 1): labels[i] for i in range(n - 1)}


def _arms(a, b, c):
    """Star-shaped tree: centre 0 with three arms of the given lengths."""
    edges = {}
    nxt = 1
    for length in (a, b, c):
        prev = 0
        for _ in range(length):
            edges[(prev, nxt)] = 3
            prev = nxt
            nxt += 1
    return edges


def spherical_diagrams(n: int):
    """Yield ``(name, edges)`` for every connected finite type of rank ``n``."""
    if n == 1:
        yield "A_1", {}
        return
    yield f"A_{n}", _path(n)
    if n >= 3:
        yield f"B_{n}", _path(n, [3] * (n - 2) + [4])
    if n >= 4:
        yield f"D_{n}", _arms(1, 1, n - 3)
    if n in (6, 7, 8):
        yield f"E_{n}", _arms(1, 2, n - 4)
    if n == 4:
        yield "F_4", _path(4, [3, 4, 3])
        yield "H_4", _path(4, [5, 3, 3])
    if n == 3:
        yield "H_3", _path(3, [5, 3])


def affine_diagrams(n: int):
    """Yield ``(name, edges)`` for every connected affine type with ``n`` vertices."""
    r = n - 1
    if n == 2:
        yield "Ã_1", {(0, 1): INF}
        return
    cyc = _path(n)
    cyc[(0, n - 1)] = 3
    yield f"Ã_{r}", cyc
    if r == 2:
        yield "C̃_2", _path(3, [4, 4])
        yield "G̃_2", _path(3, [6, 3])
    if r >= 3:
        # two leaves on vertex 2, then a path ending in a 4-bond
        edges = {(0, 2): 3, (1, 2): 3}
        for i in range(2, r):
            edges[(i, i + 1)] = 4 if i == r - 1 else 3
        yield f"B̃_{r}", edges
        yield f"C̃_{r}", _path(n, [4] + [3] * (r - 2) + [4])
    if r >= 4:
        # forks at both ends
        edges = {(0, 2): 3, (1, 2): 3}
        for i in range(2, r - 2):
            edges[(i, i + 1)] = 3
        edges[(r - 2, r - 1)] = 3
        edges[(r - 2, r)] = 3
        yield f"D̃_{r}", edges
    if r == 6:
        yield "Ẽ_6", _arms(2, 2, 2)
    if r == 7:
        yield "Ẽ_7", _arms(1, 3, 3)
    if r == 8:
        yield "Ẽ_8", _arms(1, 2, 5)
    if r == 4:
        yield "F̃_4", _path(5, [3, 3, 4, 3])


def _spherical_order(name: str) -> int:
    family, _, rest = name.partition("_")
    if family == "I":
        return 2 * int(rest[2:-1])
    n = int(rest)
    if family == "A":
        return math.factorial(n + 1)
    if family == "B":
        return 2 ** n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {"E_6": 51840, "E_7": 2903040, "E_8": 696729600, "F_4": 1152,
            "H_3": 120, "H_4": 14400}[name]


def _labelled_isomorphic(n, edges_a, edges_b) -> bool:
    """Backtracking search for a label-preserving bijection of two diagrams."""
    if len(edges_a) != len(edges_b):
        return False
    if sorted(map(str, edges_a.values())) != sorted(map(str, edges_b.values())):
        return False

    def profile(edges):
        prof = [[] for _ in range(n)]
        for (i, j), m in edges.items():
            prof[i].append(m)
            prof[j].append(m)
        return [tuple(sorted(map(str, p))) for p in prof]

    pa, pb = profile(edges_a), profile(edges_b)
    if sorted(pa) != sorted(pb):
        return False

    def lab(edges, i, j):
        return edges.get((i, j), edges.get((j, i), 2))

    order = sorted(range(n), key=lambda v: -len(pa[v]))
    image = {}
    used = set()

    def extend(k):
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if w in used or pb[w] != pa[v]:
                continue
            if all(lab(edges_a, v, u) == lab(edges_b, w, image[u]) for u in order[:k]):
                image[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del image[v]
                used.discard(w)
        return False

    return extend(0)


def _edges_of(sys: CoxeterSystem):
    n = sys.rank
    return {(i, j): sys.matrix[i][j] for i in range(n) for j in range(i + 1, n)
            if sys.matrix[i][j] != 2}


def _is_tree(n, edges):
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(j)
        if a == b:
            return False
        parent[a] = b
    return True


@lru_cache(maxsize=None)
def _match_catalog(sys: CoxeterSystem):
    """Return ``(family, name)`` for a connected diagram found in a catalog, else None."""
    n = sys.rank
    edges = _edges_of(sys)
    if n == 1:
        return SPHERICAL, "A_1"
    if n == 2:
        m = sys.matrix[0][1]
        if m == INF:
            return AFFINE, "Ã_1"
        return SPHERICAL, {3: "A_2", 4: "B_2"}.get(m, f"I_2({m})")
    labels = set(edges.values())
    if labels <= {3, 4, 5} and _is_tree(n, edges):
        for name, cat in spherical_diagrams(n):
            if _labelled_isomorphic(n, edges, cat):
                return SPHERICAL, name
    if labels <= {3, 4, 6}:
        for name, cat in affine_diagrams(n):
            if _labelled_isomorphic(n, edges, cat):
                return AFFINE, name
    return None


def _irreducible_type(sys: CoxeterSystem):
    """``(family, name)`` of a connected system from the catalogs or the positivity criterion."""
    hit = _match_catalog(sys)
    if hit:
        return hit
    n = sys.rank
    all_spherical = True
    all_positive = True
    for x in sys.generators:
        rest = frozenset(sys.generators) - {x}
        if not is_spherical(sys, rest):
            all_spherical = False
            if not is_positive_type(sys, rest):
                all_positive = False
                break
    if all_spherical:
        return HYPERBOLIC_COMPACT, None
    if all_positive and 3 <= n <= 10:
        return HYPERBOLIC_NONCOMPACT, None
    return OTHER_INFINITE, None


def classify_irreducible(sys: CoxeterSystem, tol: float = DEFAULT_TOL) -> TypeLabel:
    """Type of an irreducible, non-empty system, with a signature cross-check."""
    if sys.is_empty:
        raise EmptySystem("cannot classify the empty system")
    if len(irreducible_components(sys)) != 1:
        raise NotIrreducible(f"{sys!r} is reducible")
    family, name = _irreducible_type(sys)
    n = sys.rank
    expected = {
        SPHERICAL: (n, 0, 0),
        AFFINE: (n - 1, 0, 1),
        HYPERBOLIC_COMPACT: (n - 1, 1, 0),
        HYPERBOLIC_NONCOMPACT: (n - 1, 1, 0),
    }.get(family)
    agrees = None
    if expected is not None:
        agrees = bilinear_signature(sys, tol) == expected
        if not agrees:
            log.warning("signature of %r disagrees with combinatorial type %s", sys, family)
    return TypeLabel(family, name, agrees)


@lru_cache(maxsize=None)
def _component_types(sys: CoxeterSystem) -> tuple:
    return tuple(_irreducible_type(sys.restrict(c)) for c in irreducible_components(sys))


@lru_cache(maxsize=None)
def _spherical_restriction(sys: CoxeterSystem) -> bool:
    if any(m == INF for row in sys.matrix for m in row):
        return False
    for comp in irreducible_components(sys):
        sub = sys.restrict(comp)
        hit = _match_catalog(sub)
        if hit is None or hit[0] != SPHERICAL:
            return False
    return True


def is_spherical(sys: CoxeterSystem, J=None) -> bool:
    """True iff the special subgroup on ``J`` (default: all of S) is finite."""
    J = frozenset(sys.generators) if J is None else sys.subset(J)
    if not J:
        return True
    return _spherical_restriction(sys.restrict(J))


def is_positive_type(sys: CoxeterSystem, J=None) -> bool:
    """Every irreducible component of ``W_J`` is spherical or affine."""
    J = frozenset(sys.generators) if J is None else sys.subset(J)
    sub = sys.restrict(J)
    for comp in irreducible_components(sub):
        hit = _match_catalog(sub.restrict(comp))
        if hit is None:
            return False
    return True


def is_affine_irreducible(sys: CoxeterSystem, J=None) -> bool:
    J = frozenset(sys.generators) if J is None else sys.subset(J)
    if not J:
        return False
    sub = sys.restrict(J)
    if len(irreducible_components(sub)) != 1:
        return False
    hit = _match_catalog(sub)
    return hit is not None and hit[0] == AFFINE


def component_types(sys: CoxeterSystem) -> list[tuple[frozenset, TypeLabel]]:
    """Irreducible components of ``sys`` paired with their type labels."""
    return [(c, classify_irreducible(sys.restrict(c))) for c in irreducible_components(sys)]


def group_order(sys: CoxeterSystem):
    """|W| for spherical systems (product over components), ``INF`` otherwise."""
    if not is_spherical(sys):
        return INF
    order = 1
    for comp in irreducible_components(sys):
        _, name = _match_catalog(sys.restrict(comp))
        order *= _spherical_order(name)
    return order


@lru_cache(maxsize=None)
def spherical_subsets(sys: CoxeterSystem, cap: int = SPHERICAL_POSET_CAP) -> tuple[frozenset, ...]:
    """All spherical subsets, including the empty set, grown from singletons.

    Sorted by size, then by generator order.
    """
    gens = sys.generators
    pos = {g: i for i, g in enumerate(gens)}
    found = {frozenset()}
    layer = [frozenset()]
    while layer:
        nxt = set()
        for T in layer:
            top = max((pos[g] for g in T), default=-1)
            for g in gens[top + 1:]:
                U = T | {g}
                # spherical sets are closed under subsets, so check the
                # one-smaller faces before the catalog
                if all((U - {h}) in found for h in T) and is_spherical(sys, U):
                    nxt.add(U)
        found.update(nxt)
        if len(found) > cap:
            raise LimitExceeded(f"more than {cap} spherical subsets")
        layer = list(nxt)
    return tuple(sorted(found, key=lambda T: (len(T), sorted(pos[g] for g in T))))


def maximal_spherical_subsets(sys: CoxeterSystem) -> list[frozenset]:
    """Inclusion-maximal spherical subsets, in the order of ``spherical_subsets``."""
    sph = spherical_subsets(sys)
    sph_set = set(sph)
    gens = sys.generators
    return [T for T in sph if not any((T | {g}) in sph_set for g in gens if g not in T)]


def bilinear_form(sys: CoxeterSystem) -> np.ndarray:
    n = sys.rank
    B = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            m = sys.matrix[i][j]
            B[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
    return B


def bilinear_signature(sys: CoxeterSystem, tol: float = DEFAULT_TOL) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)`` eigenvalue counts of the cosine form."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if sys.is_empty:
        return (0, 0, 0)
    ev = np.linalg.eigvalsh(bilinear_form(sys))
    return (int((ev > tol).sum()), int((ev < -tol).sum()), int((abs(ev) <= tol).sum()))


def irreducible_subsets(sys: CoxeterSystem):
    """Yield every non-empty subset whose Coxeter diagram is connected."""
    gens = sys.generators
    for r in range(1, len(gens) + 1):
        for J in combinations(gens, r):
            if len(irreducible_components(sys.restrict(J))) == 1:
                yield frozenset(J)
