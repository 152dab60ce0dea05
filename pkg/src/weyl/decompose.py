"""Infinity-decompositions, ends, and visual graph-of-groups decompositions."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from .catalog import is_positive_type, is_spherical, spherical_subsets
from .chordal import clique_tree, is_chordal, maximal_cliques_chordal
from .core import INF, PRESENTATION, CoxeterSystem, connected_components, diagram, irreducible_components
from .errors import CliquePredicateFailed, InvalidSubset, NotChordal

INFINITY = "INFINITY"

SPHERICAL = "SPHERICAL"
SPHERICAL_OR_AFFINE = "SPHERICAL_OR_AFFINE"
AT_MOST_ONE_END = "AT_MOST_ONE_END"


@dataclass(frozen=True)
class XiGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    components: tuple[frozenset, ...]

    @property
    def connected(self) -> bool:
        return len(self.components) <= 1


def xi_graph(sys: CoxeterSystem, J) -> XiGraph:
    """Induced presentation diagram on ``S - J``."""
    J = sys.subset(J)
    if J == frozenset(sys.generators):
        raise InvalidSubset("J must be a proper subset of S")
    verts = tuple(g for g in sys.generators if g not in J)
    edges = tuple(
        (u, v) for i, u in enumerate(verts) for v in verts[i + 1:] if sys.m(u, v) != INF
    )
    adj = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return XiGraph(verts, edges, tuple(connected_components(verts, adj)))


@dataclass(frozen=True)
class InfinityDecomposition:
    down: frozenset
    up: frozenset

    @property
    def meet(self) -> frozenset:
        return self.down & self.up

    @property
    def nontrivial(self) -> bool:
        return bool(self.down - self.up) and bool(self.up - self.down)

    def is_valid_for(self, sys: CoxeterSystem) -> bool:
        """Covering plus ``m = inf`` across the two differences."""
        if self.down | self.up != frozenset(sys.generators):
            return False
        return all(sys.m(s, t) == INF for s in self.down - self.up for t in self.up - self.down)


def _scan_order(sys: CoxeterSystem):
    """Spherical proper subsets by size, then lexicographically in generator order."""
    S = frozenset(sys.generators)
    return [J for J in spherical_subsets(sys) if J != S]


def find_spherical_infinity_decomposition(sys: CoxeterSystem) -> InfinityDecomposition | None:
    """First spherical ``J`` whose ``Xi_J`` is disconnected, split along its first component."""
    if sys.rank < 2:
        return None
    for J in _scan_order(sys):
        xi = xi_graph(sys, J)
        if len(xi.components) >= 2:
            L = xi.components[0]
            rest = frozenset(xi.vertices) - L
            return InfinityDecomposition(L | J, rest | J)
    return None


@dataclass(frozen=True)
class EndsCount:
    value: object  # 0, 1, 2 or INFINITY
    provenance: tuple[str, ...] = ()

    def __str__(self):
        return "inf" if self.value == INFINITY else str(self.value)

    def at_most_one(self) -> bool:
        return self.value in (0, 1)


def ends(sys: CoxeterSystem) -> EndsCount:
    if is_spherical(sys):
        return EndsCount(0, ("SPHERICAL",))
    dec = find_spherical_infinity_decomposition(sys)
    if dec is None:
        return EndsCount(1, ("NO_SPHERICAL_SPLITTING",))
    infinite = [c for c in irreducible_components(sys) if not is_spherical(sys, c)]
    if len(infinite) == 1:
        comp = sys.restrict(infinite[0])
        if comp.rank == 2 and comp.matrix[0][1] == INF:
            return EndsCount(2, ("SPHERICAL_SPLITTING", "VIRTUALLY_Z"))
    return EndsCount(INFINITY, ("SPHERICAL_SPLITTING", "NOT_VIRTUALLY_Z"))


# graphs of special subgroups ----------------------------------------


@dataclass(frozen=True)
class GraphOfSpecialSubgroups:
    """Connected graph ``Lambda`` with special subsets on vertices and edges.

    Vertices are numbered by position in ``vertex_sets``; each edge is
    ``(i, j, edge_set)`` with ``i`` the origin and ``j`` the terminus.
    """

    vertex_sets: tuple[frozenset, ...]
    edges: tuple[tuple[int, int, frozenset], ...] = ()
    visual: bool = False
    provenance: str = ""

    def __post_init__(self):
        n = len(self.vertex_sets)
        for i, j, E in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidSubset(f"edge ({i},{j}) has an endpoint outside the graph")
            if not (E <= self.vertex_sets[i] and E <= self.vertex_sets[j]):
                raise InvalidSubset(f"edge set {sorted(E)} not contained in both endpoint sets")

    def is_tree(self) -> bool:
        n = len(self.vertex_sets)
        if len(self.edges) != n - 1:
            return False
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _ in self.edges:
            a, b = find(i), find(j)
            if a == b:
                return False
            parent[a] = b
        return True

    def covers(self, sys: CoxeterSystem) -> bool:
        return frozenset().union(*self.vertex_sets) == frozenset(sys.generators)

    def to_dict(self, sys: CoxeterSystem) -> dict:
        return {
            "visual": self.visual,
            "provenance": self.provenance,
            "vertices": [list(sys.ordered(V)) for V in self.vertex_sets],
            "edges": [
                {"origin": i, "terminus": j, "group": list(sys.ordered(E))}
                for i, j, E in self.edges
            ],
        }

    def to_dot(self, sys: CoxeterSystem, name: str = "decomposition") -> str:
        def lab(X):
            return "W{" + ",".join(sys.ordered(X)) + "}"

        lines = [f"graph {name} {{"]
        for i, V in enumerate(self.vertex_sets):
            lines.append(f'  v{i} [label="{lab(V)}"];')
        for i, j, E in self.edges:
            lines.append(f'  v{i} -- v{j} [label="{lab(E)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, sys: CoxeterSystem, doc: dict) -> "GraphOfSpecialSubgroups":
        try:
            verts = tuple(sys.subset(v) for v in doc["vertices"])
            edges = tuple(
                (int(e["origin"]), int(e["terminus"]), sys.subset(e["group"]))
                for e in doc.get("edges", [])
            )
        except (KeyError, TypeError, ValueError) as exc:
            from .errors import MalformedInput

            raise MalformedInput(f"bad graph-of-groups document: {exc}") from None
        return cls(verts, edges, bool(doc.get("visual", False)), str(doc.get("provenance", "")))

    @classmethod
    def from_json(cls, sys: CoxeterSystem, text: str) -> "GraphOfSpecialSubgroups":
        from .errors import MalformedInput

        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
        return cls.from_dict(sys, doc)


def split_graph(dec: InfinityDecomposition) -> GraphOfSpecialSubgroups:
    """The one-edge graph of groups ``W_down *_{W_meet} W_up``."""
    return GraphOfSpecialSubgroups((dec.down, dec.up), ((0, 1, dec.meet),), True, "INFINITY_SPLIT")


def presentation_graph(sys: CoxeterSystem) -> dict[str, set]:
    return diagram(sys, PRESENTATION).adjacency()


def _predicate(sys: CoxeterSystem, predicate) -> Callable[[frozenset], bool]:
    if callable(predicate):
        return lambda C: bool(predicate(sys, C))
    if predicate == SPHERICAL:
        return lambda C: is_spherical(sys, C)
    if predicate == SPHERICAL_OR_AFFINE:
        return lambda C: is_positive_type(sys, C)
    if predicate == AT_MOST_ONE_END:
        return lambda C: ends(sys.restrict(C)).at_most_one()
    raise ValueError(f"unknown predicate {predicate!r}")


def visual_decomposition(sys: CoxeterSystem, predicate=SPHERICAL) -> GraphOfSpecialSubgroups:
    """Clique tree of the presentation diagram turned into a tree of special subgroups.

    ``predicate`` is one of the named properties or a callable
    ``(sys, clique) -> bool``; every maximal clique must satisfy it.
    """
    test = _predicate(sys, predicate)
    adj = presentation_graph(sys)
    res = is_chordal(adj)
    if not res.chordal:
        raise NotChordal(f"presentation diagram has the chordless cycle {list(res.witness)}")
    tree = clique_tree(adj)
    for C in tree.cliques:
        if not test(C):
            raise CliquePredicateFailed(C, f"maximal clique {list(sys.ordered(C))} fails {predicate}")
    name = predicate if isinstance(predicate, str) else "USER"
    return GraphOfSpecialSubgroups(tree.cliques, tree.edges, True, f"CLIQUE_TREE:{name}")


def is_virtually_free(sys: CoxeterSystem) -> bool:
    if is_spherical(sys):
        return False
    adj = presentation_graph(sys)
    res = is_chordal(adj)
    if not res.chordal:
        return False
    return all(is_spherical(sys, C) for C in maximal_cliques_chordal(adj, res.elimination_order))


def accessibility_tree(sys: CoxeterSystem) -> GraphOfSpecialSubgroups:
    """Split vertex groups along spherical infinity-decompositions until none applies.

    Each split replaces a vertex ``V`` by ``down`` and ``up`` joined by the
    meet; edges formerly at ``V`` move to whichever side contains their
    (spherical, hence clique) edge set.
    """
    verts = [frozenset(sys.generators)]
    edges: list[tuple[int, int, frozenset]] = []
    done = [False]
    while not all(done):
        i = done.index(False)
        dec = find_spherical_infinity_decomposition(sys.restrict(verts[i]))
        if dec is None:
            done[i] = True
            continue
        verts[i] = dec.down
        verts.append(dec.up)
        done[i] = False
        done.append(False)
        j = len(verts) - 1
        moved = []
        for a, b, E in edges:
            if a == i and not E <= dec.down:
                a = j
            if b == i and not E <= dec.down:
                b = j
            moved.append((a, b, E))
        edges = moved + [(i, j, dec.meet)]
    return GraphOfSpecialSubgroups(tuple(verts), tuple(edges), True, "ITERATED_SPLIT")


def slender_hook(sys: CoxeterSystem, is_slender: Callable[[CoxeterSystem, frozenset], bool]) -> bool:
    """Coherence certificate: chordal presentation diagram whose maximal
    cliques all satisfy the caller-supplied ``is_slender`` predicate."""
    try:
        visual_decomposition(sys, is_slender)
    except (NotChordal, CliquePredicateFailed):
        return False
    return True
