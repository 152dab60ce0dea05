"""Residue graphs, chamber graphs and the ball-complement ends estimator on
the Coxeter complex, truncated to a ball around the identity.

Chambers are group elements (in normal form). The residue of type ``J``
through ``w`` is the coset ``w W_J``, keyed by its minimal-length element.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import CoxeterSystem
from .decompose import GraphOfSpecialSubgroups
from .errors import BadRadii, LimitExceeded
from .words import LIMITS, NormalForm, _coded_ball, _decode, _encode, _reducer

ACYCLIC_CONNECTED = "ACYCLIC_CONNECTED"
CYCLE_FOUND = "CYCLE_FOUND"
DISCONNECTED = "DISCONNECTED"

# default largest radius tried when searching for a cycle
R_MAX = 8

BALL_CAVEAT = (
    "verdict covers the ball only: a cycle or a disconnection refutes tree-ness, "
    "an acyclic connected ball is necessary but not sufficient"
)


def _min_rep_code(red, w: tuple[int, ...], J_idx) -> tuple[int, ...]:
    """Greedy right-division: strip descents in ``J`` until none remain."""
    changed = True
    while changed:
        changed = False
        for i in J_idx:
            v = red.multiply(w, i)
            if len(v) < len(w):
                w = v
                changed = True
    return w


def min_coset_rep(sys: CoxeterSystem, w, J) -> NormalForm:
    """Minimal-length element of ``w W_J``."""
    J = sys.subset(J)
    idx = sorted(sys.index(s) for s in J)
    return _decode(sys, _min_rep_code(_reducer(sys), _encode(sys, w), idx))


def same_residue(sys: CoxeterSystem, u, v, J) -> bool:
    """``u W_J = v W_J`` iff ``u^-1 v`` lies in ``W_J``."""
    from .words import inverse, product

    u = u if isinstance(u, NormalForm) else NormalForm(tuple(u))
    v = v if isinstance(v, NormalForm) else NormalForm(tuple(v))
    d = product(sys, inverse(sys, u), v)
    return set(d.word) <= set(sys.subset(J))


@dataclass(frozen=True)
class CosetGraph:
    """Vertices ``(v, rep)`` for vertex-residues; edges ``(e, rep)`` with endpoints."""

    system: CoxeterSystem
    gog: GraphOfSpecialSubgroups
    radius: int
    vertices: tuple[tuple[int, NormalForm], ...]
    edges: tuple[tuple[tuple[int, NormalForm], tuple[int, NormalForm], tuple[int, NormalForm]], ...]

    def to_dot(self, name: str = "cosets") -> str:
        ids = {v: f"n{i}" for i, v in enumerate(self.vertices)}
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  {ids[v]} [label="{v[0]}:{v[1]}"];')
        for (e, rep), o, t in self.edges:
            lines.append(f'  {ids[o]} -- {ids[t]} [label="{e}:{rep}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        ids = {v: i for i, v in enumerate(self.vertices)}
        return {
            "radius": self.radius,
            "vertices": [{"vertex": v, "rep": list(r.word)} for v, r in self.vertices],
            "edges": [
                {"edge": e, "rep": list(r.word), "origin": ids[o], "terminus": ids[t]}
                for (e, r), o, t in self.edges
            ],
        }


def _coset_reps(red, rank, J_idx, R, cap) -> list[tuple[int, ...]]:
    """Minimal representatives of the cosets ``w W_J`` with ``len(w) <= R``.

    A representative of length k+1 is ``s u`` for a representative ``u`` of
    length k, so a breadth-first search by left multiplication finds them all.
    """
    layer = [()]
    seen = {()}
    for _ in range(R):
        nxt = []
        for u in layer:
            for i in range(rank):
                v = _min_rep_code(red, red.reduce((i,) + u), J_idx)
                if len(v) == len(u) + 1 and v not in seen:
                    seen.add(v)
                    nxt.append(v)
                    if len(seen) > cap:
                        raise LimitExceeded(f"more than {cap} cosets within radius {R}")
        if not nxt:
            break
        layer = nxt
    return sorted(seen, key=lambda w: (len(w), w))


def coset_graph(sys: CoxeterSystem, gog: GraphOfSpecialSubgroups, R: int,
                cap: int | None = None) -> CosetGraph:
    """Residues of the vertex and edge types that meet the ball of radius ``R``.

    An edge residue ``w W_E`` lies in exactly one residue of each endpoint
    type, found from its minimal representative.
    """
    if R < 0:
        raise BadRadii("radius must be non-negative")
    if cap is None:
        cap = LIMITS["ball"]
    red = _reducer(sys)
    vidx = [sorted(sys.index(s) for s in V) for V in gog.vertex_sets]
    eidx = [sorted(sys.index(s) for s in E) for _, _, E in gog.edges]
    verts = {}
    for k, J in enumerate(vidx):
        for rep in _coset_reps(red, sys.rank, J, R, cap):
            verts[(k, rep)] = None
    edges = {}
    for k, (o, t, _) in enumerate(gog.edges):
        for rep in _coset_reps(red, sys.rank, eidx[k], R, cap):
            edges[(k, rep)] = ((o, _min_rep_code(red, rep, vidx[o])),
                               (t, _min_rep_code(red, rep, vidx[t])))

    def nf(key):
        return (key[0], _decode(sys, key[1]))

    def order(key):
        return (len(key[1]), key[1], key[0])

    vs = tuple(nf(v) for v in sorted(verts, key=order))
    es = tuple(
        (nf(k), nf(o), nf(t)) for k, (o, t) in sorted(edges.items(), key=lambda kv: order(kv[0]))
    )
    return CosetGraph(sys, gog, R, vs, es)


@dataclass(frozen=True)
class TreeVerdict:
    verdict: str
    witness: tuple | None
    radius: int
    caveat: str = BALL_CAVEAT

    def __str__(self):
        return self.verdict


def is_tree_within_ball(g: CosetGraph) -> TreeVerdict:
    """Union-find over residue edges; the first closing edge yields a cycle witness."""
    parent = {v: v for v in g.vertices}
    adj: dict = {v: [] for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, o, t in g.edges:
        if o == t or find(o) == find(t):
            path = _tree_path(adj, t, o) if o != t else [o]
            return TreeVerdict(CYCLE_FOUND, tuple(path), g.radius)
        parent[find(o)] = find(t)
        adj[o].append(t)
        adj[t].append(o)
    roots = {find(v) for v in g.vertices}
    if len(roots) > 1:
        return TreeVerdict(DISCONNECTED, None, g.radius)
    return TreeVerdict(ACYCLIC_CONNECTED, None, g.radius)


def search_for_cycle(sys: CoxeterSystem, gog: GraphOfSpecialSubgroups,
                     r_max: int = R_MAX) -> TreeVerdict:
    """Grow the ball until a cycle or disconnection shows up, or ``r_max`` is reached."""
    if r_max < 0:
        raise BadRadii("r_max must be non-negative")
    for R in range(r_max + 1):
        v = is_tree_within_ball(coset_graph(sys, gog, R))
        if v.verdict != ACYCLIC_CONNECTED:
            return v
    return v


def _tree_path(adj, src, dst):
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    out = []
    x = dst
    while x is not None:
        out.append(x)
        x = prev[x]
    return out


@dataclass(frozen=True)
class ChamberGraph:
    system: CoxeterSystem
    radius: int
    vertices: tuple[NormalForm, ...]
    edges: tuple[tuple[NormalForm, NormalForm, str], ...]
    lengths: dict

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def to_dot(self, name: str = "chambers") -> str:
        ids = {v: f"c{i}" for i, v in enumerate(self.vertices)}
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  {ids[v]} [label="{v}"];')
        for u, v, s in self.edges:
            lines.append(f'  {ids[u]} -- {ids[v]} [label="{s}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def chamber_graph(sys: CoxeterSystem, R: int, cap: int | None = None) -> ChamberGraph:
    """Cayley graph on the ball of radius ``R``; edges ``{w, ws}`` inside the ball."""
    if R < 0:
        raise BadRadii("radius must be non-negative")
    cb = _coded_ball(sys, R, cap)
    inside = {w for sphere in cb.spheres for w in sphere}
    verts, edges = [], []
    for sphere in cb.spheres:
        for w in sphere:
            verts.append(w)
            for i, v in enumerate(cb.neighbours[w]):
                if v in inside and (len(v), v) > (len(w), w):
                    edges.append((w, v, sys.generators[i]))
    dec = {w: _decode(sys, w) for w in verts}
    return ChamberGraph(
        sys, R,
        tuple(dec[w] for w in verts),
        tuple((dec[u], dec[v], s) for u, v, s in edges),
        {dec[w]: len(w) for w in verts},
    )


@dataclass(frozen=True)
class EndsEstimate:
    value: int
    r: int
    R: int

    def __int__(self):
        return self.value


def ends_estimate(g: ChamberGraph, r: int, R: int | None = None) -> EndsEstimate:
    """Components of ``ball(R) - ball(r)`` that reach the sphere of radius ``R``."""
    if R is None:
        R = g.radius
    if not (0 <= r < R <= g.radius):
        raise BadRadii(f"need 0 <= r < R <= {g.radius}, got r={r}, R={R}")
    keep = {v for v, l in g.lengths.items() if r < l <= R}
    outer = [v for v in keep if g.lengths[v] == R]
    if not outer:
        return EndsEstimate(0, r, R)
    adj = g.adjacency()
    seen = set()
    count = 0
    for v in outer:
        if v in seen:
            continue
        count += 1
        seen.add(v)
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in keep and y not in seen:
                    seen.add(y)
                    queue.append(y)
    return EndsEstimate(count, r, R)
