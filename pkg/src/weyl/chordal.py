"""Chordality, maximal cliques and clique trees for small undirected graphs.

Graphs are plain adjacency mappings ``{vertex: set(neighbours)}``; the
iteration order of the mapping fixes every tie-break.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping

from .errors import InvariantViolation, NotChordal


def lex_bfs(adj: Mapping) -> list:
    """Lexicographic breadth-first order (partition refinement)."""
    order = []
    # ordered list of classes; each class is a list of vertices
    classes = [list(adj)]
    while classes:
        v = classes[0].pop(0)
        if not classes[0]:
            classes.pop(0)
        order.append(v)
        refined = []
        for cls in classes:
            inside = [u for u in cls if u in adj[v]]
            outside = [u for u in cls if u not in adj[v]]
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        classes = refined
    return order


def is_perfect_elimination_order(adj: Mapping, order) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        if any(u != parent and u not in adj[parent] for u in later):
            return False
    return True


def find_chordless_cycle(adj: Mapping):
    """An induced cycle on >= 4 vertices, or None if there is none.

    Every such cycle through ``v`` with neighbours ``u, w`` leaves a
    ``u``-``w`` path avoiding the rest of ``N[v]``; the shortest such path
    closes up with ``v`` into an induced cycle.
    """
    for v in adj:
        nbrs = list(adj[v])
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1:]:
                if w in adj[u]:
                    continue
                banned = (set(adj[v]) | {v}) - {u, w}
                path = _shortest_path(adj, u, w, banned)
                if path is not None:
                    return [v] + path
    return None


def _shortest_path(adj, src, dst, banned):
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in adj[x]:
            if y not in prev and y not in banned:
                prev[y] = x
                queue.append(y)
    return None


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    elimination_order: tuple
    witness: tuple | None = None

    def __bool__(self):
        return self.chordal

    def __iter__(self):
        yield self.chordal
        yield self.elimination_order if self.chordal else self.witness


def is_chordal(adj: Mapping) -> ChordalityResult:
    """LexBFS reversed, checked as a perfect elimination order.

    Unpacks as ``(True, order)`` or ``(False, witness_cycle)``.
    """
    order = lex_bfs(adj)[::-1]
    if is_perfect_elimination_order(adj, order):
        return ChordalityResult(True, tuple(order))
    witness = find_chordless_cycle(adj)
    if witness is None:
        raise InvariantViolation("LexBFS order is not a PEO but no chordless cycle exists")
    return ChordalityResult(False, tuple(order), tuple(witness))


def maximal_cliques_chordal(adj: Mapping, order) -> list[frozenset]:
    """Maximal cliques read off a perfect elimination order."""
    pos = {v: i for i, v in enumerate(order)}
    cands = []
    for v in order:
        cands.append(frozenset([v, *(u for u in adj[v] if pos[u] > pos[v])]))
    out = []
    for c in cands:
        if not any(c < d for d in cands) and c not in out:
            out.append(c)
    return out


def maximal_cliques(adj: Mapping) -> list[frozenset]:
    """Bron-Kerbosch with pivoting, for graphs that need not be chordal."""
    out = []
    rank = {v: i for i, v in enumerate(adj)}

    def expand(R, P, X):
        if not P and not X:
            out.append(frozenset(R))
            return
        pivot = max(P | X, key=lambda u: (len(adj[u] & P), -rank[u]))
        for v in sorted(P - adj[pivot], key=rank.__getitem__):
            expand(R | {v}, P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    expand(set(), {v for v in adj}, set())
    out.sort(key=lambda c: sorted(rank[v] for v in c))
    return out


@dataclass(frozen=True)
class CliqueTree:
    cliques: tuple[frozenset, ...]
    edges: tuple[tuple[int, int, frozenset], ...]

    def neighbours(self, i):
        for a, b, sep in self.edges:
            if a == i:
                yield b, sep
            elif b == i:
                yield a, sep

    def path(self, i, j) -> list[int]:
        prev = {i: None}
        queue = deque([i])
        while queue:
            x = queue.popleft()
            for y, _ in self.neighbours(x):
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        out = []
        x = j
        while x is not None:
            out.append(x)
            x = prev[x]
        return out[::-1]

    def has_clique_intersection_property(self) -> bool:
        n = len(self.cliques)
        for i in range(n):
            for j in range(i + 1, n):
                meet = self.cliques[i] & self.cliques[j]
                if not all(meet <= self.cliques[k] for k in self.path(i, j)):
                    return False
        return True


def clique_tree(adj: Mapping) -> CliqueTree:
    """Maximum-weight spanning tree of the clique-intersection graph.

    Weights are intersection sizes; zero-weight pairs are allowed so that
    a disconnected graph still yields a single tree. Ties break by clique
    index. The clique intersection property is verified before returning.
    """
    res = is_chordal(adj)
    if not res.chordal:
        raise NotChordal(f"graph is not chordal; chordless cycle {list(res.witness)}")
    cliques = maximal_cliques_chordal(adj, res.elimination_order)
    rank = {v: i for i, v in enumerate(adj)}
    cliques.sort(key=lambda c: sorted(rank[v] for v in c))
    n = len(cliques)
    pairs = sorted(
        ((i, j) for i in range(n) for j in range(i + 1, n)),
        key=lambda p: (-len(cliques[p[0]] & cliques[p[1]]), p),
    )
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for i, j in pairs:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
            edges.append((i, j, cliques[i] & cliques[j]))
    tree = CliqueTree(tuple(cliques), tuple(edges))
    if not tree.has_clique_intersection_property():
        raise InvariantViolation("maximum-weight clique tree violates the intersection property")
    return tree


def graph_from_edges(vertices, edges) -> dict[Hashable, set]:
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj
