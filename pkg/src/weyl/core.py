"""Coxeter systems, special subsets, their two labelled diagrams, and JSON IO."""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    DuplicateGenerator,
    InvalidLabel,
    MalformedInput,
    UnknownGenerator,
)

INF = math.inf

COXETER = "COXETER"
PRESENTATION = "PRESENTATION"


def format_label(m) -> str | int:
    return "inf" if m == INF else int(m)


def _parse_label(raw, key):
    if isinstance(raw, bool):
        raise MalformedInput(f"label for {key!r} must be an integer or 'inf'")
    if isinstance(raw, str):
        if raw.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        raise MalformedInput(f"label for {key!r} must be an integer or 'inf', got {raw!r}")
    if isinstance(raw, float):
        if raw == INF:
            return INF
        if raw.is_integer():
            raw = int(raw)
        else:
            raise InvalidLabel(f"label for {key!r} must be integral, got {raw}")
    if not isinstance(raw, int):
        raise MalformedInput(f"label for {key!r} must be an integer or 'inf'")
    return raw


@dataclass(frozen=True)
class CoxeterSystem:
    """A finite Coxeter matrix over named generators.

    ``matrix[i][j]`` is the order of ``s_i s_j``: 1 on the diagonal, an
    integer >= 2 or ``INF`` off it. Instances are immutable and hashable,
    so they can key memo tables.
    """

    generators: tuple[str, ...]
    matrix: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        gens = self.generators
        if len(set(gens)) != len(gens):
            seen = set()
            for g in gens:
                if g in seen:
                    raise DuplicateGenerator(f"duplicate generator {g!r}")
                seen.add(g)
        n = len(gens)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise MalformedInput("Coxeter matrix must be square of size |S|")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise InvalidLabel(f"diagonal label of {gens[i]!r} must be 1")
            for j in range(i + 1, n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise InvalidLabel(f"labels of ({gens[i]},{gens[j]}) are not symmetric")
                if m != INF and (m != int(m) or m < 2):
                    raise InvalidLabel(
                        f"label of ({gens[i]},{gens[j]}) must be >= 2 or inf, got {m}"
                    )

    # construction -----------------------------------------------------

    @classmethod
    def from_labels(cls, generators: Iterable[str], labels: Mapping | None = None):
        """Build from ``{(s, t): m}``; unspecified pairs get label 2."""
        gens = tuple(generators)
        index = {g: i for i, g in enumerate(gens)}
        if len(index) != len(gens):
            dup = next(g for g in gens if gens.count(g) > 1)
            raise DuplicateGenerator(f"duplicate generator {dup!r}")
        n = len(gens)
        mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (s, t), m in (labels or {}).items():
            for g in (s, t):
                if g not in index:
                    raise UnknownGenerator(f"unknown generator {g!r}")
            i, j = index[s], index[t]
            if i == j:
                if m != 1:
                    raise InvalidLabel(f"diagonal label of {s!r} must be 1")
                continue
            if m != INF and (m != int(m) or m < 2):
                raise InvalidLabel(f"label of ({s},{t}) must be >= 2 or inf, got {m}")
            m = INF if m == INF else int(m)
            mat[i][j] = mat[j][i] = m
        return cls(gens, tuple(tuple(row) for row in mat))

    @classmethod
    def empty(cls):
        """The system with no generators (the trivial group)."""
        return cls((), ())

    # access -----------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def is_empty(self) -> bool:
        return not self.generators

    def index(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {s!r}") from None

    @property
    def _index(self):
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {g: i for i, g in enumerate(self.generators)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    def m(self, s: str, t: str):
        return self.matrix[self.index(s)][self.index(t)]

    def subset(self, J: Iterable[str]) -> frozenset:
        """Validate ``J`` as a special subset and return it as a frozenset."""
        J = frozenset(J)
        for s in J:
            self.index(s)
        return J

    def ordered(self, J: Iterable[str]) -> tuple[str, ...]:
        """``J`` listed in generator order."""
        J = self.subset(J)
        return tuple(g for g in self.generators if g in J)

    def restrict(self, J: Iterable[str]) -> "CoxeterSystem":
        """The induced system on ``J``; ``J = {}`` yields the empty system."""
        idx = [self.index(g) for g in self.ordered(J)]
        gens = tuple(self.generators[i] for i in idx)
        mat = tuple(tuple(self.matrix[i][j] for j in idx) for i in idx)
        return CoxeterSystem(gens, mat)

    def labels(self) -> dict:
        """Pairs with label != 2, keyed in generator order."""
        out = {}
        n = self.rank
        for i in range(n):
            for j in range(i + 1, n):
                if self.matrix[i][j] != 2:
                    out[(self.generators[i], self.generators[j])] = self.matrix[i][j]
        return out

    def __repr__(self):
        parts = [f"{s}{t}={format_label(m)}" for (s, t), m in self.labels().items()]
        return f"CoxeterSystem({','.join(self.generators)}; {' '.join(parts)})"


@dataclass(frozen=True)
class DiagramGraph:
    kind: str
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, float], ...]

    def adjacency(self) -> dict[str, set[str]]:
        adj = {v: set() for v in self.vertices}
        for s, t, _ in self.edges:
            adj[s].add(t)
            adj[t].add(s)
        return adj


def diagram(sys: CoxeterSystem, kind: str = COXETER) -> DiagramGraph:
    """Coxeter diagram (edges where m != 2) or presentation diagram (m != inf)."""
    if kind == COXETER:
        keep = lambda m: m != 2
    elif kind == PRESENTATION:
        keep = lambda m: m != INF
    else:
        raise ValueError(f"unknown diagram kind {kind!r}")
    gens = sys.generators
    edges = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            m = sys.matrix[i][j]
            if keep(m):
                edges.append((gens[i], gens[j], m))
    return DiagramGraph(kind, gens, tuple(edges))


def connected_components(vertices: Iterable, adj: Mapping) -> list[frozenset]:
    """Components by breadth-first search, in first-seen vertex order."""
    seen = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        seen.add(v)
        comp = [v]
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def irreducible_components(sys: CoxeterSystem) -> list[frozenset]:
    g = diagram(sys, COXETER)
    return connected_components(g.vertices, g.adjacency())


def is_irreducible(sys: CoxeterSystem) -> bool:
    return len(irreducible_components(sys)) == 1


# JSON IO -------------------------------------------------------------


def _no_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out and out[k] != v:
            raise MalformedInput(f"conflicting duplicate key {k!r}")
        out[k] = v
    return out


def system_from_dict(doc) -> CoxeterSystem:
    if not isinstance(doc, dict) or "generators" not in doc:
        raise MalformedInput("expected an object with a 'generators' list")
    gens = doc["generators"]
    if not isinstance(gens, list) or not gens:
        raise MalformedInput("'generators' must be a non-empty list")
    for g in gens:
        if not isinstance(g, str) or not g or "," in g:
            raise MalformedInput(f"generator names must be non-empty strings without commas: {g!r}")
    seen = set()
    for g in gens:
        if g in seen:
            raise DuplicateGenerator(f"duplicate generator {g!r}")
        seen.add(g)
    raw_labels = doc.get("labels", {})
    if not isinstance(raw_labels, dict):
        raise MalformedInput("'labels' must be an object")
    labels = {}
    for key, raw in raw_labels.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise MalformedInput(f"pair key {key!r} must be two names joined by a comma")
        s, t = (p.strip() for p in parts)
        if s not in seen or t not in seen:
            raise MalformedInput(f"pair key {key!r} names an unknown generator")
        m = _parse_label(raw, key)
        if s == t:
            if m != 1:
                raise InvalidLabel(f"diagonal label {key!r} must be 1, got {format_label(m)}")
            continue
        if m != INF and m < 2:
            raise InvalidLabel(f"off-diagonal label {key!r} must be >= 2 or inf, got {m}")
        pair = frozenset((s, t))
        if pair in labels and labels[pair] != m:
            raise MalformedInput(f"conflicting labels for the pair {s},{t}")
        labels[pair] = m
    return CoxeterSystem.from_labels(gens, {tuple(sorted(p)): m for p, m in labels.items()})


def parse_system(text: str | bytes) -> CoxeterSystem:
    """Parse the JSON input format ``{"generators": [...], "labels": {"s,t": m}}``."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    return system_from_dict(doc)


def system_to_dict(sys: CoxeterSystem) -> dict:
    return {
        "generators": list(sys.generators),
        "labels": {f"{s},{t}": format_label(m) for (s, t), m in sys.labels().items()},
    }


def serialize_system(sys: CoxeterSystem) -> str:
    return json.dumps(system_to_dict(sys), ensure_ascii=False)
