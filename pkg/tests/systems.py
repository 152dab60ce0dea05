"""Named Coxeter systems and independent oracles shared by the test modules."""
from __future__ import annotations

import itertools
import math
import random
from collections import deque

import numpy as np

from weyl.core import INF, CoxeterSystem


def make(gens, labels=None):
    return CoxeterSystem.from_labels(tuple(gens), dict(labels or {}))


A1 = make("a")
A2 = make("ab", {("a", "b"): 3})
B2 = make("ab", {("a", "b"): 4})
A1xA1 = make("ab")
A3 = make("abc", {("a", "b"): 3, ("b", "c"): 3})
B3 = make("abc", {("a", "b"): 4, ("b", "c"): 3})
H3 = make("abc", {("a", "b"): 5, ("b", "c"): 3})
D_INF = make("st", {("s", "t"): INF})
D_INF_X_A1 = make("stu", {("s", "t"): INF})
AFF_A2 = make("abc", {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3})
AFF_C2 = make("abc", {("a", "b"): 4, ("b", "c"): 4})
AFF_G2 = make("abc", {("a", "b"): 6, ("b", "c"): 3})
FREE3 = make("abc", {("a", "b"): 3, ("a", "c"): INF, ("b", "c"): INF})
TRIANGLE_237 = make("abc", {("a", "b"): 2, ("b", "c"): 3, ("a", "c"): 7})
Y1 = make("abcde", {("a", "b"): INF, ("b", "c"): INF, ("c", "d"): INF,
                    ("d", "e"): INF, ("a", "e"): INF})
# compact hyperbolic: 4-cycle d-c-b-a-d labelled 3,4,3,4
HYP_SQUARE = make("abcd", {("d", "c"): 3, ("c", "b"): 4, ("a", "b"): 3, ("d", "a"): 4})
# D_inf x affine A_2 on five generators, cross labels 2
D_INF_X_AFF_A2 = make("stabc", {("s", "t"): INF, ("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3})


def _square(dc, da, cb, ab):
    return make("abcd", {("d", "c"): dc, ("d", "a"): da, ("c", "b"): cb, ("a", "b"): ab})


# non-compact hyperbolic, non-crystallographic, rank 4: cycle diagrams
NONCRYST_SQUARES = (
    _square(3, 4, 4, 4),
    _square(3, 3, 3, 6),
    _square(4, 3, 3, 6),
    _square(5, 3, 3, 6),
)
# rank 4: triangle plus pendant edge, and the 6-3-5 chain
NONCRYST_OTHER = (
    make("abcd", {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3, ("d", "a"): 5}),
    make("abcd", {("a", "b"): 6, ("b", "c"): 3, ("c", "d"): 5}),
)
# rank 6 cycle f-a-b-c-d-e-f, label 4 on d-e
HEX_RANK6 = make("abcdef", {("f", "a"): 3, ("a", "b"): 3, ("b", "c"): 3,
                            ("c", "d"): 3, ("d", "e"): 4, ("e", "f"): 3})
# crystallographic non-compact hyperbolic with |S| maximal spherical subsets
STAR4 = make("abcd", {("a", "b"): 6, ("b", "c"): 3, ("b", "d"): 3, ("c", "d"): 3})

CORPUS = {
    "A1": A1, "A2": A2, "B2": B2, "A1xA1": A1xA1, "A3": A3, "B3": B3, "H3": H3,
    "D_inf": D_INF, "D_inf x A1": D_INF_X_A1, "aff A2": AFF_A2, "aff C2": AFF_C2,
    "aff G2": AFF_G2, "free3": FREE3, "237": TRIANGLE_237, "Y1": Y1,
    "hyp square": HYP_SQUARE, "D_inf x aff A2": D_INF_X_AFF_A2,
    "star4": STAR4, "hex6": HEX_RANK6,
}


def rank3(x, y, z):
    """Triangle with m_ab = x, m_bc = y, m_ac = z."""
    return make("abc", {("a", "b"): x, ("b", "c"): y, ("a", "c"): z})


def random_system(rng: random.Random, n: int, labels=(2, 2, 3, 4, 5, 6, INF)) -> CoxeterSystem:
    gens = "abcdefgh"[:n]
    lab = {}
    for i in range(n):
        for j in range(i + 1, n):
            lab[(gens[i], gens[j])] = rng.choice(labels)
    return make(gens, lab)


# oracle: Tits' geometric representation, numerically ----------------


def geometric_generators(sys: CoxeterSystem) -> list[np.ndarray]:
    """Reflection matrices sigma_s(v) = v - 2 B(e_s, v) e_s; faithful."""
    n = sys.rank
    B = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            m = sys.matrix[i][j]
            B[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
    mats = []
    for i in range(n):
        M = np.eye(n)
        M[i, :] -= 2 * B[i, :]
        mats.append(M)
    return mats


def matrix_key(M: np.ndarray) -> tuple:
    return tuple(np.round(M, 6).ravel().tolist())


def geometric_word(sys: CoxeterSystem, word) -> np.ndarray:
    gens = geometric_generators(sys)
    M = np.eye(sys.rank)
    for s in word:
        M = M @ gens[sys.index(s)]
    return M


def geometric_sphere_sizes(sys: CoxeterSystem, R: int) -> list[int]:
    """Sphere sizes by BFS over matrices, independent of any word reduction."""
    gens = geometric_generators(sys)
    start = np.eye(sys.rank)
    seen = {matrix_key(start)}
    layer = [start]
    sizes = [1]
    for _ in range(R):
        nxt = []
        for M in layer:
            for G in gens:
                P = M @ G
                k = matrix_key(P)
                if k not in seen:
                    seen.add(k)
                    nxt.append(P)
        if not nxt:
            break
        sizes.append(len(nxt))
        layer = nxt
    return sizes


# oracle: brute-force induced cycles ----------------------------------


def has_induced_cycle_brute(adj) -> bool:
    """Any vertex subset of size >= 4 inducing a cycle (2-regular, connected)."""
    verts = list(adj)
    for k in range(4, len(verts) + 1):
        for sub in itertools.combinations(verts, k):
            S = set(sub)
            if all(len(adj[v] & S) == 2 for v in sub):
                # connected?
                seen = {sub[0]}
                q = deque([sub[0]])
                while q:
                    x = q.popleft()
                    for y in adj[x] & S:
                        if y not in seen:
                            seen.add(y)
                            q.append(y)
                if len(seen) == k:
                    return True
    return False


def is_induced_cycle(adj, cyc) -> bool:
    k = len(cyc)
    if k < 4 or len(set(cyc)) != k:
        return False
    S = set(cyc)
    for i, v in enumerate(cyc):
        if cyc[(i + 1) % k] not in adj[v]:
            return False
        if len(adj[v] & S) != 2:
            return False
    return True


def random_graph(rng: random.Random, n: int, p: float):
    adj = {v: set() for v in range(n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
    return adj
