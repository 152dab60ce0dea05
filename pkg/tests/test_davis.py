import itertools
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from weyl.catalog import is_spherical, spherical_subsets
from weyl.davis import (
    absolute_cohomology,
    chamber_complex,
    cohomology_table,
    more_than_one_end_h1,
    rank_exact,
    rational_cd,
    relative_cohomology,
)
from weyl.errors import NotSpherical

from systems import (
    A2, A3, AFF_A2, AFF_C2, AFF_G2, B3, CORPUS, D_INF, D_INF_X_A1, FREE3, HEX_RANK6,
    HYP_SQUARE, NONCRYST_OTHER, NONCRYST_SQUARES, TRIANGLE_237, Y1, make, random_system,
)

AFF_A3 = make("abcd", {("a", "b"): 3, ("b", "c"): 3, ("c", "d"): 3, ("a", "d"): 3})
AFF_C3 = make("abcd", {("a", "b"): 4, ("b", "c"): 3, ("c", "d"): 4})


@given(st.lists(st.lists(st.integers(-4, 4), min_size=6, max_size=6), min_size=1, max_size=7))
@settings(max_examples=300)
def test_rank_exact_matches_sympy(rows):
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    assert rank_exact(sparse) == sympy.Matrix(rows).rank()


def test_chamber_complex_shape():
    cx = chamber_complex(D_INF)
    # vertices: {}, {s}, {t}; edges: {}<{s}, {}<{t}
    assert cx.vertices == (frozenset(), frozenset("s"), frozenset("t"))
    assert cx.dimension == 1
    assert len(cx.simplices[1]) == 2
    mirror = cx.mirror("s")
    assert mirror[0] == ((1,),) and mirror[1] == ()


def test_absolute_cohomology_is_a_point():
    for sys in CORPUS.values():
        dims = absolute_cohomology(sys)
        assert dims[0] == 1 and not any(dims[1:])


def test_affine_a2_table():
    dims = relative_cohomology(AFF_A2, [])
    assert dims == [0, 0, 1]
    assert rational_cd(AFF_A2) == 2


def test_infinite_dihedral_table():
    assert relative_cohomology(D_INF, []) == [0, 1]
    assert rational_cd(D_INF) == 1


def test_pentagon_of_infinities():
    assert rational_cd(Y1) == 2


def test_not_spherical_rejected():
    with pytest.raises(NotSpherical):
        relative_cohomology(AFF_A2, "abc")


def test_spherical_groups_have_cd_zero():
    for sys in (A2, A3, B3, make("abc")):
        assert rational_cd(sys) == 0
        table = cohomology_table(sys)
        S = frozenset(sys.generators)
        assert table[S][0] == 1
        assert all(not any(d) for J, d in table.items() if J != S)


@pytest.mark.parametrize("sys, n", [(D_INF, 2), (AFF_A2, 3), (AFF_C2, 3), (AFF_G2, 3),
                                    (AFF_A3, 4), (AFF_C3, 4)])
def test_affine_cd_is_rank_minus_one(sys, n):
    assert rational_cd(sys) == n - 1


@pytest.mark.parametrize("sys", [HYP_SQUARE, TRIANGLE_237])
def test_compact_hyperbolic_cd(sys):
    assert rational_cd(sys) == sys.rank - 1


@pytest.mark.parametrize("sys", NONCRYST_SQUARES + NONCRYST_OTHER + (HEX_RANK6,))
def test_noncompact_hyperbolic_cd(sys):
    assert rational_cd(sys) == sys.rank - 2


def dense_relative_dims(sys, J):
    """Relative cohomology via dense numpy ranks over the full simplex list."""
    J = frozenset(J)
    cx = chamber_complex(sys)
    outside = frozenset(sys.generators) - J
    keep = [[c for c in layer if not (cx.vertices[c[0]] & outside)] for layer in cx.simplices]
    ranks = [0]
    for k in range(1, len(keep)):
        if not keep[k] or not keep[k - 1]:
            ranks.append(0)
            continue
        idx = {c: i for i, c in enumerate(keep[k - 1])}
        M = np.zeros((len(keep[k]), len(keep[k - 1])))
        for r, c in enumerate(keep[k]):
            for p in range(len(c)):
                i = idx.get(c[:p] + c[p + 1:])
                if i is not None:
                    M[r, i] = (-1) ** p
        ranks.append(int(np.linalg.matrix_rank(M)))
    ranks.append(0)
    return [len(keep[k]) - ranks[k] - ranks[k + 1] for k in range(len(keep))]


@pytest.mark.parametrize("name", sorted(n for n in CORPUS if n != "hex6"))
def test_relative_cohomology_matches_dense_oracle(name):
    sys = CORPUS[name]
    for J in spherical_subsets(sys):
        assert relative_cohomology(sys, J) == dense_relative_dims(sys, J)


@pytest.mark.parametrize("seed", range(25))
def test_euler_characteristic_and_nonnegativity(seed):
    rng = random.Random(seed)
    sys = random_system(rng, rng.randint(2, 5))
    cx = chamber_complex(sys)
    for J in spherical_subsets(sys):
        dims = relative_cohomology(sys, J)
        assert all(d >= 0 for d in dims)
        assert len(dims) == cx.dimension + 1
        outside = frozenset(sys.generators) - J
        chains = [sum(1 for c in layer if not cx.in_subcomplex(c, outside)) for layer in cx.simplices]
        assert sum((-1) ** k * d for k, d in enumerate(dims)) == sum(
            (-1) ** k * n for k, n in enumerate(chains))


def test_h1_route_on_examples():
    assert more_than_one_end_h1(D_INF)
    assert more_than_one_end_h1(FREE3)
    assert more_than_one_end_h1(D_INF_X_A1)
    assert not more_than_one_end_h1(AFF_A2)
    assert not more_than_one_end_h1(A2)
    assert not more_than_one_end_h1(Y1)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_cd_zero_iff_spherical_and_monotone(name):
    sys = CORPUS[name]
    cd = rational_cd(sys)
    assert (cd == 0) == is_spherical(sys)
    if sys.rank <= 5:
        for r in range(1, sys.rank):
            for J in itertools.combinations(sys.generators, r):
                assert rational_cd(sys.restrict(J)) <= cd


def _weighted_h1(sys, R):
    """Sum over J of dim H^1(K, K^{S-J}) times the number of w in the ball with In(w) = J."""
    from weyl.words import ball

    total = 0
    for J, count in ball(sys, R).descent_counts.items():
        # descent sets are always spherical
        dims = relative_cohomology(sys, J)
        total += dims[1] * count if len(dims) > 1 else 0
    return total


@pytest.mark.parametrize("sys, e_minus_one", [(D_INF, 1), (AFF_A2, 0)])
def test_descent_class_reading_gives_end_count(sys, e_minus_one):
    # the weighted H^1 count stabilises at e - 1 as the ball grows
    assert [_weighted_h1(sys, R) for R in (2, 4, 6)] == [e_minus_one] * 3


def test_descent_class_reading_grows_for_infinitely_many_ends():
    counts = [_weighted_h1(FREE3, R) for R in (2, 4, 6)]
    assert counts[0] < counts[1] < counts[2]
