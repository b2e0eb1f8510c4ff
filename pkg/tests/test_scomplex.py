from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from carathe.caratheodory.generators import Sampler, random_complex, random_config
from carathe.errors import InputError
from carathe.geomkernel import PointConfig
from carathe.scomplex import (
    ConstructionError,
    SComplex,
    alexander_dual,
    boundary,
    dual_induced_by_hull,
    empty,
    from_facets,
    from_predicate,
    full_simplex,
    induced,
    is_matroid,
    is_path_connected,
    join,
    matroid_rank,
    nerve,
    points,
    relabel,
    void,
    zero_avoiding,
)

CYCLE4 = from_facets(range(4), [[0, 1], [1, 2], [2, 3], [3, 0]])


def brute_zero_avoiding(cfg):
    from carathe.geomkernel import in_conv
    return {U for U in range(1 << cfg.n_points) if U == 0 or in_conv(cfg, U) is None}


# -- from_predicate ------------------------------------------------------------
def test_predicate_examples():
    assert from_predicate(range(3), lambda U: U == 0) == empty(range(3))
    assert from_predicate(range(3), lambda U: True) == full_simplex(range(3))
    assert from_predicate(range(3), lambda U: bin(U).count("1") <= 1) == points(range(3))


def test_non_monotone_predicate_names_pair():
    with pytest.raises(ConstructionError, match=r"rejects \{1\} but accepts its superset \{0, 1\}"):
        from_predicate(range(2), lambda U: U == 0b11)


# -- zero-avoiding ---------------------------------------------------------------
def test_zero_avoiding_two_points():
    X = zero_avoiding(PointConfig.from_points([(-1,), (1,)]))
    assert X == points(range(2))


def test_zero_avoiding_positive_line():
    X = zero_avoiding(PointConfig.from_points([(k,) for k in range(1, 5)]))
    assert X == full_simplex(range(4))


def test_zero_avoiding_square_is_cycle():
    cfg = PointConfig.from_points([(1, 0), (0, 1), (-1, 0), (0, -1)])
    X = zero_avoiding(cfg)
    assert X == CYCLE4
    assert set(X.faces) == brute_zero_avoiding(cfg)


# -- induced -----------------------------------------------------------------------
def test_induced_examples():
    assert induced(CYCLE4, CYCLE4.vertex_set) == CYCLE4
    assert induced(CYCLE4, 0).is_empty
    assert induced(CYCLE4, 0b0111) == from_facets(range(3), [[0, 1], [1, 2]])


# -- Alexander dual ------------------------------------------------------------------
def test_dual_examples():
    assert alexander_dual(full_simplex(range(3))).is_void
    assert alexander_dual(boundary(range(3))).is_empty
    assert alexander_dual(CYCLE4) == from_facets(range(4), [[0, 2], [1, 3]])


# -- join --------------------------------------------------------------------------
def test_join_examples():
    two_a = points(range(2))
    two_b = points(range(2, 4))
    assert join(two_a, two_b) == from_facets(range(4), [[0, 2], [2, 1], [1, 3], [3, 0]])
    assert join(CYCLE4, empty(range(4, 6))).faces == CYCLE4.faces
    assert join(from_facets(["a"], [["a"]]), from_facets(["b"], [["b"]])) == from_facets(["a", "b"], [["a", "b"]])
    assert join(void(range(2)), CYCLE4.__class__(tuple(range(2, 4)), frozenset({0}))).is_void


def test_join_overlap_rejected():
    with pytest.raises(InputError):
        join(CYCLE4, CYCLE4)


# -- nerve -------------------------------------------------------------------------
def test_nerve_examples():
    assert nerve([CYCLE4]) == points(range(1))
    a = from_facets(range(4), [[0, 1]])
    b = from_facets(range(4), [[2, 3]])
    assert nerve([a, b]) == points(range(2))


def test_nerve_of_full_overlap_is_simplex():
    assert nerve([CYCLE4, CYCLE4, CYCLE4]) == full_simplex(range(3))


# -- connectivity -----------------------------------------------------------------
def test_path_connected_examples():
    assert is_path_connected(CYCLE4)
    assert not is_path_connected(from_facets(range(4), [[0, 1], [2, 3]]))
    fig3 = from_facets(range(3, 9), [[3, 6], [3, 7], [4, 7], [4, 8], [5, 8]])
    assert is_path_connected(fig3)
    with pytest.raises(InputError):
        is_path_connected(void(range(2)))


# -- matroids ---------------------------------------------------------------------
PART33 = from_facets("abcxyz", [[p, q] for p in "abc" for q in "xyz"])


def test_matroid_examples():
    assert is_matroid(PART33)
    # a non-matroid subcomplex of [3]*[3]: a perfect matching
    assert not is_matroid(from_facets("abcxyz", [["a", "x"], ["b", "y"], ["c", "z"]]))
    assert is_matroid(full_simplex(range(4)))


def test_matroid_rank_examples():
    side = PART33.mask_of("abc")
    assert matroid_rank(PART33, side) == 1
    assert matroid_rank(PART33, PART33.full_mask) == 2
    assert matroid_rank(full_simplex(range(5)), 0b10110) == 3
    with pytest.raises(InputError):
        matroid_rank(PART33, 0)


# -- JSON --------------------------------------------------------------------------
def test_json_encodings():
    assert void(range(2)).to_json() == {"universe": [0, 1], "facets": None}
    assert empty(range(2)).to_json()["facets"] == []
    for K in (void(range(2)), empty(range(2)), CYCLE4, PART33):
        assert SComplex.from_json(K.to_json()) == K


def test_universe_cap():
    with pytest.raises(InputError):
        full_simplex(range(25))


# -- properties --------------------------------------------------------------------
complexes = st.builds(
    lambda seed, n: random_complex(Sampler(seed), n),
    st.integers(0, 2**32), st.integers(0, 10),
)


@settings(max_examples=200, deadline=None)
@given(complexes)
def test_dual_involution_and_closure(K):
    D = alexander_dual(K)
    assert D.is_downward_closed()
    assert alexander_dual(D) == K


@settings(max_examples=100, deadline=None)
@given(complexes, complexes)
def test_join_face_count_and_closure(K1, K2):
    K2 = relabel(K2, [K1.n + i for i in range(K2.n)])
    J = join(K1, K2)
    assert len(J.faces) == len(K1.faces) * len(K2.faces)
    assert J.is_downward_closed()


small_complexes = st.builds(
    lambda seed, n: random_complex(Sampler(seed), n),
    st.integers(0, 2**32), st.integers(0, 6),
)


@settings(max_examples=50, deadline=None)
@given(small_complexes, small_complexes, small_complexes)
def test_join_associative(K1, K2, K3):
    K2 = relabel(K2, [K1.n + i for i in range(K2.n)])
    K3 = relabel(K3, [K1.n + K2.n + i for i in range(K3.n)])
    assert join(join(K1, K2), K3) == join(K1, join(K2, K3))


@settings(max_examples=50, deadline=None)
@given(complexes, st.integers(0, 2**10))
def test_induced_is_closed(K, U):
    assert induced(K, U & K.full_mask).is_downward_closed()


configs = st.builds(
    lambda seed, d, n: random_config(Sampler(seed), d, n),
    st.integers(0, 2**32), st.integers(1, 3), st.integers(1, 7),
)


@settings(max_examples=30, deadline=None)
@given(configs)
def test_zero_avoiding_matches_brute_force(cfg):
    X = zero_avoiding(cfg)
    assert set(X.faces) == brute_zero_avoiding(cfg)
    assert X == zero_avoiding(cfg, exhaustive=True)
    assert X.vertex_set == cfg.full


@settings(max_examples=30, deadline=None)
@given(configs)
def test_dual_induced_two_ways(cfg):
    Xd = alexander_dual(zero_avoiding(cfg))
    for U in range(1, cfg.full + 1):
        assert dual_induced_by_hull(cfg, U) == induced(Xd, U)


@settings(max_examples=30, deadline=None)
@given(configs, st.lists(st.integers(1, 9), min_size=7, max_size=7))
def test_zero_avoiding_rescaling_invariant(cfg, nums):
    scaled = PointConfig(cfg.dim, tuple(tuple(F(nums[i], 3) * x for x in p) for i, p in enumerate(cfg.points)))
    assert zero_avoiding(cfg) == zero_avoiding(scaled)
