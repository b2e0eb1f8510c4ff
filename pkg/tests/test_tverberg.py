from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from carathe.caratheodory.generators import Sampler, random_config
from carathe.errors import InputError, NoPartitionError
from carathe.geomkernel import PointConfig
from carathe.scomplex import from_facets
from carathe.tverberg import (
    TverbergSolution,
    common_point,
    constraint_ok,
    full_label_graph,
    labeling_at,
    radon_exists,
    radon_first,
    random_connected_L,
    solve_tverberg,
    space_size,
)

LINE3 = PointConfig.from_points([(-1,), (0,), (1,)], allow_origin=True)
# spanning path 0 - 2 - 1 - 3 on [2]*[2]; misses the edge {label 0, label 1}
PATH2 = from_facets(range(4), [[0, 2], [2, 1], [1, 3]])


def test_constraint_ok_examples():
    full = full_label_graph(3)
    assert all(constraint_ok((a, b), full, 3) for a in range(3) for b in range(3))
    assert not constraint_ok((0, 1), PATH2, 2)
    assert constraint_ok((1, 1), PATH2, 2)
    assert constraint_ok((None, 1), PATH2, 2)


def test_invalid_L_rejected():
    disconnected = from_facets(range(4), [[0, 2], [1, 3]])
    with pytest.raises(InputError, match="path-connected"):
        solve_tverberg(LINE3, 2, disconnected)
    missing = from_facets(range(4), [[0, 2], [0, 3]])
    with pytest.raises(InputError, match="vertex"):
        solve_tverberg(LINE3, 2, missing)


def test_common_point_examples():
    assert common_point(LINE3, [0b010, 0b101]) == ((F(0),), [{1: F(1)}, {0: F(1, 2), 2: F(1, 2)}])
    cross = PointConfig.from_points([(-1, 0), (1, 0), (0, -1), (0, 3)])
    point, _ = common_point(cross, [0b0011, 0b1100])
    assert point == (0, 0)
    assert common_point(LINE3, [0b001, 0b110]) is None
    with pytest.raises(InputError):
        common_point(LINE3, [0b001, 0])


def test_labeling_order():
    n, r = 3, 2
    labs = [labeling_at(i, n, r) for i in range(space_size(n, r))]
    full = labs[: r ** n]
    assert full == sorted(full) and all(None not in lab for lab in full)
    partial = [lab for lab in labs[r ** n:] if lab is not None]
    assert len(partial) == (r + 1) ** n - r ** n
    assert all(None in lab for lab in partial)


def test_radon_on_a_line():
    sol = solve_tverberg(LINE3, 2)
    assert sol.labeling == (0, 1, 0) and sol.point == (0,)
    assert sol.verify(LINE3, full_label_graph(2))


def test_constraint_redirects_search():
    sol = solve_tverberg(LINE3, 2, PATH2)
    assert sol.labeling == (1, 0, 1) and sol.point == (0,)
    assert sol.verify(LINE3, PATH2)
    assert not TverbergSolution((0, 1, 0), (F(0),), ({1: F(1)}, {0: F(1, 2), 2: F(1, 2)})).verify(LINE3, PATH2)


def test_planted_three_triangles():
    # three parts around the origin: a triangle, a segment and a segment
    pts = [(-1, -1), (1, -1), (0, 2), (-1, 0), (1, 0), (0, -1), (0, 1)]
    cfg = PointConfig.from_points(pts)
    planted = (0, 0, 0, 1, 1, 2, 2)
    point, _ = common_point(cfg, [0b0000111, 0b0011000, 0b1100000])
    assert point == (0, 0)
    L = full_label_graph(3)
    assert constraint_ok(planted, L, 3)
    sol = solve_tverberg(cfg, 3, L)
    assert sol.verify(cfg, L)


def test_bound_enforced():
    with pytest.raises(InputError, match="N >="):
        solve_tverberg(PointConfig.from_points([(1,), (2,)]), 2)


def test_no_partition_without_bound():
    cfg = PointConfig.from_points([(1,), (2,)])
    with pytest.raises(NoPartitionError):
        solve_tverberg(cfg, 2, check_bound=False)


def test_solution_json_round_trip():
    sol = solve_tverberg(LINE3, 2)
    assert TverbergSolution.from_json(sol.to_json()) == sol


def test_permuted_anchor():
    sol = solve_tverberg(LINE3, 2, PATH2, anchors=(2, 0))
    assert sol.verify(LINE3, PATH2, anchors=(2, 0))


def test_parallel_matches_serial():
    s = Sampler(21)
    cfg = random_config(s, 2, 7)
    L = random_connected_L(s, 3)
    assert solve_tverberg(cfg, 3, L, jobs=3) == solve_tverberg(cfg, 3, L, jobs=1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_radon_agreement(seed, d):
    s = Sampler(seed)
    n = s.int(d + 2, min(9, d + 4))
    cfg = random_config(s, d, n)
    L = random_connected_L(s, 2)
    sol = solve_tverberg(cfg, 2, L)
    assert sol.verify(cfg, L)
    assert radon_first(cfg, L) == sol.labeling
    assert radon_exists(cfg)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_unconstrained_tverberg_r3(seed):
    s = Sampler(seed)
    cfg = random_config(s, 1, 5)
    L = random_connected_L(s, 3)
    assert solve_tverberg(cfg, 3, L).verify(cfg, L)
