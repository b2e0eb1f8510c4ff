from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from carathe.caratheodory import (
    Certificate,
    Instance,
    LemmaContext,
    Variant,
    build_Z,
    check_hypotheses,
    colorful_transversals,
    constraint_complex,
    covering_check,
    global_lemmas,
    has_selection,
    lemma_suite,
    nerve_range_check,
    solve,
    transversal_to_selection,
    verify_certificate,
)
from carathe.caratheodory.generators import (
    Sampler,
    zigzag_instance,
    gen_cc3,
    gen_instance,
    gen_unplanted,
    random_config,
)
from carathe.campaigns import corrupted_betti
from carathe.errors import InputError, NoSelectionError, ResourceError
from carathe.geomkernel import PointConfig
from carathe.homology import betti
from carathe.scomplex import (
    boundary,
    empty,
    from_facets,
    full_simplex,
    is_matroid,
    join,
    points,
    relabel,
)

SQUARE = PointConfig.from_points([(1, 0), (0, 1), (-1, 0), (0, -1)])


def inst(points_, tag="CC1", classes=(), **kw):
    return Instance(PointConfig.from_points(points_), Variant(tag, classes, **kw))


# -- model ---------------------------------------------------------------------
def test_variant_json_round_trip():
    v = Variant("MAIN", ((0, 1), (2, 3), (4,)), L_edges=((0, 2), (1, 3), (0, 3)))
    assert Variant.from_json(v.to_json()) == v
    i = zigzag_instance(Sampler(1))
    assert Instance.from_json(i.to_json()) == i


def test_unknown_tag():
    with pytest.raises(InputError):
        Variant("CC9")


def test_instance_json_errors():
    with pytest.raises(InputError):
        Instance.from_json("{not json")
    with pytest.raises(InputError):
        Instance.from_json({"config": {"dim": 1, "points": [["1"]]}})


def test_certificate_json_and_verify():
    cfg = PointConfig.from_points([(-1,), (1,)])
    c = Certificate(0b11, {0: F(1, 2), 1: F(1, 2)})
    assert Certificate.from_json(c.to_json()) == c
    assert c.to_json() == {"face": [0, 1], "lambda": {"0": "1/2", "1": "1/2"}}
    assert c.verify(cfg)
    assert not Certificate(0b11, {0: F(1, 3), 1: F(2, 3)}).verify(cfg)
    assert not Certificate(0b11, {0: F(1), 1: F(0)}).verify(cfg)


def test_variant_problems_name_clause():
    v = Variant("CC1", ((0,), (0, 1)))
    assert any("two classes" in p for p in v.problems(2, 1))
    v = Variant("MAIN", ((0, 1), (2, 3), (4, 5)), L_edges=((0, 2), (1, 3)))
    assert any("path-connected" in p for p in v.problems(6, 2))
    v = Variant("CC4", matroid_facets=((0, 1), (2,)))
    assert any("matroid" in p for p in v.problems(3, 1))


# -- constraint complex ---------------------------------------------------------------
def test_cc1_edge_complex():
    K = constraint_complex(Variant("CC1", ((0,), (1,))), 2)
    assert K == from_facets(range(2), [[0, 1]])


def test_main_zigzag_complex():
    i = zigzag_instance(Sampler(3))
    K = constraint_complex(i.variant, i.cfg.n_points)
    L = from_facets(range(2, 8), [[2, 5], [2, 6], [3, 6], [3, 7], [4, 7]])
    expected = join(points(range(2)), L)
    assert K == expected


def test_cc4_partition_matroid():
    facets = tuple((a, b) for a in (0, 1, 2) for b in (3, 4, 5))
    v = Variant("CC4", matroid_facets=facets)
    K = constraint_complex(v, 6)
    assert K == from_facets(range(6), facets) and is_matroid(K)


def test_cc4_non_matroid_rejected():
    v = Variant("CC4", matroid_facets=((0, 3), (1, 4), (2, 5)))
    with pytest.raises(InputError, match="matroid"):
        constraint_complex(v, 6)


# -- hypotheses -----------------------------------------------------------------------
def test_hypotheses_pass_and_fail():
    good = inst([(-1,), (1,), (-2,), (3,)], classes=((0, 1), (2, 3)))
    assert check_hypotheses(good).ok
    bad = inst([(-1,), (1,), (1,), (2,)], classes=((0, 1), (2, 3)))
    rep = check_hypotheses(bad)
    assert not rep.ok and [it.name for it in rep.failures()] == ["F2"]


def test_cc3_is_weaker_than_cc1():
    s = Sampler(5)
    found = False
    for _ in range(10):
        i = gen_cc3(s, 2, 3)
        assert check_hypotheses(i).ok
        as_cc1 = Instance(i.cfg, Variant("CC1", i.variant.classes))
        found = found or not check_hypotheses(as_cc1).ok
    assert found


def test_cc4_hypothesis_enumerates_sets():
    base = gen_instance(Sampler(2), "CC4", 1, 2)
    rep = check_hypotheses(base)
    assert rep.ok and len(rep.items) > 0


# -- solver ---------------------------------------------------------------------------
def test_solve_unit_example():
    i = inst([(-1,), (1,)], classes=((0,), (1,)))
    c = solve(i)
    assert c.face == 0b11 and c.lam == {0: F(1, 2), 1: F(1, 2)}


def test_solve_zigzag():
    i = zigzag_instance(Sampler(7))
    c = solve(i)
    assert verify_certificate(i, c) and len(c.vertices()) <= i.variant.r


def test_cc2_pinned_in_face():
    s = Sampler(9)
    for _ in range(20):
        i = gen_instance(s, "CC2", 2, 3)
        c = solve(i)
        assert c.face >> i.variant.pinned & 1
        assert verify_certificate(i, c)


def test_cc2_certificate_without_pin_rejected():
    i = gen_instance(Sampler(4), "CC2", 1, 2)
    c = solve(i)
    stripped = Certificate(c.face & ~(1 << i.variant.pinned), {v: w for v, w in c.lam.items() if v != i.variant.pinned})
    assert not verify_certificate(i, stripped)


def test_no_selection_message():
    i = inst([(1,), (2,)], classes=((0,), (1,)))
    with pytest.raises(NoSelectionError):
        solve(i)
    assert not has_selection(i)


def test_solver_prefers_small_faces():
    i = inst([(-1,), (1,), (-1,), (1,)], classes=((0, 1), (2, 3)))
    c = solve(i)
    assert len(c.vertices()) == 2 and verify_certificate(i, c)
    assert c.vertices() == [0, 3]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["CC1", "CC2", "CC3", "MAIN", "CC4"]), st.integers(1, 3))
def test_generated_instances_solve(seed, tag, d):
    if tag == "MAIN" and d < 2:
        d = 2
    s = Sampler(seed)
    if tag == "CC4":
        d = min(d, 2)
        r = d + 1
    else:
        r = d + s.int(1, 2)
    i = gen_instance(s, tag, d, r, max_points=2 * r + 1)
    assert check_hypotheses(i).ok
    c = solve(i)
    assert verify_certificate(i, c)
    assert all(w > 0 for v, w in c.lam.items() if v != i.variant.pinned)


# -- Z and the covering scheme --------------------------------------------------------
def test_Z_unit_example():
    i = inst([(-1,), (1,)], classes=((0,), (1,)))
    zd = build_Z(i)
    assert zd.Z.n == 4 and len(zd.Z.faces) == 4
    T = colorful_transversals(zd.Z, zd.colors)
    assert T == [0b1100]
    c = transversal_to_selection(T[0], i, zd)
    assert c.lam == {0: F(1, 2), 1: F(1, 2)}


def test_Z_square_counts_and_cover():
    i = Instance(SQUARE, Variant("CC1", ((0, 2), (1, 3))))
    zd = build_Z(i)
    assert zd.Z.n == 8
    assert len(zd.Z.faces) == 7 * 9
    rep = covering_check(i, zd)
    assert not rep.selection_exists and rep.covered and rep.transversals == 0
    assert rep.nerve_checked and rep.nerve_ok and rep.ok


def test_Z_void_when_no_zero():
    i = inst([(1,), (2,), (3,)], classes=((0,), (1, 2)))
    zd = build_Z(i)
    assert zd.Z.is_void
    rep = covering_check(i, zd)
    assert rep.covered and not rep.nerve_checked and rep.ok


def test_transversal_helpers():
    Z = full_simplex(["a1", "a2"])
    assert colorful_transversals(Z, [0b11]) == [0b01, 0b10, 0b11]
    assert colorful_transversals(empty(range(2)), [0b11]) == []


def test_transversal_must_meet_every_class():
    i = inst([(-1,), (1,)], classes=((0,), (1,)))
    zd = build_Z(i)
    with pytest.raises(InputError):
        transversal_to_selection(0b0100, i, zd)


def test_Z_cap(monkeypatch):
    monkeypatch.setenv("CARATHE_MAX_FACES", "4")
    i = Instance(SQUARE, Variant("CC1", ((0, 2), (1, 3))))
    with pytest.raises(ResourceError):
        build_Z(i)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_covering_dichotomy_random(seed):
    s = Sampler(seed)
    d = s.int(1, 3)
    r = s.int(2, d + 1)
    i = gen_unplanted(s, d, r, s.int(r, 7))
    rep = covering_check(i)
    assert rep.ok
    assert rep.selection_exists == (rep.transversals > 0)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_nerve_range_random(seed):
    s = Sampler(seed)
    i = gen_unplanted(s, 2, 2, s.int(3, 5))
    assert nerve_range_check(i).ok


def test_nerve_range_corrupted_betti_detected():
    i = Instance(SQUARE, Variant("CC1", ((0, 2), (1, 3))))
    assert nerve_range_check(i).ok

    def shifted(K):
        b = dict(betti(K).b)
        b[0] = b.get(0, 0) + (1 if K.n == 8 else 0)
        from carathe.homology import BettiProfile
        return BettiProfile(b)

    rep = nerve_range_check(i, betti_fn=shifted)
    assert rep.applicable and not rep.ok


# -- lemma suite ------------------------------------------------------------------------
def rows_by_name(rows):
    return {r.lemma: r for r in rows}


def test_square_global_dual():
    g = rows_by_name(global_lemmas(SQUARE))
    assert g["convexity"].conclusion_held and g["dual"].conclusion_held
    assert betti(LemmaContext(SQUARE).Xd).nonzero() == {0: 1}


def test_positive_line_dual_acyclic():
    cfg = PointConfig.from_points([(k,) for k in range(1, 5)])
    g = rows_by_name(global_lemmas(cfg))
    assert g["dual"].conclusion_held
    assert LemmaContext(cfg).Xd.is_void


def test_planted_lemma06():
    rows = rows_by_name(lemma_suite(SQUARE, 0b0111))
    assert rows["L06"].hypothesis_held and rows["L06"].conclusion_held
    assert betti(LemmaContext(SQUARE).dual_induced(0b0111)).nonzero() == {0: 1}


def test_square_all_proper_subsets_pass():
    ctx = LemmaContext(SQUARE)
    for U in range(1, SQUARE.full):
        assert not any(r.failed for r in lemma_suite(SQUARE, U, ctx, cross_check=True))


def test_corrupted_betti_fails_suite():
    ctx = LemmaContext(SQUARE, corrupted_betti)
    assert any(r.failed for U in range(1, SQUARE.full) for r in lemma_suite(SQUARE, U, ctx))


def test_lemma_suite_input_checks():
    with pytest.raises(InputError):
        lemma_suite(SQUARE, 0)
    big = PointConfig.from_points([(k,) for k in range(1, 18)])
    with pytest.raises(ResourceError):
        lemma_suite(big, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3), st.integers(2, 7))
def test_lemma_suite_random(seed, d, n):
    cfg = random_config(Sampler(seed), d, n)
    ctx = LemmaContext(cfg)
    for U in range(1, cfg.full + 1):
        assert not any(r.failed for r in lemma_suite(cfg, U, ctx, cross_check=True))
    assert not any(r.failed for r in global_lemmas(cfg, ctx))
