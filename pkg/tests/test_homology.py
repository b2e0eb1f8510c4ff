import pytest
from hypothesis import given, settings, strategies as st

from carathe.caratheodory.generators import Sampler, random_complex
from carathe.errors import InputError, ResourceError
from carathe.geomkernel import rank
from carathe.homology import (
    BettiProfile,
    betti,
    check_alexander,
    check_kunneth_join,
    euler_consistent,
    kunneth_prediction,
    reduced_euler,
    vanishes_through,
)
from carathe.scomplex import boundary, empty, from_facets, full_simplex, join, points, relabel, void

CYCLE4 = from_facets(range(4), [[0, 1], [1, 2], [2, 3], [3, 0]])


def dense_betti(K) -> dict:
    """Reduced Betti numbers from dense boundary matrices ranked by Bareiss."""
    if K.is_void:
        return {}
    by_size: dict[int, list[int]] = {}
    for f in K.faces:
        by_size.setdefault(bin(f).count("1"), []).append(f)
    for v in by_size.values():
        v.sort()
    top = max(by_size)

    def bd_rank(k):  # boundary from size-k faces to size-(k-1) faces
        if k == 0 or k not in by_size:
            return 0
        lower = {f: i for i, f in enumerate(by_size[k - 1])}
        rows = []
        for f in by_size[k]:
            row = [0] * len(lower)
            verts = [i for i in range(K.n) if f >> i & 1]
            for pos, v in enumerate(verts):
                row[lower[f ^ (1 << v)]] = (-1) ** pos
            rows.append(row)
        return rank(rows)

    out = {}
    for k in range(0, top + 1):
        b = len(by_size.get(k, [])) - bd_rank(k) - bd_rank(k + 1)
        if b:
            out[k - 1] = b
    return out


def test_sphere():
    assert betti(boundary(range(4))).nonzero() == {2: 1}


def test_cycle():
    assert betti(CYCLE4).nonzero() == {1: 1}


def test_empty_and_void():
    assert betti(empty(range(3))).nonzero() == {-1: 1}
    assert betti(void(range(3))).nonzero() == {}
    assert betti(full_simplex(range(3))).is_acyclic


def test_profile_json():
    p = betti(CYCLE4)
    assert BettiProfile.from_json(p.to_json()) == p
    assert p.to_json() == {"betti": {"-1": 0, "0": 0, "1": 1}}


def test_alexander_examples():
    assert check_alexander(CYCLE4)
    assert check_alexander(boundary(range(5)))
    with pytest.raises(InputError):
        check_alexander(full_simplex(range(3)))


def test_kunneth_examples():
    a, b = points(range(2)), points(range(2, 4))
    assert betti(join(a, b)).nonzero() == {1: 1}
    assert kunneth_prediction(betti(a), betti(b)) == {1: 1}
    assert check_kunneth_join(empty(range(2)), relabel(CYCLE4, range(2, 6)))


def test_kunneth_cap(monkeypatch):
    monkeypatch.setenv("CARATHE_MAX_FACES", "10")
    with pytest.raises(ResourceError):
        check_kunneth_join(CYCLE4, relabel(CYCLE4, range(4, 8)))


def test_betti_cap(monkeypatch):
    monkeypatch.setenv("CARATHE_MAX_FACES", "8")
    with pytest.raises(ResourceError):
        betti(full_simplex(range(4)))


def test_vanishes_through_examples():
    assert vanishes_through(boundary(range(4)), 1)
    assert not vanishes_through(CYCLE4, 1)
    assert not vanishes_through(empty(range(2)), -1)


complexes = st.builds(
    lambda seed, n: random_complex(Sampler(seed), n),
    st.integers(0, 2**32), st.integers(0, 8),
)


@settings(max_examples=200, deadline=None)
@given(complexes)
def test_betti_matches_dense_oracle(K):
    assert betti(K).nonzero() == dense_betti(K)


@settings(max_examples=200, deadline=None)
@given(complexes)
def test_euler_consistency(K):
    assert euler_consistent(K)
    assert betti(K).euler() == reduced_euler(K)


@settings(max_examples=200, deadline=None)
@given(complexes)
def test_alexander_symmetry(K):
    if len(K.faces) < 1 << K.n:
        assert check_alexander(K)


@settings(max_examples=100, deadline=None)
@given(complexes, complexes)
def test_kunneth_identity(K1, K2):
    assert check_kunneth_join(K1, relabel(K2, [K1.n + i for i in range(K2.n)]))


@settings(max_examples=100, deadline=None)
@given(complexes, st.randoms(use_true_random=False))
def test_relabel_invariance(K, rnd):
    perm = list(range(K.n))
    rnd.shuffle(perm)
    faces = [[perm[i] for i in range(K.n) if f >> i & 1] for f in K.facets]
    L = from_facets(range(K.n), faces) if faces else K
    assert betti(L) == betti(K)
