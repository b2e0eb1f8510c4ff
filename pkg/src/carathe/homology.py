"""Reduced simplicial homology over Q.

Chains are augmented by the empty face, so ``C_{-1}`` is spanned by the empty
set whenever the complex is not VOID.  Betti numbers come from exact ranks of
the boundary maps:

    b_i = dim C_i - rank d_i - rank d_{i+1}
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .errors import InputError, ResourceError
from .geomkernel.linalg import sparse_rank
from .geomkernel.predicates import members
from .scomplex import SComplex, alexander_dual, join, popcount

DEFAULT_MAX_FACES = 1 << 20


def max_faces() -> int:
    raw = os.environ.get("CARATHE_MAX_FACES")
    if raw is None:
        return DEFAULT_MAX_FACES
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"CARATHE_MAX_FACES must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class BettiProfile:
    """Reduced Betti numbers ``b[i]`` for degrees -1..dim (absent degrees are 0)."""

    b: dict = field(default_factory=dict)

    def __getitem__(self, i: int) -> int:
        return self.b.get(i, 0)

    def nonzero(self) -> dict[int, int]:
        return {i: v for i, v in sorted(self.b.items()) if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiProfile) and self.nonzero() == other.nonzero()

    def __hash__(self) -> int:
        return hash(tuple(self.nonzero().items()))

    @property
    def is_acyclic(self) -> bool:
        return not self.nonzero()

    def single_at(self, k: int) -> bool:
        """Exactly one nonzero Betti number, equal to 1, in degree k."""
        return self.nonzero() == {k: 1}

    def euler(self) -> int:
        return sum((-1) ** (i % 2) * v for i, v in self.b.items())

    def to_json(self) -> dict:
        return {"betti": {str(i): v for i, v in sorted(self.b.items())}}

    @classmethod
    def from_json(cls, data) -> "BettiProfile":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(k): int(v) for k, v in data["betti"].items()})

    def __repr__(self) -> str:
        return f"BettiProfile({self.nonzero()})"


def _boundary_rank(upper: list[int], lower_index: dict[int, int]) -> int:
    rows = []
    for f in upper:
        row = {}
        sign = 1
        for v in members(f):
            row[lower_index[f ^ (1 << v)]] = sign
            sign = -sign
        rows.append(row)
    return sparse_rank(rows)


def betti(K: SComplex) -> BettiProfile:
    if K.is_void:
        return BettiProfile({})
    if len(K.faces) > max_faces():
        raise ResourceError(f"complex has {len(K.faces)} faces; cap is {max_faces()}")
    by_size: dict[int, list[int]] = {}
    for f in K.faces:
        by_size.setdefault(popcount(f), []).append(f)
    top = max(by_size)
    ranks = {}
    for k in range(1, top + 1):
        lower = sorted(by_size.get(k - 1, []))
        index = {f: i for i, f in enumerate(lower)}
        ranks[k] = _boundary_rank(sorted(by_size.get(k, [])), index)
    out = {}
    for k in range(0, top + 1):
        out[k - 1] = len(by_size.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
    return BettiProfile(out)


def reduced_euler(K: SComplex) -> int:
    """Face-count Euler characteristic: sum over nonempty faces minus 1."""
    if K.is_void:
        return 0
    return sum(1 if popcount(f) % 2 else -1 for f in K.faces if f) - 1


def euler_consistent(K: SComplex, profile: BettiProfile | None = None) -> bool:
    profile = betti(K) if profile is None else profile
    return profile.euler() == reduced_euler(K)


def check_alexander(K: SComplex, betti_fn=betti) -> bool:
    """b_i(K) == b_{|V|-3-i}(K*) for every degree."""
    if len(K.faces) == 1 << K.n:
        raise InputError("Alexander duality needs K different from the full simplex")
    n = K.n
    bk = betti_fn(K)
    bd = betti_fn(alexander_dual(K))
    return all(bk[i] == bd[n - 3 - i] for i in range(-2, n + 1))


def kunneth_prediction(p1: BettiProfile, p2: BettiProfile) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, x in p1.nonzero().items():
        for b, y in p2.nonzero().items():
            out[a + b + 1] = out.get(a + b + 1, 0) + x * y
    return out


def check_kunneth_join(K1: SComplex, K2: SComplex, betti_fn=betti) -> bool:
    """b_k(K1*K2) == sum_{a+b=k-1} b_a(K1) b_b(K2) for every k."""
    size = len(K1.faces) * len(K2.faces)
    if size > max_faces():
        raise ResourceError(f"join would have {size} faces; cap is {max_faces()}")
    joined = betti_fn(join(K1, K2))
    return joined.nonzero() == kunneth_prediction(betti_fn(K1), betti_fn(K2))


def vanishes_through(K: SComplex, k: int, profile: BettiProfile | None = None) -> bool:
    """b_i(K) == 0 for all i <= k."""
    profile = betti(K) if profile is None else profile
    return all(v == 0 for i, v in profile.b.items() if i <= k)
