"""Abstract simplicial complexes stored as explicit families of vertex bitsets.

A complex lives on an ordered ``universe`` of vertex labels; bit ``i`` of a
face stands for ``universe[i]``.  Two degenerate values are kept apart:

* ``VOID``  -- no faces at all (not even the empty set),
* ``EMPTY`` -- only the empty face ``{}``.

Complexes are immutable; every constructor returns a new value.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .geomkernel.config import InputError, PointConfig
from .geomkernel.predicates import in_conv, members

MAX_UNIVERSE = 24


class ConstructionError(ValueError):
    """A would-be complex is not closed under taking subsets."""


def popcount(mask: int) -> int:
    return mask.bit_count()


def subsets_of(mask: int):
    """All submasks of ``mask`` (including 0 and ``mask``)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class SComplex:
    universe: tuple
    faces: frozenset

    def __post_init__(self):
        if len(self.universe) > MAX_UNIVERSE:
            raise InputError(f"universe has {len(self.universe)} vertices; the cap is {MAX_UNIVERSE}")
        if len(set(self.universe)) != len(self.universe):
            raise InputError("universe labels must be distinct")

    # -- basic queries -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.universe)) - 1

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def is_empty(self) -> bool:
        return self.faces == frozenset((0,))

    @cached_property
    def vertex_set(self) -> int:
        v = 0
        for f in self.faces:
            if f and not f & (f - 1):
                v |= f
        return v

    @cached_property
    def dim(self) -> int:
        """Dimension; -1 for EMPTY and, by convention, -2 for VOID."""
        if not self.faces:
            return -2
        return max(popcount(f) for f in self.faces) - 1

    def __contains__(self, face: int) -> bool:
        return face in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.universe[i] for i in members(mask))

    def mask_of(self, labels: Iterable[Hashable]) -> int:
        index = {lab: i for i, lab in enumerate(self.universe)}
        m = 0
        for lab in labels:
            if lab not in index:
                raise InputError(f"label {lab!r} not in universe")
            m |= 1 << index[lab]
        return m

    @cached_property
    def facets(self) -> tuple[int, ...]:
        out = []
        n = self.n
        for f in self.faces:
            if all((f >> i) & 1 or (f | (1 << i)) not in self.faces for i in range(n)):
                out.append(f)
        return tuple(sorted(out, key=_face_key))

    def faces_of_size(self, k: int) -> list[int]:
        return sorted((f for f in self.faces if popcount(f) == k), key=_face_key)

    def is_downward_closed(self) -> bool:
        for f in self.faces:
            g = f
            while g:
                low = g & -g
                if f ^ low not in self.faces:
                    return False
                g ^= low
        return True

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        if self.is_void:
            return {"universe": list(self.universe), "facets": None}
        facets = [] if self.is_empty else [list(self.labels_of(f)) for f in self.facets]
        return {"universe": list(self.universe), "facets": facets}

    @classmethod
    def from_json(cls, data) -> "SComplex":
        if isinstance(data, str):
            data = json.loads(data)
        universe = tuple(_hashable(x) for x in data.get("universe", []))
        facets = data.get("facets", [])
        if facets is None:
            return cls(universe, frozenset())
        labelled = [[_hashable(x) for x in f] for f in facets]
        if not universe:
            seen = []
            for f in labelled:
                for x in f:
                    if x not in seen:
                        seen.append(x)
            universe = tuple(seen)
        return from_facets(universe, labelled)

    def __repr__(self) -> str:
        if self.is_void:
            body = "VOID"
        elif self.is_empty:
            body = "EMPTY"
        else:
            body = "facets=" + ", ".join("{" + ",".join(map(str, self.labels_of(f))) + "}" for f in self.facets)
        return f"SComplex(universe={list(self.universe)}, {body})"


def _hashable(x):
    return tuple(_hashable(y) for y in x) if isinstance(x, list) else x


def _face_key(f: int):
    return (popcount(f), members(f))


# -- constructors -----------------------------------------------------------
def void(universe: Sequence = ()) -> SComplex:
    return SComplex(tuple(universe), frozenset())


def empty(universe: Sequence = ()) -> SComplex:
    return SComplex(tuple(universe), frozenset((0,)))


def _checked_universe(universe: Sequence) -> tuple:
    universe = tuple(universe)
    if len(universe) > MAX_UNIVERSE:
        raise InputError(f"universe has {len(universe)} vertices; the cap is {MAX_UNIVERSE}")
    return universe


def full_simplex(universe: Sequence) -> SComplex:
    universe = _checked_universe(universe)
    return SComplex(universe, frozenset(range(1 << len(universe))))


def boundary(universe: Sequence) -> SComplex:
    """Boundary of the simplex on ``universe``: every proper subset."""
    universe = _checked_universe(universe)
    full = (1 << len(universe)) - 1
    return SComplex(universe, frozenset(range(full)))


def points(universe: Sequence) -> SComplex:
    """The 0-dimensional complex whose faces are the empty set and singletons."""
    universe = tuple(universe)
    return SComplex(universe, frozenset([0] + [1 << i for i in range(len(universe))]))


def from_facets(universe: Sequence, facets: Iterable[Iterable[Hashable]]) -> SComplex:
    universe = _checked_universe(universe)
    index = {lab: i for i, lab in enumerate(universe)}
    faces = set()
    for facet in facets:
        m = 0
        for lab in facet:
            if lab not in index:
                raise InputError(f"facet label {lab!r} not in universe")
            m |= 1 << index[lab]
        if m not in faces:
            faces.update(subsets_of(m))
    faces.add(0)
    return SComplex(universe, frozenset(faces))


def from_predicate(universe: Sequence, pred: Callable[[int], bool]) -> SComplex:
    """All subsets accepted by a monotone decreasing predicate.

    Raises :class:`ConstructionError` naming a pair (subset rejected,
    superset accepted) when the predicate is not monotone.
    """
    universe = _checked_universe(universe)
    n = len(universe)
    accepted = [bool(pred(m)) for m in range(1 << n)]
    for m in range(1 << n):
        if not accepted[m]:
            continue
        g = m
        while g:
            low = g & -g
            if not accepted[m ^ low]:
                sub = SComplex(universe, frozenset()).labels_of(m ^ low)
                sup = SComplex(universe, frozenset()).labels_of(m)
                raise ConstructionError(f"predicate rejects {set(sub)} but accepts its superset {set(sup)}")
            g ^= low
    return SComplex(universe, frozenset(m for m in range(1 << n) if accepted[m]))


def zero_avoiding(cfg: PointConfig, exhaustive: bool = False) -> SComplex:
    """Subsets U of the vertices with 0 not in conv A(U).

    By Caratheodory's theorem every minimal non-face has at most dim+1
    elements, so the complex is grown level by level and hull tests are only
    run on sets of size <= dim+1 whose facets are all faces.  With
    ``exhaustive=True`` every subset is tested through
    :func:`from_predicate` instead.
    """
    universe = tuple(range(cfg.n_points))
    if exhaustive:
        return from_predicate(universe, lambda m: m == 0 or in_conv(cfg, m) is None)
    n = cfg.n_points
    faces = {0}
    level = [0]
    for size in range(1, n + 1):
        nxt = []
        for base in level:
            top = base.bit_length()  # extend by vertices above the current maximum
            for v in range(top, n):
                m = base | (1 << v)
                g = m
                ok = True
                while g:
                    low = g & -g
                    if (m ^ low) not in faces:
                        ok = False
                        break
                    g ^= low
                if not ok:
                    continue
                if size <= cfg.dim + 1 and in_conv(cfg, m) is not None:
                    continue
                nxt.append(m)
        faces.update(nxt)
        level = nxt
        if not level:
            break
    return SComplex(universe, frozenset(faces))


def dual_induced_by_hull(cfg: PointConfig, mask: int) -> SComplex:
    """{F subset of U : 0 in conv A(V - F)}, on the universe U."""
    full = cfg.full
    idx = members(mask)
    universe = tuple(idx)

    def pred(local: int) -> bool:
        f = 0
        for i, v in enumerate(idx):
            if local >> i & 1:
                f |= 1 << v
        rest = full & ~f
        return rest != 0 and in_conv(cfg, rest) is not None

    return from_predicate(universe, pred)


# -- operations -------------------------------------------------------------
def induced(K: SComplex, mask: int) -> SComplex:
    """K[U]: faces contained in U, on the universe restricted to U."""
    if mask & ~K.full_mask:
        raise InputError("U is not a subset of the universe")
    idx = members(mask)
    universe = tuple(K.universe[i] for i in idx)
    faces = set()
    for f in K.faces:
        if f & ~mask:
            continue
        faces.add(_compress(f, idx))
    return SComplex(universe, frozenset(faces))


def _compress(f: int, idx: list[int]) -> int:
    out = 0
    for j, i in enumerate(idx):
        if f >> i & 1:
            out |= 1 << j
    return out


def restrict(K: SComplex, mask: int) -> SComplex:
    """Faces of K inside U, keeping the full universe (useful for covers)."""
    return SComplex(K.universe, frozenset(f for f in K.faces if not f & ~mask))


def alexander_dual(K: SComplex) -> SComplex:
    """K* = {F : V - F not in K} on the same universe V."""
    full = K.full_mask
    faces = K.faces
    return SComplex(K.universe, frozenset(f for f in range(full + 1) if (full ^ f) not in faces))


def join(K1: SComplex, K2: SComplex) -> SComplex:
    """K1 * K2; the second factor's bits are shifted above the first's."""
    overlap = set(K1.universe) & set(K2.universe)
    if overlap:
        raise InputError(f"join factors share labels {sorted(map(str, overlap))}; relabel one factor")
    shift = K1.n
    faces = frozenset(a | (b << shift) for a in K1.faces for b in K2.faces)
    return SComplex(K1.universe + K2.universe, faces)


def relabel(K: SComplex, labels: Sequence) -> SComplex:
    if len(labels) != K.n:
        raise InputError("label list must match the universe size")
    return SComplex(tuple(labels), K.faces)


def embed(K: SComplex, universe: Sequence) -> SComplex:
    """Re-express K over a larger universe containing its labels."""
    universe = tuple(universe)
    pos = {lab: i for i, lab in enumerate(universe)}
    try:
        target = [pos[lab] for lab in K.universe]
    except KeyError as exc:
        raise InputError(f"label {exc.args[0]!r} missing from the target universe") from exc
    faces = set()
    for f in K.faces:
        m = 0
        for j in members(f):
            m |= 1 << target[j]
        faces.add(m)
    return SComplex(universe, frozenset(faces))


def nerve(cover: Sequence[SComplex]) -> SComplex:
    """Nerve of a family of complexes over one label set.

    A set S of indices is a face iff the complexes indexed by S share at least
    one vertex (nonempty geometric realization of the intersection).
    """
    if not cover:
        raise InputError("nerve of an empty cover")
    vsets = [frozenset(K.labels_of(K.vertex_set)) for K in cover]
    m = len(cover)
    faces = {0}

    def grow(mask: int, common: frozenset, start: int) -> None:
        for i in range(start, m):
            inter = common & vsets[i]
            if inter:
                nm = mask | (1 << i)
                faces.add(nm)
                grow(nm, inter, i + 1)

    for i in range(m):
        if vsets[i]:
            faces.add(1 << i)
            grow(1 << i, vsets[i], i + 1)
    return SComplex(tuple(range(m)), frozenset(faces))


def is_path_connected(K: SComplex) -> bool:
    if K.is_void:
        raise InputError("path-connectivity of the VOID complex is undefined")
    verts = members(K.vertex_set)
    if not verts:
        return False
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in K.faces:
        if popcount(f) == 2:
            a, b = members(f)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(v) for v in verts}) == 1


def is_matroid(K: SComplex) -> bool:
    """Exchange property: |F| < |F'| implies F + v is a face for some v in F' - F.

    Checking pairs with |F'| = |F| + 1 suffices, since any larger face has a
    subface of that size.
    """
    if K.is_void:
        return False
    by_size: dict[int, list[int]] = {}
    for f in K.faces:
        by_size.setdefault(popcount(f), []).append(f)
    for k, small in by_size.items():
        for f in small:
            for g in by_size.get(k + 1, ()):
                diff = g & ~f
                ok = False
                while diff:
                    low = diff & -diff
                    if (f | low) in K.faces:
                        ok = True
                        break
                    diff ^= low
                if not ok:
                    return False
    return True


def matroid_rank(M: SComplex, mask: int) -> int:
    """1 + dim M[S] for nonempty S."""
    if mask == 0:
        raise InputError("matroid rank is defined on nonempty sets only")
    return max((popcount(f) for f in M.faces if not f & ~mask), default=0)


def matroid_rank_or_zero(M: SComplex, mask: int) -> int:
    """Rank extended by 0 on the empty set."""
    return 0 if mask == 0 else matroid_rank(M, mask)
