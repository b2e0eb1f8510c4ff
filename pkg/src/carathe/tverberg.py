"""Constrained Tverberg search.

A labeling assigns each vertex of the simplex a part in 0..r-1 or ``None``
(unused).  The constraint complex L lives on two copies of the label set:
vertex ``i`` is label i of the first copy and vertex ``r + i`` is label i of
the second copy.  L binds the labels of two anchor vertices (p_0 and p_1 by
default): when both are used, {label(p_0), r + label(p_1)} must be an edge
of L.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .caratheodory.generators import random_connected_bipartite
from .errors import InputError, NoPartitionError
from .geomkernel.config import PointConfig, format_rat, parse_rat
from .geomkernel.lp import GT, lp_feasible, simplex
from .geomkernel.predicates import members
from .scomplex import SComplex, from_facets, is_path_connected, popcount

Labeling = tuple  # entries: int part index or None


def full_label_graph(r: int) -> SComplex:
    """[r]*[r] on vertices 0..2r-1."""
    return from_facets(range(2 * r), [[a, r + b] for a in range(r) for b in range(r)])


def check_L(L: SComplex, r: int) -> None:
    if L.n != 2 * r:
        raise InputError(f"L must live on 2r = {2 * r} vertices, got {L.n}")
    for f in L.faces:
        if popcount(f) > 2 or popcount(f & ((1 << r) - 1)) > 1 or popcount(f >> r) > 1:
            raise InputError(f"L face {members(f)} is not a face of [r]*[r]")
    if L.is_void or L.vertex_set != L.full_mask:
        raise InputError("vertex(L) must be every vertex of [r]*[r]")
    if not is_path_connected(L):
        raise InputError("L must be path-connected")


def constraint_ok(lab: Labeling, L: SComplex, r: int, anchors: tuple = (0, 1)) -> bool:
    a, b = (lab[anchors[0]], lab[anchors[1]])
    if a is None or b is None:
        return True
    return ((1 << a) | (1 << (r + b))) in L.faces


def parts_of(lab: Labeling, r: int) -> list[int]:
    parts = [0] * r
    for v, x in enumerate(lab):
        if x is not None:
            parts[x] |= 1 << v
    return parts


def common_point(cfg: PointConfig, parts: Sequence[int]):
    """A point in every conv a(F_i), with the convex coefficients, or None."""
    if not parts or any(p == 0 for p in parts):
        raise InputError("every part must be nonempty")
    seen = 0
    for p in parts:
        if p & seen:
            raise InputError("parts must be pairwise disjoint")
        if p >> cfg.n_points:
            raise InputError("part uses a vertex outside the configuration")
        seen |= p
    idx = [members(p) for p in parts]
    offs = []
    n = 0
    for ix in idx:
        offs.append(n)
        n += len(ix)
    pts = cfg.points
    rows = []
    b = []
    for i, ix in enumerate(idx):
        row = [Fraction(0)] * n
        for k in range(len(ix)):
            row[offs[i] + k] = Fraction(1)
        rows.append(row)
        b.append(Fraction(1))
    for i in range(1, len(idx)):
        for c in range(cfg.dim):
            row = [Fraction(0)] * n
            for k, v in enumerate(idx[0]):
                row[offs[0] + k] = pts[v][c]
            for k, v in enumerate(idx[i]):
                row[offs[i] + k] = -pts[v][c]
            rows.append(row)
            b.append(Fraction(0))
    res = simplex(rows, b, [0] * n, duals=False)
    if res.status == "infeasible":
        return None
    coeffs = []
    for i, ix in enumerate(idx):
        coeffs.append({v: res.primal[offs[i] + k] for k, v in enumerate(ix)})
    point = tuple(sum((w * pts[v][c] for v, w in coeffs[0].items()), Fraction(0)) for c in range(cfg.dim))
    return point, coeffs


@dataclass(frozen=True)
class TverbergSolution:
    labeling: Labeling
    point: tuple
    coefficients: tuple  # one {vertex: weight} per part

    def parts(self) -> list[int]:
        return parts_of(self.labeling, len(self.coefficients))

    def verify(self, cfg: PointConfig, L: SComplex, anchors: tuple = (0, 1)) -> bool:
        r = len(self.coefficients)
        parts = self.parts()
        if any(p == 0 for p in parts) or not constraint_ok(self.labeling, L, r, anchors):
            return False
        for part, lam in zip(parts, self.coefficients):
            if set(lam) != set(members(part)):
                return False
            if any(w < 0 for w in lam.values()) or sum(lam.values()) != 1:
                return False
            for c in range(cfg.dim):
                if sum((w * cfg.points[v][c] for v, w in lam.items()), Fraction(0)) != self.point[c]:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "labeling": [x for x in self.labeling],
            "parts": [members(p) for p in self.parts()],
            "point": [format_rat(x) for x in self.point],
            "coefficients": [{str(v): format_rat(w) for v, w in sorted(lam.items())} for lam in self.coefficients],
        }

    @classmethod
    def from_json(cls, data) -> "TverbergSolution":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            tuple(data["labeling"]),
            tuple(parse_rat(x) for x in data["point"]),
            tuple({int(k): parse_rat(v) for k, v in lam.items()} for lam in data["coefficients"]),
        )


# -- enumeration ---------------------------------------------------------------------
def space_size(n: int, r: int) -> int:
    return r ** n + (r + 1) ** n


def labeling_at(i: int, n: int, r: int) -> Optional[Labeling]:
    """The i-th labeling: full ones first, then partial ones, each lexicographic.

    Returns None for indices in the partial block that denote full labelings
    (those were already visited).
    """
    if i < r ** n:
        base, offset = r, i
    else:
        base, offset = r + 1, i - r ** n
    digits = [0] * n
    for k in range(n - 1, -1, -1):
        offset, digits[k] = divmod(offset, base)
    if base == r:
        return tuple(digits)
    if r not in digits:
        return None
    return tuple(None if x == r else x for x in digits)


def _canonical(parts: list[int]) -> tuple:
    return tuple(sorted(parts))


def _scan(cfg: PointConfig, r: int, L: SComplex, anchors: tuple, lo: int, hi: int):
    n = cfg.n_points
    cache: dict = {}
    for i in range(lo, hi):
        lab = labeling_at(i, n, r)
        if lab is None or not constraint_ok(lab, L, r, anchors):
            continue
        parts = parts_of(lab, r)
        if any(p == 0 for p in parts):
            continue
        key = _canonical(parts)
        if key not in cache:
            cache[key] = common_point(cfg, parts)
        hit = cache[key]
        if hit is not None:
            return i, lab, hit
    return None


def _scan_job(args):
    return _scan(*args)


def solve_tverberg(
    cfg: PointConfig,
    r: int,
    L: SComplex | None = None,
    anchors: tuple = (0, 1),
    jobs: int = 1,
    check_bound: bool = True,
) -> TverbergSolution:
    """First admissible labeling (in the fixed order) whose parts share a point."""
    if r < 2:
        raise InputError("r must be at least 2")
    n = cfg.n_points
    if check_bound and n - 1 < (cfg.dim + 1) * (r - 1):
        raise InputError(f"needs N >= (d+1)(r-1) = {(cfg.dim + 1) * (r - 1)}, got N = {n - 1}")
    if len(anchors) != 2 or anchors[0] == anchors[1] or not all(0 <= a < n for a in anchors):
        raise InputError("anchors must be two distinct vertices")
    L = full_label_graph(r) if L is None else L
    check_L(L, r)
    total = space_size(n, r)
    if jobs <= 1:
        found = _scan(cfg, r, L, tuple(anchors), 0, total)
    else:
        step = -(-total // jobs)
        tasks = [(cfg, r, L, tuple(anchors), lo, min(total, lo + step)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = [x for x in ex.map(_scan_job, tasks) if x is not None]
        found = min(results, key=lambda x: x[0]) if results else None
    if found is None:
        raise NoPartitionError("no admissible labeling has intersecting part hulls")
    _, lab, (point, coeffs) = found
    return TverbergSolution(lab, point, tuple(coeffs))


# -- independent oracle for r = 2 -------------------------------------------------
def hulls_intersect_by_separation(cfg: PointConfig, P: int, Q: int) -> bool:
    """conv a(P) and conv a(Q) meet iff no strictly separating hyperplane exists."""
    d = cfg.dim
    cons = []
    for v in members(P):
        cons.append((list(cfg.points[v]) + [-1], GT, 0))
    for v in members(Q):
        cons.append(([-x for x in cfg.points[v]] + [1], GT, 0))
    return not lp_feasible(cons).feasible


def radon_first(cfg: PointConfig, L: SComplex | None = None, anchors: tuple = (0, 1)) -> Optional[Labeling]:
    """Brute force over labelings in solver order using the separation oracle."""
    n = cfg.n_points
    L = full_label_graph(2) if L is None else L
    for i in range(space_size(n, 2)):
        lab = labeling_at(i, n, 2)
        if lab is None or not constraint_ok(lab, L, 2, anchors):
            continue
        P, Q = parts_of(lab, 2)
        if P and Q and hulls_intersect_by_separation(cfg, P, Q):
            return lab
    return None


def radon_exists(cfg: PointConfig) -> bool:
    """Some bipartition of all the points has intersecting hulls."""
    full = cfg.full
    for P in range(1, full):
        if P & 1 and hulls_intersect_by_separation(cfg, P, full ^ P):
            return True
    return False


def random_connected_L(s, r: int, extra: float = 0.3) -> SComplex:
    edges = random_connected_bipartite(s, list(range(r)), [r + i for i in range(r)], extra)
    return from_facets(range(2 * r), [list(e) for e in edges])
