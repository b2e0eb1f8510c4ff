"""Hull and hemisphere predicates on a PointConfig.

Vertex subsets are integer bitmasks over the vertex indices of the
configuration.  Every predicate works on the integer-rescaled points
(``cfg.int_points``); positive rescaling of points leaves all of them
unchanged, which is also why no normalization onto the unit sphere is
needed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .config import InputError, PointConfig
from .linalg import independent_columns, rank
from .lp import GE, GT, lp_feasible, lp_optimize, simplex


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _check(cfg: PointConfig, mask: int, what: str = "U") -> list[int]:
    if mask <= 0:
        raise InputError(f"{what} must be a nonempty vertex set")
    if mask >> cfg.n_points:
        raise InputError(f"{what} contains vertices outside the configuration")
    return members(mask)


def in_conv(cfg: PointConfig, mask: int) -> Optional[dict[int, Fraction]]:
    """Convex coefficients writing the origin as a combination of A(U), or None.

    The returned coefficients come from a basic feasible solution, so their
    support is affinely independent.
    """
    idx = _check(cfg, mask)
    pts = cfg.int_points
    d = cfg.dim
    rows = [[pts[u][k] for u in idx] for k in range(d)]
    rows.append([1] * len(idx))
    b = [0] * d + [1]
    res = simplex(rows, b, [0] * len(idx), duals=False)
    if res.status == "infeasible":
        return None
    scales = cfg.point_scales
    weights = [res.primal[i] * scales[u] for i, u in enumerate(idx)]
    total = sum(weights)
    return {u: w / total for u, w in zip(idx, weights)}


def in_relint(cfg: PointConfig, mask: int) -> bool:
    """Is 0 a convex combination of A(U) with every coefficient positive?

    Writes the coefficients as t + s_u with t, s >= 0 and maximizes t.
    """
    idx = _check(cfg, mask)
    pts = cfg.int_points
    n = len(idx)
    rows = [[sum(pts[u][k] for u in idx)] + [pts[u][k] for u in idx] for k in range(cfg.dim)]
    rows.append([n] + [1] * n)
    b = [0] * cfg.dim + [1]
    res = simplex(rows, b, [-1] + [0] * n, duals=False)
    return res.status == "optimal" and res.value < 0


def span_rank(cfg: PointConfig, mask: int) -> int:
    """dim span A(U)."""
    pts = cfg.int_points
    return rank([pts[u] for u in members(mask)])


def in_interior(cfg: PointConfig, mask: int) -> bool:
    """Is 0 in the interior of conv A(U) (relint plus full-dimensional span)?"""
    _check(cfg, mask)
    return span_rank(cfg, mask) == cfg.dim and in_relint(cfg, mask)


def open_hemis_intersect(cfg: PointConfig, mask: int) -> bool:
    """Is there x with <A(u), x> > 0 for all u in U?

    Decided directly by a strict LP, independently of :func:`in_conv`.
    """
    idx = _check(cfg, mask)
    pts = cfg.int_points
    return lp_feasible([(pts[u], GT, 0) for u in idx]).feasible


def covers_sphere(cfg: PointConfig, mask: int) -> bool:
    """Do the open hemispheres of A(U) cover the unit sphere?

    Equivalent to the closed cone {x : <A(u), x> <= 0 for u in U} being {0},
    checked by maximizing each of +-x_i over that cone cut by the unit box.
    Only the box face bounding the objective (+-x_i <= 1) can bind, so each
    LP carries just that one box row.
    """
    idx = _check(cfg, mask)
    pts = cfg.int_points
    d = cfg.dim
    cone = [([-c for c in pts[u]], GE, 0) for u in idx]
    for k in range(d):
        for sign in (1, -1):
            obj = [0] * d
            obj[k] = sign
            box = ([-x for x in obj], GE, -1)
            status, value, _ = lp_optimize(obj, cone + [box], maximize=True)
            if status != "optimal" or value != 0:
                return False
    return True


def _in_cone(cfg: PointConfig, idx: list[int], target) -> bool:
    pts = cfg.int_points
    rows = [[pts[u][k] for u in idx] for k in range(cfg.dim)]
    return simplex(rows, list(target), [0] * len(idx), duals=False).status != "infeasible"


def lineality_space(cfg: PointConfig, mask: int) -> tuple[list[tuple[Fraction, ...]], int]:
    """Basis and dimension of the largest linear subspace inside cone A(U).

    It is spanned by the A(u) whose negation also lies in cone A(U).
    """
    idx = _check(cfg, mask)
    pts = cfg.int_points
    gens = [u for u in idx if _in_cone(cfg, idx, [-c for c in pts[u]])]
    vecs = [cfg.points[u] for u in gens]
    chosen = independent_columns(vecs)
    basis = [vecs[i] for i in chosen]
    return basis, len(basis)


def cones_meet_nontrivially(cfg: PointConfig, mask1: int, mask2: int) -> bool:
    """Is there t >= 0 on U1 with sum 1 and s >= 0 on U2 such that
    sum t_v A(v) = sum s_u A(u)?

    The normalization sits on U1; when 0 is not in conv A(U1) the common
    vector is nonzero.
    """
    idx1 = _check(cfg, mask1, "U1")
    idx2 = _check(cfg, mask2, "U2")
    if mask1 & mask2:
        raise InputError("U1 and U2 must be disjoint")
    pts = cfg.int_points
    rows = []
    for k in range(cfg.dim):
        rows.append([pts[v][k] for v in idx1] + [-pts[u][k] for u in idx2])
    rows.append([1] * len(idx1) + [0] * len(idx2))
    b = [0] * cfg.dim + [1]
    return simplex(rows, b, [0] * (len(idx1) + len(idx2)), duals=False).status != "infeasible"
