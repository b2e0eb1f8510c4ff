"""Seeded generators for configurations and complexes, plus hypothesis-passing instances.

Randomness comes from numpy's PCG64 bit generator; rationals are p/q with
p in [-B, B] and q in [1, B].  Hypotheses are planted, never searched for:
to put the origin in the relative interior of A(F), sample |F|-1 points and
positive weights and solve for the last point.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import InputError
from ..geomkernel.config import PointConfig
from ..scomplex import SComplex, from_facets
from .model import Instance, Variant

BOUND = 32


class Sampler:
    def __init__(self, seed, bound: int = BOUND):
        if isinstance(seed, np.random.SeedSequence):
            seq = seed
        else:
            seq = np.random.SeedSequence(int(seed))
        self.rng = np.random.Generator(np.random.PCG64(seq))
        self.bound = bound

    def int(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return int(self.rng.integers(lo, hi + 1))

    def random(self) -> float:
        return float(self.rng.random())

    def choice(self, seq):
        return seq[self.int(0, len(seq) - 1)]

    def shuffle(self, seq: list) -> list:
        out = list(seq)
        for i in range(len(out) - 1, 0, -1):
            j = self.int(0, i)
            out[i], out[j] = out[j], out[i]
        return out

    def rat(self) -> Fraction:
        return Fraction(self.int(-self.bound, self.bound), self.int(1, self.bound))

    def pos(self) -> Fraction:
        return Fraction(self.int(1, self.bound), self.int(1, self.bound))

    def point(self, d: int) -> tuple:
        while True:
            p = tuple(self.rat() for _ in range(d))
            if any(p):
                return p


def spawn_seeds(seed: int, n: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(int(seed)).spawn(n)


# -- planting -------------------------------------------------------------------
def solve_last(s: Sampler, pts: list[tuple], weights: list[Fraction], w_last: Fraction) -> tuple | None:
    d = len(pts[0])
    last = tuple(-sum((w * p[k] for w, p in zip(weights, pts)), Fraction(0)) / w_last for k in range(d))
    return last if any(last) else None


def planted_class(s: Sampler, d: int, size: int) -> list[tuple]:
    """``size`` >= 2 nonzero points with the origin in the relative interior of their hull."""
    if size < 2:
        raise InputError("a class containing the origin needs at least two points")
    while True:
        pts = [s.point(d) for _ in range(size - 1)]
        ws = [s.pos() for _ in range(size - 1)]
        last = solve_last(s, pts, ws, s.pos())
        if last is not None:
            return pts + [last]


def planted_combination(s: Sampler, d: int, weights: list[Fraction]) -> list[tuple]:
    """Points q_i with sum weights[i] * q_i = 0."""
    while True:
        pts = [s.point(d) for _ in range(len(weights) - 1)]
        last = solve_last(s, pts, weights[:-1], weights[-1])
        if last is not None:
            return pts + [last]


def _assemble(s: Sampler, d: int, class_points: list[list[tuple]], permute: bool = True):
    """Lay classes out on vertex indices (optionally shuffled)."""
    n = sum(len(c) for c in class_points)
    order = s.shuffle(list(range(n))) if permute else list(range(n))
    pts: list = [None] * n
    classes = []
    k = 0
    for c in class_points:
        idx = []
        for p in c:
            pts[order[k]] = p
            idx.append(order[k])
            k += 1
        classes.append(tuple(sorted(idx)))
    return PointConfig(d, tuple(pts)), classes


def default_sizes(s: Sampler, r: int, max_points: int, extra: int = 0, minimum: int = 2) -> list[int]:
    sizes = [minimum] * r
    room = max_points - sum(sizes) - extra
    if room < 0:
        raise InputError(f"cannot fit {r} classes of size {minimum} into {max_points} points")
    for _ in range(s.int(0, room)):
        sizes[s.int(0, r - 1)] += 1
    return sizes


def _check_sizes(sizes, r):
    if len(sizes) != r:
        raise InputError(f"need {r} class sizes, got {len(sizes)}")


def gen_cc1(s: Sampler, d: int, r: int, sizes=None, max_points: int = 11) -> Instance:
    if r < d + 1:
        raise InputError(f"CC1 needs r >= d+1 (r={r}, d={d})")
    sizes = default_sizes(s, r, max_points) if sizes is None else list(sizes)
    _check_sizes(sizes, r)
    cfg, classes = _assemble(s, d, [planted_class(s, d, k) for k in sizes])
    return Instance(cfg, Variant("CC1", tuple(classes)))


def gen_cc2(s: Sampler, d: int, r: int, sizes=None, max_points: int = 11) -> Instance:
    if r < d + 1:
        raise InputError(f"CC2 needs r >= d+1 (r={r}, d={d})")
    sizes = default_sizes(s, r - 1, max_points, extra=1) if sizes is None else list(sizes)
    if len(sizes) == r:
        sizes = sizes[:-1]
    _check_sizes(sizes, r - 1)
    groups = [planted_class(s, d, k) for k in sizes] + [[s.point(d)]]
    cfg, classes = _assemble(s, d, groups)
    p = classes[-1][0]
    return Instance(cfg, Variant("CC2", tuple(classes), pinned=p))


def gen_cc3(s: Sampler, d: int, r: int, max_points: int = 11, deficient: int | None = None) -> Instance:
    """Origin in every pairwise union, planted on pairs of a deficient set D.

    Classes outside D contain the origin themselves; classes in D start with
    one point and gain one solved point per planted pair, so typically none
    of them contains the origin on its own.
    """
    if r < d + 1:
        raise InputError(f"CC3 needs r >= d+1 (r={r}, d={d})")
    for _ in range(1000):
        k = deficient if deficient is not None else s.int(2, min(r, 3))
        need = k + k * (k - 1) // 2 + 2 * (r - k)
        if need <= max_points:
            break
        deficient = None
    else:
        raise InputError("cannot fit a CC3 instance into the point budget")
    D = sorted(s.shuffle(list(range(r)))[:k])
    groups: list[list[tuple]] = [[] for _ in range(r)]
    for i in D:
        groups[i].append(s.point(d))
    for a in range(len(D)):
        for b in range(a + 1, len(D)):
            i, j = D[a], D[b]
            target = j if s.random() < 0.5 else i
            pool = groups[i] + groups[j]
            ws = [s.pos() for _ in pool]
            new = solve_last(s, pool, ws, s.pos())
            while new is None:
                ws = [s.pos() for _ in pool]
                new = solve_last(s, pool, ws, s.pos())
            groups[target].append(new)
    budget = max_points - sum(len(g) for g in groups)
    free = [i for i in range(r) if i not in D]
    sizes = {i: 2 for i in free}
    budget -= 2 * len(free)
    while budget > 0 and free and s.random() < 0.5:
        sizes[s.choice(free)] += 1
        budget -= 1
    for i in free:
        groups[i] = planted_class(s, d, sizes[i])
    cfg, classes = _assemble(s, d, groups)
    return Instance(cfg, Variant("CC3", tuple(classes)))


def random_connected_bipartite(s: Sampler, left: list[int], right: list[int], extra: float = 0.3) -> list[tuple]:
    """Random spanning tree of the complete bipartite graph plus extra edges."""
    verts = [(0, v) for v in left] + [(1, v) for v in right]
    verts = s.shuffle(verts)
    in_tree = [verts[0]]
    edges = set()
    for v in verts[1:]:
        opp = [u for u in in_tree if u[0] != v[0]]
        if not opp:
            # attach later once the other side appears
            continue
        u = s.choice(opp)
        edges.add(tuple(sorted((u[1], v[1]))))
        in_tree.append(v)
    missing = [v for v in verts if v not in in_tree]
    for v in missing:
        opp = [u for u in in_tree if u[0] != v[0]]
        u = s.choice(opp)
        edges.add(tuple(sorted((u[1], v[1]))))
        in_tree.append(v)
    for a in left:
        for b in right:
            e = tuple(sorted((a, b)))
            if e not in edges and s.random() < extra:
                edges.add(e)
    return sorted(edges)


def gen_main(s: Sampler, d: int, r: int, sizes=None, max_points: int = 11, roles=(0, 1), extra: float = 0.3) -> Instance:
    if d < 2:
        raise InputError("MAIN needs d >= 2")
    if r < d + 1:
        raise InputError(f"MAIN needs r >= d+1 (r={r}, d={d})")
    sizes = default_sizes(s, r, max_points) if sizes is None else list(sizes)
    _check_sizes(sizes, r)
    cfg, classes = _assemble(s, d, [planted_class(s, d, k) for k in sizes])
    a, b = roles
    edges = random_connected_bipartite(s, list(classes[a]), list(classes[b]), extra)
    return Instance(cfg, Variant("MAIN", tuple(classes), L_edges=tuple(edges), L_roles=tuple(roles)))


def gen_cc4(s: Sampler, d: int, r: int, sizes=None, max_points: int = 11) -> Instance:
    """Partition matroid on CC1-planted classes."""
    base = gen_cc1(s, d, r, sizes, max_points)
    facets = [()]
    for c in base.variant.classes:
        facets = [f + (v,) for f in facets for v in c]
    return Instance(base.cfg, Variant("CC4", base.variant.classes, matroid_facets=tuple(facets)))


def zigzag_instance(s: Sampler) -> Instance:
    """Classes {1,2}, {3,4,5}, {6,7,8} in the plane, L on the last two classes.

    Vertices are renumbered from 0, so the caption's vertex k is index k-1.
    """
    groups = [planted_class(s, 2, 2), planted_class(s, 2, 3), planted_class(s, 2, 3)]
    cfg, classes = _assemble(s, 2, groups, permute=False)
    edges = [(2, 5), (2, 6), (3, 6), (3, 7), (4, 7)]
    return Instance(cfg, Variant("MAIN", tuple(classes), L_edges=tuple(edges), L_roles=(1, 2)))


GENERATORS = {"CC1": gen_cc1, "CC2": gen_cc2, "CC3": gen_cc3, "CC4": gen_cc4, "MAIN": gen_main}


def gen_instance(s: Sampler, tag: str, d: int, r: int, sizes=None, max_points: int = 11) -> Instance:
    if tag not in GENERATORS:
        raise InputError(f"unknown variant {tag!r}")
    if tag == "CC3":
        if sizes is not None:
            raise InputError("CC3 class sizes follow from the planting; omit --sizes")
        return gen_cc3(s, d, r, max_points)
    return GENERATORS[tag](s, d, r, sizes, max_points)


def gen_unplanted(s: Sampler, d: int, r: int, n_points: int, tag: str = "CC1") -> Instance:
    """Random points with a colour structure and no planted hypothesis."""
    pts = [s.point(d) for _ in range(n_points)]
    order = s.shuffle(list(range(n_points)))
    cuts = sorted(s.shuffle(list(range(1, n_points)))[: r - 1])
    bounds = [0] + cuts + [n_points]
    classes = tuple(tuple(sorted(order[bounds[i]:bounds[i + 1]])) for i in range(r))
    cfg = PointConfig(d, tuple(pts))
    if tag == "MAIN":
        edges = random_connected_bipartite(s, list(classes[0]), list(classes[1]), 0.0)
        return Instance(cfg, Variant("MAIN", classes, L_edges=tuple(edges)))
    return Instance(cfg, Variant("CC1", classes))


# -- configurations for predicate and lemma campaigns ----------------------------
MODES = ("generic", "subspace", "antipodal", "hyperplane", "relint")


def random_config(s: Sampler, d: int, n: int, mode: str | None = None) -> PointConfig:
    """A configuration of ``n`` nonzero points, often with planted degeneracy.

    * generic: independent random points,
    * subspace: points in a random proper linear subspace,
    * antipodal: some points are negative multiples of earlier ones,
    * hyperplane: points on a hyperplane through 0 plus points on one side,
    * relint: a planted block with the origin in its relative interior,
      the remaining points strictly on one side of a hyperplane containing it.
    """
    mode = s.choice(MODES) if mode is None else mode
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    pts: list[tuple] = []
    if mode == "generic" or (d == 1 and mode in ("subspace", "hyperplane")) or (mode == "relint" and n < 2):
        pts = [s.point(d) for _ in range(n)]
    elif mode == "subspace":
        k = s.int(1, d - 1)
        basis = [s.point(d) for _ in range(k)]
        while len(pts) < n:
            c = [Fraction(s.int(-3, 3), s.int(1, 3)) for _ in range(k)]
            p = tuple(sum((ci * b[j] for ci, b in zip(c, basis)), Fraction(0)) for j in range(d))
            if any(p):
                pts.append(p)
    elif mode == "antipodal":
        while len(pts) < n:
            if pts and s.random() < 0.5:
                q = s.choice(pts)
                pts.append(tuple(-s.pos() * x for x in q))
            else:
                pts.append(s.point(d))
    elif mode == "hyperplane":
        on = s.int(1, n)
        while len(pts) < on:
            p = s.point(d - 1) + (Fraction(0),)
            pts.append(p)
        while len(pts) < n:
            p = s.point(d - 1) + (s.pos(),)
            pts.append(p)
    else:  # relint
        k = min(n, s.int(2, max(2, min(n, d + 1))))
        sub = s.int(1, d) if d > 1 else 1
        basis = [s.point(d) for _ in range(sub)]
        if d > 1 and sub < d:
            basis = [b[:-1] + (Fraction(0),) if any(b[:-1]) else b for b in basis]
        # planted block inside span(basis)
        block = []
        while len(block) < k - 1:
            c = [s.rat() for _ in range(sub)]
            p = tuple(sum((ci * b[j] for ci, b in zip(c, basis)), Fraction(0)) for j in range(d))
            if any(p):
                block.append(p)
        ws = [s.pos() for _ in block]
        last = solve_last(s, block, ws, s.pos())
        if last is None:
            return random_config(s, d, n, "generic")
        pts = block + [last]
        while len(pts) < n:
            if d > 1:
                pts.append(s.point(d - 1) + (s.pos(),))
            else:
                pts.append((s.pos(),))
    order = s.shuffle(list(range(n)))
    return PointConfig(d, tuple(pts[i] for i in order))


def random_complex(s: Sampler, n: int, max_facets: int = 6, p: float = 0.5) -> SComplex:
    facets = [[v for v in range(n) if s.random() < p] for _ in range(s.int(0, max_facets))]
    return from_facets(range(n), facets)
