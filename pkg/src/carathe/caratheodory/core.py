"""Constraint complexes, hypothesis checks, the solver and the covering scheme."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..errors import InputError, NoSelectionError, ResourceError
from ..geomkernel.predicates import in_conv, members
from ..homology import BettiProfile, betti, max_faces
from ..scomplex import (
    SComplex,
    alexander_dual,
    boundary,
    embed,
    induced,
    is_path_connected,
    join,
    matroid_rank_or_zero,
    nerve,
    popcount,
    relabel,
    zero_avoiding,
)
from .model import Certificate, Instance, Variant, mask_of

MAX_Z_N = 11


def _choice_faces(choices: list[list[int]]) -> set[int]:
    """OR-products picking one option from each list."""
    faces = {0}
    for opts in choices:
        faces = {f | o for f in faces for o in opts}
    return faces


def constraint_complex(variant: Variant, n_points: int, dim: int | None = None) -> SComplex:
    """The complex K of admissible faces on vertices 0..N."""
    probs = variant.problems(n_points, dim if dim is not None else 0)
    probs = [p for p in probs if not p.startswith("needs r >= d+1")]
    if probs:
        raise InputError("; ".join(probs))
    universe = tuple(range(n_points))
    if variant.tag == "CC4":
        return variant.matroid(n_points)
    if variant.tag == "MAIN":
        a, b = variant.L_roles
        L = variant.L_complex(n_points)
        rest = [[0] + [1 << v for v in c] for i, c in enumerate(variant.classes) if i not in (a, b)]
        faces = _choice_faces([list(L.faces)] + rest)
        return SComplex(universe, frozenset(faces))
    choices = [[0] + [1 << v for v in c] for c in variant.classes]
    return SComplex(universe, frozenset(_choice_faces(choices)))


# -- hypotheses -------------------------------------------------------------
@dataclass
class HypothesisItem:
    name: str
    face: int
    held: bool

    def to_json(self) -> dict:
        return {"name": self.name, "face": members(self.face), "held": self.held}


@dataclass
class HypothesisReport:
    tag: str
    ok: bool
    items: list = field(default_factory=list)
    problems: list = field(default_factory=list)

    def failures(self) -> list[HypothesisItem]:
        return [it for it in self.items if not it.held]

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "ok": self.ok,
            "problems": list(self.problems),
            "items": [it.to_json() for it in self.items],
        }


def required_faces(inst: Instance) -> list[tuple[str, int]]:
    """The faces S whose images must contain the origin."""
    v = inst.variant
    masks = v.class_masks()
    if v.tag in ("CC1", "MAIN"):
        return [(f"F{i + 1}", m) for i, m in enumerate(masks)]
    if v.tag == "CC2":
        return [(f"F{i + 1}", m) for i, m in enumerate(masks[:-1])]
    if v.tag == "CC3":
        return [(f"F{i + 1}+F{j + 1}", masks[i] | masks[j]) for i, j in combinations(range(len(masks)), 2)]
    # CC4: every S with full rank whose complement has rank <= d
    M = v.matroid(inst.cfg.n_points)
    full = inst.cfg.full
    top = matroid_rank_or_zero(M, full)
    out = []
    for s in range(1, full + 1):
        if matroid_rank_or_zero(M, s) == top and matroid_rank_or_zero(M, full ^ s) <= inst.d:
            out.append((f"S{members(s)}", s))
    return out


def check_hypotheses(inst: Instance) -> HypothesisReport:
    """Per-face origin tests for the variant's hypothesis; never raises on bad data."""
    v = inst.variant
    probs = v.problems(inst.cfg.n_points, inst.d)
    if v.tag == "MAIN" and inst.d < 2:
        probs.append("MAIN needs d >= 2")
    if probs:
        return HypothesisReport(v.tag, False, [], probs)
    items = [HypothesisItem(name, m, in_conv(inst.cfg, m) is not None) for name, m in required_faces(inst)]
    return HypothesisReport(v.tag, all(it.held for it in items), items, [])


# -- solver -------------------------------------------------------------------
def _face_order(K: SComplex, must: int = 0) -> list[int]:
    faces = [f for f in K.faces if f and (f & must) == must]
    faces.sort(key=lambda f: (popcount(f), members(f)))
    return faces


def _prune(lam: dict) -> dict:
    return {v: w for v, w in lam.items() if w != 0}


def solve(inst: Instance, K: SComplex | None = None) -> Certificate:
    """First face J of K (by size, then lexicographically) with 0 in conv A(J).

    For CC2 only faces through the pinned vertex are tried; the pinned vertex
    stays in J even when its coefficient is 0.
    """
    cfg = inst.cfg
    K = constraint_complex(inst.variant, cfg.n_points, cfg.dim) if K is None else K
    must = 1 << inst.variant.pinned if inst.variant.tag == "CC2" else 0
    for J in _face_order(K, must):
        lam = in_conv(cfg, J)
        if lam is None:
            continue
        lam = _prune(lam)
        face = mask_of(lam) | must
        for p in members(must):
            lam.setdefault(p, Fraction(0))
        return Certificate(face, dict(sorted(lam.items())))
    msg = f"no face of the {inst.variant.tag} constraint complex has the origin in its hull"
    if inst.variant.tag != "CC4" and check_hypotheses(inst).ok:
        msg += "; the hypotheses hold, so this contradicts the colourful Caratheodory theorem for this variant"
    raise NoSelectionError(msg)


def has_selection(inst: Instance, K: SComplex | None = None) -> bool:
    try:
        solve(inst, K)
        return True
    except NoSelectionError:
        return False


def verify_certificate(inst: Instance, cert: Certificate, K: SComplex | None = None) -> bool:
    K = constraint_complex(inst.variant, inst.cfg.n_points, inst.cfg.dim) if K is None else K
    allow = frozenset([inst.variant.pinned]) if inst.variant.tag == "CC2" else frozenset()
    if inst.variant.tag == "CC2" and not cert.face >> inst.variant.pinned & 1:
        return False
    return cert.verify(inst.cfg, K, allow)


# -- covering scheme -------------------------------------------------------------
@dataclass(frozen=True)
class ZData:
    Z: SComplex
    colors: tuple  # colour-class masks C_j over Z's universe
    n_points: int
    K: SComplex
    X: SComplex

    def split(self, T: int) -> tuple[int, int]:
        """(I, J) as vertex masks on 0..N."""
        n = self.n_points
        low = (1 << n) - 1
        return T & low, (T >> n) & low


def build_Z(inst: Instance, K: SComplex | None = None) -> ZData:
    """Z = X* * K with X the zero-avoiding complex, on two copies of V."""
    cfg = inst.cfg
    N = cfg.n_points - 1
    if N > MAX_Z_N:
        raise ResourceError(f"N = {N} exceeds {MAX_Z_N} for materializing Z; use solve() instead")
    K = constraint_complex(inst.variant, cfg.n_points, cfg.dim) if K is None else K
    X = zero_avoiding(cfg)
    Xd = alexander_dual(X)
    size = len(Xd.faces) * len(K.faces)
    if size > max_faces():
        raise ResourceError(f"Z would have {size} faces; cap is {max_faces()} (CARATHE_MAX_FACES); use solve() instead")
    n = cfg.n_points
    Y = relabel(K, [n + j for j in range(n)])
    Z = join(Xd, Y)
    colors = tuple((1 << j) | (1 << (n + j)) for j in range(n))
    return ZData(Z, colors, n, K, X)


def colorful_transversals(Z: SComplex, colors) -> list[int]:
    """Faces of Z meeting every colour class, in size-then-lex order."""
    out = [T for T in Z.faces if all(T & c for c in colors)]
    out.sort(key=lambda f: (popcount(f), members(f)))
    return out


def transversal_to_selection(T: int, inst: Instance, zd: ZData | None = None) -> Certificate:
    """Turn a colourful transversal I*J into a certificate supported in J."""
    zd = build_Z(inst) if zd is None else zd
    if T not in zd.Z.faces:
        raise InputError("T is not a face of Z")
    if not all(T & c for c in zd.colors):
        raise InputError("T misses a colour class, so it is not a colourful transversal")
    I, J = zd.split(T)
    rest = inst.cfg.full & ~I
    if (rest & ~J) or rest == 0:
        raise InputError("T does not cover the complement of its first-copy part")
    lam = in_conv(inst.cfg, rest)
    if lam is None:
        raise InputError("first-copy part of T is not a face of the dual complex")
    lam = _prune(lam)
    return Certificate(mask_of(lam), dict(sorted(lam.items())))


def cover_members(zd: ZData) -> list[SComplex]:
    full = zd.Z.full_mask
    return [induced(zd.Z, full & ~c) for c in zd.colors]


@dataclass
class CoverReport:
    n_points: int
    z_void: bool
    z_faces: int
    selection_exists: bool
    transversals: int
    covered: bool
    dichotomy_ok: bool
    implication_ok: bool
    selections_ok: bool
    nerve_checked: bool
    nerve_ok: bool

    @property
    def ok(self) -> bool:
        return self.dichotomy_ok and self.implication_ok and self.selections_ok and self.nerve_ok

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["ok"] = self.ok
        return out


def covering_check(inst: Instance, zd: ZData | None = None) -> CoverReport:
    """Both sides of the covering scheme, computed independently.

    * ``covered``: the union of the members Z[W - C_j] equals Z.
    * ``transversals``: faces of Z meeting every class.
    Exactly one of the two holds.  When K has no face J with 0 in conv A(J),
    the family must cover Z and (for non-VOID Z) its nerve is the boundary
    of the N-simplex.  Every transversal converts into a valid certificate.
    """
    zd = build_Z(inst) if zd is None else zd
    Z = zd.Z
    sel = has_selection(inst, zd.K)
    trans = colorful_transversals(Z, zd.colors)
    mem = cover_members(zd)
    union = set()
    for m in mem:
        union |= embed(m, Z.universe).faces
    covered = union == set(Z.faces)
    dichotomy = covered == (not trans)
    implication = sel or covered
    selections_ok = True
    for T in trans:
        cert = transversal_to_selection(T, inst, zd)
        # the pinned-vertex rule is part of the CC2 conclusion, not of this lemma
        if not cert.verify(inst.cfg, zd.K):
            selections_ok = False
            break
    nerve_checked = not sel and not Z.is_void
    nerve_ok = True
    if nerve_checked:
        nerve_ok = nerve(mem) == boundary(range(zd.n_points))
    return CoverReport(
        zd.n_points, Z.is_void, len(Z.faces), sel, len(trans), covered,
        dichotomy, implication, selections_ok, nerve_checked, nerve_ok,
    )


# -- homological nerve range ----------------------------------------------------
@dataclass
class NerveRangeReport:
    applicable: bool
    reason: str
    k: int | None
    z_betti: dict
    nerve_betti: dict
    agree_through_k: bool
    top_ok: bool

    @property
    def ok(self) -> bool:
        return (not self.applicable) or (self.agree_through_k and self.top_ok)

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["ok"] = self.ok
        return out


def _first_nonzero(profile: BettiProfile) -> int | None:
    degs = [i for i, v in profile.nonzero().items() if i >= 0]
    return min(degs) if degs else None


def nerve_range_check(inst: Instance, zd: ZData | None = None, betti_fn=betti) -> NerveRangeReport:
    """Homological nerve theorem on the cover {Z[W - C_j]}.

    The largest k is found such that every nonempty t-fold intersection has
    vanishing H_j for 0 <= j <= k - t + 1; then b_j(Z) = b_j(nerve) for
    0 <= j <= k, and b_{k+1}(nerve) != 0 forces b_{k+1}(Z) != 0.
    """
    zd = build_Z(inst) if zd is None else zd
    Z = zd.Z
    if Z.is_void:
        return NerveRangeReport(False, "Z is VOID", None, {}, {}, True, True)
    if not is_path_connected(Z):
        return NerveRangeReport(False, "Z is not connected", None, {}, {}, True, True)
    mem = cover_members(zd)
    union = set()
    for m in mem:
        union |= embed(m, Z.universe).faces
    if union != set(Z.faces):
        return NerveRangeReport(False, "family does not cover Z", None, {}, {}, True, True)
    n = zd.n_points
    full = Z.full_mask
    cap = Z.dim + 2
    k = cap
    for t in range(1, n + 1):
        for S in combinations(range(n), t):
            drop = 0
            for j in S:
                drop |= zd.colors[j]
            inter = induced(Z, full & ~drop)
            if inter.vertex_set == 0:
                continue
            m = _first_nonzero(betti_fn(inter))
            if m is not None:
                k = min(k, m + t - 2)
    if k < 0:
        return NerveRangeReport(False, "vanishing hypothesis gives no range", k, {}, {}, True, True)
    bz = betti_fn(Z)
    bn = betti_fn(nerve(mem))
    agree = all(bz[j] == bn[j] for j in range(0, k + 1))
    top = bn[k + 1] == 0 or bz[k + 1] != 0
    return NerveRangeReport(True, "", k, bz.nonzero(), bn.nonzero(), agree, top)
