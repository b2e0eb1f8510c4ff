"""Betti-level checks of the induced-subcomplex lemmas on concrete configurations.

Each row records whether a lemma's hypothesis held for (cfg, U) and, if so,
whether its homological conclusion held.  Conclusions about the dual
complex C* are checked on the induced subcomplex C*[U] of the Alexander dual
of the zero-avoiding complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import InputError, ResourceError
from ..geomkernel.config import PointConfig
from ..geomkernel.predicates import (
    cones_meet_nontrivially,
    in_conv,
    in_interior,
    in_relint,
    lineality_space,
    span_rank,
)
from ..homology import BettiProfile, betti
from ..scomplex import SComplex, alexander_dual, dual_induced_by_hull, full_simplex, induced, zero_avoiding

MAX_LEMMA_V = 16

LEMMAS = (
    "convexity",
    "dual",
    "dual_two_ways",
    "L01",
    "L02",
    "C03.5",
    "L04",
    "L05",
    "L06",
    "L07",
    "L08",
)


@dataclass
class LemmaRow:
    lemma: str
    hypothesis_held: bool
    conclusion_held: bool | None
    details: str = ""

    @property
    def failed(self) -> bool:
        return self.hypothesis_held and not self.conclusion_held

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "hypothesis_held": self.hypothesis_held,
            "conclusion_held": self.conclusion_held,
            "details": self.details,
        }


@dataclass
class LemmaContext:
    """Per-configuration data shared by every U."""

    cfg: PointConfig
    betti_fn: object = betti

    @cached_property
    def X(self) -> SComplex:
        return zero_avoiding(self.cfg)

    @cached_property
    def Xd(self) -> SComplex:
        return alexander_dual(self.X)

    def dual_induced(self, U: int) -> SComplex:
        return induced(self.Xd, U)


def _row(name: str, hyp: bool, ok: bool | None = None, details: str = "") -> LemmaRow:
    return LemmaRow(name, hyp, ok if hyp else None, details)


def _profile_str(p: BettiProfile) -> str:
    return "betti=" + (",".join(f"{i}:{v}" for i, v in p.nonzero().items()) or "0")


def global_lemmas(cfg: PointConfig, ctx: LemmaContext | None = None) -> list[LemmaRow]:
    """Topology of the zero-avoiding complex and of its dual."""
    ctx = LemmaContext(cfg) if ctx is None else ctx
    full = cfg.full
    relint = in_relint(cfg, full)
    s = span_rank(cfg, full)
    bx = ctx.betti_fn(ctx.X)
    bd = ctx.betti_fn(ctx.Xd)
    conv_ok = bx.single_at(s - 1) if relint else bx.is_acyclic
    n = cfg.n_points
    dual_ok = bd.single_at(n - s - 2) if relint else bd.is_acyclic
    info = f"relint={relint} span={s}"
    return [
        _row("convexity", True, conv_ok, f"{info} {_profile_str(bx)}"),
        _row("dual", True, dual_ok, f"{info} {_profile_str(bd)}"),
    ]


def lemma_suite(
    cfg: PointConfig,
    U: int,
    ctx: LemmaContext | None = None,
    cross_check: bool = False,
) -> list[LemmaRow]:
    """Rows for every induced-subcomplex lemma at (cfg, U).

    The lemmas that describe C*[U] through the region of directions positive
    on A(V - U) need V - U nonempty; at U = V that region is the whole sphere
    and they are not applied.
    """
    if cfg.n_points > MAX_LEMMA_V:
        raise ResourceError(f"|V| = {cfg.n_points} exceeds {MAX_LEMMA_V} for the lemma suite")
    if U <= 0 or U > cfg.full:
        raise InputError("U must be a nonempty subset of the vertices")
    ctx = LemmaContext(cfg) if ctx is None else ctx
    d = cfg.dim
    size = U.bit_count()
    rest = cfg.full & ~U
    proper = rest != 0
    KU = ctx.dual_induced(U)
    prof = ctx.betti_fn(KU)
    ps = _profile_str(prof)
    rows: list[LemmaRow] = []

    if cross_check:
        other = dual_induced_by_hull(cfg, U)
        rows.append(_row("dual_two_ways", True, other == KU))

    zero_rest = proper and in_conv(cfg, rest) is not None
    a1 = not zero_rest  # 0 not in conv A(V-U); vacuous when U = V

    rows.append(_row("L01", zero_rest, KU == full_simplex(KU.universe), ps))
    rows.append(_row("L02", a1, all(prof[i] == 0 for i in range(size - 1, size + 1)), ps))
    lim = size - d - 2
    rows.append(_row("C03.5", proper, all(prof[i] == 0 for i in range(-1, lim + 1)), ps))

    pa1 = proper and a1
    interior = in_interior(cfg, U)
    rows.append(_row("L04", pa1 and interior, prof.is_acyclic, ps))
    meet = pa1 and cones_meet_nontrivially(cfg, rest, U)
    rows.append(_row("L05", meet, prof.is_acyclic, ps))

    base = pa1 and not interior and not meet  # (A1), (A2), (A3)
    if base:
        _, dl = lineality_space(cfg, U)
        relint = in_relint(cfg, U)
    else:
        dl, relint = -1, False
    info = f"dimL={dl} {ps}"
    rows.append(_row("L06", base and dl == d - 1, prof.single_at(size - d - 1), info))
    rows.append(_row("L07", base and relint, prof.single_at(size - dl - 2), info))
    if base and not relint:
        compact = prof.single_at(size - d - 1)
        top = max(prof.b, default=-1)
        vanish = all(prof[i] == 0 for i in range(-1, size - d)) and all(
            prof[i] == 0 for i in range(size - dl - 1, max(top, size) + 1)
        )
        rows.append(_row("L08", True, compact or vanish, info))
    else:
        rows.append(_row("L08", False))
    return rows
