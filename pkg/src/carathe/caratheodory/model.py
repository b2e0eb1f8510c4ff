"""Instances of the colourful selection problem and their certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import InputError
from ..geomkernel.config import PointConfig, format_rat, parse_rat
from ..geomkernel.predicates import members
from ..scomplex import SComplex, from_facets, is_matroid, is_path_connected

TAGS = ("CC1", "CC2", "CC3", "CC4", "MAIN")


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Variant:
    """Which theorem setup an instance follows.

    ``classes`` are vertex-index tuples F_1..F_r.  For CC2 the last class is
    exactly ``(pinned,)``.  For MAIN, ``L_edges`` is a graph between the two
    classes named by ``L_roles`` (0-based, default the first two).  For CC4,
    ``matroid_facets`` lists the facets of the matroid.
    """

    tag: str
    classes: tuple = ()
    pinned: Optional[int] = None
    L_edges: tuple = ()
    L_roles: tuple = (0, 1)
    matroid_facets: tuple = ()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InputError(f"unknown variant tag {self.tag!r}; expected one of {', '.join(TAGS)}")
        object.__setattr__(self, "classes", tuple(tuple(int(v) for v in c) for c in self.classes))
        object.__setattr__(self, "L_edges", tuple(tuple(int(v) for v in e) for e in self.L_edges))
        object.__setattr__(self, "L_roles", tuple(int(v) for v in self.L_roles))
        object.__setattr__(self, "matroid_facets", tuple(tuple(int(v) for v in f) for f in self.matroid_facets))

    @property
    def r(self) -> int:
        return len(self.classes)

    def class_masks(self) -> list[int]:
        return [mask_of(c) for c in self.classes]

    def L_complex(self, n_points: int) -> SComplex:
        a, b = self.L_roles
        verts = [[v] for v in self.classes[a] + self.classes[b]]
        return from_facets(range(n_points), verts + [list(e) for e in self.L_edges])

    def matroid(self, n_points: int) -> SComplex:
        return from_facets(range(n_points), [list(f) for f in self.matroid_facets])

    def problems(self, n_points: int, dim: int) -> list[str]:
        """Structural clauses that fail; empty when the variant is well formed."""
        out: list[str] = []
        full = (1 << n_points) - 1
        if self.tag == "CC4":
            if not self.matroid_facets:
                return ["CC4 needs matroid facets"]
            if any(v < 0 or v >= n_points for f in self.matroid_facets for v in f):
                return ["matroid facet uses a vertex outside the configuration"]
            M = self.matroid(n_points)
            if M.vertex_set != full:
                out.append("vertex(M) must be every vertex of the simplex")
            if not is_matroid(M):
                out.append("M fails the matroid exchange property")
            return out
        if not self.classes:
            return ["colour classes are required"]
        seen = 0
        for i, c in enumerate(self.classes):
            if not c:
                out.append(f"class {i} is empty")
            for v in c:
                if v < 0 or v >= n_points:
                    out.append(f"class {i} uses vertex {v} outside the configuration")
                    continue
                if seen >> v & 1:
                    out.append(f"vertex {v} lies in two classes")
                seen |= 1 << v
        if seen != full and not out:
            out.append("classes must partition the vertex set")
        if self.r < dim + 1:
            out.append(f"needs r >= d+1 (r={self.r}, d={dim})")
        if self.tag == "CC2":
            if self.pinned is None or self.classes[-1] != (self.pinned,):
                out.append("CC2 needs a pinned vertex p forming the last class {p}")
        if self.tag == "MAIN":
            a, b = self.L_roles
            if len(set(self.L_roles)) != 2 or not all(0 <= x < self.r for x in self.L_roles):
                return out + ["L roles must name two distinct classes"]
            if out:
                return out
            ca, cb = set(self.classes[a]), set(self.classes[b])
            for e in self.L_edges:
                if len(e) != 2 or not ((e[0] in ca and e[1] in cb) or (e[0] in cb and e[1] in ca)):
                    out.append(f"L edge {list(e)} is not an edge of the bipartite join of its classes")
            if not out:
                L = self.L_complex(n_points)
                if not is_path_connected(L):
                    out.append("L must be path-connected")
        return out

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.classes:
            out["classes"] = [list(c) for c in self.classes]
        if self.pinned is not None:
            out["pinned"] = self.pinned
        if self.tag == "MAIN":
            out["L_facets"] = [list(e) for e in self.L_edges]
            if self.L_roles != (0, 1):
                out["L_roles"] = list(self.L_roles)
        if self.matroid_facets:
            out["matroid_facets"] = [list(f) for f in self.matroid_facets]
        return out

    @classmethod
    def from_json(cls, data) -> "Variant":
        try:
            return cls(
                tag=data["tag"],
                classes=tuple(tuple(c) for c in data.get("classes", [])),
                pinned=data.get("pinned"),
                L_edges=tuple(tuple(e) for e in data.get("L_facets", []) if len(e) == 2),
                L_roles=tuple(data.get("L_roles", (0, 1))),
                matroid_facets=tuple(tuple(f) for f in data.get("matroid_facets", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed variant: {exc}") from exc


@dataclass(frozen=True)
class Instance:
    cfg: PointConfig
    variant: Variant

    @property
    def d(self) -> int:
        return self.cfg.dim

    @property
    def N(self) -> int:
        return self.cfg.n_points - 1

    def validate(self) -> None:
        probs = self.variant.problems(self.cfg.n_points, self.cfg.dim)
        if probs:
            raise InputError("; ".join(probs))

    def to_json(self) -> dict:
        return {"config": self.cfg.to_json(), "variant": self.variant.to_json()}

    @classmethod
    def from_json(cls, data) -> "Instance":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InputError(f"instance is not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or "config" not in data or "variant" not in data:
            raise InputError("instance JSON needs 'config' and 'variant'")
        return cls(PointConfig.from_json(data["config"]), Variant.from_json(data["variant"]))


@dataclass(frozen=True)
class Certificate:
    """A face J with convex coefficients putting the origin in conv A(J)."""

    face: int
    lam: dict = field(default_factory=dict)

    def vertices(self) -> list[int]:
        return members(self.face)

    def verify(self, cfg: PointConfig, K: SComplex | None = None, allow_zero: frozenset = frozenset()) -> bool:
        """Exact re-check.  ``allow_zero`` names vertices that may carry 0."""
        if K is not None and self.face not in K.faces:
            return False
        if set(self.lam) != set(members(self.face)):
            return False
        total = Fraction(0)
        point = [Fraction(0)] * cfg.dim
        for v, w in self.lam.items():
            if w < 0 or (w == 0 and v not in allow_zero):
                return False
            total += w
            for k in range(cfg.dim):
                point[k] += w * cfg.points[v][k]
        return total == 1 and not any(point)

    def to_json(self) -> dict:
        return {"face": members(self.face), "lambda": {str(v): format_rat(w) for v, w in sorted(self.lam.items())}}

    @classmethod
    def from_json(cls, data) -> "Certificate":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(mask_of(data["face"]), {int(k): parse_rat(v) for k, v in data["lambda"].items()})
