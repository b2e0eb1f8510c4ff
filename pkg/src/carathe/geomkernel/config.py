"""Point configurations: the images A(p_0), ..., A(p_N) of the simplex vertices."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence


class InputError(ValueError):
    """Invalid user-supplied data."""


def parse_rat(value) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r} (floats are not accepted)")


def format_rat(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class PointConfig:
    """``dim`` and the N+1 points ``A(p_j)``, stored as coordinate tuples.

    No point may be the origin unless ``allow_origin`` is set (affine point
    sets for partition problems need not avoid it).
    """

    dim: int
    points: tuple[tuple[Fraction, ...], ...]
    allow_origin: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("dimension must be positive")
        pts = tuple(tuple(parse_rat(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for j, p in enumerate(pts):
            if len(p) != self.dim:
                raise InputError(f"point {j} has {len(p)} coordinates, expected {self.dim}")
            if not any(p) and not self.allow_origin:
                raise InputError(f"point {j} is the origin")

    @classmethod
    def from_points(cls, points: Iterable[Sequence], dim: int | None = None, allow_origin: bool = False) -> "PointConfig":
        pts = [tuple(parse_rat(x) for x in p) for p in points]
        if dim is None:
            if not pts:
                raise InputError("empty configuration needs an explicit dimension")
            dim = len(pts[0])
        return cls(dim, tuple(pts), allow_origin)

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        """Bitmask of all vertices."""
        return (1 << len(self.points)) - 1

    @cached_property
    def int_points(self) -> tuple[tuple[int, ...], ...]:
        """Each point multiplied by the lcm of its denominators.

        Positive rescaling of a point changes none of the cone/hull
        predicates, so the LPs work on these integer vectors.
        """
        out = []
        for p in self.points:
            den = 1
            for x in p:
                den = lcm(den, x.denominator)
            out.append(tuple(int(x * den) for x in p))
        return tuple(out)

    @cached_property
    def point_scales(self) -> tuple[int, ...]:
        out = []
        for p in self.points:
            den = 1
            for x in p:
                den = lcm(den, x.denominator)
            out.append(den)
        return tuple(out)

    def scaled(self, factors: Sequence) -> "PointConfig":
        """Copy with point j multiplied by ``factors[j]`` (must be positive)."""
        pts = []
        for p, f in zip(self.points, factors):
            f = parse_rat(f)
            if f <= 0:
                raise InputError("scaling factors must be positive")
            pts.append(tuple(x * f for x in p))
        return PointConfig(self.dim, tuple(pts), self.allow_origin)

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [[format_rat(x) for x in p] for p in self.points]}

    @classmethod
    def from_json(cls, data, allow_origin: bool = False) -> "PointConfig":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            dim = int(data["dim"])
            points = data["points"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"PointConfig JSON needs 'dim' and 'points': {exc}") from exc
        return cls(dim, tuple(tuple(parse_rat(x) for x in p) for p in points), allow_origin)
