"""Half-plane instances, general position, and the ray duality.

A half-plane is `upper` (y <= a*x + b) or `lower` (y >= a*x + b); vertical
boundaries have no representation.  Under the duality used throughout,
the boundary y = a*x + b maps to the tip (-a, b); upper half-planes carry
downward vertical rays, lower ones upward rays, and the primal point
(c, d) maps to the line y = c*x + d.  With this convention a point lies
in a half-plane exactly when its dual line meets the half-plane's ray,
and "above" in the primal is "below" in the dual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .rationals import (
    Scalar,
    as_fraction,
    format_scalar,
    normalize,
    num_den,
    parse_scalar,
)

UPPER = "upper"
LOWER = "lower"

BLUE = "blue"
RED = "red"

XFLIP = "xflip"
YFLIP = "yflip"
COLOR_SWAP = "colorswap"


class ModelError(Exception):
    pass


class GeneralPositionViolation(ModelError):
    """An operation that requires general position saw a degeneracy."""


class InstanceFormatError(ModelError):
    """Malformed instance or coloring JSON."""


@dataclass(frozen=True)
class HalfPlane:
    a: Scalar
    b: Scalar
    side: str

    def __post_init__(self):
        if self.side not in (UPPER, LOWER):
            raise InstanceFormatError(f"bad side {self.side!r}")
        object.__setattr__(self, "a", normalize(self.a))
        object.__setattr__(self, "b", normalize(self.b))

    def boundary_y(self, x: Scalar) -> Scalar:
        return normalize(as_fraction(self.a) * x + self.b)

    def contains(self, pt) -> bool:
        """Closed containment of (x, y)."""
        lhs = pt[1]
        rhs = as_fraction(self.a) * pt[0] + self.b
        return lhs <= rhs if self.side == UPPER else lhs >= rhs

    def strictly_outside(self, pt) -> bool:
        lhs = pt[1]
        rhs = as_fraction(self.a) * pt[0] + self.b
        return lhs > rhs if self.side == UPPER else lhs < rhs

    def int_constraint(self) -> tuple[int, int, int, int]:
        """(P, Q, R, s): containment is s*(P*x + Q*y + R) >= 0, all integer.

        Built by clearing denominators of y - a*x - b; s encodes the side.
        """
        an, ad = num_den(self.a)
        bn, bd = num_den(self.b)
        p = -an * bd
        q = ad * bd
        r = -bn * ad
        s = -1 if self.side == UPPER else 1
        return p, q, r, s


@dataclass
class Instance:
    halfplanes: list

    def __len__(self) -> int:
        return len(self.halfplanes)

    def __iter__(self) -> Iterator[HalfPlane]:
        return iter(self.halfplanes)

    def __getitem__(self, i: int) -> HalfPlane:
        return self.halfplanes[i]

    def to_json_dict(self) -> dict:
        return {
            "halfplanes": [
                {"a": format_scalar(h.a), "b": format_scalar(h.b), "side": h.side}
                for h in self.halfplanes
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data) -> "Instance":
        if not isinstance(data, dict) or "halfplanes" not in data:
            raise InstanceFormatError("missing 'halfplanes' key")
        items = data["halfplanes"]
        if not isinstance(items, list):
            raise InstanceFormatError("'halfplanes' must be a list")
        hps = []
        for entry in items:
            try:
                hps.append(
                    HalfPlane(
                        parse_scalar(entry["a"]),
                        parse_scalar(entry["b"]),
                        entry["side"],
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise InstanceFormatError(f"bad half-plane entry {entry!r}: {exc}")
        return cls(hps)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc}")
        return cls.from_json_dict(data)


def coloring_to_json(colors: list) -> str:
    return json.dumps({"colors": list(colors)}, indent=2) + "\n"


def coloring_from_json(text: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}")
    if not isinstance(data, dict) or "colors" not in data:
        raise InstanceFormatError("missing 'colors' key")
    colors = data["colors"]
    if not isinstance(colors, list) or any(c not in (BLUE, RED) for c in colors):
        raise InstanceFormatError("colors must be a list of 'blue'/'red'")
    return colors


@dataclass
class GeneralPositionReport:
    duplicates: list = field(default_factory=list)  # (i, j) identical half-planes
    parallels: list = field(default_factory=list)  # (i, j) equal boundary slopes
    concurrents: list = field(default_factory=list)  # (i, j, k) boundaries through one point

    @property
    def ok(self) -> bool:
        return not (self.duplicates or self.parallels or self.concurrents)

    def describe(self) -> str:
        if self.ok:
            return "general position"
        bits = []
        if self.duplicates:
            bits.append(f"duplicates: {self.duplicates}")
        if self.parallels:
            bits.append(f"parallel boundaries: {self.parallels}")
        if self.concurrents:
            bits.append(f"concurrent boundaries: {self.concurrents}")
        return "; ".join(bits)


def validate(inst: Instance) -> GeneralPositionReport:
    """Report every duplicate, parallel pair, and concurrent boundary triple."""
    report = GeneralPositionReport()
    by_slope: dict = {}
    for i, h in enumerate(inst):
        key = as_fraction(h.a)
        for j in by_slope.get(key, ()):
            other = inst[j]
            if other.b == h.b and other.side == h.side:
                report.duplicates.append((j, i))
            else:
                report.parallels.append((j, i))
        by_slope.setdefault(key, []).append(i)
    # boundaries through a common point: group pairwise intersections
    meeting: dict = {}
    n = len(inst)
    for i in range(n):
        ai, bi = as_fraction(inst[i].a), as_fraction(inst[i].b)
        for j in range(i + 1, n):
            aj, bj = as_fraction(inst[j].a), as_fraction(inst[j].b)
            if ai == aj:
                continue
            x = (bj - bi) / (ai - aj)
            y = ai * x + bi
            meeting.setdefault((x, y), []).append((i, j))
    for point in sorted(meeting):
        pairs = meeting[point]
        if len(pairs) > 1:
            members = sorted({i for pair in pairs for i in pair})
            report.concurrents.append(tuple(members[:3]))
    return report


def cheap_position_ok(inst: Instance) -> bool:
    """Duplicate/parallel screen only (O(n log n)); concurrency not checked.

    The solver runs optimistically on instances passing this screen; a
    concurrent triple surfaces later as a collinear-tip assertion or a
    verifier rejection, and the retry loop perturbs.
    """
    slopes = sorted(as_fraction(h.a) for h in inst)
    return all(u != v for u, v in zip(slopes, slopes[1:]))


def perturbation_step(inst: Instance) -> Fraction:
    """Base step 1 / (2*(1 + M))**3 with M the largest |num|/|den| seen."""
    m = 1
    for h in inst:
        for v in (h.a, h.b):
            n, d = num_den(v)
            m = max(m, abs(n), d)
    return Fraction(1, (2 * (1 + m)) ** 3)


def perturb(inst: Instance, attempt: int = 0) -> Instance:
    """Index-keyed deterministic perturbation: (a, b) += delta*kappa*(k, k^2).

    attempt 0 returns the instance unchanged when the cheap screen passes;
    larger attempts shrink the step by 2**-attempt.  Distinct index keys
    mean no two half-planes shift in parallel, so some attempt always
    reaches general position.  The keys are cyclically shifted and the
    sign flipped per attempt: retries then split degeneracies in
    combinatorially different ways, which matters when a coloring valid
    for the perturbed instance fails on the degenerate original.
    """
    if attempt == 0 and cheap_position_ok(inst):
        return inst
    n = max(len(inst), 1)
    delta = perturbation_step(inst) * Fraction((-1) ** attempt, 2**attempt)
    out = []
    for i, h in enumerate(inst):
        k = (i + attempt) % n + 1
        out.append(
            HalfPlane(
                normalize(as_fraction(h.a) + delta * k),
                normalize(as_fraction(h.b) + delta * k**2),
                h.side,
            )
        )
    return Instance(out)


@dataclass
class DualScene:
    """Tips of the dual rays, one family per side, x-sorted.

    tips_u carry downward rays (upper half-planes), tips_l upward rays.
    src_* map tip positions back to half-plane indices.
    """

    tips_u: list
    src_u: list
    tips_l: list
    src_l: list
    log: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.tips_u) + len(self.tips_l)

    def points(self) -> Iterable:
        yield from self.tips_u
        yield from self.tips_l

    def x_flip(self) -> "DualScene":
        """Mirror left-right; families keep their roles; involution."""
        return DualScene(
            [(-x, y) for x, y in reversed(self.tips_u)],
            list(reversed(self.src_u)),
            [(-x, y) for x, y in reversed(self.tips_l)],
            list(reversed(self.src_l)),
            self.log + [XFLIP],
        )

    def y_flip(self) -> "DualScene":
        """Mirror up-down and swap the families' roles; involution."""
        return DualScene(
            [(x, -y) for x, y in self.tips_l],
            list(self.src_l),
            [(x, -y) for x, y in self.tips_u],
            list(self.src_u),
            self.log + [YFLIP],
        )


def dualize(inst: Instance) -> DualScene:
    """Map each half-plane with boundary y = a*x + b to the tip (-a, b).

    Requires pairwise distinct tip x-coordinates (equivalently, no two
    boundaries parallel); collinearity degeneracies are left to callers'
    assertions and the solve retry loop.
    """
    tagged = []
    for i, h in enumerate(inst):
        tagged.append(((normalize(-as_fraction(h.a)), h.b), h.side, i))
    tagged.sort(key=lambda t: as_fraction(t[0][0]))
    for (p1, _, i1), (p2, _, i2) in zip(tagged, tagged[1:]):
        if p1[0] == p2[0]:
            raise GeneralPositionViolation(
                f"half-planes {i1} and {i2} have parallel boundaries"
            )
    tips_u, src_u, tips_l, src_l = [], [], [], []
    for tip, side, i in tagged:
        if side == UPPER:
            tips_u.append(tip)
            src_u.append(i)
        else:
            tips_l.append(tip)
            src_l.append(i)
    return DualScene(tips_u, src_u, tips_l, src_l, [])


def dual_line_meets_ray(pt, hp: HalfPlane) -> bool:
    """Does the dual line of primal point pt intersect hp's dual ray?"""
    c, d = pt
    tip_x = -as_fraction(hp.a)
    tip_y = as_fraction(hp.b)
    value = as_fraction(c) * tip_x + d
    return value <= tip_y if hp.side == UPPER else value >= tip_y


def pull_back(colors: list, log: list) -> list:
    """Re-express a coloring produced after the logged transforms.

    Geometric flips are color-neutral; each COLOR_SWAP inverts every
    entry.
    """
    swaps = sum(1 for entry in log if entry == COLOR_SWAP)
    if swaps % 2 == 0:
        return list(colors)
    return [RED if c == BLUE else BLUE for c in colors]
