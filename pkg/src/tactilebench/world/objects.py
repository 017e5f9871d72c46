"""Graspable objects and peg/hole channel geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CYLINDER_DIAMETERS = (0.057, 0.065, 0.080)

PEG_PROFILES = ("vertical", "slanted", "curved")

# Slant chosen so one lateral increment compensates exactly two lift
# increments (tan = 0.5); the 5 mm primitives then admit a contact-free
# staircase while a pure-lift sequence binds within two steps.
DEFAULT_SLANT = math.atan(0.5)
DEFAULT_ARC_RADIUS = 0.12
DEFAULT_HOLE_DEPTH = 0.04
DEFAULT_CLEARANCE = 0.0035


@dataclass(frozen=True)
class ObjectSpec:
    """One object in the scene.

    dimensions:
        cylinder -> (diameter, height)
        cuboid   -> (size_x, size_y, size_z)
        peg      -> (diameter, length)
    """

    kind: str
    dimensions: tuple
    peg_profile: str | None = None
    hole_pose: tuple = (0.0, 0.0, 0.0)  # x, y, yaw of the hole mouth
    placement_yaw: float = 0.0

    def __post_init__(self):
        if self.kind not in ("cylinder", "cuboid", "peg"):
            raise ValueError(f"unknown object kind {self.kind!r}")
        object.__setattr__(self, "dimensions", tuple(float(d) for d in self.dimensions))
        if self.kind == "cylinder":
            d = self.dimensions[0]
            if not any(abs(d - ref) < 1e-9 for ref in CYLINDER_DIAMETERS):
                raise ValueError(
                    f"cylinder diameter must be one of {CYLINDER_DIAMETERS}, got {d}"
                )
        if self.kind == "peg":
            if self.peg_profile not in PEG_PROFILES:
                raise ValueError(
                    f"peg profile must be one of {PEG_PROFILES}, got {self.peg_profile}"
                )
        elif self.peg_profile is not None:
            raise ValueError("peg_profile is only defined for kind='peg'")

    @property
    def half_width_x(self) -> float:
        """Half extent along x, the grasp approach axis."""
        if self.kind == "cylinder":
            return self.dimensions[0] / 2.0
        if self.kind == "cuboid":
            return self.dimensions[0] / 2.0
        return self.dimensions[0] / 2.0

    def to_dict(self):
        return {
            "kind": self.kind,
            "dimensions": list(self.dimensions),
            "peg_profile": self.peg_profile,
            "hole_pose": list(self.hole_pose),
            "placement_yaw": self.placement_yaw,
        }


@dataclass(frozen=True)
class HoleChannel:
    """Centerline of a peg hole, parametrized by height above the bottom.

    ``lateral(h)`` is the centerline offset along the channel's local +x
    at height ``h`` in ``[0, depth]``; above the mouth the centerline
    continues along the mouth tangent so a seated peg's gripped section
    has a well-defined rest shape.
    """

    profile: str
    depth: float = DEFAULT_HOLE_DEPTH
    clearance: float = DEFAULT_CLEARANCE
    slant: float = DEFAULT_SLANT
    arc_radius: float = DEFAULT_ARC_RADIUS

    def lateral(self, h: float) -> float:
        if self.profile == "vertical":
            return 0.0
        if self.profile == "slanted":
            return h * math.tan(self.slant)
        if h <= self.depth:
            hh = max(0.0, h)
            return self.arc_radius - math.sqrt(self.arc_radius**2 - hh * hh)
        top = self.lateral(self.depth)
        return top + (h - self.depth) * math.tan(self.tangent(self.depth))

    def tangent(self, h: float) -> float:
        """Channel tangent angle from vertical at height ``h``."""
        if self.profile == "vertical":
            return 0.0
        if self.profile == "slanted":
            return self.slant
        return math.asin(min(1.0, min(h, self.depth) / self.arc_radius))

    def seated_points(self, span: float, spacing: float = 0.005) -> np.ndarray:
        """(h, lateral) samples of a peg at rest, from the bottom up ``span``."""
        n = max(2, int(round(span / spacing)) + 1)
        hs = np.linspace(0.0, span, n)
        return np.array([[h, self.lateral(h)] for h in hs])


def make_channel(spec: ObjectSpec, depth=DEFAULT_HOLE_DEPTH,
                 clearance=DEFAULT_CLEARANCE, slant=DEFAULT_SLANT,
                 arc_radius=DEFAULT_ARC_RADIUS) -> HoleChannel:
    if spec.kind != "peg":
        raise ValueError("channels exist only for pegs")
    return HoleChannel(profile=spec.peg_profile, depth=depth,
                       clearance=clearance, slant=slant, arc_radius=arc_radius)
