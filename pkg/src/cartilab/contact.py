"""Contact-patch geometry for a sphere pressed into the sheet.

A rigid sphere of radius r pushed in by a depth delta touches the sheet
over a circular patch.  For fluid to reach the contact there must be at
least one insert inside the patch, which bounds the hole pitch by the
patch chord: l <= 2 sqrt(delta (2 r - delta)).

All lengths here share one dimension, so arguments are plain floats in
any consistent length unit (millimetres throughout the toolkit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def chord_half_angle(radius: float, depth: float) -> float:
    """Half-angle subtended at the sphere centre by the contact patch.

    theta = arccos((r - delta) / r), in radians.  Requires 0 < delta <= r.
    """
    _check_sphere(radius, depth)
    return math.acos((radius - depth) / radius)


def max_pitch(radius: float, depth: float) -> float:
    """Largest hole pitch that still puts a hole inside the contact patch.

    The patch chord: 2 sqrt(delta (2 r - delta)).  Equal to
    2 r sin(chord_half_angle) but cheaper and better conditioned.
    """
    _check_sphere(radius, depth)
    return 2.0 * math.sqrt(depth * (2.0 * radius - depth))


def min_deflection_for_pitch(pitch: float, radius: float) -> float:
    """Smallest pressing depth at which a patch spans a given pitch.

    Inverse of max_pitch in delta: delta_min = r - sqrt(r^2 - l^2/4).
    The chord tops out at the diameter, so pitch must satisfy l <= 2 r.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if pitch <= 0:
        raise ValueError("pitch must be positive")
    if pitch > 2.0 * radius:
        raise ValueError("pitch exceeds the sphere diameter; no depth reaches it")
    return radius - math.sqrt(radius * radius - 0.25 * pitch * pitch)


@dataclass(frozen=True)
class PitchCheck:
    """Outcome of a pitch-condition check; truthy when the pitch is fine."""

    ok: bool
    pitch: float
    max_pitch: float

    @property
    def margin(self) -> float:
        return self.max_pitch - self.pitch

    def __bool__(self) -> bool:
        return self.ok


def check_pitch_condition(pitch: float, radius: float, depth: float) -> PitchCheck:
    """Does a patch at (radius, depth) always contain a hole at this pitch?"""
    if pitch <= 0:
        raise ValueError("pitch must be positive")
    limit = max_pitch(radius, depth)
    return PitchCheck(ok=pitch <= limit, pitch=pitch, max_pitch=limit)


def _check_sphere(radius: float, depth: float) -> None:
    if radius <= 0:
        raise ValueError("radius must be positive")
    if depth <= 0:
        raise ValueError("depth must be positive")
    if depth > radius:
        raise ValueError("depth beyond the radius leaves the chord model")
