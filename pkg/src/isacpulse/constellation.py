"""Unit-energy symbol constellations and i.i.d. random frame draws.

Symbols are centrosymmetric about the origin, mutually independent, and
drawn from a single normalized constellation; the only statistics the rest
of the library consumes are the second moment (fixed at 1) and the fourth
absolute moment mu4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Constellation", "make_qam", "make_psk", "from_name", "draw_frame"]

_MOMENT_TOL = 1e-12


@dataclass(frozen=True)
class Constellation:
    """A finite set of unit-average-energy complex symbols.

    points: symbol values, mean exactly zero and closed under negation.
    mu4: fourth absolute moment, mean of |point|**4.
    name: short identifier used by the CLI ("qam16", "psk8", ...).
    """

    points: np.ndarray
    mu4: float
    name: str = field(default="custom")

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=complex)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("points must be a nonempty 1-D array")
        if abs(np.mean(pts)) > _MOMENT_TOL:
            raise ValueError(f"constellation mean must be 0, got {np.mean(pts)}")
        energy = np.mean(np.abs(pts) ** 2)
        if abs(energy - 1.0) > _MOMENT_TOL:
            raise ValueError(f"average symbol energy must be 1, got {energy}")
        mu4 = np.mean(np.abs(pts) ** 4)
        if abs(mu4 - self.mu4) > _MOMENT_TOL:
            raise ValueError(f"mu4={self.mu4} inconsistent with point set ({mu4})")
        # negation closure, checked exactly up to float rounding of the points
        remaining = list(pts)
        for p in pts:
            if not any(abs(p + q) <= 1e-12 for q in remaining):
                raise ValueError(f"point set is not closed under negation (missing -({p}))")

    def __len__(self) -> int:
        return self.points.size


def make_qam(order: int) -> Constellation:
    """Square QAM grid scaled to unit average energy."""
    if order not in (4, 16, 64, 256):
        raise ValueError(f"unsupported QAM order {order}; expected one of 4, 16, 64, 256")
    m = int(round(np.sqrt(order)))
    levels = np.arange(-(m - 1), m, 2, dtype=float)
    re, im = np.meshgrid(levels, levels)
    raw = (re + 1j * im).ravel()
    pts = raw / np.sqrt(np.mean(np.abs(raw) ** 2))
    return Constellation(points=pts, mu4=float(np.mean(np.abs(pts) ** 4)), name=f"qam{order}")


def make_psk(order: int) -> Constellation:
    """Equally spaced unit-circle points; constant modulus, so mu4 = 1.

    The order must be even: odd PSK rings are not closed under negation and
    break the centrosymmetry the ACF statistics rely on.
    """
    if order < 2:
        raise ValueError(f"PSK order must be >= 2, got {order}")
    if order % 2 != 0:
        raise ValueError(f"PSK order must be even for a centrosymmetric set, got {order}")
    k = np.arange(order)
    pts = np.exp(2j * np.pi * k / order)
    # kill float residue so the mean-zero invariant holds exactly
    pts = pts - np.mean(pts)
    pts = pts / np.sqrt(np.mean(np.abs(pts) ** 2))
    return Constellation(points=pts, mu4=float(np.mean(np.abs(pts) ** 4)), name=f"psk{order}")


_ALIASES = {"bpsk": "psk2", "qpsk": "qam4"}


def from_name(name: str) -> Constellation:
    """Resolve a CLI constellation string like "qam16" or "psk8"."""
    key = _ALIASES.get(name.lower(), name.lower())
    if key.startswith("qam"):
        return make_qam(int(key[3:]))
    if key.startswith("psk"):
        return make_psk(int(key[3:]))
    raise ValueError(f"unknown constellation {name!r}; use qamN or pskN")


def draw_frame(c: Constellation, length: int, seed: int) -> np.ndarray:
    """Draw `length` i.i.d. uniform symbols; deterministic for a fixed seed."""
    if length < 1:
        raise ValueError(f"frame length must be >= 1, got {length}")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(c), size=length)
    return c.points[idx]
