"""Sweeping a charge distribution onto the closed vertical strip ``|Re z| <= b``.

The construction runs in five steps: shift by ``-b``, sweep the right
half-plane, shift by ``2b``, sweep the left half-plane, shift by ``-b``.
:func:`strip_pipeline_trace` runs the steps literally.
:func:`sweep_strip` computes the same measure directly. Charges already in
the strip pass through untouched, so they are not moved by rounding. The two
outer sides are swept in their own frames, the left one by mirroring, so
mirror symmetry holds bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charge_model import ChargeDistribution, mirror, shift
from .errors import AtomAtCorner
from .halfplane import _genus, sweep_left, sweep_right


@dataclass(frozen=True)
class StripSweepConfig:
    b: float
    mode: str = "01"
    r0: float = 1.0

    def __post_init__(self):
        if not self.b >= 0:
            raise ValueError("strip half-width b must be >= 0")
        object.__setattr__(self, "mode", _genus(self.mode))
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")


def _check_corners(nu: ChargeDistribution, cfg: StripSweepConfig) -> None:
    if cfg.mode == "1":
        corners = {complex(cfg.b, 0.0), complex(-cfg.b, 0.0)}
        if any(a.z in corners for a in nu.atoms):
            raise AtomAtCorner(f"atom at +-{cfg.b}: use genus 01 for this distribution")


def _split(nu: ChargeDistribution, b: float):
    inside = ChargeDistribution(
        tuple(a for a in nu.atoms if abs(a.z.real) <= b), tuple(ln for ln in nu.lines if abs(ln.x0) <= b)
    )
    right = ChargeDistribution(tuple(a for a in nu.atoms if a.z.real > b), tuple(ln for ln in nu.lines if ln.x0 > b))
    left = ChargeDistribution(tuple(a for a in nu.atoms if a.z.real < -b), tuple(ln for ln in nu.lines if ln.x0 < -b))
    return inside, right, left


def _sweep_right_side(part: ChargeDistribution, cfg: StripSweepConfig) -> ChargeDistribution:
    if part.is_empty():
        return part
    return shift(sweep_right(shift(part, -cfg.b), cfg.mode, cfg.r0), cfg.b)


def sweep_strip(nu: ChargeDistribution, cfg: StripSweepConfig) -> ChargeDistribution:
    """Balayage of ``nu`` onto the closed strip of half-width ``cfg.b``."""
    _check_corners(nu, cfg)
    inside, right, left = _split(nu, cfg.b)
    return inside + _sweep_right_side(right, cfg) + mirror(_sweep_right_side(mirror(left), cfg))


def strip_pipeline_trace(nu: ChargeDistribution, cfg: StripSweepConfig) -> list[ChargeDistribution]:
    """The five intermediate distributions of the shift/sweep/shift/sweep/shift pipeline."""
    _check_corners(nu, cfg)
    b = cfg.b
    s1 = shift(nu, -b)
    s2 = sweep_right(s1, cfg.mode, cfg.r0)
    s3 = shift(s2, 2 * b)
    s4 = sweep_left(s3, cfg.mode, cfg.r0)
    s5 = shift(s4, -b)
    return [s1, s2, s3, s4, s5]


def in_closed_strip(nu: ChargeDistribution, b: float) -> bool:
    return all(abs(x) <= b for x in nu.abscissae())
