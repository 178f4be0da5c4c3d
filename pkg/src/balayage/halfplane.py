"""Balayage out of a half-plane onto its closed complement, genus 0, 1 and 01.

Sweeping the right half-plane replaces each charge in ``Re z > 0`` by a charge
on the imaginary axis. An atom of mass ``m`` at ``z = x + iy`` becomes the
Poisson bump ``PoissonTerm(c=y, a=x, m)``. In genus 1 it also leaves the
uniform density ``-(m/pi) Re(1/z)`` there. Charges already in the closed left
half-plane, atoms on the axis included, are left alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._numerics import integrate_1d
from .charge_model import (
    Atom,
    ChargeDistribution,
    ConstantTerm,
    LineCharge,
    PoissonTerm,
    mirror,
)
from .errors import BadInterval, OriginAtom, OriginPole, UnsweepableLine

GENERA = ("0", "1", "01")


@dataclass(frozen=True)
class SweepMode:
    genus: str = "01"
    r0: float = 1.0
    side: str = "right"

    def __post_init__(self):
        object.__setattr__(self, "genus", _genus(self.genus))
        if self.side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {self.side!r}")
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")


def _genus(genus) -> str:
    g = str(genus)
    if g not in GENERA:
        raise ValueError(f"genus must be one of {GENERA}, got {genus!r}")
    return g


def harmonic_measure(z: complex, y1: float, y2: float) -> float:
    """Harmonic measure of ``i(y1, y2]`` for the right half-plane seen from ``z``.

    On the imaginary axis itself the measure is the indicator of ``Im z`` in ``(y1, y2]``.
    """
    z = complex(z)
    if not y1 < y2:
        raise BadInterval(f"need y1 < y2, got ({y1}, {y2}]")
    if z.real < 0:
        raise ValueError("harmonic_measure needs Re z >= 0")
    if z.real == 0:
        return 1.0 if y1 < z.imag <= y2 else 0.0
    x, y = z.real, z.imag
    return (math.atan((y2 - y) / x) - math.atan((y1 - y) / x)) / math.pi


def _re_inv(z: complex) -> float:
    return z.real / (z.real * z.real + z.imag * z.imag)


def genus1_charge(z: complex, y1: float, y2: float) -> float:
    """Genus-1 harmonic charge: harmonic measure minus ``((y2-y1)/pi) Re(1/z)``."""
    z = complex(z)
    if z == 0:
        raise OriginPole("genus-1 charge is undefined at the origin")
    if not (math.isfinite(y1) and math.isfinite(y2)):
        raise BadInterval("genus-1 charge needs a bounded interval")
    return harmonic_measure(z, y1, y2) - (y2 - y1) / math.pi * _re_inv(z)


def _uses_genus1(genus: str, z: complex, r0: float) -> bool:
    return genus == "1" or (genus == "01" and abs(z) >= r0)


def _outer_re_inv_mass(x0: float, p: PoissonTerm, r0: float) -> float:
    """``int Re(1/zeta) dP`` for unit mass over the part of ``Re zeta = x0`` with ``|zeta| >= r0``."""
    if x0 >= r0:
        s = x0 + p.a
        return s / (s * s + p.c * p.c)
    h = math.sqrt(r0 * r0 - x0 * x0)
    f = lambda t: x0 / (x0 * x0 + t * t) * float(p.density(t)) / p.m  # noqa: E731
    return integrate_1d(f, -math.inf, -h, [p.c]) + integrate_1d(f, h, math.inf, [p.c])


def _sweep_line(ln: LineCharge, genus: str, r0: float) -> tuple[list, list, list]:
    """Sweep one line charge lying in the open right half-plane."""
    x0 = ln.x0
    poisson, constants, atoms = [], [], []
    for p in ln.poisson:
        if p.windowed:
            raise UnsweepableLine(f"windowed Poisson term on line x0={x0} has no closed-form sweep")
        # Poisson kernels form a semigroup in the half-width
        poisson.append(PoissonTerm(p.c, x0 + p.a, p.m))
        if genus == "1":
            constants.append(ConstantTerm(-p.m / math.pi * _outer_re_inv_mass(x0, p, 0.0)))
        elif genus == "01":
            constants.append(ConstantTerm(-p.m / math.pi * _outer_re_inv_mass(x0, p, r0)))
    for k in ln.constants:
        if k.windowed:
            raise UnsweepableLine(f"windowed uniform density on line x0={x0} has no closed-form sweep")
        if genus == "0":
            constants.append(ConstantTerm(k.gamma))
        elif genus == "01" and x0 < r0:
            h = math.sqrt(r0 * r0 - x0 * x0)
            constants.append(ConstantTerm(k.gamma * 2.0 / math.pi * math.atan(h / x0)))
        # genus 1 of a uniform density cancels exactly
    for s in ln.sampled:
        # trapezoid weights turn the tabulated density into atoms on the line
        ys, ds = s.ys, s.density
        for i, (y, d) in enumerate(zip(ys, ds)):
            left = ys[i] - ys[i - 1] if i > 0 else 0.0
            right = ys[i + 1] - ys[i] if i + 1 < len(ys) else 0.0
            w = 0.5 * (left + right) * d
            if w != 0.0:
                atoms.append(Atom(complex(x0, y), w))
    return poisson, constants, atoms


def sweep_right(nu: ChargeDistribution, genus="01", r0: float = 1.0) -> ChargeDistribution:
    """Sweep ``nu`` out of the open right half-plane onto the closed left half-plane.

    ``genus`` is ``"0"``, ``"1"`` or ``"01"``. For ``"01"`` charges in the open
    disk ``|z| < r0`` are swept with genus 0 and the rest with genus 1.
    """
    genus = _genus(genus)
    if genus == "1" and any(a.z == 0 for a in nu.atoms):
        raise OriginAtom("genus-1 sweep needs no atom at the origin")
    kept_atoms, kept_lines = [], []
    poisson, constants = [], []
    pending = list(nu.atoms)
    for ln in nu.lines:
        if ln.x0 <= 0:
            kept_lines.append(ln)
            continue
        p, k, extra = _sweep_line(ln, genus, r0)
        poisson += p
        constants += k
        pending += extra
    for a in pending:
        if a.z.real <= 0:
            kept_atoms.append(a)
            continue
        poisson.append(PoissonTerm(a.z.imag, a.z.real, a.mass))
        if _uses_genus1(genus, a.z, r0):
            constants.append(ConstantTerm(-a.mass / math.pi * _re_inv(a.z)))
    new_line = LineCharge(0.0, tuple(poisson), tuple(constants))
    return ChargeDistribution(tuple(kept_atoms), tuple(kept_lines) + (new_line,))


def sweep_left(nu: ChargeDistribution, genus="01", r0: float = 1.0) -> ChargeDistribution:
    """Sweep out of the open left half-plane: the mirror image of :func:`sweep_right`."""
    return mirror(sweep_right(mirror(nu), genus, r0))


def sweep_genus0(nu: ChargeDistribution) -> ChargeDistribution:
    return sweep_right(nu, "0")


def sweep_genus1(nu: ChargeDistribution) -> ChargeDistribution:
    return sweep_right(nu, "1")


def sweep_genus01(nu: ChargeDistribution, r0: float = 1.0) -> ChargeDistribution:
    if not r0 > 0:
        raise ValueError("r0 must be positive")
    return sweep_right(nu, "01", r0)


def sweep_halfplane(nu: ChargeDistribution, mode: SweepMode) -> ChargeDistribution:
    fn = sweep_right if mode.side == "right" else sweep_left
    return fn(nu, mode.genus, mode.r0)
