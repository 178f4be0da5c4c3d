"""Potentials of charge distributions and the growth functionals built on them.

Two kernel policies are available:

``log``
    ``ln|z - zeta|`` for every charge. Uniform line densities make it diverge.
``genus1``
    The canonical genus-1 kernel. It is ``ln|z - zeta|`` for
    ``|zeta| <= rho0`` and ``ln|1 - z/zeta| + Re(z/zeta)`` outside.

Both differ only by an affine function on bounded windows for finite atomic
charges. Unwindowed line terms have closed forms. A Poisson bump of
half-width ``a`` centred at height ``c`` on ``Re = x0`` has log potential
``ln|(|x - x0| + a) + i(y - c)|``, because the harmonic measure reproduces
``ln|z - .|`` from the far side. Windowed terms and tabulated densities are
integrated numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._numerics import DEFAULT_TOL, integrate_1d
from .charge_model import ChargeDistribution, GrowthProfile, LineCharge, PoissonTerm, make_growth_profile
from .errors import BadParams, DivergentTail

KERNELS = ("log", "genus1")


def _outer_split(x0: float, rho0: float) -> float:
    """Half-length of the chord of ``|zeta| <= rho0`` on the line ``Re zeta = x0`` (0 if none)."""
    return math.sqrt(rho0 * rho0 - x0 * x0) if abs(x0) < rho0 else 0.0


class PotentialField:
    """Potential ``z -> int K(z, zeta) dnu(zeta)`` for a fixed kernel policy.

    ``eval`` returns ``-inf`` exactly at atoms of positive mass (``+inf`` for negative).
    """

    def __init__(self, charge: ChargeDistribution, kernel: str = "genus1", rho0: float = 1.0, tol: float | None = None):
        if kernel not in KERNELS:
            raise BadParams(f"kernel must be one of {KERNELS}")
        if not rho0 > 0:
            raise BadParams("rho0 must be positive")
        self.charge = charge
        self.kernel = kernel
        self.rho0 = float(rho0)
        self.tol = DEFAULT_TOL if tol is None else float(tol)
        self._poisson = []  # (x0, a, c, m, A, B)
        self._constants = []  # (x0, gamma, inner log integral, inner Re(1/zeta) integral)
        self._generic = []  # (x0, density, lo, hi, breakpoints)
        for ln in charge.lines:
            self._prepare_line(ln)

    # -- setup ---------------------------------------------------------------

    def _prepare_line(self, ln: LineCharge) -> None:
        x0 = ln.x0
        for p in ln.poisson:
            if p.windowed:
                self._generic.append((x0, p.density, p.lo, p.hi, [p.c]))
            else:
                A, B = self._poisson_outer(x0, p) if self.kernel == "genus1" else (0.0, 0j)
                self._poisson.append((x0, p.a, p.c, p.m, A, B))
        gamma = ln.gamma
        if gamma != 0.0:
            if self.kernel == "log":
                raise DivergentTail("log kernel against a uniform line density diverges; use genus1")
            h = _outer_split(x0, self.rho0)
            if h == 0.0:
                lin, bin_ = 0.0, 0.0
            elif x0 == 0.0:
                lin, bin_ = 2.0 * (h * math.log(h) - h), 0.0
            else:
                ax = abs(x0)
                lin = 2.0 * (h * math.log(self.rho0) - h + ax * math.atan(h / ax))
                bin_ = 2.0 * math.atan(h / x0)
            self._constants.append((x0, gamma, lin, bin_))
        for k in ln.constants:
            if k.windowed:
                if self.kernel == "log" and (math.isinf(k.lo) or math.isinf(k.hi)):
                    raise DivergentTail("log kernel against an unbounded uniform density diverges")
                self._generic.append((x0, k.density, k.lo, k.hi, []))
        for s in ln.sampled:
            self._generic.append((x0, s.density_at, s.lo, s.hi, list(s.ys)))

    def _poisson_outer(self, x0: float, p: PoissonTerm) -> tuple[float, complex]:
        """``(int ln|zeta| dP, int dP/zeta)`` over the part of the line outside ``|zeta| <= rho0``."""
        h = _outer_split(x0, self.rho0)
        if h == 0.0:
            side = math.copysign(1.0, x0)
            A = 0.5 * math.log((abs(x0) + p.a) ** 2 + p.c**2)
            B = 1.0 / complex(x0 + side * p.a, p.c)
            return A, B
        pts = [p.c]
        tol = self.tol

        def outer(f):
            return integrate_1d(f, -math.inf, -h, pts, tol) + integrate_1d(f, h, math.inf, pts, tol)

        dens = lambda t: float(p.density(t)) / p.m  # unit mass  # noqa: E731
        A = outer(lambda t: 0.5 * math.log(x0 * x0 + t * t) * dens(t))
        Bre = outer(lambda t: x0 / (x0 * x0 + t * t) * dens(t))
        Bim = outer(lambda t: -t / (x0 * x0 + t * t) * dens(t))
        return A, complex(Bre, Bim)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, z) -> np.ndarray:
        """Vectorised evaluation at an array of complex points."""
        z = np.asarray(z, dtype=complex)
        x, y = z.real, z.imag
        out = np.zeros(z.shape, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            for a in self.charge.atoms:
                zeta = a.z
                d = np.abs(z - zeta)
                if self.kernel == "genus1" and abs(zeta) > self.rho0:
                    val = np.log(d) - math.log(abs(zeta)) + (z / zeta).real
                else:
                    val = np.log(d)
                out = out + a.mass * val
            for x0, a, c, m, A, B in self._poisson:
                val = 0.5 * np.log((np.abs(x - x0) + a) ** 2 + (y - c) ** 2)
                if self.kernel == "genus1":
                    val = val - A + (x * B.real - y * B.imag)
                out = out + m * val
            for x0, gamma, lin, bin_ in self._constants:
                sgn = 0.0 if x0 == 0.0 else math.copysign(1.0, x0)
                val = math.pi * (np.abs(x - x0) - abs(x0)) + math.pi * sgn * x + lin - x * bin_
                out = out + gamma * val
        if self._generic:
            flat = out.reshape(-1)
            zf = z.reshape(-1)
            for i in range(flat.size):
                flat[i] += self._generic_value(complex(zf[i]))
        return out

    def eval(self, z: complex) -> float:
        return float(self.evaluate(np.array([complex(z)]))[0])

    __call__ = eval

    def _kernel(self, z: complex, zeta: complex) -> float:
        d = abs(z - zeta)
        if d == 0.0:
            return -math.inf
        if self.kernel == "genus1" and abs(zeta) > self.rho0:
            return math.log(d) - math.log(abs(zeta)) + (z / zeta).real
        return math.log(d)

    def _generic_value(self, z: complex) -> float:
        total = []
        for x0, dens, lo, hi, pts in self._generic:
            h = _outer_split(x0, self.rho0)
            bps = [*pts, z.imag, -h, h]
            f = lambda t, x0=x0, dens=dens: self._kernel(z, complex(x0, t)) * float(dens(t))  # noqa: E731
            total.append(integrate_1d(f, lo, hi, bps, max(self.tol, 1e-11)))
        return math.fsum(total)


# ---------------------------------------------------------------------------
# functionals
# ---------------------------------------------------------------------------


def circle_points(z: complex, rho: float, n: int) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(n) / n
    return complex(z) + rho * np.exp(1j * theta)


def circle_average(field: PotentialField, z: complex, rho: float, n: int = 256) -> float:
    """Periodic trapezoid mean of the field on ``|w - z| = rho``."""
    return float(np.mean(field.evaluate(circle_points(z, rho, n))))


def harmonicity_residual(field: PotentialField, z: complex, rho: float, n: int = 256) -> float:
    """``|circle mean - centre value|``; near zero where the field is harmonic on the disk."""
    return abs(circle_average(field, z, rho, n) - field.eval(z))


@dataclass(frozen=True)
class RadialMax:
    value: float
    n_samples: int
    refined_value: float
    stable: bool
    note: str = "sampled maximum: a lower bound of the true supremum"


def radial_max(field: PotentialField, r: float, n_samples: int = 256, tol: float = 1e-3) -> RadialMax:
    """Maximum of the field over ``n_samples`` equispaced points of ``|z| = r``."""
    if not r > 0 or n_samples < 8:
        raise BadParams("need r > 0 and n_samples >= 8")
    coarse = float(np.max(field.evaluate(circle_points(0j, r, n_samples))))
    fine = float(np.max(field.evaluate(circle_points(0j, r, 2 * n_samples))))
    return RadialMax(coarse, n_samples, fine, abs(fine - coarse) <= tol * max(1.0, abs(fine)))


@dataclass(frozen=True)
class OrderTypeProfile:
    order: GrowthProfile
    type: GrowthProfile
    radial_max: tuple


def order_type_profile(field: PotentialField, r_grid: Sequence[float], n_samples: int = 256) -> OrderTypeProfile:
    """Tabulate ``ln+ M(r) / ln r`` and ``M(r)+ / r`` with ``M`` the sampled radial maximum."""
    r = [float(v) for v in r_grid]
    if any(v <= 1 for v in r):
        raise BadParams("order profile needs r > 1")
    M = [radial_max(field, v, n_samples).refined_value for v in r]
    order = make_growth_profile(r, [math.log(max(1.0, m)) / math.log(v) if math.isfinite(m) else math.inf for m, v in zip(M, r)])
    typ = make_growth_profile(r, [max(m, 0.0) / v for m, v in zip(M, r)])
    return OrderTypeProfile(order, typ, tuple(M))


def j_iR(field: PotentialField, r: float, R: float = math.inf, tol: float = 1e-11) -> float:
    """``(1/2pi) int_r^R (u(-iy) + u(iy)) / y^2 dy`` along the imaginary axis."""
    if not (0 < r < R):
        raise BadParams(f"need 0 < r < R, got {r}, {R}")
    pts = [abs(a.z.imag) for a in field.charge.atoms if a.z.real == 0.0]
    for ln in field.charge.lines:
        pts += [abs(p.c) for p in ln.poisson] + [abs(b) for b in ln.breakpoints()]
    pts.append(field.rho0)

    def f(y):
        v = field.evaluate(np.array([-1j * y, 1j * y]))
        return float(v[0] + v[1]) / (y * y)

    val = integrate_1d(f, r, R, pts, tol)
    if not math.isfinite(val):
        raise DivergentTail("J integral diverges")
    return val / (2.0 * math.pi)


@dataclass(frozen=True)
class AffineFit:
    """``values ~ c0 + cx x + cy y`` by least squares, with the max residual."""

    c0: float
    cx: float
    cy: float
    max_residual: float


def affine_fit(z: Sequence[complex], values: Sequence[float]) -> AffineFit:
    z = np.asarray(z, dtype=complex).reshape(-1)
    v = np.asarray(values, dtype=float).reshape(-1)
    A = np.column_stack([np.ones_like(z.real), z.real, z.imag])
    coef, *_ = np.linalg.lstsq(A, v, rcond=None)
    res = float(np.max(np.abs(A @ coef - v))) if v.size else 0.0
    return AffineFit(float(coef[0]), float(coef[1]), float(coef[2]), res)
