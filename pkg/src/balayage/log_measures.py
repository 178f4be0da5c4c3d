"""Logarithmic interval functions, Lindelöf profiles and convergence-class integrals.

For a charge ``nu`` and an annulus ``r < |z| <= R``::

    ell_right = int Re+(1/z) dnu,   ell_left = int Re-(1/z) dnu

Atoms contribute finite sums; line charges contribute one-dimensional
integrals along the part of the line inside the annulus (closed form for
uniform densities, adaptive quadrature otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._numerics import integrate_1d
from .charge_model import Annulus, ChargeDistribution, ConstantTerm, LineCharge
from .errors import BadInterval, BadParams, DivergentTail, EmptyGrid, NotPositive

INF = math.inf


def _re_inv(z: complex) -> float:
    # written out so that mirrored points give exactly negated values
    return z.real / (z.real * z.real + z.imag * z.imag)


def _im_inv(z: complex) -> float:
    return -z.imag / (z.real * z.real + z.imag * z.imag)


_ATOM_WEIGHT = {
    "re": _re_inv,
    "re+": lambda z: max(_re_inv(z), 0.0),
    "re-": lambda z: max(-_re_inv(z), 0.0),
    "im": _im_inv,
}


def _line_weight(kind: str, x0: float):
    """Weight ``t -> w(x0 + it)`` for the requested part of ``1/z``."""
    if kind in ("re", "re+", "re-"):
        sign = {"re": 1.0, "re+": 1.0 if x0 > 0 else 0.0, "re-": -1.0 if x0 < 0 else 0.0}[kind]
        if sign == 0.0 or x0 == 0.0:
            return None
        return lambda t: sign * x0 / (x0 * x0 + t * t)
    return lambda t: -t / (x0 * x0 + t * t)


def _constant_integral(kind: str, x0: float, k: ConstantTerm, lo: float, hi: float) -> float:
    iv_lo, iv_hi = max(lo, k.lo), min(hi, k.hi)
    if not iv_lo < iv_hi:
        return 0.0
    if kind == "im":
        if math.isinf(iv_lo) or math.isinf(iv_hi):
            raise DivergentTail("Im(1/z) against a uniform density diverges on an unbounded window")
        if x0 == 0.0:
            return -k.gamma * (math.log(abs(iv_hi)) - math.log(abs(iv_lo)))
        return -0.5 * k.gamma * (math.log(x0 * x0 + iv_hi * iv_hi) - math.log(x0 * x0 + iv_lo * iv_lo))
    w = _line_weight(kind, x0)
    if w is None:
        return 0.0
    sign = 1.0 if kind != "re-" else -1.0
    ax = abs(x0)
    return sign * math.copysign(1.0, x0) * k.gamma * (math.atan(iv_hi / ax) - math.atan(iv_lo / ax))


def line_integral(ln: LineCharge, kind: str, intervals, tol: float = 1e-12) -> float:
    """Integral of a part of ``1/z`` against a line charge over ``t``-intervals."""
    w = _line_weight(kind, ln.x0)
    parts = []
    for lo, hi in intervals:
        for k in ln.constants:
            parts.append(_constant_integral(kind, ln.x0, k, lo, hi))
        if w is None:
            continue
        for p in ln.poisson:
            a, b = max(lo, p.lo), min(hi, p.hi)
            if a < b:
                parts.append(integrate_1d(lambda t, p=p: w(t) * float(p.density(t)), a, b, [p.c, 0.0], tol))
        for s in ln.sampled:
            a, b = max(lo, s.lo), min(hi, s.hi)
            if a < b:
                parts.append(
                    integrate_1d(lambda t, s=s: w(t) * float(s.density_at(t)), a, b, list(s.ys), tol)
                )
    return math.fsum(parts)


def _annulus_integral(nu: ChargeDistribution, kind: str, r: float, R: float) -> float:
    if not (0 < r < R):
        raise BadInterval(f"need 0 < r < R, got r={r}, R={R}")
    weight = _ATOM_WEIGHT[kind]
    vals = [a.mass * weight(a.z) for a in nu.atoms if r < abs(a.z) <= R]
    ann = Annulus(r, R)
    for ln in nu.lines:
        ivs = ann.line_intervals(ln.x0)
        if ivs:
            vals.append(line_integral(ln, kind, ivs))
    out = math.fsum(vals)
    if not math.isfinite(out):
        raise DivergentTail(f"{kind} integral over ({r}, {R}] is not finite")
    return out


def ell_right(nu: ChargeDistribution, r: float, R: float) -> float:
    """``int_{r<|z|<=R} Re+(1/z) dnu``."""
    return _annulus_integral(nu, "re+", r, R)


def ell_left(nu: ChargeDistribution, r: float, R: float) -> float:
    """``int_{r<|z|<=R} Re-(1/z) dnu``."""
    return _annulus_integral(nu, "re-", r, R)


def ell_sub(mu: ChargeDistribution, r: float, R: float) -> float:
    """Two-sided logarithmic submeasure ``max(ell_left, ell_right)`` of a positive charge."""
    if not mu.is_positive() and not mu.is_empty():
        raise NotPositive("ell_sub is defined for positive distributions only")
    return max(ell_left(mu, r, R), ell_right(mu, r, R))


@dataclass(frozen=True)
class IntervalLogMeasure:
    r: float
    R: float
    right: float
    left: float
    sub: float | None


def interval_log_measure(nu: ChargeDistribution, r: float, R: float) -> IntervalLogMeasure:
    right, left = ell_right(nu, r, R), ell_left(nu, r, R)
    sub = max(right, left) if (nu.is_positive() or nu.is_empty()) else None
    return IntervalLogMeasure(r, R, right, left, sub)


# ---------------------------------------------------------------------------
# Lindelöf profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Stabilization:
    """Heuristic reading of a profile's behaviour over the last decades of its grid."""

    last_decade_variation: float
    previous_decade_variation: float
    scale: float
    tol: float
    contracting: bool
    stabilized: bool
    note: str = "finite-grid estimate: the asymptotic supremum is not decided"


def stabilization(
    r: Sequence[float], values: Sequence[float], tol: float = 0.05, contraction: float = 0.5
) -> Stabilization:
    """A profile counts as settled when its last decade varies by at most ``tol`` of its scale,
    or by at most ``contraction`` times the variation of the decade before (a decaying tail).
    """
    r = np.asarray(r, dtype=float)
    v = np.asarray(values, dtype=float)
    top = r[-1]
    last = v[r >= top / 10]
    prev = v[(r >= top / 100) & (r <= top / 10)]
    last_var = float(last.max() - last.min()) if last.size else 0.0
    prev_var = float(prev.max() - prev.min()) if prev.size else 0.0
    scale = max(1.0, float(np.max(np.abs(v))) if v.size else 0.0)
    contracting = prev_var > 0 and last_var <= contraction * prev_var
    ok = bool(np.all(np.isfinite(v))) and (last_var <= tol * scale or contracting)
    return Stabilization(last_var, prev_var, scale, tol, contracting, ok)


@dataclass(frozen=True)
class LindelofProfile:
    kind: str
    r: tuple
    values: tuple
    sup_abs: float
    stability: Stabilization


def _check_grid(r_grid: Sequence[float], lower: float = 1.0) -> list[float]:
    r = [float(x) for x in r_grid]
    if not r:
        raise EmptyGrid("empty r grid")
    if r[0] < lower or any(b <= a for a, b in zip(r, r[1:])):
        raise BadParams(f"r grid must be increasing and >= {lower}")
    return r


def cumulative_profile(nu: ChargeDistribution, kind: str, r_grid: Sequence[float], r0: float = 1.0) -> list[float]:
    """Values ``r -> int_{r0<|z|<=r} w dnu`` for ``w`` one of re, re+, re-, im."""
    r = _check_grid(r_grid, r0)
    weight = _ATOM_WEIGHT[kind]
    atom_terms = [(abs(a.z), a.mass * weight(a.z)) for a in nu.atoms if abs(a.z) > r0]
    edges = [r0, *r]
    shell = [0.0]
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            shell.append(0.0)
            continue
        ann = Annulus(lo, hi)
        shell.append(math.fsum(line_integral(ln, kind, ann.line_intervals(ln.x0)) for ln in nu.lines))
    line_cum = np.cumsum(shell)[1:]
    return [math.fsum([v for d, v in atom_terms if d <= x]) + float(lc) for x, lc in zip(r, line_cum)]


def lindelof_profile(nu: ChargeDistribution, kind: str, r_grid: Sequence[float], tol: float = 0.05) -> LindelofProfile:
    """Partial integrals of ``Re(1/z)`` (kind ``R``), ``Im(1/z)`` (``iR``) or ``|int 1/z|`` (``full``)."""
    if kind == "R":
        vals = cumulative_profile(nu, "re", r_grid)
    elif kind == "iR":
        vals = cumulative_profile(nu, "im", r_grid)
    elif kind == "full":
        re = cumulative_profile(nu, "re", r_grid)
        im = cumulative_profile(nu, "im", r_grid)
        vals = [math.hypot(a, b) for a, b in zip(re, im)]
    else:
        raise BadParams(f"unknown Lindelöf kind {kind!r}")
    r = [float(x) for x in r_grid]
    sup_abs = max(abs(v) for v in vals)
    return LindelofProfile(kind, tuple(r), tuple(vals), sup_abs, stabilization(r, vals, tol))


# ---------------------------------------------------------------------------
# convergence class
# ---------------------------------------------------------------------------


def _class_weight(s: float, p: int, r_max: float) -> float:
    """``int_{max(1,s)}^{r_max} t^(-p-1) dt`` (zero when ``s >= r_max``)."""
    lo = max(1.0, s)
    if lo >= r_max:
        return 0.0
    if p == 0:
        return math.log(r_max / lo)
    return (lo ** (-p) - r_max ** (-p)) / p


def _class_integral(nu: ChargeDistribution, p: int, r_max: float) -> float:
    vals = [abs(a.mass) * _class_weight(abs(a.z), p, r_max) for a in nu.atoms]
    for ln in nu.lines:
        x0 = ln.x0
        if abs(x0) >= r_max:
            continue
        h = math.sqrt(r_max**2 - x0**2)
        f = lambda t: abs(float(ln.density(t))) * _class_weight(math.hypot(x0, t), p, r_max)  # noqa: E731
        # one panel per decade of |zeta| keeps the slowly decaying integrand resolved
        radii = [10.0**k for k in range(int(math.log10(r_max)) + 1)]
        cuts = [math.sqrt(s * s - x0 * x0) for s in radii if s > abs(x0)]
        pts = [*ln.breakpoints(), 0.0, *cuts, *(-c for c in cuts)]
        vals.append(integrate_1d(f, -h, h, pts, tol=1e-12))
    return math.fsum(vals)


@dataclass(frozen=True)
class ClassIntegral:
    value: float
    converged: bool
    last_decade: float
    previous_decade: float


def convergence_class_integral(nu: ChargeDistribution, p: int, r_max: float, rel_tol: float = 1e-9) -> ClassIntegral:
    """``int_1^{r_max} |nu|(t closed-disk) / t^(p+1) dt``, exact for atoms.

    ``converged`` is set when the last decade contributes less than ``rel_tol``
    of the total, or at most half of what the decade before contributed.
    """
    if not (r_max > 1) or p < 0 or int(p) != p:
        raise BadParams("need r_max > 1 and a nonnegative integer p")
    p = int(p)
    full = _class_integral(nu, p, r_max)
    head = _class_integral(nu, p, r_max / 10) if r_max > 10 else 0.0
    head2 = _class_integral(nu, p, r_max / 100) if r_max > 100 else 0.0
    last, prev = full - head, head - head2
    converged = full == 0.0 or abs(last) < rel_tol * abs(full) or (prev > 0 and last <= 0.5 * prev)
    return ClassIntegral(full, converged, last, prev)
