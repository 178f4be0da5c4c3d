"""Executable checks that a strip sweep behaves as the existence theorems promise.

Each check returns a :class:`DiagnosticsReport`. Asymptotic statements ("bounded
for all r >= 1") are read off a finite geometric grid, by asking whether the
profile has settled over its last decade. Every report says so in its notes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .charge_model import ChargeDistribution, geometric_grid, shift, upper_density_profile
from .errors import ProbeInStrip
from .log_measures import cumulative_profile, lindelof_profile, stabilization
from .potentials import PotentialField, affine_fit, circle_average, j_iR
from .strip import StripSweepConfig, sweep_strip

FINITE_GRID_NOTE = "bounded-sup claims are read as stabilization over the last decade of a finite geometric grid"


@dataclass
class DiagnosticsReport:
    name: str
    passed: bool
    residuals: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    profiles: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "residuals": self.residuals,
            "tolerances": self.tolerances,
            "profiles": self.profiles,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=True)


def _profile_dict(r, values) -> dict:
    return {"r": [float(x) for x in r], "values": [float(v) for v in values]}


def default_strip_grid(b: float, nx: int = 21, ny: int = 21, height: float = 3.0) -> np.ndarray:
    xs = np.linspace(-0.9 * b, 0.9 * b, nx) if b > 0 else np.zeros(1)
    ys = np.linspace(-height, height, ny)
    X, Y = np.meshgrid(xs, ys)
    return (X + 1j * Y).ravel()


# ---------------------------------------------------------------------------
# potential-level checks
# ---------------------------------------------------------------------------


def check_strip_identity(
    nu: ChargeDistribution,
    cfg: StripSweepConfig,
    grid: Sequence[complex] | None = None,
    tol: float = 1e-5,
    rho0: float = 1.0,
    quad_tol: float | None = None,
    swept: ChargeDistribution | None = None,
) -> DiagnosticsReport:
    """Max residual of an affine fit to ``U - V`` on points of the strip.

    ``U`` and ``V`` are the genus-1 potentials of ``nu`` and of its strip sweep.
    ``swept`` overrides the sweep, which is how negative controls are run.
    """
    swept = sweep_strip(nu, cfg) if swept is None else swept
    z = np.asarray(default_strip_grid(cfg.b) if grid is None else grid, dtype=complex)
    U = PotentialField(nu, "genus1", rho0, quad_tol).evaluate(z)
    V = PotentialField(swept, "genus1", rho0, quad_tol).evaluate(z)
    diff = U - V
    ok = np.isfinite(diff)
    fit = affine_fit(z[ok], diff[ok])
    return DiagnosticsReport(
        "strip-identity",
        bool(fit.max_residual < tol),
        {"max_affine_residual": fit.max_residual, "fit_c0": fit.c0, "fit_cx": fit.cx, "fit_cy": fit.cy},
        {"tol": tol, "rho0": rho0, "quad_tol": quad_tol},
        {},
        [
            "U - V is normalised by a least-squares affine fit (harmonic polynomial of degree <= 1)",
            f"{int(ok.sum())} grid points used, {int((~ok).sum())} skipped at singularities",
        ],
    )


def default_probes(b: float) -> list[complex]:
    return [complex(b + 1, 0), complex(b + 4, 1), complex(-(b + 3), 0), complex(b + 2, 2), complex(-(b + 1), -1.5)]


def check_harmonic_outside(
    nu: ChargeDistribution,
    cfg: StripSweepConfig,
    probes: Sequence[complex] | None = None,
    rho: float = 0.5,
    tol: float = 1e-6,
    n: int = 256,
    of: str = "swept",
    rho0: float = 1.0,
) -> DiagnosticsReport:
    """Mean-value residuals of the swept potential on disks outside the closed strip.

    ``of="original"`` tests the unswept potential instead (a negative control).
    """
    probes = default_probes(cfg.b) if probes is None else [complex(p) for p in probes]
    for p in probes:
        if abs(p.real) <= cfg.b:
            raise ProbeInStrip(f"probe {p} lies in the closed strip |Re z| <= {cfg.b}")
    charge = sweep_strip(nu, cfg) if of == "swept" else nu
    fld = PotentialField(charge, "genus1", rho0)
    res = {}
    for p in probes:
        centre = fld.eval(p)
        res[f"{p.real:+.6g}{p.imag:+.6g}i"] = abs(circle_average(fld, p, rho, n) - centre)
    worst = max(res.values())
    return DiagnosticsReport(
        "harmonic-outside",
        bool(np.isfinite(worst) and worst < tol),
        {"max_residual": float(worst), **{k: float(v) for k, v in res.items()}},
        {"tol": tol, "rho": rho, "n": n},
        {},
        [f"field: {of}"],
    )


def _flux_mass(fld: PotentialField, x0: float, y1: float, y2: float, delta: float, panel: float = 0.25) -> float:
    """Charge in the box ``[x0-delta, x0+delta] x [y1, y2]`` from the outward flux of the field."""
    nodes, weights = np.polynomial.legendre.leggauss(16)
    h = 1e-6

    def gl(a, b):
        k = max(1, int(math.ceil((b - a) / panel)))
        edges = np.linspace(a, b, k + 1)
        pts, wts = [], []
        for lo, hi in zip(edges[:-1], edges[1:]):
            pts.append(0.5 * (hi - lo) * nodes + 0.5 * (hi + lo))
            wts.append(0.5 * (hi - lo) * weights)
        return np.concatenate(pts), np.concatenate(wts)

    def grad(z, axis):
        step = h if axis == "x" else 1j * h
        return (fld.evaluate(z + step) - fld.evaluate(z - step)) / (2 * h)

    ty, wy = gl(y1, y2)
    right = np.sum(wy * grad(x0 + delta + 1j * ty, "x"))
    left = -np.sum(wy * grad(x0 - delta + 1j * ty, "x"))
    txa, wxa = gl(x0 - delta, x0)
    txb, wxb = gl(x0, x0 + delta)
    tx, wx = np.concatenate([txa, txb]), np.concatenate([wxa, wxb])
    top = np.sum(wx * grad(tx + 1j * y2, "y"))
    bottom = -np.sum(wx * grad(tx + 1j * y1, "y"))
    return float(right + left + top + bottom) / (2 * math.pi)


def check_riesz_identity(
    nu: ChargeDistribution,
    cfg: StripSweepConfig,
    segments: Sequence[tuple[float, float]] = ((-2.0, 2.0),),
    delta: float = 0.05,
    rel_tol: float = 1e-3,
    rho0: float = 1.0,
) -> DiagnosticsReport:
    """Compare the swept charge on boundary segments with the charge recovered from its potential.

    The recovered charge is ``(1/2pi)`` times the flux of the gradient through a thin
    box around ``+-b + i(y1, y2]``.
    """
    swept = sweep_strip(nu, cfg)
    fld = PotentialField(swept, "genus1", rho0)
    res = {}
    worst = 0.0
    for x0 in sorted({cfg.b, -cfg.b}):
        ln = swept.line_at(x0)
        for y1, y2 in segments:
            analytic = ln.mass(y1, y2) if ln is not None else 0.0
            analytic += math.fsum(
                a.mass for a in swept.atoms if abs(a.z.real - x0) < delta and y1 < a.z.imag <= y2
            )
            recovered = _flux_mass(fld, x0, y1, y2, delta)
            err = abs(recovered - analytic) / max(abs(analytic), 1e-3)
            key = f"x0={x0:+.6g},y=({y1:g},{y2:g}]"
            res[key + ":analytic"] = analytic
            res[key + ":recovered"] = recovered
            res[key + ":rel_err"] = err
            worst = max(worst, err)
    return DiagnosticsReport(
        "riesz",
        bool(worst < rel_tol),
        {"max_rel_err": worst, **res},
        {"rel_tol": rel_tol, "delta": delta},
        {},
        ["recovered charge = (1/2pi) * outward flux of grad V through a box straddling the boundary line"],
    )


# ---------------------------------------------------------------------------
# logarithmic-measure checks
# ---------------------------------------------------------------------------


def check_lindelof_preservation(
    nu: ChargeDistribution,
    cfg: StripSweepConfig,
    r_grid: Sequence[float] | None = None,
    tol: float = 0.05,
) -> DiagnosticsReport:
    """Lindelöf profiles of ``nu`` and of its strip sweep; swept profiles must settle whenever the input's do."""
    r = geometric_grid() if r_grid is None else list(r_grid)
    swept = sweep_strip(nu, cfg)
    passed = True
    profiles, res = {}, {}
    for kind in ("R", "iR", "full"):
        before = lindelof_profile(nu, kind, r, tol)
        after = lindelof_profile(swept, kind, r, tol)
        profiles[f"input:{kind}"] = _profile_dict(before.r, before.values)
        profiles[f"swept:{kind}"] = _profile_dict(after.r, after.values)
        res[f"input:{kind}:sup_abs"] = before.sup_abs
        res[f"swept:{kind}:sup_abs"] = after.sup_abs
        res[f"swept:{kind}:last_decade_variation"] = after.stability.last_decade_variation
        if before.stability.stabilized and not after.stability.stabilized:
            passed = False
    dens = upper_density_profile(swept, 1.0, r)
    res["swept:density_p1_tail"] = dens.tail_sup
    passed = passed and math.isfinite(dens.tail_sup)
    return DiagnosticsReport("lindelof", passed, res, {"stabilization_tol": tol}, profiles, [FINITE_GRID_NOTE])


def check_shift_bound(
    nu: ChargeDistribution,
    w: complex = 1.0,
    r_grid: Sequence[float] | None = None,
    r0: float = 1.0,
    tol: float = 0.05,
) -> DiagnosticsReport:
    """Profiles of ``ell_right`` and ``ell_left`` of ``nu - nu shifted by w`` on ``(r0, r]``."""
    r = geometric_grid(r0) if r_grid is None else list(r_grid)
    diff = nu - shift(nu, w)
    profiles, res = {}, {}
    passed = True
    for kind, label in (("re+", "right"), ("re-", "left")):
        vals = cumulative_profile(diff, kind, r, r0)
        st = stabilization(r, vals, tol)
        profiles[label] = _profile_dict(r, vals)
        res[f"{label}:sup_abs"] = max(abs(v) for v in vals)
        res[f"{label}:last_decade_variation"] = st.last_decade_variation
        passed = passed and st.stabilized
    return DiagnosticsReport("shift", passed, res, {"stabilization_tol": tol, "w": str(complex(w))}, profiles, [FINITE_GRID_NOTE])


def lemjl_profiles(field: PotentialField, r_grid: Sequence[float]) -> dict:
    """Running maxima over ``r < R`` on the grid of ``|J(r,R) - ell(r,R)|`` for ell in right/left/sub."""
    r = [float(x) for x in r_grid]
    nu = field.charge
    J = [0.0]
    for lo, hi in zip(r[:-1], r[1:]):
        J.append(J[-1] + j_iR(field, lo, hi))
    L_right = [0.0] + cumulative_profile(nu, "re+", r[1:], r[0])
    L_left = [0.0] + cumulative_profile(nu, "re-", r[1:], r[0])
    positive = nu.is_positive() or nu.is_empty()
    out = {"right": [], "left": []}
    if positive:
        out["sub"] = []
    for j in range(len(r)):
        best = {k: 0.0 for k in out}
        for i in range(j):
            dJ = J[j] - J[i]
            dr, dl = L_right[j] - L_right[i], L_left[j] - L_left[i]
            best["right"] = max(best["right"], abs(dJ - dr))
            best["left"] = max(best["left"], abs(dJ - dl))
            if positive:
                best["sub"] = max(best["sub"], abs(dJ - max(dr, dl)))
        for k in out:
            out[k].append(best[k])
    return out


def check_lemJl(field: PotentialField, r_grid: Sequence[float] | None = None, tol: float = 0.05) -> DiagnosticsReport:
    """Boundedness profiles of ``J_iR - ell`` for the charge of ``field``."""
    r = geometric_grid() if r_grid is None else list(r_grid)
    prof = lemjl_profiles(field, r)
    profiles, res = {}, {}
    passed = True
    for k, vals in prof.items():
        st = stabilization(r, vals, tol)
        profiles[k] = _profile_dict(r, vals)
        res[f"{k}:sup"] = max(vals)
        res[f"{k}:last_decade_variation"] = st.last_decade_variation
        passed = passed and st.stabilized
    notes = [FINITE_GRID_NOTE]
    if "sub" not in prof:
        notes.append("charge is signed: the two-sided submeasure is not defined, only right/left profiles")
    return DiagnosticsReport("lemjl", passed, res, {"stabilization_tol": tol}, profiles, notes)


CHECKS = ("strip-identity", "harmonic-outside", "riesz", "lindelof", "shift", "lemjl")


def run_checks(nu: ChargeDistribution, cfg: StripSweepConfig, which: str = "all", w: complex = 1.0) -> list[DiagnosticsReport]:
    names = CHECKS if which == "all" else (which,)
    out = []
    for name in names:
        if name == "strip-identity":
            out.append(check_strip_identity(nu, cfg))
        elif name == "harmonic-outside":
            out.append(check_harmonic_outside(nu, cfg))
        elif name == "riesz":
            out.append(check_riesz_identity(nu, cfg))
        elif name == "lindelof":
            out.append(check_lindelof_preservation(nu, cfg))
        elif name == "shift":
            out.append(check_shift_bound(nu, w))
        elif name == "lemjl":
            kernel = "log" if not any(ln.constants for ln in nu.lines) else "genus1"
            out.append(check_lemJl(PotentialField(nu, kernel)))
        else:
            raise ValueError(f"unknown check {name!r}")
    return out
