"""Quadrature helpers: scipy.integrate.quad with breakpoint splitting and infinite tails."""

from __future__ import annotations

import math
import os
import warnings

from scipy import integrate

from .errors import QuadratureFailure

DEFAULT_TOL = float(os.environ.get("BALAYAGE_TOL", "1e-12"))


def integrate_1d(f, lo: float, hi: float, points=(), tol: float | None = None) -> float:
    """Integrate ``f`` over ``[lo, hi]`` (either end may be infinite).

    ``points`` are interior locations where ``f`` is peaked or kinked; the range is
    split there and unbounded pieces are handed to quad's infinite-range rule.
    """
    if tol is None:
        tol = DEFAULT_TOL
    if not lo < hi:
        return 0.0
    cuts = sorted({float(p) for p in points if lo < p < hi and math.isfinite(p)})
    # Extra cut points around the finite breakpoints keep the infinite pieces smooth.
    if cuts and (math.isinf(lo) or math.isinf(hi)):
        span = max(1.0, cuts[-1] - cuts[0])
        if math.isinf(lo):
            cuts.insert(0, cuts[0] - 10.0 * span)
        if math.isinf(hi):
            cuts.append(cuts[-1] + 10.0 * span)
    edges = [lo, *cuts, hi]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if not a < b:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=400)
            except integrate.IntegrationWarning as exc:
                # Retry quietly; accept only if the error estimate is still small.
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=2000)
                if not math.isfinite(val) or err > max(1e3 * tol, 1e-8 * abs(val)):
                    raise QuadratureFailure(f"quad on [{a}, {b}]: {exc}") from exc
        total += val
    return total
