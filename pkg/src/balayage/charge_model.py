"""Signed charge distributions made of point atoms and vertical-line charges.

Plane points are plain Python ``complex`` numbers. A line charge lives on
``Re z = x0`` and is a sum of Poisson bumps, uniform densities and optional
tabulated (piecewise-linear) densities. Every term may carry a window
``(lo, hi]`` in the imaginary coordinate, which is how restriction to a region
stays exact. All values are immutable and kept in a canonical order so that
``==`` is termwise equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from ._numerics import integrate_1d
from .errors import EmptyGrid, NegativeRadius, UnsupportedClip

INF = math.inf


def _clean(x: float) -> float:
    # folds -0.0 into 0.0 so equality and JSON stay canonical
    return float(x) + 0.0


def _overlap(lo1: float, hi1: float, lo2: float, hi2: float) -> tuple[float, float] | None:
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    return (lo, hi) if lo < hi else None


# ---------------------------------------------------------------------------
# line-charge terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class PoissonTerm:
    """Density ``t -> (m/pi) a / (a^2 + (t-c)^2)`` on ``(lo, hi]``.

    This is the trace on a vertical line of the harmonic measure seen from a
    point at horizontal distance ``a`` and height ``c``.
    """

    c: float
    a: float
    m: float
    lo: float = -INF
    hi: float = INF

    def __post_init__(self):
        if not self.a > 0 or not math.isfinite(self.a):
            raise ValueError(f"PoissonTerm needs a > 0, got {self.a}")
        if not self.lo < self.hi:
            raise ValueError("empty PoissonTerm window")
        for name in ("c", "a", "m", "lo", "hi"):
            object.__setattr__(self, name, _clean(getattr(self, name)))

    @property
    def windowed(self) -> bool:
        return self.lo > -INF or self.hi < INF

    def cdf(self, y: float) -> float:
        """Mass on ``(-inf, y]`` ignoring the window."""
        return self.m / math.pi * (math.atan((y - self.c) / self.a) + math.pi / 2)

    def mass(self, y1: float = -INF, y2: float = INF) -> float:
        iv = _overlap(y1, y2, self.lo, self.hi)
        if iv is None:
            return 0.0
        lo, hi = iv
        return self.m / math.pi * (math.atan((hi - self.c) / self.a) - math.atan((lo - self.c) / self.a))

    def density(self, t):
        t = np.asarray(t, dtype=float)
        d = self.m / math.pi * self.a / (self.a**2 + (t - self.c) ** 2)
        if self.windowed:
            d = np.where((t > self.lo) & (t <= self.hi), d, 0.0)
        return d


@dataclass(frozen=True, order=True)
class ConstantTerm:
    """Uniform density ``gamma`` per unit length on ``(lo, hi]``."""

    gamma: float
    lo: float = -INF
    hi: float = INF

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("empty ConstantTerm window")
        for name in ("gamma", "lo", "hi"):
            object.__setattr__(self, name, _clean(getattr(self, name)))

    @property
    def windowed(self) -> bool:
        return self.lo > -INF or self.hi < INF

    def mass(self, y1: float = -INF, y2: float = INF) -> float:
        iv = _overlap(y1, y2, self.lo, self.hi)
        if iv is None or self.gamma == 0.0:
            return 0.0
        return self.gamma * (iv[1] - iv[0])

    def density(self, t):
        t = np.asarray(t, dtype=float)
        d = np.full_like(t, self.gamma)
        if self.windowed:
            d = np.where((t > self.lo) & (t <= self.hi), d, 0.0)
        return d


@dataclass(frozen=True, order=True)
class SampledPiece:
    """Piecewise-linear density through ``(ys[i], density[i])``, zero outside ``[ys[0], ys[-1]]``.

    The quadrature rule is the trapezoid rule, which is exact for this interpolant.
    """

    ys: tuple
    density: tuple

    def __post_init__(self):
        ys = tuple(_clean(y) for y in self.ys)
        ds = tuple(_clean(d) for d in self.density)
        if len(ys) != len(ds) or len(ys) < 2:
            raise ValueError("sampled density needs >= 2 matching nodes")
        if any(b <= a for a, b in zip(ys, ys[1:])):
            raise ValueError("sampled grid must be strictly increasing")
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "density", ds)

    @property
    def lo(self) -> float:
        return self.ys[0]

    @property
    def hi(self) -> float:
        return self.ys[-1]

    def _value(self, y: float) -> float:
        return float(np.interp(y, self.ys, self.density))

    def mass(self, y1: float = -INF, y2: float = INF) -> float:
        iv = _overlap(y1, y2, self.lo, self.hi)
        if iv is None:
            return 0.0
        piece = self.clip(*iv)
        ys, ds = piece.ys, piece.density
        return math.fsum(0.5 * (ds[i] + ds[i + 1]) * (ys[i + 1] - ys[i]) for i in range(len(ys) - 1))

    def clip(self, lo: float, hi: float) -> "SampledPiece | None":
        iv = _overlap(lo, hi, self.lo, self.hi)
        if iv is None:
            return None
        lo, hi = iv
        inner = [(y, d) for y, d in zip(self.ys, self.density) if lo < y < hi]
        nodes = [(lo, self._value(lo)), *inner, (hi, self._value(hi))]
        return SampledPiece(tuple(y for y, _ in nodes), tuple(d for _, d in nodes))

    def density_at(self, t):
        t = np.asarray(t, dtype=float)
        return np.interp(t, self.ys, self.density, left=0.0, right=0.0)

    def is_zero(self) -> bool:
        return all(d == 0.0 for d in self.density)


@dataclass(frozen=True)
class LineCharge:
    """Charge carried by the vertical line ``Re z = x0``."""

    x0: float
    poisson: tuple = ()
    constants: tuple = ()
    sampled: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "x0", _clean(self.x0))
        object.__setattr__(self, "poisson", tuple(sorted(p for p in self.poisson if p.m != 0.0)))
        object.__setattr__(self, "constants", tuple(sorted(k for k in self.constants if k.gamma != 0.0)))
        object.__setattr__(self, "sampled", tuple(sorted(s for s in self.sampled if not s.is_zero())))

    @property
    def gamma(self) -> float:
        """Total unwindowed uniform density."""
        return math.fsum(k.gamma for k in self.constants if not k.windowed)

    def is_empty(self) -> bool:
        return not (self.poisson or self.constants or self.sampled)

    def terms(self):
        return (*self.poisson, *self.constants, *self.sampled)

    def mass(self, y1: float = -INF, y2: float = INF) -> float:
        """Signed charge of the segment ``x0 + i(y1, y2]``."""
        return math.fsum(t.mass(y1, y2) for t in self.terms())

    def density(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for p in self.poisson:
            out = out + p.density(t)
        for k in self.constants:
            out = out + k.density(t)
        for s in self.sampled:
            out = out + s.density_at(t)
        return out

    def breakpoints(self) -> list[float]:
        pts = []
        for p in self.poisson:
            pts += [p.c, p.lo, p.hi]
        for k in self.constants:
            pts += [k.lo, k.hi]
        for s in self.sampled:
            pts += [s.lo, s.hi]
        return sorted({p for p in pts if math.isfinite(p)})

    def total_variation(self, y1: float = -INF, y2: float = INF) -> float:
        """Variation of the line charge on ``(y1, y2]``."""
        if self.has_infinite_variation(y1, y2):
            return INF
        signs = {math.copysign(1.0, t.m) for t in self.poisson}
        signs |= {math.copysign(1.0, k.gamma) for k in self.constants}
        if len(signs) <= 1 and not self.sampled:
            return abs(self.mass(y1, y2))
        return integrate_1d(lambda t: abs(float(self.density(t))), y1, y2, self.breakpoints(), tol=1e-11)

    def has_infinite_variation(self, y1: float = -INF, y2: float = INF) -> bool:
        return any(math.isinf(k.mass(y1, y2)) for k in self.constants)

    def shifted(self, dx: float, dy: float) -> "LineCharge":
        if dy == 0.0:
            return replace(self, x0=self.x0 + dx)
        return LineCharge(
            self.x0 + dx,
            tuple(replace(p, c=p.c + dy, lo=p.lo + dy, hi=p.hi + dy) for p in self.poisson),
            tuple(replace(k, lo=k.lo + dy, hi=k.hi + dy) for k in self.constants),
            tuple(SampledPiece(tuple(y + dy for y in s.ys), s.density) for s in self.sampled),
        )

    def scaled(self, k: float) -> "LineCharge":
        return LineCharge(
            self.x0,
            tuple(replace(p, m=k * p.m) for p in self.poisson),
            tuple(replace(q, gamma=k * q.gamma) for q in self.constants),
            tuple(SampledPiece(s.ys, tuple(k * d for d in s.density)) for s in self.sampled),
        )

    def clipped(self, intervals: Sequence[tuple[float, float]], allow_windows: bool = True) -> "LineCharge":
        """Restrict to a union of disjoint ``(lo, hi]`` intervals of the imaginary coordinate."""
        poisson, constants, sampled = [], [], []
        full = [(-INF, INF)]
        if not allow_windows and list(intervals) not in ([], full):
            if self.poisson or self.constants:
                raise UnsupportedClip(f"cannot cut analytic terms on line x0={self.x0} without windows")
        for lo, hi in intervals:
            for p in self.poisson:
                iv = _overlap(lo, hi, p.lo, p.hi)
                if iv:
                    poisson.append(replace(p, lo=iv[0], hi=iv[1]))
            for k in self.constants:
                iv = _overlap(lo, hi, k.lo, k.hi)
                if iv:
                    constants.append(replace(k, lo=iv[0], hi=iv[1]))
            for s in self.sampled:
                piece = s.clip(lo, hi)
                if piece is not None:
                    sampled.append(piece)
        return LineCharge(self.x0, tuple(poisson), tuple(constants), tuple(sampled))


# ---------------------------------------------------------------------------
# distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Atom:
    z: complex
    mass: float

    def __post_init__(self):
        z = complex(_clean(complex(self.z).real), _clean(complex(self.z).imag))
        if not (math.isfinite(z.real) and math.isfinite(z.imag) and math.isfinite(self.mass)):
            raise ValueError("atom coordinates and mass must be finite")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "mass", _clean(self.mass))

    @property
    def key(self):
        return (self.z.real, self.z.imag, self.mass)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return hash(self.key)


def _merge_lines(lines: Iterable[LineCharge]) -> tuple:
    groups: dict[float, list[LineCharge]] = {}
    for ln in lines:
        groups.setdefault(_clean(ln.x0), []).append(ln)
    merged = []
    for x0 in sorted(groups):
        grp = groups[x0]
        ln = LineCharge(
            x0,
            tuple(p for g in grp for p in g.poisson),
            tuple(k for g in grp for k in g.constants),
            tuple(s for g in grp for s in g.sampled),
        )
        if not ln.is_empty():
            merged.append(ln)
    return tuple(merged)


@dataclass(frozen=True)
class ChargeDistribution:
    """Finitely many signed atoms plus finitely many vertical-line charges.

    Terms are kept as a canonically sorted multiset; nothing is summed on
    construction, which keeps linearity of the sweeps exact in floating point.
    """

    atoms: tuple = ()
    lines: tuple = ()

    def __post_init__(self):
        atoms = tuple(sorted(a for a in self.atoms if a.mass != 0.0))
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "lines", _merge_lines(self.lines))

    @classmethod
    def from_atoms(cls, pairs: Iterable[tuple[complex, float]]) -> "ChargeDistribution":
        return cls(tuple(Atom(complex(z), float(m)) for z, m in pairs))

    def __add__(self, other: "ChargeDistribution") -> "ChargeDistribution":
        return ChargeDistribution(self.atoms + other.atoms, self.lines + other.lines)

    def scaled(self, k: float) -> "ChargeDistribution":
        return ChargeDistribution(
            tuple(Atom(a.z, k * a.mass) for a in self.atoms), tuple(ln.scaled(k) for ln in self.lines)
        )

    def __neg__(self) -> "ChargeDistribution":
        return self.scaled(-1.0)

    def __sub__(self, other: "ChargeDistribution") -> "ChargeDistribution":
        return self + (-other)

    def is_empty(self) -> bool:
        return not self.atoms and not self.lines

    def line_at(self, x0: float) -> LineCharge | None:
        for ln in self.lines:
            if ln.x0 == x0:
                return ln
        return None

    def is_positive(self) -> bool:
        return (
            all(a.mass > 0 for a in self.atoms)
            and all(p.m > 0 for ln in self.lines for p in ln.poisson)
            and all(k.gamma > 0 for ln in self.lines for k in ln.constants)
            and all(d >= 0 for ln in self.lines for s in ln.sampled for d in s.density)
        )

    def abscissae(self) -> list[float]:
        """Real parts of every atom and every line."""
        return [a.z.real for a in self.atoms] + [ln.x0 for ln in self.lines]


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

_ALL = [(-INF, INF)]


def _complement_intervals(ivs: list[tuple[float, float]]) -> list[tuple[float, float]]:
    out, cur = [], -INF
    for lo, hi in sorted(ivs):
        if lo > cur:
            out.append((cur, lo))
        cur = max(cur, hi)
    if cur < INF:
        out.append((cur, INF))
    return out


class Region:
    def contains(self, z: complex) -> bool:
        raise NotImplementedError

    def line_intervals(self, x0: float) -> list[tuple[float, float]]:
        """Intervals of ``t`` with ``x0 + it`` in the region (boundaries up to measure zero)."""
        raise NotImplementedError


@dataclass(frozen=True)
class Disk(Region):
    center: complex = 0j
    radius: float = 1.0
    closed: bool = False

    def __post_init__(self):
        if not self.radius >= 0:
            raise NegativeRadius(f"radius {self.radius}")

    def contains(self, z):
        d = abs(complex(z) - self.center)
        return d <= self.radius if self.closed else d < self.radius

    def line_intervals(self, x0):
        dx = abs(x0 - self.center.real)
        if dx >= self.radius:
            return []
        h = math.sqrt(self.radius**2 - dx**2)
        return [(self.center.imag - h, self.center.imag + h)]


@dataclass(frozen=True)
class RightHalfPlane(Region):
    closed: bool = False

    def contains(self, z):
        x = complex(z).real
        return x >= 0 if self.closed else x > 0

    def line_intervals(self, x0):
        return _ALL if self.contains(complex(x0, 0.0)) else []


@dataclass(frozen=True)
class LeftHalfPlane(Region):
    closed: bool = False

    def contains(self, z):
        x = complex(z).real
        return x <= 0 if self.closed else x < 0

    def line_intervals(self, x0):
        return _ALL if self.contains(complex(x0, 0.0)) else []


@dataclass(frozen=True)
class Strip(Region):
    b: float = 0.0
    closed: bool = True

    def __post_init__(self):
        if not self.b >= 0:
            raise ValueError("strip half-width must be >= 0")

    def contains(self, z):
        x = abs(complex(z).real)
        return x <= self.b if self.closed else x < self.b

    def line_intervals(self, x0):
        return _ALL if self.contains(complex(x0, 0.0)) else []


@dataclass(frozen=True)
class Annulus(Region):
    """``{r < |z| <= R}`` around the origin; ``R`` may be infinite."""

    r: float = 0.0
    R: float = INF

    def __post_init__(self):
        if not (0 <= self.r < self.R):
            raise ValueError("Annulus needs 0 <= r < R")

    def contains(self, z):
        d = abs(complex(z))
        return self.r < d <= self.R

    def line_intervals(self, x0):
        outer = _ALL if math.isinf(self.R) else Disk(0j, self.R).line_intervals(x0)
        inner = Disk(0j, self.r).line_intervals(x0)
        if not outer:
            return []
        if not inner:
            return list(outer)
        (ilo, ihi), (olo, ohi) = inner[0], outer[0]
        return [iv for iv in ((olo, ilo), (ihi, ohi)) if iv[0] < iv[1]]


@dataclass(frozen=True)
class Complement(Region):
    region: Region = field(default_factory=Disk)

    def contains(self, z):
        return not self.region.contains(z)

    def line_intervals(self, x0):
        return _complement_intervals(self.region.line_intervals(x0))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def shift(nu: ChargeDistribution, w: complex) -> ChargeDistribution:
    """Translate every charge by ``w`` (the image measure ``K -> nu(K - w)``)."""
    w = complex(w)
    return ChargeDistribution(
        tuple(Atom(a.z + w, a.mass) for a in nu.atoms),
        tuple(ln.shifted(w.real, w.imag) for ln in nu.lines),
    )


def mirror(nu: ChargeDistribution) -> ChargeDistribution:
    """Reflect in the imaginary axis, ``z -> -conj(z)``."""
    return ChargeDistribution(
        tuple(Atom(complex(-a.z.real, a.z.imag), a.mass) for a in nu.atoms),
        tuple(replace(ln, x0=-ln.x0) for ln in nu.lines),
    )


def restrict(nu: ChargeDistribution, region: Region, allow_windows: bool = True) -> ChargeDistribution:
    """Part of ``nu`` lying in ``region``; line terms are cut with exact windows."""
    atoms = tuple(a for a in nu.atoms if region.contains(a.z))
    lines = []
    for ln in nu.lines:
        ivs = region.line_intervals(ln.x0)
        if ivs == _ALL:
            lines.append(ln)
        elif ivs:
            lines.append(ln.clipped(ivs, allow_windows))
    return ChargeDistribution(atoms, tuple(lines))


def total_mass(nu: ChargeDistribution) -> float:
    """Signed total charge; infinite if a uniform density is present."""
    return math.fsum([a.mass for a in nu.atoms] + [ln.mass() for ln in nu.lines])


def total_variation(nu: ChargeDistribution) -> float:
    return math.fsum([abs(a.mass) for a in nu.atoms] + [ln.total_variation() for ln in nu.lines])


def radial_counting(nu: ChargeDistribution, z: complex = 0j, r: float = 0.0, variation: str = "signed") -> float:
    """Charge of the closed disk ``|w - z| <= r`` (right-continuous in ``r``)."""
    if r < 0:
        raise NegativeRadius(f"r = {r}")
    if variation not in ("signed", "total"):
        raise ValueError("variation must be 'signed' or 'total'")
    z = complex(z)
    total = variation == "total"
    vals = [abs(a.mass) if total else a.mass for a in nu.atoms if abs(a.z - z) <= r]
    disk = Disk(z, r, closed=True)
    for ln in nu.lines:
        for lo, hi in disk.line_intervals(ln.x0):
            vals.append(ln.total_variation(lo, hi) if total else ln.mass(lo, hi))
    return math.fsum(vals)


@dataclass(frozen=True)
class GrowthProfile:
    """Tabulated growth ratios on a finite grid; ``tail_sup`` estimates the limsup."""

    r: tuple
    values: tuple
    running_sup: tuple
    tail_sup: float
    note: str = "finite-grid estimate"


def tail_supremum(r: Sequence[float], values: Sequence[float], decades: float = 1.0) -> float:
    """Max of ``values`` over the grid points with ``r >= r_max / 10**decades``."""
    cut = r[-1] / 10**decades
    return max(v for x, v in zip(r, values) if x >= cut)


def make_growth_profile(r: Sequence[float], values: Sequence[float]) -> GrowthProfile:
    if len(r) == 0:
        raise EmptyGrid("empty r grid")
    running = tuple(np.maximum.accumulate(np.asarray(values, dtype=float)).tolist())
    return GrowthProfile(tuple(map(float, r)), tuple(map(float, values)), running, tail_supremum(r, values))


def upper_density_profile(nu: ChargeDistribution, p: float, r_grid: Sequence[float]) -> GrowthProfile:
    """Ratios ``|nu|(closed disk r) / r**p`` over the grid."""
    r_grid = [float(r) for r in r_grid]
    if not r_grid:
        raise EmptyGrid("empty r grid")
    if any(r <= 0 for r in r_grid) or any(b <= a for a, b in zip(r_grid, r_grid[1:])):
        raise ValueError("r_grid must be positive and increasing")
    vals = [radial_counting(nu, 0j, r, "total") / r**p for r in r_grid]
    return make_growth_profile(r_grid, vals)


def geometric_grid(r_min: float = 1.0, r_max: float = 1e3, per_decade: int = 10) -> list[float]:
    n = max(2, int(round(math.log10(r_max / r_min) * per_decade)) + 1)
    return np.geomspace(r_min, r_max, n).tolist()


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------


def _window(d: dict, lo: float, hi: float) -> dict:
    if lo > -INF:
        d["lo"] = lo
    if hi < INF:
        d["hi"] = hi
    return d


def _piece_dict(s: SampledPiece) -> dict:
    return {"ys": list(s.ys), "density": list(s.density)}


def to_dict(nu: ChargeDistribution) -> dict:
    lines = []
    for ln in nu.lines:
        d = {
            "x0": ln.x0,
            "poisson": [_window({"a": p.a, "c": p.c, "m": p.m}, p.lo, p.hi) for p in ln.poisson],
            "gamma": ln.gamma,
        }
        if len(ln.constants) > 1 or any(k.windowed for k in ln.constants):
            d["constants"] = [_window({"gamma": k.gamma}, k.lo, k.hi) for k in ln.constants]
        if not ln.sampled:
            d["sampled"] = None
        elif len(ln.sampled) == 1:
            d["sampled"] = _piece_dict(ln.sampled[0])
        else:
            d["sampled"] = [_piece_dict(s) for s in ln.sampled]
        lines.append(d)
    return {
        "atoms": [{"re": a.z.real, "im": a.z.imag, "mass": a.mass} for a in nu.atoms],
        "lines": lines,
    }


def from_dict(data: dict) -> ChargeDistribution:
    atoms = tuple(Atom(complex(float(a["re"]), float(a["im"])), float(a["mass"])) for a in data.get("atoms", []))
    lines = []
    for d in data.get("lines", []):
        poisson = tuple(
            PoissonTerm(float(p["c"]), float(p["a"]), float(p["m"]), float(p.get("lo", -INF)), float(p.get("hi", INF)))
            for p in d.get("poisson", [])
        )
        if "constants" in d:
            constants = tuple(
                ConstantTerm(float(k["gamma"]), float(k.get("lo", -INF)), float(k.get("hi", INF)))
                for k in d["constants"]
            )
        else:
            constants = (ConstantTerm(float(d.get("gamma", 0.0))),)
        raw = d.get("sampled")
        if raw is None:
            pieces = ()
        elif isinstance(raw, dict):
            pieces = (SampledPiece(tuple(raw["ys"]), tuple(raw["density"])),)
        else:
            pieces = tuple(SampledPiece(tuple(s["ys"]), tuple(s["density"])) for s in raw)
        lines.append(LineCharge(float(d["x0"]), poisson, constants, pieces))
    return ChargeDistribution(atoms, tuple(lines))
