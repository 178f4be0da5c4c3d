import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from balayage import ChargeDistribution, ConstantTerm, LineCharge, PoissonTerm, mirror, total_mass
from balayage.errors import BadInterval, OriginAtom, OriginPole, UnsweepableLine
from balayage.halfplane import (
    SweepMode,
    genus1_charge,
    harmonic_measure,
    sweep_genus0,
    sweep_genus01,
    sweep_genus1,
    sweep_halfplane,
    sweep_left,
    sweep_right,
)

from conftest import atom_lists, random_atoms


def poisson_density(z, t):
    return z.real / (math.pi * (z.real**2 + (t - z.imag) ** 2))


def quad_measure(z, y1, y2):
    return quad(lambda t: poisson_density(z, t), y1, y2, epsabs=1e-13, epsrel=1e-13)[0]


def test_harmonic_measure_examples():
    assert harmonic_measure(1, -1, 1) == pytest.approx(0.5, abs=1e-15)
    assert harmonic_measure(1, -1, 1) == pytest.approx(quad_measure(1 + 0j, -1, 1), abs=1e-12)
    assert harmonic_measure(1, -math.inf, math.inf) == 1.0
    assert harmonic_measure(2j, 1, 3) == 1.0
    assert harmonic_measure(3j, 1, 3) == 1.0
    assert harmonic_measure(1j, 1, 3) == 0.0
    with pytest.raises(BadInterval):
        harmonic_measure(1, 2, 1)


def test_genus1_charge_examples():
    assert genus1_charge(1, -1, 1) == pytest.approx(0.5 - 2 / math.pi, abs=1e-15)
    assert genus1_charge(2j, 1, 3) == 1.0
    with pytest.raises(OriginPole):
        genus1_charge(0, -1, 1)


@given(
    st.floats(0.05, 5),
    st.floats(-5, 5),
    st.floats(-10, 10),
    st.floats(0.01, 5),
    st.floats(0.01, 5),
)
@settings(max_examples=60)
def test_adjacent_intervals_add(x, y, y1, d1, d2):
    z = complex(x, y)
    y2, y3 = y1 + d1, y1 + d1 + d2
    whole = harmonic_measure(z, y1, y3)
    parts = harmonic_measure(z, y1, y2) + harmonic_measure(z, y2, y3)
    assert whole == pytest.approx(parts, abs=1e-13)
    g = genus1_charge(z, y1, y2) + genus1_charge(z, y2, y3)
    assert genus1_charge(z, y1, y3) == pytest.approx(g, abs=1e-12)


def test_genus0_atom():
    swept = sweep_genus0(ChargeDistribution.from_atoms([(2 + 1j, 3.0)]))
    assert swept.lines == (LineCharge(0.0, (PoissonTerm(1.0, 2.0, 3.0),)),)
    assert total_mass(swept) == pytest.approx(3.0, abs=1e-15)
    assert swept.lines[0].mass(-math.inf, 1) == pytest.approx(1.5, abs=1e-15)


def test_left_atoms_untouched():
    nu = ChargeDistribution.from_atoms([(-1, 4.0)])
    for g in ("0", "1", "01"):
        assert sweep_right(nu, g) == nu


def test_genus1_atom():
    swept = sweep_genus1(ChargeDistribution.from_atoms([(1, 1.0)]))
    (ln,) = swept.lines
    assert ln.poisson == (PoissonTerm(0.0, 1.0, 1.0),)
    assert ln.gamma == pytest.approx(-1 / math.pi, abs=1e-16)
    assert ln.mass(-1, 1) == pytest.approx(genus1_charge(1, -1, 1), abs=1e-15)


def test_genus1_boundary_atom_kept():
    nu = ChargeDistribution.from_atoms([(2j, 5.0)])
    swept = sweep_genus1(nu)
    assert swept.atoms == nu.atoms
    assert all(ln.is_empty() or ln.gamma == 0.0 for ln in swept.lines)


def test_genus1_origin_atom():
    with pytest.raises(OriginAtom):
        sweep_genus1(ChargeDistribution.from_atoms([(0, 1.0)]))


@given(atom_lists, atom_lists)
@settings(max_examples=40)
def test_genus1_linearity_termwise(p1, p2):
    a, b = ChargeDistribution.from_atoms(p1), ChargeDistribution.from_atoms(p2)
    if any(x.z == 0 for x in a.atoms + b.atoms):
        return
    assert sweep_genus1(a + b) == sweep_genus1(a) + sweep_genus1(b)


def test_genus01_split():
    inner = sweep_genus01(ChargeDistribution.from_atoms([(0.5, 1.0)]), 1.0)
    assert inner.lines == (LineCharge(0.0, (PoissonTerm(0.0, 0.5, 1.0),)),)
    outer = sweep_genus01(ChargeDistribution.from_atoms([(2, 1.0)]), 1.0)
    (ln,) = outer.lines
    assert ln.poisson == (PoissonTerm(0.0, 2.0, 1.0),)
    assert ln.gamma == pytest.approx(-1 / (2 * math.pi), abs=1e-16)


def test_genus01_origin_atom_is_kept():
    nu = ChargeDistribution.from_atoms([(0, 1.0)])
    assert sweep_genus01(nu) == nu


def test_left_supported_unchanged(rng):
    nu = random_atoms(rng, 6, xlim=(-5, 0))
    for r0 in (0.5, 1.0, 3.0):
        assert sweep_genus01(nu, r0) == nu


def test_sweep_left_mirror():
    swept = sweep_left(ChargeDistribution.from_atoms([(-2, 1.0)]), "0")
    assert swept.lines == (LineCharge(0.0, (PoissonTerm(0.0, 2.0, 1.0),)),)
    assert sweep_left(ChargeDistribution.from_atoms([(3, 1.0)])) == ChargeDistribution.from_atoms([(3, 1.0)])


def test_mirror_conjugacy(rng):
    nu = random_atoms(rng, 10, signed=True)
    for g in ("0", "1", "01"):
        assert sweep_left(nu, g) == mirror(sweep_right(mirror(nu), g))
        assert sweep_halfplane(nu, SweepMode(g, 1.0, "left")) == sweep_left(nu, g)


def test_idempotent(rng):
    nu = random_atoms(rng, 10, signed=True)
    for g in ("0", "1", "01"):
        once = sweep_right(nu, g)
        assert sweep_right(once, g) == once


# lines in the open right half-plane


def _line_nu(x0, terms=(), consts=()):
    return ChargeDistribution((), (LineCharge(x0, tuple(terms), tuple(consts)),))


def test_line_poisson_semigroup():
    swept = sweep_right(_line_nu(1.5, [PoissonTerm(0.5, 1.0, 2.0)]), "0")
    assert swept.lines == (LineCharge(0.0, (PoissonTerm(0.5, 2.5, 2.0),)),)


def test_line_poisson_semigroup_against_quadrature():
    # sweeping a Poisson line equals sweeping the atoms it is made of
    x0, a, c, m = 1.5, 1.0, 0.5, 2.0
    swept = sweep_right(_line_nu(x0, [PoissonTerm(c, a, m)]), "0").lines[0]
    src = PoissonTerm(c, a, m)
    for y1, y2 in [(-1.0, 1.0), (0.0, 4.0), (-30.0, -2.0)]:
        ref = quad(lambda t: float(src.density(t)) * harmonic_measure(complex(x0, t), y1, y2), -np.inf, np.inf)[0]
        assert swept.mass(y1, y2) == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("x0", [0.4, 1.7])
def test_line_genus1_constant_against_quadrature(x0):
    p = PoissonTerm(0.3, 0.8, 1.3)
    swept = sweep_right(_line_nu(x0, [p]), "1").lines[0]
    ref = -quad(lambda t: float(p.density(t)) * x0 / (x0 * x0 + t * t), -np.inf, np.inf)[0] / math.pi
    assert swept.gamma == pytest.approx(ref, abs=1e-10)
    swept01 = sweep_right(_line_nu(x0, [p]), "01", 1.0).lines[0]
    h = math.sqrt(max(0.0, 1 - x0 * x0))
    f = lambda t: float(p.density(t)) * x0 / (x0 * x0 + t * t)  # noqa: E731
    ref01 = -(quad(f, -np.inf, -h)[0] + quad(f, h, np.inf)[0]) / math.pi
    assert swept01.gamma == pytest.approx(ref01, abs=1e-10)


def test_line_constant_sweeps():
    nu = _line_nu(0.5, consts=[ConstantTerm(2.0)])
    assert sweep_right(nu, "0").lines[0].gamma == 2.0
    assert sweep_right(nu, "1").is_empty()
    g01 = sweep_right(nu, "01", 1.0).lines[0].gamma
    # gamma * (1 - (1/pi) * int_{|t| >= h} x0 / (x0^2 + t^2) dt) with h the inner chord
    h = math.sqrt(0.75)
    outer = 2 * quad(lambda t: 0.5 / (0.25 + t * t), h, np.inf)[0]
    assert g01 == pytest.approx(2.0 * (1 - outer / math.pi), abs=1e-12)


def test_windowed_line_rejected():
    with pytest.raises(UnsweepableLine):
        sweep_right(_line_nu(1.0, [PoissonTerm(0.0, 1.0, 1.0, -1.0, 1.0)]), "0")


def test_sweep_mode_validation():
    with pytest.raises(ValueError):
        SweepMode("2")
    with pytest.raises(ValueError):
        SweepMode("1", side="up")


@given(atom_lists)
@settings(max_examples=60)
def test_genus0_keeps_positivity_and_mass(pairs):
    nu = ChargeDistribution.from_atoms(pairs)
    swept = sweep_right(nu, "0")
    assert all(p.m > 0 for ln in swept.lines for p in ln.poisson)
    assert all(ln.gamma == 0.0 for ln in swept.lines)
    assert total_mass(swept) == pytest.approx(total_mass(nu), abs=1e-12)
