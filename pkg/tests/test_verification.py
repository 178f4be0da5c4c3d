import json
import math

import numpy as np
import pytest

from balayage import ChargeDistribution, LineCharge, PoissonTerm, geometric_grid
from balayage.errors import ProbeInStrip
from balayage.log_measures import ell_right
from balayage.potentials import PotentialField, j_iR
from balayage.strip import StripSweepConfig
from balayage.verification import (
    check_harmonic_outside,
    check_lemJl,
    check_lindelof_preservation,
    check_riesz_identity,
    check_shift_bound,
    check_strip_identity,
    lemjl_profiles,
    run_checks,
)

from conftest import outside_strip_atoms, random_atoms

atom = ChargeDistribution.from_atoms
CFG = StripSweepConfig(1.0, "1")


def test_strip_identity_single_atom():
    rep = check_strip_identity(atom([(3, 1.0)]), CFG)
    assert rep.passed and rep.residuals["max_affine_residual"] < 1e-5


def test_strip_identity_strip_supported(rng):
    rep = check_strip_identity(random_atoms(rng, 5, xlim=(-1, 1)), CFG)
    assert rep.residuals["max_affine_residual"] < 1e-12


@pytest.mark.parametrize("mode", ["0", "1", "01"])
def test_strip_identity_mixed(rng, mode):
    nu = random_atoms(rng, 5, xlim=(-4, 4), ylim=(-3, 3))
    nu = ChargeDistribution(tuple(a for a in nu.atoms if abs(abs(a.z.real) - 1) > 1e-9), ())
    rep = check_strip_identity(nu, StripSweepConfig(1.0, mode))
    assert rep.residuals["max_affine_residual"] < 1e-4


def test_strip_identity_with_lines():
    # a Poisson line beyond the strip whose shifted copy cuts the unit disk
    nu = ChargeDistribution((), (LineCharge(1.5, (PoissonTerm(0.3, 0.6, 1.2),)), LineCharge(-4.0, (PoissonTerm(-1.0, 1.0, 0.7),))))
    for mode in ("0", "1", "01"):
        rep = check_strip_identity(nu, StripSweepConfig(1.0, mode))
        assert rep.residuals["max_affine_residual"] < 1e-6, mode


def test_strip_identity_tolerance_halving_stable(rng):
    nu = outside_strip_atoms(rng, 5)
    a = check_strip_identity(nu, CFG, quad_tol=1e-10)
    b = check_strip_identity(nu, CFG, quad_tol=5e-11)
    assert a.passed == b.passed


def test_harmonic_outside():
    nu = atom([(3, 1.0)])
    rep = check_harmonic_outside(nu, CFG, probes=[2, 5, -4])
    assert rep.passed and rep.residuals["max_residual"] < 1e-6
    bad = check_harmonic_outside(nu, CFG, probes=[3], rho=0.5, of="original")
    assert not bad.passed and bad.residuals["max_residual"] > 0.1
    with pytest.raises(ProbeInStrip):
        check_harmonic_outside(nu, CFG, probes=[0.5])


def test_riesz_single_atom():
    rep = check_riesz_identity(atom([(3, 1.0)]), CFG)
    assert rep.passed
    key = "x0=+1,y=(-2,2]"
    assert rep.residuals[key + ":analytic"] == pytest.approx(0.5 - 2 / math.pi, abs=1e-15)
    assert rep.residuals[key + ":rel_err"] < 1e-3


def test_riesz_strip_supported(rng):
    rep = check_riesz_identity(random_atoms(rng, 4, xlim=(-0.5, 0.5)), CFG)
    assert rep.passed


def test_riesz_linear():
    a, b = atom([(3, 1.0)]), atom([(-2.5 + 1j, 2.0)])
    ra, rb, rab = (check_riesz_identity(x, CFG).residuals for x in (a, b, a + b))
    for key in rab:
        if key.endswith(":recovered"):
            assert rab[key] == pytest.approx(ra[key] + rb[key], abs=1e-8)


def test_lindelof_check():
    sym = check_lindelof_preservation(atom([(3, 1.0), (-3, 1.0)]), CFG)
    assert sym.passed
    assert sym.profiles["input:R"]["values"] == [0.0] * len(sym.profiles["input:R"]["r"])
    one = check_lindelof_preservation(atom([(3, 1.0)]), CFG)
    assert one.passed and one.residuals["input:R:sup_abs"] == pytest.approx(1 / 3, abs=1e-16)


def test_lindelof_random(rng):
    assert check_lindelof_preservation(random_atoms(rng, 10), CFG).passed


def test_lemjl_atom_limit():
    fld = PotentialField(atom([(2, 1.0)]), "log")
    diff = abs(j_iR(fld, 1.0) - ell_right(fld.charge, 1.0, math.inf))
    assert diff == pytest.approx(0.0676423, abs=1e-6)
    rep = check_lemJl(fld, geometric_grid(1, 1e3, 10))
    assert rep.passed


def test_lemjl_empty():
    rep = check_lemJl(PotentialField(ChargeDistribution(), "log"), geometric_grid(1, 100, 5))
    assert rep.passed
    assert all(v == 0.0 for prof in rep.profiles.values() for v in prof["values"])


def test_lemjl_random_annulus(rng):
    r = rng.uniform(1.2, 9.5, 5)
    th = rng.uniform(0, 2 * np.pi, 5)
    nu = atom(zip(r * np.exp(1j * th), rng.uniform(0.5, 2, 5)))
    rep = check_lemJl(PotentialField(nu, "log"), geometric_grid(1, 1e3, 10))
    assert rep.passed
    prof = lemjl_profiles(PotentialField(nu, "log"), [1.0, 10.0])
    assert set(prof) == {"right", "left", "sub"}


def test_shift_bound(rng):
    assert check_shift_bound(random_atoms(rng, 8, signed=True), 2 - 3j).passed


def test_report_json_deterministic():
    nu = atom([(3, 1.0)])
    a = run_checks(nu, CFG)
    b = run_checks(nu, CFG)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]
    json.loads(a[0].to_json())


def test_run_checks_unknown():
    with pytest.raises(ValueError):
        run_checks(atom([(3, 1.0)]), CFG, "nope")
