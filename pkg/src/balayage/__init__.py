"""Balayage of planar charge distributions onto half-planes and vertical strips."""

from .charge_model import (
    Annulus,
    Atom,
    ChargeDistribution,
    Complement,
    ConstantTerm,
    Disk,
    LeftHalfPlane,
    LineCharge,
    PoissonTerm,
    RightHalfPlane,
    SampledPiece,
    Strip,
    from_dict,
    geometric_grid,
    mirror,
    radial_counting,
    restrict,
    shift,
    to_dict,
    total_mass,
    total_variation,
    upper_density_profile,
)
from .errors import BalayageError
from .halfplane import SweepMode, genus1_charge, harmonic_measure, sweep_halfplane, sweep_left, sweep_right
from .log_measures import (
    convergence_class_integral,
    ell_left,
    ell_right,
    ell_sub,
    interval_log_measure,
    lindelof_profile,
)
from .potentials import PotentialField, harmonicity_residual, j_iR, order_type_profile, radial_max
from .strip import StripSweepConfig, strip_pipeline_trace, sweep_strip

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
