"""Exact q-series characters and quasi-particle bases for the twisted
series A and D with rectangular highest weights."""

from .characters import (
    ch_parafermionic,
    ch_principal_standard,
    ch_principal_verma,
    ch_product_side,
    ch_standard_module,
    ch_vacuum,
    heisenberg_factor,
    para_conformal_energy,
)
from .displays import DISPLAY_NAMES, display_example
from .quasiparticle import (
    ChargeData,
    QPMonomial,
    charge_data,
    conjugate,
    difference_bound,
    enumerate_basis,
    minsum_quadratic,
    satisfies_conditions,
    tally,
)
from .rootdata import (
    InvalidRankError,
    RectangularWeight,
    TwistedRootDatum,
    build_datum,
    dual_coordinates,
    lattice_ball,
    orbit_projections,
    weight_pairing,
)
from .series import (
    GradedSeries,
    InsufficientPrecisionError,
    equal_to_order,
    inv_pochhammer_finite,
    inv_pochhammer_infinite,
    monomial,
)
from .verification import (
    FAIL,
    INSUFFICIENT_PRECISION,
    PASS,
    VerificationReport,
    verify_corollary,
    verify_level_one,
    verify_minsum,
    verify_para,
    verify_para_examples,
    verify_psp,
    verify_verma,
)

__version__ = "0.1.0"
