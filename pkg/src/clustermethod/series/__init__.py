"""Exact truncated power series, ODE residuals and generating-function identities."""
from .identities import check_identity
from .ode import OdeSpec, builtin_ode, ode_for_pattern, ode_residual, verify_ode
from .power import (
    EgfSeries,
    OgfSeries,
    PowerSeries,
    avoiders,
    closed_form_monotone_omega,
    closed_form_nonoverlap_b2,
    egf_from_ogf,
    ogf_from_egf,
    omega_series,
    p_series,
    reciprocal,
)
from .upoly import UPoly
