"""Default tolerances and resolutions, collected in one immutable structure."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # spectral / algebra
    group_tol: float = 1e-9        # singular-value grouping, relative to sigma_1
    algebra_tol: float = 1e-10     # membership test |a* L + L a| for u(n,m)
    pseudo_unitary_tol: float = 1e-10

    # quadrature / ODE resolution
    samples: int = 4096            # Simpson panels per closed-curve integral
    quad_tol: float = 1e-10        # Richardson error bound for line integrals
    potential_tol: float = 1e-12   # adaptive-quadrature abs tol, omega1 potential
    ode_steps: int = 16384         # RK4 steps for the transport oracle
    drift_limit: float = 1e-6      # abort threshold for oracle unitarity drift
    cond_limit: float = 1e12       # grouped-system condition cutoff

    # report thresholds
    trace_tol: float = 1e-8        # |tr Psi - 2i area0|
    span_tol: float = 1e-10        # Psi least-squares span membership
    anti_hermitian_tol: float = 1e-12
    unitary_tol: float = 1e-10
    oracle_tol: float = 1e-6       # analytic-vs-transport holonomy agreement
    drift_tol: float = 1e-8        # reported drift bound (stricter than abort)
    separation_tol: float = 1e-9
    geodesic_tol: float = 1e-8
    bracket_tol: float = 1e-12
    closed_tol: float = 1e-10      # curve closedness


DEFAULTS = Tolerances()


@dataclass(frozen=True)
class RunConfig:
    """Per-run knobs shared by the command-line entry points."""

    samples: int = DEFAULTS.samples
    ode_steps: int = DEFAULTS.ode_steps
    group_tol: float = DEFAULTS.group_tol

    def __post_init__(self):
        from .errors import DimensionError

        if int(self.samples) < 64:
            raise DimensionError("samples must be at least 64")
        if int(self.ode_steps) < 64:
            raise DimensionError("ode_steps must be at least 64")
        if not (0.0 < float(self.group_tol) < 1.0):
            raise DimensionError("group_tol must lie in (0, 1)")
