"""Holonomy of the horizontal lift over a closed curve, in closed form.

For a surface with p distinct positive singular values s_1 > ... > s_p the
vertical correction is generated by powers of W*W, with coefficients psi_k(t)
solving the p x p linear system

    sum_{k=1..p} s_l^{2k} psi_k'(t) = theta'(t) sinh^2(s_l r(t)),   l = 1 .. p.

The coefficient matrix C[l][k] = s_l^{2k} is Vandermonde-like and constant
along the curve, so the trajectory is a cumulative integral of C^{-1} b(t).
The endpoint holonomy is exp(Psi) with

    Psi = sum_k i psi_k(1) (W*W)^k = A diag(i sum_k sigma_j^{2k} psi_k(1)) A*,

and its trace equals 2i times the enclosed flat-form area, which gives a
self-check carried on every result.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from .algebra import expm_generic
from .config import DEFAULTS
from .curves import ClosedCurve
from .errors import (
    DimensionError,
    IllConditionedError,
    NotApplicableError,
    NumericalError,
    OrientationWarning,
)
from .surface import SurfaceSpec, omega0_potential, omega1_potential_grid


@dataclass(frozen=True)
class VandermondeSystem:
    c: np.ndarray        # C[l][k] = rep_l^(2k), shape (p, p)
    c_inverse: np.ndarray
    cond: float


def vandermonde_system(s: SurfaceSpec, cond_limit: float = DEFAULTS.cond_limit) -> VandermondeSystem:
    """The mode-coupling matrix over the distinct singular values, inverted.

    Raises IllConditionedError when the 2-norm condition number exceeds
    cond_limit; the usual cause is two nearly equal singular values that the
    grouping kept apart, and the fix is a larger group_tol.
    """
    reps = s.group_sigma
    p = reps.shape[0]
    powers = 2 * np.arange(1, p + 1)
    c = reps[:, None] ** powers[None, :]
    cond = float(np.linalg.cond(c))
    if not np.isfinite(cond) or cond > cond_limit:
        raise IllConditionedError(
            f"mode-coupling matrix condition number {cond:.3e} exceeds {cond_limit:.1e}; "
            "merge near-equal singular values by raising group_tol"
        )
    c_inverse = np.linalg.inv(c)
    return VandermondeSystem(c=c, c_inverse=c_inverse, cond=cond)


@dataclass(frozen=True)
class PsiTrajectory:
    times: np.ndarray      # (N+1,) uniform grid on [0, 1]
    values: np.ndarray     # (N+1, p), psi_k at each node, psi(0) = 0
    psi_final: np.ndarray  # (p,)
    ode_residual: float    # max node defect of C psi' = b
    quad_error: float      # Richardson estimate of the integration error


def solve_psi_trajectory(
    s: SurfaceSpec, curve: ClosedCurve, quad_tol: float = DEFAULTS.quad_tol
) -> PsiTrajectory:
    """Integrate psi' = C^{-1} b(t) over the curve's uniform grid.

    Composite Simpson on N + 1 nodes (N a multiple of 4); the coarse/fine
    Richardson difference must stay within quad_tol relative to the result.
    """
    system = vandermonde_system(s)
    t = curve.grid()
    n_steps = t.shape[0] - 1
    r = np.asarray(curve.r(t), dtype=float)
    th_dot = np.asarray(curve.theta_dot(t), dtype=float)
    b = th_dot[None, :] * np.sinh(s.group_sigma[:, None] * r[None, :]) ** 2  # (p, N+1)
    if not np.all(np.isfinite(b)):
        raise NumericalError("curve data produced non-finite integrand values")
    dpsi = system.c_inverse @ b  # (p, N+1)
    values = cumulative_simpson(dpsi, dx=1.0 / n_steps, axis=-1, initial=0.0)
    psi_final = values[:, -1].copy()
    half = simpson(dpsi[:, ::2], dx=2.0 / n_steps, axis=-1)
    quad_error = float(np.max(np.abs(psi_final - half))) / 15.0
    scale = max(1.0, float(np.max(np.abs(psi_final))))
    if quad_error > quad_tol * scale:
        raise NumericalError(
            f"quadrature error estimate {quad_error:.3e} exceeds tolerance; raise samples"
        )
    ode_residual = float(np.max(np.abs(system.c @ dpsi - b)))
    return PsiTrajectory(
        times=t,
        values=values.T.copy(),
        psi_final=psi_final,
        ode_residual=ode_residual,
        quad_error=quad_error,
    )


def assemble_psi(s: SurfaceSpec, psi_final) -> np.ndarray:
    """Psi = sum_k i psi_k (W*W)^k as an n x n anti-Hermitian matrix.

    Built diagonally in the right-singular frame; the direct power sum is
    recomputed as a cross-check and must agree to floating-point accuracy
    (scaled by the coefficient magnitude, since the power sum cancels).
    """
    psi_final = np.asarray(psi_final, dtype=float)
    p = s.p
    if psi_final.shape != (p,):
        raise DimensionError(f"psi coefficient vector must have length {p}")
    powers = 2 * np.arange(1, p + 1)
    diag = (s.sigma[:, None] ** powers[None, :]) @ psi_final  # length n
    a_frame = s.svd.right
    psi = a_frame @ (1j * diag[:, None] * a_frame.conj().T)

    wsw = s.w.conj().T @ s.w
    acc = np.zeros_like(psi)
    mat = np.eye(s.sig.n, dtype=complex)
    for k in range(p):
        mat = mat @ wsw
        acc = acc + 1j * psi_final[k] * mat
    tol = 1e-12 * max(1.0, float(np.sum(np.abs(psi_final))))
    gap = float(np.linalg.norm(psi - acc))
    if gap > tol:
        raise NumericalError(f"vertical-generator assembly routes disagree by {gap:.3e}")
    return psi


def enclosed_area(
    s: SurfaceSpec, curve: ClosedCurve, form: str = "omega0", quad_tol: float = DEFAULTS.quad_tol
) -> float:
    """Signed area enclosed by the curve, as the line integral of P(r) theta'.

    form selects the flat potential ("omega0") or the metric-induced one
    ("omega1").  Same Simpson + Richardson layout as the psi trajectory.
    """
    t = curve.grid()
    n_steps = t.shape[0] - 1
    r = np.asarray(curve.r(t), dtype=float)
    th_dot = np.asarray(curve.theta_dot(t), dtype=float)
    if form == "omega0":
        pot = omega0_potential(s, r)
    elif form == "omega1":
        pot = omega1_potential_grid(s, r)
    else:
        raise DimensionError(f'form must be "omega0" or "omega1", got {form!r}')
    integrand = pot * th_dot
    if not np.all(np.isfinite(integrand)):
        raise NumericalError("area integrand is not finite")
    full = float(simpson(integrand, dx=1.0 / n_steps))
    half = float(simpson(integrand[::2], dx=2.0 / n_steps))
    est = abs(full - half) / 15.0
    if est > quad_tol * max(1.0, abs(full)):
        raise NumericalError(
            f"area quadrature error estimate {est:.3e} exceeds tolerance; raise samples"
        )
    return full


@dataclass(frozen=True)
class HolonomyResult:
    psi: np.ndarray           # n x n anti-Hermitian generator
    holonomy: np.ndarray      # exp(psi), unitary
    area0: float              # enclosed area, flat form
    area1: float              # enclosed area, metric-induced form
    trace_residual: float     # |trace(psi) - 2i area0|
    psi_coeffs: np.ndarray    # psi_k(1), length p

    def to_json(self) -> dict:
        from .algebra import matrix_to_json

        return {
            "psi": matrix_to_json(self.psi),
            "holonomy": matrix_to_json(self.holonomy),
            "area0": float(self.area0),
            "area1": float(self.area1),
            "trace_residual": float(self.trace_residual),
            "psi_coeffs": [float(v) for v in self.psi_coeffs],
        }


def holonomy(
    s: SurfaceSpec, curve: ClosedCurve, quad_tol: float = DEFAULTS.quad_tol
) -> HolonomyResult:
    """End-to-end closed-form holonomy of the horizontal lift over the curve."""
    traj = solve_psi_trajectory(s, curve, quad_tol=quad_tol)
    psi = assemble_psi(s, traj.psi_final)
    hol = expm_generic(psi)
    area0 = enclosed_area(s, curve, form="omega0", quad_tol=quad_tol)
    area1 = enclosed_area(s, curve, form="omega1", quad_tol=quad_tol)
    if area0 < 0.0:
        warnings.warn(
            f"curve encloses negative flat area {area0:.6f}; the orientation is reversed",
            OrientationWarning,
            stacklevel=2,
        )
    trace_residual = float(abs(np.trace(psi) - 2j * area0))
    return HolonomyResult(
        psi=psi,
        holonomy=hol,
        area0=area0,
        area1=area1,
        trace_residual=trace_residual,
        psi_coeffs=traj.psi_final,
    )


def span_membership_residual(s: SurfaceSpec, psi: np.ndarray, k_max: int | None = None) -> float:
    """Distance from psi to span_R{ i (W*W)^k : k = 1 .. k_max }, relative.

    Solved as a real least-squares problem over the stacked real and
    imaginary parts.  Defaults k_max to the surface rank, which always
    suffices since higher powers repeat on the spectral support.
    """
    if k_max is None:
        k_max = max(1, s.rank)
    n = s.sig.n
    wsw = s.w.conj().T @ s.w
    cols = []
    mat = np.eye(n, dtype=complex)
    for _ in range(k_max):
        mat = mat @ wsw
        gen = 1j * mat
        cols.append(np.concatenate([gen.real.ravel(), gen.imag.ravel()]))
    basis = np.stack(cols, axis=1)
    target = np.concatenate([np.asarray(psi).real.ravel(), np.asarray(psi).imag.ravel()])
    coef, *_ = np.linalg.lstsq(basis, target, rcond=None)
    resid = float(np.linalg.norm(target - basis @ coef))
    return resid / max(1.0, float(np.linalg.norm(target)))


def corollary_diagonal_form(s: SurfaceSpec, result: HolonomyResult, tol: float = 1e-8):
    """For p = 1 the holonomy is scalar on the spectral support.

    Verifies psi = A diag(i (2/q) area0 on the first q entries, 0 after) A*
    and that the two area measures coincide.  Raises NotApplicableError when
    the surface has more than one distinct singular value.
    """
    from .algebra import Check

    if s.p != 1:
        raise NotApplicableError(
            "the scalar-holonomy form needs a single distinct singular value"
        )
    q = s.rank
    diag = np.zeros(s.sig.n)
    diag[:q] = 2.0 * result.area0 / q
    a_frame = s.svd.right
    target = a_frame @ (1j * diag[:, None] * a_frame.conj().T)
    residual = max(
        float(np.linalg.norm(result.psi - target)), abs(result.area0 - result.area1)
    )
    return Check(ok=residual <= tol, residual=residual)
