"""Surface data attached to a nonzero matrix X: spectral frame, point map, area forms.

X in M_{m x n}(C) is normalized to W = X / |X_hat| so that the singular values
of W satisfy sum_j sigma_j^2 = 1, and the surface through the base point is
swept out by z = r e^{i theta} |-> exp(hat(zW)).  With W = B Sigma A* everything
reduces to scalar functions of the sigma_j evaluated in the (A, B) frame:

  point map      exp(hat(zW)) = Om [[cosh(sig r), e^{-i th} sinh(sig r)], ...] Om*
  area potential P0(r) = sum_j sinh^2(sigma_j r) / 2
  area density   (metric-induced) sqrt(sum_j sinh^2(2 sigma_j r)) / 2

where Om = diag(A, B).  The left-translated coordinate derivatives d_r and
d_theta are assembled the same way; the diagonal blocks of d_theta carry
-i sinh^2(sigma_j r) type entries and vanish at r = 0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.integrate

from .algebra import (
    Signature,
    SvdTriple,
    check_complex_matrix,
    complex_svd,
    hat_embed,
    killing_inner,
    killing_norm,
)
from .config import DEFAULTS
from .errors import DimensionError, NumericalError, TrivialInputError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)


@dataclass(frozen=True)
class SurfaceSpec:
    """Immutable spectral data of one surface; input to every downstream op."""

    sig: Signature
    x: np.ndarray                       # defining matrix, m x n
    x_norm: float                       # |X_hat| = Frobenius norm of x
    w: np.ndarray                       # x / x_norm
    svd: SvdTriple                      # of w
    sigma: np.ndarray                   # length n, zero-padded past the rank
    rank: int                           # q = count of sigma_j > group_tol * sigma_1
    groups: tuple[tuple[int, ...], ...] # partition of range(rank) by equal sigma
    group_sigma: np.ndarray             # strictly decreasing representatives

    @property
    def p(self) -> int:
        """Number of distinct positive singular values."""
        return len(self.groups)

    def to_json(self) -> dict:
        return {
            "signature": {"n": self.sig.n, "m": self.sig.m},
            "x_norm": float(self.x_norm),
            "sigma": [float(v) for v in self.sigma],
            "rank": int(self.rank),
            "groups": [list(g) for g in self.groups],
            "group_sigma": [float(v) for v in self.group_sigma],
        }


def build_surface(sig: Signature, x, group_tol: float = DEFAULTS.group_tol) -> SurfaceSpec:
    """Normalize x, take its SVD, and partition the singular values.

    Repeated singular values are grouped when they sit within
    group_tol * sigma_1 of each other; each group is represented by its mean.
    """
    x = check_complex_matrix(x, rows=sig.m, cols=sig.n, name="x")
    xhat = hat_embed(sig, x)
    x_norm = killing_norm(xhat)  # equals the Frobenius norm of x
    if x_norm == 0.0:
        raise TrivialInputError("x is the zero matrix; a nontrivial input is required")
    w = x / x_norm
    svd = complex_svd(w, group_tol=group_tol)
    a = svd.diag.shape[0]  # min(n, m)
    sigma = np.zeros(sig.n)
    sigma[:a] = svd.diag
    groups: list[tuple[int, ...]] = []
    reps: list[float] = []
    spread = group_tol * float(svd.diag[0])
    j = 0
    while j < svd.rank:
        k = j
        while k + 1 < svd.rank and svd.diag[j] - svd.diag[k + 1] <= spread:
            k += 1
        groups.append(tuple(range(j, k + 1)))
        reps.append(float(np.mean(svd.diag[j : k + 1])))
        j = k + 1
    return SurfaceSpec(
        sig=sig,
        x=x,
        x_norm=x_norm,
        w=w,
        svd=svd,
        sigma=sigma,
        rank=svd.rank,
        groups=tuple(groups),
        group_sigma=np.asarray(reps),
    )


def _omega_frame(s: SurfaceSpec) -> np.ndarray:
    """Om = diag(A, B), the unitary change to the SVD frame."""
    n, m = s.sig.n, s.sig.m
    om = np.zeros((n + m, n + m), dtype=complex)
    om[:n, :n] = s.svd.right
    om[n:, n:] = s.svd.left
    return om


def surface_point(s: SurfaceSpec, r: float, theta: float) -> np.ndarray:
    """Closed-form exp(hat(zW)) for z = r e^{i theta}, in the SVD frame."""
    n, m = s.sig.n, s.sig.m
    a = s.svd.diag.shape[0]
    sv = s.svd.diag
    mid = np.zeros((n + m, n + m), dtype=complex)
    idx_n = np.arange(n)
    idx_m = np.arange(m)
    mid[idx_n, idx_n] = np.cosh(s.sigma * r)
    sig_m = np.zeros(m)
    sig_m[:a] = sv
    mid[n + idx_m, n + idx_m] = np.cosh(sig_m * r)
    lam = np.exp(1j * theta) * np.sinh(sv * r)  # length a
    mid[n + np.arange(a), np.arange(a)] = lam
    mid[np.arange(a), n + np.arange(a)] = np.conj(lam)
    om = _omega_frame(s)
    return om @ mid @ om.conj().T


def exp_surface_point(s: SurfaceSpec, z: complex) -> np.ndarray:
    """The surface point exp(hat(zW)) in U(n,m)."""
    z = complex(z)
    return surface_point(s, abs(z), math.atan2(z.imag, z.real))


def omega0_potential(s: SurfaceSpec, r):
    """P0(r) = sum_j sinh^2(sigma_j r) / 2.  Accepts scalar or array r."""
    r = np.asarray(r, dtype=float)
    val = 0.5 * np.sum(np.sinh(np.multiply.outer(r, s.sigma)) ** 2, axis=-1)
    return float(val) if val.ndim == 0 else val


def omega1_density(s: SurfaceSpec, r):
    """Metric-induced area density sqrt(sum_j sinh^2(2 sigma_j r)) / 2."""
    r = np.asarray(r, dtype=float)
    val = 0.5 * np.sqrt(np.sum(np.sinh(2.0 * np.multiply.outer(r, s.sigma)) ** 2, axis=-1))
    return float(val) if val.ndim == 0 else val


def omega1_potential(s: SurfaceSpec, r: float, tol: float = DEFAULTS.potential_tol) -> float:
    """F1(r) = integral_0^r omega1_density, by adaptive quadrature."""
    r = float(r)
    if r == 0.0:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.integrate.IntegrationWarning)
        try:
            val, err = scipy.integrate.quad(
                lambda u: omega1_density(s, u), 0.0, r, epsabs=tol, epsrel=1e-12, limit=200
            )
        except scipy.integrate.IntegrationWarning as exc:
            raise NumericalError(f"area-potential quadrature did not converge: {exc}") from exc
    if not np.isfinite(val) or err > max(10.0 * tol, 1e-10 * abs(val)):
        raise NumericalError(
            f"area-potential quadrature error estimate {err:.3e} too large at r = {r}"
        )
    return float(val)


def omega1_potential_grid(s: SurfaceSpec, r_values) -> np.ndarray:
    """F1 on a batch of radii: fixed 64-node Gauss-Legendre per radius.

    The density is entire, so the fixed rule is exact to machine precision on
    the radii this library meets; agreement with omega1_potential is covered
    by tests.  This is the fast path for line integrals over curve grids.
    """
    r_values = np.asarray(r_values, dtype=float)
    half = 0.5 * r_values[..., None]
    pts = half * (_GL_NODES + 1.0)  # map [-1, 1] -> [0, r]
    dens = 0.5 * np.sqrt(np.sum(np.sinh(2.0 * np.multiply.outer(pts, s.sigma)) ** 2, axis=-1))
    return np.sum(dens * _GL_WEIGHTS, axis=-1) * half[..., 0]


@dataclass(frozen=True)
class TangentPair:
    """Left-translated coordinate derivatives at z, plus the horizontal part."""

    d_r: np.ndarray
    d_theta: np.ndarray
    d_theta_horizontal: np.ndarray


def tangent_pushforwards(s: SurfaceSpec, z: complex) -> TangentPair:
    """d_r and d_theta at z = r e^{i theta}, assembled in the SVD frame.

    d_r is block-off-diagonal with blocks e^{+-i theta} W.  d_theta has
    diagonal blocks -+ (i/2)(cosh(2 sigma_j r) - 1) in the (A, B) frame (they
    vanish at r = 0) and off-diagonal blocks carrying sinh(2 sigma_j r) / 2.
    """
    z = complex(z)
    r = abs(z)
    theta = math.atan2(z.imag, z.real)
    n, m = s.sig.n, s.sig.m
    a = s.svd.diag.shape[0]
    eith = complex(math.cos(theta), math.sin(theta))

    d_r = np.zeros((n + m, n + m), dtype=complex)
    d_r[:n, n:] = np.conj(eith) * s.w.conj().T
    d_r[n:, :n] = eith * s.w

    c2 = np.cosh(2.0 * s.svd.diag * r) - 1.0       # = 2 sinh^2(sigma_j r)
    ups = np.sinh(2.0 * s.svd.diag * r)
    mid = np.zeros((n + m, n + m), dtype=complex)
    mid[np.arange(a), np.arange(a)] = -0.5j * c2
    mid[n + np.arange(a), n + np.arange(a)] = 0.5j * c2
    mid[np.arange(a), n + np.arange(a)] = -0.5j * np.conj(eith) * ups
    mid[n + np.arange(a), np.arange(a)] = 0.5j * eith * ups
    om = _omega_frame(s)
    d_theta = om @ mid @ om.conj().T

    horiz = np.zeros_like(d_theta)
    horiz[:n, n:] = d_theta[:n, n:]
    horiz[n:, :n] = d_theta[n:, :n]
    return TangentPair(d_r=d_r, d_theta=d_theta, d_theta_horizontal=horiz)


class GeneratorTriple(NamedTuple):
    v: np.ndarray   # diag(i (X*X)^k, -i (XX*)^k)
    x: np.ndarray   # hat of X (X*X)^{k-1}
    ix: np.ndarray  # hat of i X (X*X)^{k-1}


def lie_generators(s: SurfaceSpec, k_max: int) -> list[GeneratorTriple]:
    """Generator families built from powers of X*X, for k = 1 .. k_max."""
    if k_max < 1:
        raise DimensionError("k_max must be >= 1")
    n, m = s.sig.n, s.sig.m
    xsx = s.x.conj().T @ s.x
    xxs = s.x @ s.x.conj().T
    pow_n = np.eye(n, dtype=complex)
    pow_m = np.eye(m, dtype=complex)
    low = s.x.copy()  # X (X*X)^{k-1}
    out: list[GeneratorTriple] = []
    for _ in range(k_max):
        pow_n = pow_n @ xsx
        pow_m = pow_m @ xxs
        v = np.zeros((n + m, n + m), dtype=complex)
        v[:n, :n] = 1j * pow_n
        v[n:, n:] = -1j * pow_m
        out.append(
            GeneratorTriple(v=v, x=hat_embed(s.sig, low), ix=hat_embed(s.sig, 1j * low))
        )
        low = low @ xsx
    return out


@dataclass(frozen=True)
class GeodesicCheck:
    ok: bool
    residual: float               # bracket-closure residual, scale-normalized
    bracket_residual: float | None  # three-identity residual when p = 1, else None


def totally_geodesic_check(s: SurfaceSpec, tol: float = DEFAULTS.geodesic_tol) -> GeodesicCheck:
    """Does the plane spanned by hat(X), hat(iX) close under double brackets?

    residual = max over w in [[m', m'], m'] of |w - proj_{m'} w| / max(1, |w|),
    projecting with killing_inner onto m' = span{hat(X), hat(iX)} (the two
    spanning vectors are orthogonal).  When all positive singular values agree
    (p = 1) the three scaled bracket identities with V = diag(iW*W, -iWW*) are
    also evaluated and their worst Frobenius residual reported.
    """
    e1 = hat_embed(s.sig, s.x)
    e2 = hat_embed(s.sig, 1j * s.x)
    n1 = killing_inner(e1, e1)
    n2 = killing_inner(e2, e2)

    def brk(a, b):
        return a @ b - b @ a

    b0 = brk(e1, e2)
    residual = 0.0
    for w in (brk(b0, e1), brk(b0, e2)):
        rem = w - (killing_inner(w, e1) / n1) * e1 - (killing_inner(w, e2) / n2) * e2
        residual = max(residual, float(np.linalg.norm(rem)) / max(1.0, float(np.linalg.norm(w))))

    bracket_residual = None
    if s.p == 1:
        q = s.rank
        sq = math.sqrt(q)
        w_hat = hat_embed(s.sig, s.w)
        iw_hat = hat_embed(s.sig, 1j * s.w)
        v_hat = np.zeros_like(w_hat)
        v_hat[: s.sig.n, : s.sig.n] = 1j * (s.w.conj().T @ s.w)
        v_hat[s.sig.n :, s.sig.n :] = -1j * (s.w @ s.w.conj().T)
        r1 = np.linalg.norm(brk(sq * w_hat, sq * iw_hat) - 2.0 * q * v_hat)
        r2 = np.linalg.norm(brk(q * v_hat, sq * w_hat) + 2.0 * sq * iw_hat)
        r3 = np.linalg.norm(brk(q * v_hat, sq * iw_hat) - 2.0 * sq * w_hat)
        bracket_residual = float(max(r1, r2, r3))

    return GeodesicCheck(ok=residual <= tol, residual=residual, bracket_residual=bracket_residual)


def point_separation_check(
    s: SurfaceSpec, z1: complex, z2: complex, tol: float = DEFAULTS.separation_tol
) -> bool:
    """True iff exp(-hat(z1 W)) exp(hat(z2 W)) is block-diagonal (in U(n) x U(m)).

    The product leaves the stabilizer exactly when z1 != z2, so this doubles
    as a numerical injectivity test for the point map.
    """
    g = exp_surface_point(s, -complex(z1)) @ exp_surface_point(s, complex(z2))
    n = s.sig.n
    off = math.hypot(float(np.linalg.norm(g[:n, n:])), float(np.linalg.norm(g[n:, :n])))
    return off <= tol
