"""Pseudo-unitary linear algebra for U(n,m).

The indefinite Hermitian form is F(v, w) = v* L w with L = diag(-I_n, I_m).
Matrices g with g* L g = L form the group U(n,m); its Lie algebra u(n,m)
consists of all a with a* L + L a = 0 and splits into the block-diagonal part
(u(n) + u(m)) and the block-off-diagonal part. The inner product used
throughout the library is <a, b> = Re(tr(a* b)) / 2.

Complex matrices travel as plain numpy arrays (complex128); the JSON codec at
the bottom fixes the on-disk format shared by the CLI and any file inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .config import DEFAULTS
from .errors import DimensionError, NotInAlgebraError, NumericalError


@dataclass(frozen=True)
class Signature:
    """Block sizes (n, m) of the form matrix diag(-I_n, I_m)."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DimensionError("signature blocks must satisfy n >= 1 and m >= 1")

    @property
    def size(self) -> int:
        return self.n + self.m


class Check(NamedTuple):
    ok: bool
    residual: float


def check_complex_matrix(a, rows=None, cols=None, name="matrix") -> np.ndarray:
    """Validate and return ``a`` as a finite complex128 2-D array."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be a 2-D matrix, got shape {arr.shape}")
    if rows is not None and arr.shape[0] != rows:
        raise DimensionError(f"{name} must have {rows} rows, got {arr.shape[0]}")
    if cols is not None and arr.shape[1] != cols:
        raise DimensionError(f"{name} must have {cols} columns, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} entries must be finite")
    return arr


def check_square(a, sig: Signature | None = None, name="matrix") -> np.ndarray:
    size = sig.size if sig is not None else None
    arr = check_complex_matrix(a, rows=size, cols=size, name=name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    return arr


def form_weights(sig: Signature) -> np.ndarray:
    """Diagonal of L = diag(-I_n, I_m) as a real vector."""
    d = np.ones(sig.size)
    d[: sig.n] = -1.0
    return d


def form_matrix(sig: Signature) -> np.ndarray:
    return np.diag(form_weights(sig)).astype(complex)


def hermitian_form(sig: Signature, v, w) -> complex:
    """F(v, w) = -sum_{k<=n} conj(v_k) w_k + sum_{s>n} conj(v_s) w_s."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    w = np.asarray(w, dtype=complex).reshape(-1)
    if v.shape[0] != sig.size or w.shape[0] != sig.size:
        raise DimensionError(
            f"vectors must have length {sig.size}, got {v.shape[0]} and {w.shape[0]}"
        )
    return complex(np.sum(form_weights(sig) * np.conj(v) * w))


def is_pseudo_unitary(sig: Signature, g, tol: float = DEFAULTS.pseudo_unitary_tol) -> Check:
    """Does g preserve the form?  residual = |g* L g - L| in Frobenius norm."""
    g = check_square(g, sig, name="g")
    lam = form_weights(sig)
    residual = float(np.linalg.norm(g.conj().T @ (lam[:, None] * g) - np.diag(lam)))
    return Check(ok=residual <= tol, residual=residual)


def killing_inner(a, b) -> float:
    """<a, b> = Re(tr(a* b)) / 2."""
    a = check_complex_matrix(a, name="a")
    b = check_complex_matrix(b, name="b")
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError("killing_inner needs two square matrices of equal size")
    return 0.5 * float(np.real(np.vdot(a, b)))


def killing_norm(a) -> float:
    return math.sqrt(max(killing_inner(a, a), 0.0))


def hat_embed(sig: Signature, x) -> np.ndarray:
    """Block-off-diagonal embedding [[0, x*], [x, 0]] of x in M_{m x n}."""
    x = check_complex_matrix(x, rows=sig.m, cols=sig.n, name="x")
    out = np.zeros((sig.size, sig.size), dtype=complex)
    out[: sig.n, sig.n :] = x.conj().T
    out[sig.n :, : sig.n] = x
    return out


def algebra_residual(sig: Signature, a) -> float:
    """Frobenius norm of a* L + L a (zero exactly on u(n,m))."""
    a = check_square(a, sig, name="a")
    lam = form_weights(sig)
    return float(np.linalg.norm(a.conj().T * lam[None, :] + lam[:, None] * a))


def decompose_h_m(sig: Signature, a, tol: float = DEFAULTS.algebra_tol):
    """Split a in u(n,m) into its block-diagonal and block-off-diagonal parts.

    The parts sum to the input exactly and are orthogonal for killing_inner.
    """
    a = check_square(a, sig, name="a")
    residual = algebra_residual(sig, a)
    if residual > tol:
        raise NotInAlgebraError(
            f"matrix is not form-anti-Hermitian (residual {residual:.3e} > {tol:.1e})"
        )
    n = sig.n
    h_part = np.zeros_like(a)
    m_part = np.zeros_like(a)
    h_part[:n, :n] = a[:n, :n]
    h_part[n:, n:] = a[n:, n:]
    m_part[:n, n:] = a[:n, n:]
    m_part[n:, :n] = a[n:, :n]
    return h_part, m_part


@dataclass(frozen=True)
class SvdTriple:
    """w = left @ Sigma @ right*, left in U(m), right in U(n), diag decreasing."""

    left: np.ndarray
    diag: np.ndarray
    right: np.ndarray
    rank: int


def complex_svd(w, group_tol: float = DEFAULTS.group_tol) -> SvdTriple:
    """Full SVD of a complex rectangular matrix with a relative rank cutoff."""
    w = check_complex_matrix(w, name="w")
    try:
        left, diag, vh = np.linalg.svd(w, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular value decomposition failed: {exc}") from exc
    rank = int(np.sum(diag > group_tol * diag[0])) if diag[0] > 0.0 else 0
    return SvdTriple(left=left, diag=diag, right=vh.conj().T, rank=rank)


def expm_generic(a) -> np.ndarray:
    """Scaling-and-squaring matrix exponential (test oracle for closed forms)."""
    a = check_complex_matrix(a, name="a")
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expm_generic needs a square matrix, got {a.shape}")
    with np.errstate(over="ignore", invalid="ignore"):
        out = scipy.linalg.expm(a)
    if not np.all(np.isfinite(out)):
        raise NumericalError("matrix exponential overflowed")
    return out


# === JSON codec for complex matrices ===
# {"rows": R, "cols": C, "re": [...], "im": [...]} with row-major flattening.

def matrix_to_json(a) -> dict:
    a = check_complex_matrix(a, name="matrix")
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(v) for v in a.real.ravel()],
        "im": [float(v) for v in a.imag.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise DimensionError("matrix JSON must be an object with rows/cols/re/im")
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionError(f"bad matrix JSON: {exc}") from exc
    if rows < 1 or cols < 1:
        raise DimensionError("matrix JSON needs rows >= 1 and cols >= 1")
    if re.shape != (rows * cols,) or im.shape != (rows * cols,):
        raise DimensionError("matrix JSON re/im lengths must equal rows*cols")
    return check_complex_matrix((re + 1j * im).reshape(rows, cols), name="matrix")
