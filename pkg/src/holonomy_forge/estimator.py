"""Estimator-style facade over the functional API.

fit() ingests the defining matrix; transform() maps closed curves to holonomy
results.  Parameters follow the usual convention: stored verbatim in
__init__, validated in fit, fitted state on trailing-underscore attributes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .algebra import Signature, check_complex_matrix
from .curves import ClosedCurve, curve_from_json
from .holonomy import HolonomyResult, holonomy
from .surface import build_surface
from .transport import compare_holonomies, integrate_lift


class SurfaceHolonomy(BaseEstimator):
    """Holonomy of horizontally lifted closed curves over a matrix surface.

    Parameters
    ----------
    group_tol : float, default=1e-9
        Relative threshold for merging near-equal singular values.
    samples : int, default=4096
        Quadrature nodes per curve (rounded up to a multiple of 4, min 64).
    ode_steps : int, default=16384
        Steps for the transport check when run_transport is set.
    run_transport : bool, default=False
        Also integrate the lift ODE per curve and attach the endpoint gap.

    Attributes
    ----------
    surface_ : SurfaceSpec
        Spectral data of the fitted matrix.
    signature_ : Signature
        Block sizes (n, m) inferred from the input shape.
    oracle_gaps_ : list of float
        Per-curve closed-form vs ODE endpoint distances from the last
        transform call, when run_transport is set.

    Examples
    --------
    >>> import numpy as np
    >>> from holonomy_forge import SurfaceHolonomy, circle
    >>> est = SurfaceHolonomy().fit(np.array([[2.0]], dtype=complex))
    >>> res = est.transform([circle(1.0)])[0]
    >>> bool(abs(res.area0 - np.pi * np.sinh(1.0) ** 2) < 1e-9)
    True
    """

    def __init__(self, group_tol: float = 1e-9, samples: int = 4096,
                 ode_steps: int = 16384, run_transport: bool = False):
        self.group_tol = group_tol
        self.samples = samples
        self.ode_steps = ode_steps
        self.run_transport = run_transport

    def fit(self, X, y=None):
        """Build the surface for matrix X (shape (m, n) sets the signature)."""
        X = check_complex_matrix(np.asarray(X), name="X")
        self.signature_ = Signature(n=X.shape[1], m=X.shape[0])
        self.surface_ = build_surface(self.signature_, X, group_tol=self.group_tol)
        return self

    def _check_fitted(self):
        if not hasattr(self, "surface_"):
            raise NotFittedError(
                "this SurfaceHolonomy instance is not fitted yet; call fit first"
            )

    def _as_curves(self, curves) -> list[ClosedCurve]:
        if isinstance(curves, (ClosedCurve, dict)):
            curves = [curves]
        out = []
        for c in curves:
            if isinstance(c, dict):
                c = curve_from_json(c, samples=self.samples)
            out.append(c)
        return out

    def transform(self, curves) -> list[HolonomyResult]:
        """Holonomy result per curve (ClosedCurve or curve JSON dict)."""
        self._check_fitted()
        results = []
        gaps = []
        for curve in self._as_curves(curves):
            res = holonomy(self.surface_, curve)
            if self.run_transport:
                trace = integrate_lift(self.surface_, curve, steps=self.ode_steps)
                gaps.append(compare_holonomies(res, trace))
            results.append(res)
        if self.run_transport:
            self.oracle_gaps_ = gaps
        return results

    def predict(self, curves) -> list[np.ndarray]:
        """Just the unitary holonomy matrices, one per curve."""
        return [res.holonomy for res in self.transform(curves)]
