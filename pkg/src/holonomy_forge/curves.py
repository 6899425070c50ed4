"""Closed parameter curves t in [0, 1] |-> z(t) = r(t) e^{i theta(t)}.

A curve carries vectorized callables for r, theta and their derivatives plus
a default sample count for the quadrature grids downstream.  theta(1) may
differ from theta(0) by a multiple of 2 pi (winding); r must match exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .config import DEFAULTS
from .errors import DimensionError

_TWO_PI = 2.0 * math.pi


def _normalize_samples(samples: int) -> int:
    samples = int(samples)
    if samples < 64:
        samples = 64
    # composite Simpson with halved-grid error estimate needs a multiple of 4
    return samples + (-samples) % 4


def _const(value: float) -> Callable:
    value = float(value)

    def f(t):
        return np.full(np.shape(t), value) if np.ndim(t) else value

    return f


@dataclass(frozen=True)
class ClosedCurve:
    r: Callable
    theta: Callable
    r_dot: Callable
    theta_dot: Callable
    samples: int = DEFAULTS.samples
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "samples", _normalize_samples(self.samples))
        r0, r1 = float(self.r(0.0)), float(self.r(1.0))
        if abs(r1 - r0) > DEFAULTS.closed_tol:
            raise DimensionError(f"curve radius is not closed: |r(1) - r(0)| = {abs(r1 - r0):.3e}")
        dth = float(self.theta(1.0)) - float(self.theta(0.0))
        if abs(dth - _TWO_PI * round(dth / _TWO_PI)) > DEFAULTS.closed_tol:
            raise DimensionError(
                f"curve angle is not closed modulo 2 pi: theta(1) - theta(0) = {dth:.6f}"
            )
        rr = np.asarray(self.r(np.linspace(0.0, 1.0, 257)), dtype=float)
        if np.min(rr) < -DEFAULTS.closed_tol:
            raise DimensionError(f"curve radius dips negative: min r = {np.min(rr):.3e}")

    def grid(self, samples: int | None = None) -> np.ndarray:
        """Uniform parameter grid with samples + 1 nodes (endpoints included)."""
        n = _normalize_samples(self.samples if samples is None else samples)
        return np.linspace(0.0, 1.0, n + 1)

    def to_json(self) -> dict:
        return {"description": self.description or "custom", "samples": self.samples}


def circle(radius: float, samples: int = DEFAULTS.samples) -> ClosedCurve:
    """r = radius, theta = 2 pi t."""
    radius = float(radius)
    if radius < 0.0:
        raise DimensionError("circle radius must be nonnegative")
    return ClosedCurve(
        r=_const(radius),
        theta=lambda t: _TWO_PI * np.asarray(t, dtype=float),
        r_dot=_const(0.0),
        theta_dot=_const(_TWO_PI),
        samples=samples,
        description=f"circle R={radius:g}",
    )


def ellipse(radius: float, eps: float, samples: int = DEFAULTS.samples) -> ClosedCurve:
    """r = radius (1 + eps cos 2 pi t), theta = 2 pi t; needs 0 <= eps < 1."""
    radius = float(radius)
    eps = float(eps)
    if radius < 0.0:
        raise DimensionError("ellipse radius must be nonnegative")
    if not 0.0 <= eps < 1.0:
        raise DimensionError("ellipse eccentricity must satisfy 0 <= eps < 1")
    return ClosedCurve(
        r=lambda t: radius * (1.0 + eps * np.cos(_TWO_PI * np.asarray(t, dtype=float))),
        theta=lambda t: _TWO_PI * np.asarray(t, dtype=float),
        r_dot=lambda t: -radius * eps * _TWO_PI * np.sin(_TWO_PI * np.asarray(t, dtype=float)),
        theta_dot=_const(_TWO_PI),
        samples=samples,
        description=f"ellipse R={radius:g} eps={eps:g}",
    )


def star(radius: float, eps: float, lobes: int = 3, samples: int = DEFAULTS.samples) -> ClosedCurve:
    """r = radius (1 + eps cos(lobes 2 pi t)), theta = 2 pi t; a lobed loop."""
    radius = float(radius)
    eps = float(eps)
    lobes = int(lobes)
    if radius < 0.0 or not 0.0 <= eps < 1.0 or lobes < 1:
        raise DimensionError("star needs radius >= 0, 0 <= eps < 1, lobes >= 1")
    w = lobes * _TWO_PI
    return ClosedCurve(
        r=lambda t: radius * (1.0 + eps * np.cos(w * np.asarray(t, dtype=float))),
        theta=lambda t: _TWO_PI * np.asarray(t, dtype=float),
        r_dot=lambda t: -radius * eps * w * np.sin(w * np.asarray(t, dtype=float)),
        theta_dot=_const(_TWO_PI),
        samples=samples,
        description=f"star R={radius:g} eps={eps:g} lobes={lobes}",
    )


def constant(radius: float, angle: float = 0.0) -> ClosedCurve:
    """Degenerate loop sitting at one point; useful as a null test."""
    return ClosedCurve(
        r=_const(radius),
        theta=_const(angle),
        r_dot=_const(0.0),
        theta_dot=_const(0.0),
        description=f"constant z={radius:g}*e^(i {angle:g})",
    )


def from_polar_samples(r_values, theta_values, samples: int | None = None) -> ClosedCurve:
    """Periodic cubic-spline curve through sampled (r_i, theta_i) at t_i = i/(L-1).

    The angle samples may wind; the integer winding w is split off so the
    residual theta(t) - 2 pi w t is periodic and splined as such.
    """
    r_values = np.asarray(r_values, dtype=float)
    theta_values = np.asarray(theta_values, dtype=float)
    if r_values.ndim != 1 or theta_values.ndim != 1 or r_values.shape != theta_values.shape:
        raise DimensionError("polar samples must be two equal-length 1-D arrays")
    size = r_values.shape[0]
    if size < 5:
        raise DimensionError("polar samples need at least 5 points")
    if not (np.all(np.isfinite(r_values)) and np.all(np.isfinite(theta_values))):
        raise DimensionError("polar samples must be finite")
    if abs(r_values[-1] - r_values[0]) > DEFAULTS.closed_tol:
        raise DimensionError("polar samples: r does not close")
    dth = theta_values[-1] - theta_values[0]
    winding = round(dth / _TWO_PI)
    if abs(dth - _TWO_PI * winding) > DEFAULTS.closed_tol:
        raise DimensionError("polar samples: theta does not close modulo 2 pi")

    t_nodes = np.linspace(0.0, 1.0, size)
    r_closed = r_values.copy()
    r_closed[-1] = r_closed[0]  # force exact periodicity for the spline
    theta_res = theta_values - _TWO_PI * winding * t_nodes
    theta_res = theta_res.copy()
    theta_res[-1] = theta_res[0]
    r_spline = CubicSpline(t_nodes, r_closed, bc_type="periodic")
    th_spline = CubicSpline(t_nodes, theta_res, bc_type="periodic")
    r_dot_spline = r_spline.derivative()
    th_dot_spline = th_spline.derivative()
    rate = _TWO_PI * winding

    return ClosedCurve(
        r=lambda t: r_spline(np.asarray(t, dtype=float)),
        theta=lambda t: th_spline(np.asarray(t, dtype=float))
        + rate * np.asarray(t, dtype=float),
        r_dot=lambda t: r_dot_spline(np.asarray(t, dtype=float)),
        theta_dot=lambda t: th_dot_spline(np.asarray(t, dtype=float)) + rate,
        samples=DEFAULTS.samples if samples is None else samples,
        description=f"polar samples L={size} winding={winding}",
    )


def curve_from_json(obj: dict, samples: int | None = None) -> ClosedCurve:
    """Build a curve from {"kind": "circle"|"ellipse"|"polar_samples", ...}."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DimensionError('curve JSON must be an object with a "kind" field')
    kind = obj["kind"]
    n = DEFAULTS.samples if samples is None else samples
    try:
        if kind == "circle":
            return circle(obj["R"], samples=n)
        if kind == "ellipse":
            return ellipse(obj["R"], obj.get("eps", 0.0), samples=n)
        if kind == "polar_samples":
            return from_polar_samples(obj["r"], obj["theta"], samples=n)
    except KeyError as exc:
        raise DimensionError(f"curve JSON kind {kind!r} is missing field {exc}") from exc
    raise DimensionError(f"unknown curve kind {kind!r}")


def reparametrize(curve: ClosedCurve, tau: Callable, tau_dot: Callable) -> ClosedCurve:
    """Precompose with t |-> tau(t); tau must map [0, 1] onto itself."""

    def wrap(f):
        return lambda t: f(tau(np.asarray(t, dtype=float)))

    def wrap_dot(f):
        def g(t):
            tt = np.asarray(t, dtype=float)
            return f(tau(tt)) * np.asarray(tau_dot(tt), dtype=float)

        return g

    return ClosedCurve(
        r=wrap(curve.r),
        theta=wrap(curve.theta),
        r_dot=wrap_dot(curve.r_dot),
        theta_dot=wrap_dot(curve.theta_dot),
        samples=curve.samples,
        description=f"{curve.description} (reparametrized)",
    )


def reverse(curve: ClosedCurve) -> ClosedCurve:
    """Orientation flip t |-> 1 - t."""

    def wrap(f, sign=1.0):
        def g(t):
            return sign * np.asarray(f(1.0 - np.asarray(t, dtype=float)))

        return g

    return ClosedCurve(
        r=wrap(curve.r),
        theta=wrap(curve.theta),
        r_dot=wrap(curve.r_dot, -1.0),
        theta_dot=wrap(curve.theta_dot, -1.0),
        samples=curve.samples,
        description=f"{curve.description} (reversed)",
    )
