import numpy as np
import numpy.testing as npt
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from holonomy_forge import SurfaceHolonomy, circle, ellipse


def _matrix(seed=0, n=2, m=3):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    return 1.4 * x / np.linalg.norm(x)


def test_params_roundtrip_and_clone():
    est = SurfaceHolonomy(group_tol=1e-8, samples=256, ode_steps=512, run_transport=True)
    params = est.get_params()
    assert params == {
        "group_tol": 1e-8,
        "samples": 256,
        "ode_steps": 512,
        "run_transport": True,
    }
    cloned = clone(est)
    assert cloned.get_params() == params
    est.set_params(samples=1024)
    assert est.get_params()["samples"] == 1024


def test_requires_fit():
    with pytest.raises(NotFittedError):
        SurfaceHolonomy().transform(circle(1.0))


def test_fit_sets_state():
    x = _matrix()
    est = SurfaceHolonomy().fit(x)
    assert est.signature_.n == 2 and est.signature_.m == 3
    npt.assert_array_equal(est.surface_.x, x)


def test_transform_accepts_curves_and_json():
    est = SurfaceHolonomy(samples=512).fit(_matrix())
    results = est.transform([circle(0.8), {"kind": "ellipse", "R": 0.7, "eps": 0.2}])
    assert len(results) == 2
    for res in results:
        assert res.trace_residual <= 1e-8
    single = est.transform(circle(0.8))
    npt.assert_allclose(single[0].holonomy, results[0].holonomy, atol=1e-14)


def test_predict_returns_unitaries():
    est = SurfaceHolonomy(samples=512).fit(_matrix(seed=1))
    (u,) = est.predict(circle(1.0))
    npt.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)


def test_transport_gap_tracking():
    est = SurfaceHolonomy(samples=512, ode_steps=2048, run_transport=True).fit(_matrix(seed=2))
    est.transform([ellipse(0.9, 0.25)])
    assert len(est.oracle_gaps_) == 1
    assert est.oracle_gaps_[0] <= 1e-8


def test_scalar_area_docs_example():
    est = SurfaceHolonomy().fit(np.array([[2.0]], dtype=complex))
    res = est.transform([circle(1.0)])[0]
    assert abs(res.area0 - np.pi * np.sinh(1.0) ** 2) < 1e-9
