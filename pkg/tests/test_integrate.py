import numpy as np
import pytest

from eomconv import integrate
from eomconv.errors import IntegrationError, InvalidParameterError


def test_complex_exponential():
    ts = np.linspace(0, 20, 41)
    y = integrate.solve(lambda t, y: 1j * y, np.array([1.0 + 0j]), ts, tol=1e-11)
    assert np.abs(y[:, 0] - np.exp(1j * ts)).max() < 1e-9


def test_time_dependent_rhs_hits_output_times():
    ts = [0.0, 0.3, 0.3, 1.7, 2.0]
    y = integrate.solve(lambda t, y: np.array([np.cos(t)]), np.array([0.0]), ts, tol=1e-12)
    assert np.allclose(y[:, 0], np.sin(ts), atol=1e-11)


def test_error_shrinks_with_tolerance():
    ts = [0.0, 10.0]
    errs = [abs(integrate.solve(lambda t, y: -1j * y, np.array([1 + 0j]), ts, tol=tol)[-1, 0] - np.exp(-10j))
            for tol in (1e-5, 1e-8, 1e-11)]
    assert errs[0] > errs[1] > errs[2]


def test_underflow_reports_last_time():
    # finite-time blow-up at t=1 forces the step size to collapse
    with pytest.raises(IntegrationError) as info:
        integrate.solve(lambda t, y: y**2, np.array([1.0]), [0.0, 2.0], tol=1e-8)
    assert 0.9 < info.value.last_time < 1 + 1e-6


def test_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        integrate.solve(lambda t, y: y, np.array([1.0]), [0.0, 1.0], tol=0)
    with pytest.raises(InvalidParameterError):
        integrate.solve(lambda t, y: y, np.array([1.0]), [1.0, 0.0])
