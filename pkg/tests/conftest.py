import math

import numpy as np
import pytest

from eomconv.model import CouplingConfig


@pytest.fixture
def cfg05():
    return CouplingConfig.from_ratio(0.5)


def bogoliubov_coefficients(G_o, G_w, t):
    """Coefficients read off ``expm(A t)`` for the mode vector (b, c_o, c_w, b+, c_o+, c_w+).

    Built directly from the Heisenberg equations of the bilinear Hamiltonian,
    without the coefficient ODEs or their closed form.
    """
    import scipy.linalg

    b, co, cw, bd, cod, cwd = range(6)
    A = np.zeros((6, 6), dtype=complex)
    A[b, cod] = -1j * G_o
    A[b, cw] = -1j * G_w
    A[co, bd] = -1j * G_o
    A[cw, b] = -1j * G_w
    # hermitian-conjugate equations
    A[bd, co] = 1j * G_o
    A[bd, cwd] = 1j * G_w
    A[cod, b] = 1j * G_o
    A[cwd, bd] = 1j * G_w
    U = scipy.linalg.expm(A * t)
    return np.array([
        U[b, b], U[b, cw], U[b, cod],
        U[co, co], U[co, cwd], U[co, bd],
        U[cw, cw], U[cw, cod], U[cw, b],
    ])


K_SAMPLES = (0.0, 0.05, 0.3, 0.5, 0.6, 0.9, 0.95)
PI = math.pi
