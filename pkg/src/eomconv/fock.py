"""Brute-force Schroedinger-picture oracle in a truncated three-mode Fock space.

Nothing here uses the Heisenberg coefficient solution; mean amplitudes are
obtained by evolving the full state vector under the linearized Hamiltonian
``G_o (c_o b + b^+ c_o^+) + G_w (c_w b^+ + b c_w^+)`` with hbar = 1.

Basis states are ``|n_o, n_w, n_b>`` with mode order (optical, microwave,
mechanical) and a common cutoff ``n_max`` per mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from . import integrate
from .conversion import ConversionReport, Direction, Method
from .errors import (
    IntegrationError,
    InvalidParameterError,
    ResourceLimitError,
    TruncationError,
    UndefinedRateError,
)
from .model import ChannelId, CouplingConfig
from .states import EntangledCoherentState, normalization

MODE_ORDER = (ChannelId.OPTICAL, ChannelId.MICROWAVE, ChannelId.MECHANICAL)
DEFAULT_MAX_DIM = 20**3
DEFAULT_MAX_LEAKAGE = 1e-8
EXPM_MAX_DIM = 1000


@dataclass(frozen=True)
class FockBasisSpec:
    n_max: int
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise InvalidParameterError(f"n_max must be a positive integer, got {self.n_max}")
        if self.dim > self.max_dim:
            raise ResourceLimitError(
                f"basis dimension {self.dim} exceeds limit {self.max_dim}"
            )

    @property
    def levels(self) -> int:
        return self.n_max + 1

    @property
    def dim(self) -> int:
        return self.levels**3

    def annihilator(self, which: ChannelId) -> sp.csr_matrix:
        """Truncated annihilation operator of one mode on the full space."""
        a = sp.diags(np.sqrt(np.arange(1, self.levels, dtype=float)), 1, format="csr")
        eye = sp.identity(self.levels, format="csr")
        factors = [a if m is which else eye for m in MODE_ORDER]
        return sp.kron(sp.kron(factors[0], factors[1]), factors[2], format="csr")

    def index(self, n_o: int, n_w: int, n_b: int) -> int:
        L = self.levels
        return (n_o * L + n_w) * L + n_b


@dataclass
class FockVector:
    """Truncated state vector plus the norm weight lost to the cutoff when it was prepared."""

    basis: FockBasisSpec
    amplitudes: np.ndarray
    leakage: float = 0.0

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def mode_populations(self) -> np.ndarray:
        """Occupation probabilities per mode, shape ``(3, n_max + 1)``."""
        p = np.abs(self.amplitudes.reshape((self.basis.levels,) * 3)) ** 2
        return np.stack([p.sum(axis=(1, 2)), p.sum(axis=(0, 2)), p.sum(axis=(0, 1))])

    def edge_population(self) -> float:
        """Largest probability of any mode sitting at its cutoff level; a truncation monitor."""
        return float(self.mode_populations()[:, -1].max())


def build_hamiltonian(cfg: CouplingConfig, basis: FockBasisSpec) -> sp.csr_matrix:
    a_o = basis.annihilator(ChannelId.OPTICAL)
    a_w = basis.annihilator(ChannelId.MICROWAVE)
    b = basis.annihilator(ChannelId.MECHANICAL)
    squeeze = a_o @ b
    swap = a_w @ b.conj().T
    H = cfg.G_o * (squeeze + squeeze.conj().T) + cfg.G_w * (swap + swap.conj().T)
    return H.astype(complex).tocsr()


def coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    """Fock amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` for ``n <= n_max``."""
    n = np.arange(n_max + 1)
    log_fact = np.array([math.lgamma(i + 1) for i in n])
    out = np.zeros(n_max + 1, dtype=complex)
    if alpha == 0:
        out[0] = 1
        return out
    # log form avoids overflow of alpha**n / n! at large n
    log_mag = -abs(alpha) ** 2 / 2 + n * math.log(abs(alpha)) - 0.5 * log_fact
    out[:] = np.exp(log_mag + 1j * n * np.angle(alpha))
    return out


def _product(vo, vw, vb) -> np.ndarray:
    return np.kron(np.kron(vo, vw), vb)


def prepare_state(
    state,
    basis: FockBasisSpec,
    mechanical: complex = 0.0,
    max_leakage: float = DEFAULT_MAX_LEAKAGE,
) -> FockVector:
    """Truncated vector for an entangled coherent state or a product coherent state.

    Parameters
    ----------
    state : EntangledCoherentState or tuple of complex
        Either the two-mode entangled state, or ``(alpha_o, alpha_w)`` /
        ``(alpha_o, alpha_w, alpha_b)`` coherent amplitudes of a product state.
    mechanical : complex
        Coherent amplitude of the mechanical mode when ``state`` is an
        entangled coherent state.

    Raises
    ------
    TruncationError
        If the weight above the cutoff, ``1 - |psi_truncated|^2``, exceeds
        ``max_leakage``.
    """
    n = basis.n_max
    if isinstance(state, EntangledCoherentState):
        vac = coherent_amplitudes(0, n)
        mech = coherent_amplitudes(mechanical, n)
        N = normalization(state)
        psi = N * (
            math.cos(state.theta) * _product(coherent_amplitudes(state.alpha, n), vac, mech)
            + math.sin(state.theta) * _product(vac, coherent_amplitudes(state.beta, n), mech)
        )
    else:
        amps = tuple(state) + (0,) * (3 - len(tuple(state)))
        if len(amps) != 3:
            raise InvalidParameterError("product state needs 2 or 3 coherent amplitudes")
        psi = _product(*(coherent_amplitudes(a, n) for a in amps))
    norm_sq = float(np.vdot(psi, psi).real)
    leakage = max(0.0, 1.0 - norm_sq)
    if leakage > max_leakage:
        raise TruncationError(f"cutoff {n} too small for the requested amplitudes", leakage)
    return FockVector(basis, psi / math.sqrt(norm_sq), leakage)


def evolve(
    psi: FockVector,
    H,
    t: float,
    tol: float = 1e-10,
    method: str = "rk",
) -> FockVector:
    """Apply ``exp(-i H t)``.

    ``method="rk"`` integrates the Schroedinger equation adaptively;
    ``method="expm"`` exponentiates the dense matrix (small bases only).
    Negative ``t`` is accepted to undo a previous evolution.

    Raises
    ------
    IntegrationError
        If the norm drifts by more than ``tol``.
    """
    if t == 0:
        return FockVector(psi.basis, psi.amplitudes.copy(), psi.leakage)
    if method == "rk":
        sign = -1j if t > 0 else 1j

        def rhs(_t, y):
            return sign * (H @ y)

        # integrate forward in |t|; the sign of t is carried by rhs
        y = integrate.solve(rhs, psi.amplitudes, [0.0, abs(t)], tol=0.1 * tol)[-1]
    elif method == "expm":
        if H.shape[0] > EXPM_MAX_DIM:
            raise ResourceLimitError(f"dense exponential limited to dimension {EXPM_MAX_DIM}")
        dense = H.toarray() if sp.issparse(H) else np.asarray(H)
        y = scipy.linalg.expm(-1j * t * dense) @ psi.amplitudes
    else:
        raise InvalidParameterError(f"unknown evolution method {method!r}")
    drift = abs(np.linalg.norm(y) - psi.norm)
    if drift > tol:
        raise IntegrationError(f"norm drifted by {drift:.3e} > {tol:.1e}", 0.0)
    return FockVector(psi.basis, y, psi.leakage)


def expectation(psi: FockVector, which: ChannelId) -> complex:
    a = psi.basis.annihilator(which)
    return complex(np.vdot(psi.amplitudes, a @ psi.amplitudes))


def energy(psi: FockVector, H) -> float:
    return float(np.vdot(psi.amplitudes, H @ psi.amplitudes).real)


@dataclass(frozen=True)
class FockConversion:
    report: ConversionReport
    input_mean: complex
    output_mean: complex
    mechanical_initial: complex
    mechanical_final: complex
    leakage: float
    edge_population: float


def fock_conversion(
    cfg: CouplingConfig,
    state: EntangledCoherentState,
    n_max: int = 14,
    direction=Direction.OPTICAL_TO_MICROWAVE,
    n: int = 1,
    mechanical: complex = 0.0,
    tol: float = 1e-10,
    method: str = "rk",
) -> FockConversion:
    """Conversion ratio at ``t_n`` from brute-force state evolution."""
    direction = Direction.parse(direction)
    if n < 1 or n % 2 == 0:
        raise InvalidParameterError(f"dark-mode index must be a positive odd integer, got {n}")
    basis = FockBasisSpec(n_max)
    H = build_hamiltonian(cfg, basis)
    psi0 = prepare_state(state, basis, mechanical=mechanical)
    psi1 = evolve(psi0, H, cfg.dark_time(n), tol=tol, method=method)
    src, dst = (
        (ChannelId.OPTICAL, ChannelId.MICROWAVE)
        if direction is Direction.OPTICAL_TO_MICROWAVE
        else (ChannelId.MICROWAVE, ChannelId.OPTICAL)
    )
    inp = expectation(psi0, src)
    out = expectation(psi1, dst)
    if inp == 0:
        raise UndefinedRateError("input-channel mean vanishes")
    report = ConversionReport(direction, abs(out / inp) ** 2, n, cfg.k, Method.FOCK_ORACLE)
    return FockConversion(
        report,
        inp,
        out,
        expectation(psi0, ChannelId.MECHANICAL),
        expectation(psi1, ChannelId.MECHANICAL),
        psi0.leakage,
        psi1.edge_population(),
    )
