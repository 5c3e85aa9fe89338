import math

import numpy as np
import pytest
import scipy.sparse as sp

from eomconv import conversion, fock
from eomconv.dynamics import closed_form_propagator
from eomconv.errors import ResourceLimitError, TruncationError
from eomconv.model import ChannelId, CouplingConfig
from eomconv.states import EntangledCoherentState as ECS, field_means

OPT, MW, MECH = ChannelId.OPTICAL, ChannelId.MICROWAVE, ChannelId.MECHANICAL
PRODUCT = (0.5, 0.3j, 0.2)


def _heisenberg_means(cfg, t, ao, aw, ab):
    c = closed_form_propagator(cfg, t)
    return {
        MECH: c.f1 * ab + c.f2 * aw + c.f3 * np.conj(ao),
        OPT: c.g1 * ao + c.g2 * np.conj(aw) + c.g3 * np.conj(ab),
        MW: c.h1 * aw + c.h2 * np.conj(ao) + c.h3 * ab,
    }


def _schroedinger_vs_heisenberg(k, n_max=14):
    cfg = CouplingConfig.from_ratio(k)
    t = cfg.dark_time(1)
    basis = fock.FockBasisSpec(n_max)
    psi = fock.evolve(fock.prepare_state(PRODUCT, basis), fock.build_hamiltonian(cfg, basis), t)
    pred = _heisenberg_means(cfg, t, *PRODUCT)
    return max(abs(fock.expectation(psi, m) - v) for m, v in pred.items()), psi.edge_population()


@pytest.mark.parametrize("k", [0.0, 0.3, 0.7])
def test_hamiltonian_hermitian(k):
    H = fock.build_hamiltonian(CouplingConfig.from_ratio(k), fock.FockBasisSpec(4))
    assert sp.linalg.norm(H - H.conj().T) < 1e-14


def test_beam_splitter_only_at_zero_k():
    """Without the squeezing term the total optical+microwave+mechanical excitation count is conserved."""
    basis = fock.FockBasisSpec(4)
    H = fock.build_hamiltonian(CouplingConfig.from_ratio(0.0), basis).tocoo()
    L = basis.levels
    total = lambda i: sum(np.unravel_index(i, (L, L, L)))
    assert all(total(i) == total(j) for i, j in zip(H.row, H.col))


def test_two_level_spectrum():
    H = fock.build_hamiltonian(CouplingConfig(0.0, 1.0), fock.FockBasisSpec(1)).toarray()
    # single excitation shared by microwave and mechanics gives eigenvalues +-1
    ev = np.linalg.eigvalsh(H)
    assert np.allclose(sorted(set(np.round(ev, 12))), [-1, 0, 1])


def test_leakage():
    assert fock.prepare_state((0, 0), fock.FockBasisSpec(3)).leakage == 0
    assert fock.prepare_state(ECS.symmetric(math.pi / 4, 0.5, 0), fock.FockBasisSpec(12)).leakage < 1e-10
    with pytest.raises(TruncationError) as ei:
        fock.prepare_state((3.0, 0), fock.FockBasisSpec(5))
    assert ei.value.leakage > 1e-8


def test_expectations():
    basis = fock.FockBasisSpec(12)
    vac = fock.prepare_state((0, 0), basis)
    assert all(fock.expectation(vac, m) == 0 for m in (OPT, MW, MECH))
    coh = fock.prepare_state((0.5, 0), basis)
    assert abs(fock.expectation(coh, OPT) - 0.5) < 1e-9
    st = ECS.symmetric(math.pi / 4, 1.0, 0.0)
    psi = fock.prepare_state(st, basis)
    m = field_means(st)
    assert abs(fock.expectation(psi, OPT) - 0.5) < 1e-6
    assert abs(fock.expectation(psi, MW) - m.microwave) < 1e-6


def test_unitarity_and_methods():
    cfg = CouplingConfig.from_ratio(0.4)
    basis = fock.FockBasisSpec(8)
    H = fock.build_hamiltonian(cfg, basis)
    psi = fock.prepare_state(PRODUCT, basis)
    fwd = fock.evolve(psi, H, 2.0)
    assert abs(fwd.norm - 1) < 1e-9
    back = fock.evolve(fwd, H, -2.0)
    assert np.abs(back.amplitudes - psi.amplitudes).max() < 1e-9
    dense = fock.evolve(psi, H, 2.0, method="expm")
    assert np.abs(fwd.amplitudes - dense.amplitudes).max() < 1e-9
    assert abs(fock.energy(fwd, H) - fock.energy(psi, H)) < 1e-8


def test_zero_time_is_identity():
    basis = fock.FockBasisSpec(8)
    psi = fock.prepare_state((0.3, 0.1), basis)
    out = fock.evolve(psi, fock.build_hamiltonian(CouplingConfig.from_ratio(0.5), basis), 0.0)
    assert np.array_equal(out.amplitudes, psi.amplitudes)


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        fock.FockBasisSpec(20)
    basis = fock.FockBasisSpec(10)
    with pytest.raises(ResourceLimitError):
        fock.evolve(fock.prepare_state((0, 0), basis),
                    fock.build_hamiltonian(CouplingConfig.from_ratio(0.2), basis), 1.0, method="expm")


def test_matches_heisenberg_when_converged():
    dev, edge = _schroedinger_vs_heisenberg(0.2)
    assert edge < 1e-8
    assert dev < 1e-6


@pytest.mark.xfail(strict=True, reason="cutoff 14 truncates the amplified optical/mechanical modes at this k")
@pytest.mark.parametrize("k", [0.5, 0.8])
def test_matches_heisenberg_strong_coupling(k):
    dev, _ = _schroedinger_vs_heisenberg(k)
    assert dev < 1e-6


@pytest.mark.parametrize("k", [0.5, 0.8])
def test_edge_monitor_flags_truncation(k):
    _, edge = _schroedinger_vs_heisenberg(k)
    assert edge > 1e-3


def test_conversion_converged_coupling():
    cfg = CouplingConfig.from_ratio(0.2)
    for phi in (0.0, math.pi / 2):
        st = ECS.symmetric(math.pi / 4, 0.5, phi)
        r = fock.fock_conversion(cfg, st, 14, mechanical=0.3)
        assert abs(r.report.rate - conversion.eaqc_rate(0.2, math.pi / 4, phi, 0.5)) < 1e-6
        assert abs(r.mechanical_final + r.mechanical_initial) < 1e-6
        assert r.report.method is conversion.Method.FOCK_ORACLE


@pytest.mark.slow
def test_conversion_k04_at_cutoff_18():
    cfg = CouplingConfig.from_ratio(0.4)
    for phi in (0.0, math.pi / 2):
        st = ECS.symmetric(math.pi / 4, 0.5, phi)
        r = fock.fock_conversion(cfg, st, 18, mechanical=0.3)
        assert abs(r.report.rate - conversion.eaqc_rate(0.4, math.pi / 4, phi, 0.5)) < 1e-3
        assert abs(r.mechanical_final + r.mechanical_initial) < 1e-4


def test_conversion_direction_w2o():
    cfg = CouplingConfig.from_ratio(0.2)
    st = ECS.symmetric(math.pi / 4, 0.5, 0.3)
    r = fock.fock_conversion(cfg, st, 12, direction="w2o")
    assert abs(r.report.rate - conversion.eaqc_rate(0.2, math.pi / 4, 0.3, 0.5, "w2o")) < 1e-6


def test_even_index_rejected():
    with pytest.raises(ValueError):
        fock.fock_conversion(CouplingConfig.from_ratio(0.2), ECS.symmetric(0.7, 0.5, 0), 6, n=2)
