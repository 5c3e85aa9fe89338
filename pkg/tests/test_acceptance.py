"""Acceptance criteria, one test each at the stated tolerance.

Every test prints a single ``CRITERION n: PASS|FAIL`` line with the measured
deviation, whether or not it passes.
"""

import math
import time

import numpy as np
import pytest

from eomconv import conversion, dynamics, fock, states, sweeps
from eomconv.conversion import Direction
from eomconv.model import ChannelId, CouplingConfig
from eomconv.states import EntangledCoherentState as ECS, FieldMeans

K_GRID = np.round(np.arange(0.05, 0.9 + 1e-9, 0.05), 10)
T_POINTS = 200


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def unit(phase):
    return complex(math.cos(phase), math.sin(phase))


def t_grid(cfg):
    return np.linspace(0.0, 4 * math.pi / cfg.omega, T_POINTS)


def test_criterion_01_closed_form_vs_ode(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    for k in K_GRID:
        cfg = CouplingConfig.from_ratio(k)
        ts = t_grid(cfg)
        diff = np.abs(dynamics.ode_trajectory(cfg, ts, 1e-10) - dynamics.closed_form_array(cfg, ts))
        worst = max(worst, float(diff.max()))
    secs = time.perf_counter() - t0
    ok = worst < 1e-8 and secs < 5
    report(capsys, 1, ok, f"max|ode-closed|={worst:.2e} (tol 1e-8), runtime {secs:.2f}s (limit 5s)")
    assert ok


def test_criterion_02_commutators(capsys):
    closed = ode = 0.0
    for k in K_GRID:
        cfg = CouplingConfig.from_ratio(k)
        ts = t_grid(cfg)
        for row in dynamics.closed_form_array(cfg, ts):
            closed = max(closed, *dynamics.commutator_residuals(row).values())
        for row in dynamics.ode_trajectory(cfg, ts, 1e-10):
            ode = max(ode, *dynamics.commutator_residuals(row).values())
    ok = closed < 1e-12 and ode < 1e-7
    report(capsys, 2, ok, f"closed-form {closed:.2e} (tol 1e-12), ODE {ode:.2e} (tol 1e-7)")
    assert ok


def test_criterion_03_dark_mode_identities(capsys):
    worst = 0.0
    for k in K_GRID:
        cfg = CouplingConfig.from_ratio(k)
        g1, g2 = (1 + k * k) / (1 - k * k), 2 * k / (1 - k * k)
        expected = np.array([-1, 0, 0, g1, g2, 0, -g1, -g2, 0], dtype=complex)
        for n in (1, 3, 5):
            c = dynamics.closed_form_propagator(cfg, n * math.pi / cfg.omega)
            worst = max(
                worst,
                float(np.abs(c.as_array() - expected).max()),
                abs(abs(c.g1) ** 2 - abs(c.g2) ** 2 - 1),
                abs(abs(c.h1) ** 2 - abs(c.h2) ** 2 - 1),
            )
    ok = worst < 1e-10
    report(capsys, 3, ok, f"max deviation {worst:.2e} (tol 1e-10)")
    assert ok


def test_criterion_04_figure2(capsys):
    table = sweeps.figure2()
    ks, eta = np.array(table.column("k")), np.array(table.column("eta"))
    pointwise = float(np.abs(eta - 4 * ks**2 / (1 - ks**2) ** 2).max())
    increasing = bool(np.all(np.diff(eta) > 0))
    lo, hi = sweeps.unit_rate_crossing(table)
    crossing = lo < math.sqrt(2) - 1 <= hi
    ok = pointwise < 1e-12 and increasing and crossing
    report(capsys, 4, ok, f"pointwise {pointwise:.2e} (tol 1e-12), increasing={increasing}, "
                          f"eta=1 crossing in ({lo:.4f}, {hi:.4f}] contains sqrt2-1={crossing}")
    assert ok


def test_criterion_05_cqc_reversibility(capsys):
    worst = 0.0
    for k in np.linspace(0.0, 0.95, 50):
        cfg = CouplingConfig.from_ratio(k)
        c = dynamics.closed_form_propagator(cfg, cfg.dark_time(1))
        for z in (1.0, 0.5j, 2 - 3j):
            ow = conversion.general_rate(c, FieldMeans(z, 0), Direction.OPTICAL_TO_MICROWAVE).rate
            wo = conversion.general_rate(c, FieldMeans(0, z), Direction.MICROWAVE_TO_OPTICAL).rate
            worst = max(worst, abs(ow - wo))
    ok = worst < 1e-12
    report(capsys, 5, ok, f"max|eta_ow-eta_wo|={worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_06_eaqc_special_cases(capsys):
    worst = 0.0
    for k in K_GRID:
        cqc = 4 * k * k / (1 - k * k) ** 2
        for a in (0.3, 1.0):
            worst = max(
                worst,
                abs(conversion.eaqc_rate(k, math.pi / 4, 0.0, a) - ((1 + k) / (1 - k)) ** 2),
                abs(conversion.eaqc_rate(k, math.pi / 4, math.pi / 2, a) - ((1 - k) / (1 + k)) ** 2),
                abs(conversion.eaqc_rate(k, 0.0, 0.7, a, Direction.OPTICAL_TO_MICROWAVE) - cqc),
                abs(conversion.eaqc_rate(k, math.pi / 2, 0.7, a, Direction.MICROWAVE_TO_OPTICAL) - cqc),
            )
    ok = worst < 1e-12
    report(capsys, 6, ok, f"max deviation {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_07_eaf_and_critical_point(capsys):
    closed = 0.0
    below_one = True
    for k in np.linspace(0.0, 0.95, 96)[1:]:
        r0, r1 = conversion.eaf(k, 0.0).R, conversion.eaf(k, math.pi / 2).R
        e0, e1 = (math.sqrt(2 * k) / (1 + k)) ** 4, (math.sqrt(2 * k) / (1 - k)) ** 4
        closed = max(closed, abs(r0 - e0) / e0, abs(r1 - e1) / e1)
        below_one &= r0 < 1
    kc = conversion.critical_coupling()
    root_dev = abs(kc - (2 - math.sqrt(3)))
    table = sweeps.figure4()
    flips = True
    kc_fig = table.params["k_c"]
    for rec in table.records():
        expect = "enhancing" if rec["k"] < kc_fig else "suppressing" if rec["k"] > kc_fig else "neutral"
        flips &= rec["regime_phiHalfPi"] == expect
    flips &= abs(kc_fig - (2 - math.sqrt(3))) < 1e-9
    ok = closed < 1e-12 and below_one and root_dev < 1e-9 and flips
    report(capsys, 7, ok, f"closed forms rel {closed:.2e}, R(0)<1={below_one}, "
                          f"|k_c-(2-sqrt3)|={root_dev:.2e} (tol 1e-9), regime flips at k_c={flips}")
    assert ok


def test_criterion_08_concurrence(capsys):
    rng = np.random.default_rng(2024)
    generic = 0.0
    for _ in range(1000):
        theta = rng.uniform(-math.pi, math.pi)
        a, b = complex(*rng.uniform(-2, 2, 2)), complex(*rng.uniform(-2, 2, 2))
        st = ECS(theta, a, b)
        g = states.generic_concurrence(math.cos(theta), math.sin(theta), math.exp(-abs(a) ** 2 / 2),
                                       math.exp(-abs(b) ** 2 / 2), states.normalization(st))
        generic = max(generic, abs(states.concurrence(st) - g))
    special = 0.0
    for x in (0.2, 1.0, 1.5 - 0.5j):
        special = max(special, abs(states.concurrence(ECS(-math.pi / 4, x, x)) - 1))
        for theta in (0.0, math.pi / 2):
            special = max(special, abs(states.concurrence(ECS(theta, x, 0.7))))
    ok = generic < 1e-12 and special < 1e-12
    report(capsys, 8, ok, f"vs generic formula {generic:.2e}, special values {special:.2e} (tol 1e-12)")
    assert ok


def test_criterion_09_fock_end_to_end(capsys):
    t0 = time.perf_counter()
    rate_dev, mech_dev, worst_case = 0.0, 0.0, None
    for k in (0.2, 0.4):
        cfg = CouplingConfig.from_ratio(k)
        for phi in (0.0, math.pi / 2):
            st = ECS.symmetric(math.pi / 4, 0.5, phi)
            r = fock.fock_conversion(cfg, st, n_max=14, mechanical=0.3)
            d = abs(r.report.rate - conversion.eaqc_rate(k, math.pi / 4, phi, 0.5))
            if d > rate_dev:
                rate_dev, worst_case = d, (k, phi, r.edge_population)
            mech_dev = max(mech_dev, abs(r.mechanical_final + r.mechanical_initial))
    secs = time.perf_counter() - t0
    ok = rate_dev < 1e-3 and mech_dev < 1e-4 and secs < 300
    k, phi, edge = worst_case
    report(capsys, 9, ok, f"cutoff 14: rate {rate_dev:.2e} (tol 1e-3, worst k={k}, phi={phi:.4f}, "
                          f"edge population {edge:.1e}), mechanical {mech_dev:.2e} (tol 1e-4), "
                          f"runtime {secs:.1f}s (limit 300s)")
    assert ok


def test_criterion_10_field_means(capsys):
    basis = fock.FockBasisSpec(12)
    worst = 0.0
    for theta in (math.pi / 4, -math.pi / 4 + 0.3, 1.0, 0.0):
        for a, b in ((1.0, 1.0), (1j, -1.0), (unit(0.7), unit(-2.0))):
            st = ECS(theta, a, b)
            psi = fock.prepare_state(st, basis)
            m = states.field_means(st)
            worst = max(worst, abs(fock.expectation(psi, ChannelId.OPTICAL) - m.optical),
                        abs(fock.expectation(psi, ChannelId.MICROWAVE) - m.microwave))
    example = fock.expectation(fock.prepare_state(ECS(math.pi / 4, 1, 1), basis), ChannelId.OPTICAL)
    ok = worst < 1e-6 and abs(example - 0.5) < 1e-6
    report(capsys, 10, ok, f"max|Fock-closed|={worst:.2e} (tol 1e-6), <c_o(0)>={example.real:.9f} (expect 0.5)")
    assert ok
