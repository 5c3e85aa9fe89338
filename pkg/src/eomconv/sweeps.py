"""Parameter sweeps and the three reference figure datasets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import conversion, dynamics, states
from .conversion import Direction
from .dynamics import COEFFICIENT_NAMES
from .errors import InvalidParameterError, VerificationError
from .model import CouplingConfig
from .tables import Table

QUANTITIES = ("cqc-rate", "eaqc-rate", "eaf", "concurrence", "propagator", "dark-times")
DEFAULT_POINTS = 200
FIG2_RANGE = (0.0, 0.95)
FIG3_COUPLINGS = (0.1, 0.2, 0.6, 0.9)
FIG4_KMAX = 0.95


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 1:
            raise InvalidParameterError(f"grid count must be a positive integer, got {self.count}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidParameterError("grid bounds must be finite")
        if self.start > self.stop:
            raise InvalidParameterError(f"grid start {self.start} > stop {self.stop}")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Parse ``start:stop:count``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidParameterError(f"grid must look like start:stop:count, got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError:
            raise InvalidParameterError(f"malformed grid {text!r}") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    quantity: str
    grid: Grid | None = None
    fixed: dict[str, Any] = field(default_factory=dict)
    fmt: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise InvalidParameterError(f"unknown quantity {self.quantity!r}")
        if self.fmt not in ("csv", "json"):
            raise InvalidParameterError(f"unknown format {self.fmt!r}")


def _cfg(fixed) -> CouplingConfig:
    if "G_o" in fixed:
        return CouplingConfig(fixed["G_o"], fixed.get("G_w", 1.0))
    return CouplingConfig.from_ratio(fixed["k"], fixed.get("G_w", 1.0))


def _coefficient_columns() -> list[str]:
    cols = []
    for n in COEFFICIENT_NAMES:
        cols += [f"{n}_re", f"{n}_im"]
    return cols


def _coefficient_cells(c: np.ndarray) -> list[float]:
    cells = []
    for v in c:
        cells += [float(v.real), float(v.imag)]
    return cells


def propagator_table(cfg: CouplingConfig, times, method: str = "closed", tol: float = 1e-10) -> Table:
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if method == "closed":
        coeffs = dynamics.closed_form_array(cfg, times)
    elif method == "ode":
        coeffs = dynamics.ode_trajectory(cfg, times, tol)
    else:
        raise InvalidParameterError(f"unknown method {method!r}")
    rows = [[float(t)] + _coefficient_cells(c) for t, c in zip(times, coeffs)]
    params = {"k": cfg.k, "G_w": cfg.G_w, "method": method}
    if method == "ode":
        params["tol"] = tol
    return Table(["t"] + _coefficient_columns(), rows, params, "propagator coefficients")


def dark_times_table(cfg: CouplingConfig, count: int) -> Table:
    rows = []
    for rec in dynamics.dark_mode_times(cfg, count):
        rows.append([rec.n, rec.t] + _coefficient_cells(rec.coefficients.as_array()))
    return Table(["n", "t"] + _coefficient_columns(), rows, {"k": cfg.k, "G_w": cfg.G_w}, "dark-mode times")


def run_sweep(spec: SweepSpec) -> Table:
    q, fx = spec.quantity, spec.fixed
    if q == "cqc-rate":
        ks = spec.grid.values()
        return Table(["k", "eta"], [[float(k), conversion.cqc_rate(k)] for k in ks], {}, "conditional conversion rate")
    if q == "eaqc-rate":
        direction = Direction.parse(fx.get("direction", "o2w"))
        rows = [
            [float(p), conversion.eaqc_rate(fx["k"], fx["theta"], p, fx["alpha"], direction)]
            for p in spec.grid.values()
        ]
        params = {"k": fx["k"], "theta": fx["theta"], "alpha": fx["alpha"], "direction": direction.value}
        return Table(["phi", "eta"], rows, params, "entanglement-assisted conversion rate")
    if q == "eaf":
        rows = []
        for k in spec.grid.values():
            r = conversion.eaf(k, fx["phi"])
            rows.append([float(k), r.R, r.regime.value])
        return Table(["k", "R", "regime"], rows, {"phi": fx["phi"]}, "entanglement-affecting factor")
    if q == "concurrence":
        st = states.EntangledCoherentState(fx["theta"], fx["alpha"], fx["beta"])
        means = states.field_means(st)
        d = st.to_dict()
        cols = list(d) + ["normalization", "concurrence", "mean_optical_re", "mean_optical_im",
                          "mean_microwave_re", "mean_microwave_im"]
        row = list(d.values()) + [
            states.normalization(st),
            states.concurrence(st),
            means.optical.real,
            means.optical.imag,
            means.microwave.real,
            means.microwave.imag,
        ]
        return Table(cols, [row], {}, "entangled coherent state")
    if q == "propagator":
        times = spec.grid.values() if spec.grid is not None else [fx["t"]]
        return propagator_table(_cfg(fx), times, fx.get("method", "closed"), fx.get("tol", 1e-10))
    # dark-times
    return dark_times_table(_cfg(fx), fx["count"])


def _check(ok: bool, message: str):
    if not ok:
        raise VerificationError(message)


def figure2(grid: Grid | None = None) -> Table:
    """Conditional conversion rate against coupling ratio."""
    grid = grid or Grid(*FIG2_RANGE, DEFAULT_POINTS)
    if grid.start < FIG2_RANGE[0] or grid.stop > FIG2_RANGE[1]:
        raise InvalidParameterError(f"figure 2 grid must lie within {FIG2_RANGE}")
    ks = grid.values()
    eta = [conversion.cqc_rate(k) for k in ks]
    _check(all(b > a for a, b in zip(eta, eta[1:])), "figure 2: rate is not strictly increasing")
    return Table(["k", "eta"], [[float(k), e] for k, e in zip(ks, eta)], {}, "figure 2: conditional conversion rate vs k")


def unit_rate_crossing(table: Table) -> tuple[float, float] | None:
    """Grid interval ``(k_lo, k_hi]`` in which the Fig. 2 rate first reaches 1."""
    ks, eta = table.column("k"), table.column("eta")
    for i in range(1, len(ks)):
        if eta[i - 1] < 1 <= eta[i]:
            return ks[i - 1], ks[i]
    return None


def _col(k: float) -> str:
    return f"eta_k{k:g}"


def figure3(grid: Grid | None = None, couplings=FIG3_COUPLINGS) -> Table:
    """Maximally entangled conversion rate against the input phase."""
    grid = grid or Grid(0.0, 2 * math.pi, DEFAULT_POINTS)
    if grid.start < 0 or grid.stop > 2 * math.pi + 1e-12:
        raise InvalidParameterError("figure 3 phase grid must lie within [0, 2 pi]")
    rows = []
    for p in grid.values():
        row = [float(p)]
        for k in couplings:
            v = conversion.eaqc_max_entangled(k, p)
            _check(
                abs(v - conversion.eaqc_max_entangled(k, p + math.pi)) <= 1e-12 * max(1.0, v),
                f"figure 3: not pi-periodic at phi={p}, k={k}",
            )
            row.append(v)
        rows.append(row)
    return Table(["phi"] + [_col(k) for k in couplings], rows, {"theta": "pi/4"},
                 "figure 3: maximally entangled conversion rate vs phase")


def figure4(grid: Grid | None = None, include_critical: bool = True) -> Table:
    """Entanglement-affecting factor for ``phi = 0`` and ``phi = pi/2`` against k."""
    if grid is None:
        ks = np.linspace(0.0, FIG4_KMAX, DEFAULT_POINTS + 1)[1:]
    else:
        if grid.start <= 0 or grid.stop > FIG4_KMAX:
            raise InvalidParameterError(f"figure 4 grid must lie within (0, {FIG4_KMAX}]")
        ks = grid.values()
    kc = conversion.critical_coupling(xtol=0.0)
    if include_critical and ks[0] < kc < ks[-1]:
        ks = np.unique(np.append(ks, kc))
    rows = []
    for k in ks:
        r0 = conversion.eaf(k, 0.0)
        r1 = conversion.eaf(k, math.pi / 2)
        rows.append([float(k), r0.R, r1.R, 1.0, r1.regime.value])
    table = Table(["k", "R_phi0", "R_phiHalfPi", "unity_reference", "regime_phiHalfPi"], rows,
                  {"k_c": kc}, "figure 4: entanglement-affecting factor vs k")
    _check(all(r[1] < 1 for r in rows), "figure 4: R(0) >= 1 somewhere")
    for k, *_, regime in rows:
        expect = "enhancing" if k < kc else "suppressing" if k > kc else "neutral"
        # rounding can only blur the classification within the neutral band
        if abs(k - kc) > 1e-9:
            _check(regime == expect, f"figure 4: regime {regime} at k={k}, expected {expect}")
    return table
