"""Shared helpers for the test suite: parameter draws and acceptance reporting."""

from __future__ import annotations

import time
from contextlib import contextmanager

from dpotunnel.errors import OutsideRegime
from dpotunnel.params import ReducedParams, dimensionless
from dpotunnel.tunneling import barrier_quantities

ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


@contextmanager
def criterion(num: int, name: str, budget_s: float):
    """Time a criterion body, enforce its runtime budget, and record a line."""
    t0 = time.perf_counter()
    try:
        yield
    except Exception:
        record(f"criterion {num:2d} ({name}): FAIL ({time.perf_counter() - t0:.2f} s)")
        raise
    elapsed = time.perf_counter() - t0
    assert elapsed < budget_s, (
        f"criterion {num} exceeded its runtime budget: {elapsed:.2f} s > {budget_s} s"
    )
    record(f"criterion {num:2d} ({name}): PASS ({elapsed:.2f} s, budget {budget_s:g} s)")


def draw_effective(rng) -> ReducedParams:
    """Random physically valid effective rates (kHz)."""
    return ReducedParams.from_rates(
        gamma1_1=rng.uniform(0.5, 4.0),
        gamma2eff=rng.uniform(0.2, 2.0),
        chi=rng.uniform(-0.8, 0.8),
        E=rng.uniform(4.0, 30.0),
        delta1=rng.uniform(-1.0, 1.0),
    )


def draw_regime(rng, max_cbar: float = 0.9):
    """(ReducedParams, DimensionlessParams) in the tunneling regime
    Re(c_tilde) > 0 with |c_bar| < max_cbar, by rejection."""
    while True:
        r = draw_effective(rng)
        dp = dimensionless(r)
        if dp.c_tilde.real > 0.0 and abs(dp.c_bar) < max_cbar:
            return r, dp


def draw_barrier_admissible(rng, max_cbar: float = 0.9):
    """Like draw_regime, but also requires the barrier curvature signature,
    i.e. parameters where the potential-barrier approximation applies."""
    while True:
        r, dp = draw_regime(rng, max_cbar)
        try:
            barrier_quantities(dp.c_bar, dp.n, dp.theta)
        except OutsideRegime:
            continue
        return r, dp


def draw_admissible_ct(rng, re_range=(0.02, 0.95), max_abs: float = 0.95) -> complex:
    """Random c_tilde in the admissible disk: Re > 0, away from threshold."""
    while True:
        ct = complex(rng.uniform(*re_range), rng.uniform(-max_abs, max_abs))
        if abs(ct) < max_abs:
            return ct
