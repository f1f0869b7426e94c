"""Sweep orchestration and deterministic CSV/JSON emission.

A sweep varies one circuit parameter over a list of values and evaluates the
analytic and/or number-state tunneling time at each point, producing one row
per value in axis order.  Per-point failures (regime violations, solver
failures) are recorded in the row's error marker and never abort the sweep.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .errors import DpoTunnelError
from .fock import build_liouvillian, choose_cutoff, spectrum, tunneling_time_fock
from .params import PhysicalParams, dimensionless, reduce
from .tunneling import tunneling_time

AXES = ("gamma1_1", "gamma2eff_via_gamma1_2", "E2", "delta1", "chi", "kappa")
METHODS = ("analytic", "fock")

#: default steady-state tail tolerance for the automatic cutoff search
AUTO_CUTOFF_TOL = 1e-8


@dataclass(frozen=True)
class SweepSpec:
    """One swept axis over a base parameter set.

    `values` must be nonempty and strictly monotone; `methods` a nonempty
    subset of {"analytic", "fock"}; `fock_cutoff` a photon-number cutoff or
    "auto" for the doubling search.
    """

    base: PhysicalParams
    axis: str
    values: tuple[float, ...]
    methods: tuple[str, ...] = ("analytic",)
    fock_cutoff: int | str = "auto"
    output_path: str = ""

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.values:
            raise ValueError("values must be nonempty")
        diffs = [b - a for a, b in zip(self.values, self.values[1:])]
        if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            raise ValueError("values must be strictly monotone")
        if not self.methods or any(m not in METHODS for m in self.methods):
            raise ValueError(f"methods must be a nonempty subset of {METHODS}")
        if self.fock_cutoff != "auto" and (
            not isinstance(self.fock_cutoff, int) or self.fock_cutoff < 2
        ):
            raise ValueError(f"fock_cutoff must be 'auto' or an int >= 2, got {self.fock_cutoff!r}")


@dataclass(frozen=True)
class SweepRow:
    """One evaluated sweep point; absent fields are None."""

    swept_value: float
    n: float
    c_tilde: complex
    regime_ok: bool
    T_analytic_ms: float | None = None
    T_fock_ms: float | None = None
    ln_gamma_T_analytic: float | None = None
    ln_gamma_T_fock: float | None = None
    cutoff_used: int | None = None
    error: str | None = None


def apply_axis(base: PhysicalParams, axis: str, value: float) -> PhysicalParams:
    """Base parameters with one circuit knob set to `value`."""
    if axis == "gamma1_1":
        return dataclasses.replace(base, gamma1_1=value)
    if axis == "gamma2eff_via_gamma1_2":
        floor = base.kappa**2 / (2.0 * base.gamma2)
        g12 = value - floor
        if g12 < 0:
            raise ValueError(
                f"target effective two-photon loss {value} is below the "
                f"pump-induced floor {floor}"
            )
        return dataclasses.replace(base, gamma1_2=g12)
    if axis == "E2":
        return dataclasses.replace(base, drive2=value)
    if axis == "delta1":
        return dataclasses.replace(base, delta1=value)
    if axis == "chi":
        return dataclasses.replace(base, chi=value)
    if axis == "kappa":
        return dataclasses.replace(base, kappa=value)
    raise ValueError(f"unknown axis {axis!r}")


def evaluate_point(spec: SweepSpec, value: float) -> SweepRow:
    """Evaluate one sweep point, catching per-point failures into the row."""
    try:
        p = apply_axis(spec.base, spec.axis, value)
        r = reduce(p)
        dp = dimensionless(r)
    except (DpoTunnelError, ValueError) as exc:
        return SweepRow(
            swept_value=value, n=math.nan, c_tilde=complex(math.nan, math.nan),
            regime_ok=False, error=f"params: {exc}",
        )
    ct = dp.c_tilde
    regime_ok = ct.real > 0.0 and abs(ct) < 1.0
    gamma1_1 = r.gamma.real
    t_a = ln_a = t_f = ln_f = cutoff = None
    errors = []
    if not regime_ok:
        errors.append("outside tunneling regime (need Re(c_tilde) > 0, |c_tilde| < 1)")
    else:
        if "analytic" in spec.methods:
            try:
                t_a = tunneling_time(dp, abs(r.g))
                ln_a = math.log(gamma1_1 * t_a)
            except DpoTunnelError as exc:
                errors.append(f"analytic: {exc}")
        if "fock" in spec.methods:
            try:
                if spec.fock_cutoff == "auto":
                    cutoff = choose_cutoff(r, AUTO_CUTOFF_TOL)
                else:
                    cutoff = int(spec.fock_cutoff)
                s = spectrum(build_liouvillian(r, cutoff))
                t_f = tunneling_time_fock(s)
                ln_f = math.log(gamma1_1 * t_f)
            except DpoTunnelError as exc:
                errors.append(f"fock: {exc}")
    return SweepRow(
        swept_value=value, n=dp.n, c_tilde=ct, regime_ok=regime_ok,
        T_analytic_ms=t_a, T_fock_ms=t_f,
        ln_gamma_T_analytic=ln_a, ln_gamma_T_fock=ln_f,
        cutoff_used=cutoff, error="; ".join(errors) or None,
    )


def run_sweep(spec: SweepSpec, workers: int | None = None) -> list[SweepRow]:
    """Evaluate every axis value; rows come back in axis order regardless of
    the worker pool's scheduling."""
    if workers is None:
        workers = min(4, os.cpu_count() or 1)
    if workers <= 1 or len(spec.values) == 1:
        return [evaluate_point(spec, v) for v in spec.values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda v: evaluate_point(spec, v), spec.values))


# --- emission ---

CSV_COLUMNS = (
    "swept_value", "n", "c_tilde_re", "c_tilde_im", "regime_ok",
    "T_analytic_ms", "T_fock_ms", "ln_gamma_T_analytic", "ln_gamma_T_fock",
    "cutoff_used", "error",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _row_record(row: SweepRow) -> dict:
    return {
        "swept_value": row.swept_value,
        "n": row.n,
        "c_tilde_re": row.c_tilde.real,
        "c_tilde_im": row.c_tilde.imag,
        "regime_ok": row.regime_ok,
        "T_analytic_ms": row.T_analytic_ms,
        "T_fock_ms": row.T_fock_ms,
        "ln_gamma_T_analytic": row.ln_gamma_T_analytic,
        "ln_gamma_T_fock": row.ln_gamma_T_fock,
        "cutoff_used": row.cutoff_used,
        "error": row.error,
    }


def sweep_metadata(spec: SweepSpec) -> dict:
    """Deterministic metadata echo written into output headers."""
    meta = {"tool": f"dpotunnel {__version__}"}
    for f in dataclasses.fields(PhysicalParams):
        meta[f"base.{f.name}"] = _cell(getattr(spec.base, f.name))
    meta["axis"] = spec.axis
    meta["methods"] = ",".join(spec.methods)
    meta["fock_cutoff"] = str(spec.fock_cutoff)
    return meta


def emit(rows: list[SweepRow], format: str, path: str, meta: dict | None = None) -> None:
    """Write rows to `path` as CSV or JSON, byte-for-byte deterministic.

    Complex values are serialized as separate re/im columns; absent values as
    empty CSV cells / JSON nulls.  CSV carries `#`-prefixed metadata lines.
    """
    if not rows:
        raise ValueError("rows must be nonempty")
    if format not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")
    meta = meta or {}
    try:
        if format == "csv":
            lines = [f"# {k}={v}" for k, v in meta.items()]
            lines.append(",".join(CSV_COLUMNS))
            for row in rows:
                rec = _row_record(row)
                lines.append(",".join(_cell(rec[c]) for c in CSV_COLUMNS))
            payload = "\n".join(lines) + "\n"
        else:
            payload = json.dumps(
                {"meta": meta, "rows": [_row_record(r) for r in rows]}, indent=2
            ) + "\n"
        with open(path, "w", encoding="ascii") as fh:
            fh.write(payload)
    except OSError as exc:
        raise OSError(f"writing {path}: {exc}") from exc
