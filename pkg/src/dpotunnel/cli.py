"""Command-line interface: parameter reduction, grids, and tunneling sweeps.

Subcommands
-----------
reduce          print the effective single-mode and dimensionless parameters
phase-map       grid over complex c -> region codes (CSV)
potential-grid  manifold grid of the steady-state potential (CSV)
tunnel-analytic barrier-approximation tunneling-time sweep
tunnel-fock     number-state tunneling-time sweep
compare         both methods side by side

The configuration file is a single JSON document: a "base" object mapping
1:1 onto the physical circuit parameters (kHz implied), plus the sweep
fields axis/values/methods/fock_cutoff/output_path where applicable.
Exit codes: 0 on success, 2 on configuration errors, 3 when --strict is set
and any row carries a hard failure marker.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import warnings

import numpy as np

from . import __version__
from .errors import DpoTunnelError
from .meanfield import classify_phase
from .params import PhysicalParams, dimensionless, reduce
from .potential import classical_tilt, manifold_point, potential_value
from .sweep import SweepSpec, emit, run_sweep, sweep_metadata


class ConfigError(Exception):
    pass


def _coerce_complex(value):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        return complex(value[0], value[1])
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(value["re"], value["im"])
    raise ConfigError(f"cannot read complex value from {value!r}")


def load_base(doc: dict) -> PhysicalParams:
    if "base" not in doc or not isinstance(doc["base"], dict):
        raise ConfigError("config needs a 'base' object with the circuit parameters")
    fields = {f.name for f in dataclasses.fields(PhysicalParams)}
    base = dict(doc["base"])
    unknown = set(base) - fields
    if unknown:
        raise ConfigError(f"unknown base parameters: {sorted(unknown)}")
    if "drive1" in base:
        base["drive1"] = _coerce_complex(base["drive1"])
    try:
        return PhysicalParams(**base)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid base parameters: {exc}") from exc


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    return doc


def load_sweep_spec(doc: dict, methods_override=None, cutoff_override=None) -> SweepSpec:
    base = load_base(doc)
    try:
        axis = doc["axis"]
        values = tuple(float(v) for v in doc["values"])
    except KeyError as exc:
        raise ConfigError(f"config is missing sweep field {exc}") from exc
    methods = tuple(doc.get("methods", ["analytic"]))
    if methods_override is not None:
        methods = methods_override
    cutoff = doc.get("fock_cutoff", "auto")
    if cutoff_override is not None:
        cutoff = cutoff_override
    try:
        return SweepSpec(
            base=base, axis=axis, values=values, methods=methods,
            fock_cutoff=cutoff, output_path=str(doc.get("output_path", "")),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid sweep spec: {exc}") from exc


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        nx, ny = text.lower().split("x")
        nx, ny = int(nx), int(ny)
    except ValueError as exc:
        raise ConfigError(f"--grid expects <nx>x<ny>, got {text!r}") from exc
    if nx < 2 or ny < 2:
        raise ConfigError("grid must be at least 2x2")
    return nx, ny


def _parse_cutoff(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError as exc:
        raise ConfigError(f"--cutoff expects an integer or 'auto', got {text!r}") from exc


def _write_lines(lines: list[str], path: str | None) -> None:
    payload = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _figure_path(out: str) -> str:
    stem = out.rsplit(".", 1)[0] if "." in out else out
    return stem + ".png"


def cmd_reduce(args) -> int:
    doc = load_config(args.config)
    p = load_base(doc)
    r = reduce(p)
    record = {
        "gamma_re": r.gamma.real, "gamma_im": r.gamma.imag,
        "g_re": r.g.real, "g_im": r.g.imag,
        "gamma2eff": r.gamma2eff, "E": r.E,
        "drive1_re": r.drive1.real, "drive1_im": r.drive1.imag,
    }
    try:
        dp = dimensionless(r)
        record.update({
            "epsilon_re": dp.epsilon.real, "epsilon_im": dp.epsilon.imag,
            "n": dp.n, "c_re": dp.c.real, "c_im": dp.c.imag,
            "d_re": dp.d.real, "d_im": dp.d.imag, "theta": dp.theta,
            "c_tilde_re": dp.c_tilde.real, "c_tilde_im": dp.c_tilde.imag,
            "c_bar_re": dp.c_bar.real, "c_bar_im": dp.c_bar.imag,
        })
    except DpoTunnelError as exc:
        record["dimensionless_error"] = str(exc)
    payload = json.dumps(record, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def cmd_phase_map(args) -> int:
    nx, ny = _parse_grid(args.grid)
    re_vals = np.linspace(args.re_min, args.re_max, nx)
    im_vals = np.linspace(args.im_min, args.im_max, ny)
    codes = np.empty((ny, nx), dtype=int)
    lines = [f"# tool=dpotunnel {__version__}",
             f"# grid={nx}x{ny} re=[{args.re_min},{args.re_max}] im=[{args.im_min},{args.im_max}]",
             "c_re,c_im,region_code,region,n_stable,n_unstable,boundary_case"]
    code_of = {"I": 1, "II": 2, "III": 3}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for iy, im in enumerate(im_vals):
            for ix, re_ in enumerate(re_vals):
                pr = classify_phase(complex(re_, im))
                codes[iy, ix] = code_of[pr.region.value]
                lines.append(
                    f"{float(re_)!r},{float(im)!r},{codes[iy, ix]},{pr.region.value},"
                    f"{len(pr.stable_roots)},{len(pr.unstable_roots)},"
                    f"{'true' if pr.boundary_case else 'false'}"
                )
    _write_lines(lines, args.out)
    if args.plot and args.out:
        from .plotting import save_phase_map_figure
        save_phase_map_figure(re_vals, im_vals, codes, _figure_path(args.out))
    return 0


def cmd_potential_grid(args) -> int:
    doc = load_config(args.config)
    dp = dimensionless(reduce(load_base(doc)))
    nx, ny = _parse_grid(args.grid)
    tilt = classical_tilt(dp.c_tilde)
    xs = np.linspace(-1.0, 1.0, nx)
    ys = np.linspace(-1.0, 1.0, ny)
    phi_grid = np.empty((ny, nx), dtype=complex)
    lines = [f"# tool=dpotunnel {__version__}",
             f"# c_tilde={dp.c_tilde.real!r}{dp.c_tilde.imag:+}j n={dp.n!r} "
             f"p={args.p!r} tilt={tilt!r}",
             "x,y,phi_re,phi_im"]
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            pt = manifold_point(float(x), float(y), tilt, args.p)
            if abs(pt.beta) == 1.0 or abs(pt.beta_plus) == 1.0:
                val = complex(math.nan, math.nan)  # boundary of the log domain
            else:
                val = potential_value(pt, dp.c_tilde, dp.n)
            phi_grid[iy, ix] = val
            lines.append(f"{float(x)!r},{float(y)!r},{float(val.real)!r},{float(val.imag)!r}")
    _write_lines(lines, args.out)
    if args.plot and args.out:
        from .plotting import save_potential_figure
        save_potential_figure(xs, ys, phi_grid, _figure_path(args.out))
    return 0


def _run_tunnel(args) -> int:
    doc = load_config(args.config)
    cutoff = _parse_cutoff(args.cutoff) if args.cutoff is not None else None
    spec = load_sweep_spec(doc, methods_override=args.methods_override, cutoff_override=cutoff)
    out = args.out or spec.output_path
    if not out:
        raise ConfigError("no output path: pass --out or set output_path in the config")
    rows = run_sweep(spec, workers=args.workers)
    emit(rows, args.format, out, meta=sweep_metadata(spec))
    if args.plot:
        from .plotting import save_sweep_figure
        save_sweep_figure(rows, spec.axis, _figure_path(out))
    failed = [r for r in rows if r.error]
    for r in failed:
        print(f"warning: {spec.axis}={r.swept_value}: {r.error}", file=sys.stderr)
    if args.strict and failed:
        return 3
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dpotunnel",
        description="Tunneling times and phase structure of a driven anharmonic "
                    "degenerate parametric oscillator.",
    )
    parser.add_argument("--version", action="version", version=f"dpotunnel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, config=True):
        if config:
            sp.add_argument("--config", required=True, help="JSON configuration file")
        sp.add_argument("--out", default=None, help="output file (default: stdout or config)")
        sp.add_argument("--plot", action="store_true",
                        help="also render a figure next to the output file")

    sp = sub.add_parser("reduce", help="print reduced and dimensionless parameters")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("phase-map", help="region codes over the complex-c plane")
    add_common(sp, config=False)
    sp.add_argument("--grid", default="200x200", help="<nx>x<ny> grid size")
    sp.add_argument("--re-min", type=float, default=-2.0)
    sp.add_argument("--re-max", type=float, default=2.0)
    sp.add_argument("--im-min", type=float, default=-2.0)
    sp.add_argument("--im-max", type=float, default=2.0)
    sp.set_defaults(func=cmd_phase_map)

    sp = sub.add_parser("potential-grid", help="steady-state potential on the manifold")
    add_common(sp)
    sp.add_argument("--grid", default="101x101", help="<nx>x<ny> grid size")
    sp.add_argument("--p", type=float, default=0.01, help="manifold cutoff exponent")
    sp.set_defaults(func=cmd_potential_grid)

    for name, override, helptext in (
        ("tunnel-analytic", ("analytic",), "barrier-approximation sweep"),
        ("tunnel-fock", ("fock",), "number-state sweep"),
        ("compare", ("analytic", "fock"), "both methods side by side"),
    ):
        sp = sub.add_parser(name, help=helptext)
        add_common(sp)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--cutoff", default=None, help="photon-number cutoff or 'auto'")
        sp.add_argument("--workers", type=int, default=None)
        sp.add_argument("--strict", action="store_true",
                        help="exit 3 if any row records a hard failure")
        sp.set_defaults(func=_run_tunnel, methods_override=override)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DpoTunnelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
