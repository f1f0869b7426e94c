import json
import math

import pytest

from dpotunnel import cli, sweep
from dpotunnel.params import PhysicalParams

BASE = dict(
    gamma1_1=2.0, gamma2=20.0, gamma1_2=0.9, delta1=0.0, chi=0.0,
    kappa=2.0, drive1=0.0, drive2=40.0,
)  # effective rates: gamma2eff = 1, E = 4, n = 4


def make_spec(**overrides):
    fields = dict(
        base=PhysicalParams(**{k: v for k, v in BASE.items() if k != "drive1"}),
        axis="E2", values=(30.0, 40.0), methods=("analytic",),
    )
    fields.update(overrides)
    return sweep.SweepSpec(**fields)


def write_config(path, **overrides):
    doc = {"base": dict(BASE), "axis": "E2", "values": [30.0, 40.0],
           "methods": ["analytic"], "fock_cutoff": "auto"}
    doc.update(overrides)
    path.write_text(json.dumps(doc))
    return str(path)


class TestSweepSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            make_spec(values=())
        with pytest.raises(ValueError):
            make_spec(values=(1.0, 3.0, 2.0))
        with pytest.raises(ValueError):
            make_spec(axis="nonsense")
        with pytest.raises(ValueError):
            make_spec(methods=())
        with pytest.raises(ValueError):
            make_spec(fock_cutoff=1)

    def test_apply_axis(self):
        base = make_spec().base
        with pytest.warns(Warning):  # 3.5 kHz loss strains the adiabatic ratio
            assert sweep.apply_axis(base, "gamma1_1", 3.5).gamma1_1 == 3.5
        assert sweep.apply_axis(base, "E2", 50.0).drive2 == 50.0
        assert sweep.apply_axis(base, "delta1", -0.2).delta1 == -0.2
        assert sweep.apply_axis(base, "chi", 0.3).chi == 0.3
        assert sweep.apply_axis(base, "kappa", 1.0).kappa == 1.0
        # effective two-photon loss solved back to the intrinsic one
        p = sweep.apply_axis(base, "gamma2eff_via_gamma1_2", 1.5)
        assert p.gamma1_2 == pytest.approx(1.5 - 4.0 / 40.0, abs=1e-14)
        with pytest.raises(ValueError):
            sweep.apply_axis(base, "gamma2eff_via_gamma1_2", 0.05)


class TestRunSweep:
    def test_row_per_value_in_order(self):
        spec = make_spec(values=(30.0, 40.0, 50.0))
        rows = sweep.run_sweep(spec)
        assert [r.swept_value for r in rows] == [30.0, 40.0, 50.0]
        assert all(r.regime_ok for r in rows)
        assert all(r.T_analytic_ms is not None for r in rows)
        assert all(r.T_fock_ms is None for r in rows)

    def test_regime_violation_marked_not_fatal(self):
        # tiny drive: |c_tilde| > 1, below threshold
        spec = make_spec(values=(5.0, 40.0))
        rows = sweep.run_sweep(spec)
        assert not rows[0].regime_ok
        assert rows[0].error is not None
        assert rows[0].T_analytic_ms is None
        assert rows[1].regime_ok and rows[1].error is None

    def test_fock_method(self):
        spec = make_spec(values=(40.0,), methods=("analytic", "fock"))
        rows = sweep.run_sweep(spec)
        row = rows[0]
        assert row.cutoff_used is not None
        assert row.T_fock_ms is not None
        assert abs(row.ln_gamma_T_analytic - row.ln_gamma_T_fock) < 0.3

    def test_parallel_matches_serial(self):
        spec = make_spec(values=(30.0, 35.0, 40.0))
        serial = sweep.run_sweep(spec, workers=1)
        parallel = sweep.run_sweep(spec, workers=3)
        assert serial == parallel


class TestEmit:
    def test_csv_shape_and_complex_columns(self, tmp_path):
        rows = [sweep.SweepRow(
            swept_value=1.0, n=4.0, c_tilde=0.2 - 0.02j, regime_ok=True,
            T_analytic_ms=12.5, ln_gamma_T_analytic=math.log(2 * 12.5),
        )]
        out = tmp_path / "rows.csv"
        sweep.emit(rows, "csv", str(out), meta={"tool": "dpotunnel test"})
        lines = out.read_text().splitlines()
        assert lines[0] == "# tool=dpotunnel test"
        assert lines[1] == ",".join(sweep.CSV_COLUMNS)
        cells = lines[2].split(",")
        record = dict(zip(sweep.CSV_COLUMNS, cells))
        assert record["c_tilde_re"] == "0.2"
        assert record["c_tilde_im"] == "-0.02"
        assert record["regime_ok"] == "true"
        assert record["T_fock_ms"] == ""

    def test_deterministic_bytes(self, tmp_path):
        spec = make_spec()
        rows = sweep.run_sweep(spec)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        meta = sweep.sweep_metadata(spec)
        sweep.emit(rows, "csv", str(a), meta=meta)
        sweep.emit(rows, "csv", str(b), meta=meta)
        assert a.read_bytes() == b.read_bytes()
        ja, jb = tmp_path / "a.json", tmp_path / "b.json"
        sweep.emit(rows, "json", str(ja), meta=meta)
        sweep.emit(rows, "json", str(jb), meta=meta)
        assert ja.read_bytes() == jb.read_bytes()

    def test_json_mirrors_fields(self, tmp_path):
        rows = sweep.run_sweep(make_spec())
        out = tmp_path / "rows.json"
        sweep.emit(rows, "json", str(out))
        doc = json.loads(out.read_text())
        assert len(doc["rows"]) == 2
        assert set(doc["rows"][0]) == set(sweep.CSV_COLUMNS)

    def test_empty_rows_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            sweep.emit([], "csv", str(tmp_path / "x.csv"))

    def test_io_error_carries_path(self, tmp_path):
        rows = sweep.run_sweep(make_spec())
        with pytest.raises(OSError, match="no/such/dir"):
            sweep.emit(rows, "csv", str(tmp_path / "no/such/dir/x.csv"))


class TestCli:
    def test_reduce_prints_parameters(self, tmp_path, capsys):
        cfg = write_config(tmp_path / "cfg.json")
        assert cli.main(["reduce", "--config", cfg]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["gamma2eff"] == 1.0
        assert doc["E"] == 4.0
        assert doc["n"] == pytest.approx(4.0)

    def test_tunnel_analytic_writes_csv(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.json")
        out = tmp_path / "sweep.csv"
        assert cli.main(["tunnel-analytic", "--config", cfg, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        header = [l for l in lines if not l.startswith("#")][0]
        assert header == ",".join(sweep.CSV_COLUMNS)
        assert len([l for l in lines if not l.startswith("#")]) == 3

    def test_compare_with_fixed_cutoff(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.json", values=[40.0])
        out = tmp_path / "cmp.json"
        code = cli.main(["compare", "--config", cfg, "--out", str(out),
                         "--format", "json", "--cutoff", "24"])
        assert code == 0
        doc = json.loads(out.read_text())
        row = doc["rows"][0]
        assert row["cutoff_used"] == 24
        assert row["T_fock_ms"] is not None and row["T_analytic_ms"] is not None

    def test_strict_exit_code_on_row_failure(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.json", values=[5.0, 40.0])
        out = tmp_path / "sweep.csv"
        assert cli.main(["tunnel-analytic", "--config", cfg, "--out", str(out)]) == 0
        code = cli.main(["tunnel-analytic", "--config", cfg, "--out", str(out), "--strict"])
        assert code == 3

    def test_config_errors_exit_2(self, tmp_path):
        missing = str(tmp_path / "nope.json")
        assert cli.main(["reduce", "--config", missing]) == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert cli.main(["reduce", "--config", str(bad)]) == 2
        nobase = tmp_path / "nobase.json"
        nobase.write_text(json.dumps({"axis": "E2", "values": [1, 2]}))
        assert cli.main(["tunnel-analytic", "--config", str(nobase), "--out", "x.csv"]) == 2

    def test_phase_map_grid(self, tmp_path):
        out = tmp_path / "map.csv"
        assert cli.main(["phase-map", "--grid", "12x10", "--out", str(out)]) == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert lines[0].startswith("c_re,c_im,region_code")
        assert len(lines) == 1 + 12 * 10
        first = lines[1].split(",")
        assert float(first[0]) == -2.0 and float(first[1]) == -2.0
        assert first[2] in ("1", "2", "3")

    def test_potential_grid(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.json", base={**BASE, "chi": 0.1, "drive2": 100.0})
        out = tmp_path / "pot.csv"
        assert cli.main(["potential-grid", "--config", cfg, "--grid", "11x11",
                         "--out", str(out)]) == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert lines[0] == "x,y,phi_re,phi_im"
        assert len(lines) == 1 + 121
        # interior potential values are finite and all four columns parse
        center = lines[1 + 5 * 11 + 5].split(",")
        assert [float(c) for c in center[:2]] == [0.0, 0.0]
        assert math.isfinite(float(center[2])) and math.isfinite(float(center[3]))

    def test_plot_renders_png(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.json")
        out = tmp_path / "sweep.csv"
        assert cli.main(["tunnel-analytic", "--config", cfg, "--out", str(out),
                         "--plot"]) == 0
        png = tmp_path / "sweep.png"
        assert png.exists()
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
