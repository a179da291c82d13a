import hashlib
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import sympwave as sw
from sympwave.errors import UsageError
from sympwave.harness import EXPERIMENTS


def make_records(xs, ys):
    return [sw.SweepRecord(inputs=(("x", x),), outputs=(("y", y),))
            for x, y in zip(xs, ys)]


# -- fit_slope ------------------------------------------------------------------

def test_fit_exact_square_law():
    xs = np.linspace(1.0, 9.0, 12)
    fit = sw.fit_slope(make_records(xs, xs**2), "x", "y")
    assert fit.slope == pytest.approx(2.0, abs=1e-12)
    assert fit.npoints == 12
    assert fit.stderr >= 0.0


def test_fit_synthetic_noisy_power_law():
    xs = np.linspace(50.0, 500.0, 40)
    ys = 3.7 * xs**-3 * (1 + 0.01 * np.sin(xs))
    fit = sw.fit_slope(make_records(xs, ys), "x", "y")
    assert fit.slope == pytest.approx(-3.0, abs=0.05)


def test_fit_needs_three_points():
    with pytest.raises(UsageError):
        sw.fit_slope(make_records([1.0, 2.0], [1.0, 2.0]), "x", "y")


def test_fit_rejects_nonpositive_naming_row():
    recs = make_records([1.0, 2.0, 3.0], [1.0, -2.0, 3.0])
    with pytest.raises(UsageError, match="row 1"):
        sw.fit_slope(recs, "x", "y")


@settings(max_examples=20, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 10))
def test_fit_recovers_any_exact_power(slope, scale):
    xs = np.geomspace(1.0, 30.0, 9)
    fit = sw.fit_slope(make_records(xs, scale * xs**slope), "x", "y")
    assert fit.slope == pytest.approx(slope, abs=1e-9)


# -- records and emission ----------------------------------------------------------

def test_duplicate_columns_rejected():
    with pytest.raises(UsageError):
        sw.SweepRecord(inputs=(("x", 1.0),), outputs=(("x", 2.0),))


def test_emit_zero_rows(tmp_path):
    path = tmp_path / "empty.csv"
    sw.emit([], "csv", str(path))
    assert path.read_text().strip() == ""
    assert sw.read_csv(str(path)) == []


def test_complex_columns_split(tmp_path):
    rec = sw.SweepRecord(inputs=(("t", 1.0),), outputs=(("val", 1 + 2j),))
    path = tmp_path / "c.csv"
    sw.emit([rec], "csv", str(path))
    header = path.read_text().splitlines()[0]
    assert header == "t,val_re,val_im"


def test_csv_round_trip(tmp_path):
    xs = [1.0, 2.5, 3.75]
    ys = [0.1234567890123456789, 7.25e-11, 3.0]
    path = tmp_path / "r.csv"
    sw.emit(make_records(xs, ys), "csv", str(path))
    back = sw.read_csv(str(path))
    for rec, x, y in zip(back, xs, ys):
        assert rec.get("x") == x
        assert rec.get("y") == y


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(min_value=-1e12, max_value=1e12,
                          allow_nan=False, allow_infinity=False),
                min_size=1, max_size=6))
def test_csv_round_trip_property(tmp_path_factory, ys):
    path = tmp_path_factory.mktemp("csv") / "p.csv"
    recs = make_records(range(1, len(ys) + 1), ys)
    sw.emit(recs, "csv", str(path))
    back = sw.read_csv(str(path))
    for rec, y in zip(back, ys):
        assert rec.get("y") == y


def test_emit_svg(tmp_path):
    xs = np.geomspace(1, 100, 8)
    path = tmp_path / "plot.svg"
    sw.emit(make_records(xs, xs**-2), "svg", str(path))
    text = path.read_text()
    assert text.startswith("<svg") and "polyline" in text


def test_emit_unwritable_path():
    with pytest.raises(OSError):
        sw.emit([], "csv", "/nonexistent-dir/x.csv")


# -- grids and config -----------------------------------------------------------

def test_parse_grid_list():
    assert sw.parse_grid("10,20,40") == [10.0, 20.0, 40.0]
    assert sw.parse_grid("") == []


def test_parse_grid_progressions():
    lin = sw.parse_grid("0:1:5:lin")
    assert np.allclose(lin, np.linspace(0, 1, 5))
    log = sw.parse_grid("1:100:3:log")
    assert np.allclose(log, [1.0, 10.0, 100.0])
    with pytest.raises(UsageError):
        sw.parse_grid("1:2:3:weird")


def test_read_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nexperiment = kernel\npreset= h3\n t-list =10,20\n")
    spec = sw.read_config(str(cfg))
    assert spec == {"experiment": "kernel", "preset": "h3", "t-list": "10,20"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("no equals here\n")
    with pytest.raises(UsageError):
        sw.read_config(str(bad))


# -- sweeps ------------------------------------------------------------------------

def kernel_spec(tlist="10,20"):
    return {"experiment": "kernel", "preset": "h3", "psi": "exp:1.0",
            "t-list": tlist, "R": "0.5"}


def test_run_sweep_kernel_rows():
    rows = sw.run_sweep(kernel_spec())
    assert len(rows) == 2
    assert rows[0].get("t") == 10.0
    assert rows[0].get("abs") > 0.0


def test_run_sweep_empty_grid():
    assert sw.run_sweep(kernel_spec("")) == []


def test_run_sweep_unknown_experiment():
    with pytest.raises(UsageError, match="experiment"):
        sw.run_sweep({"experiment": "nope"})


def test_run_sweep_missing_key():
    with pytest.raises(UsageError, match="preset"):
        sw.run_sweep({"experiment": "cfun", "lambda-max": "1", "steps": "3"})


def test_cfun_sweep_columns():
    rows = sw.run_sweep({"experiment": "cfun", "preset": "a2",
                         "lambda-max": "2.0", "steps": "4"})
    assert len(rows) == 4
    assert rows[0].column_names() == ["lambda_1", "lambda_2", "density"]


def test_stphase_sweep():
    rows = sw.run_sweep({"experiment": "stphase", "x-list": "20,50", "N": "2", "M": "1"})
    assert len(rows) == 2
    for row in rows:
        assert row.get("abs_err") <= 1e-6 * abs(row.get("oracle")) + 1e-9


def test_model_sweep_skips_small_hr():
    rows = sw.run_sweep({"experiment": "model", "preset": "a2", "symbol": "gauss",
                         "r": "1.0", "h-list": "1.0,12.0"})
    assert math.isnan(rows[0].get("bound_ratio"))
    assert np.isfinite(rows[1].get("bound_ratio"))
    gap = abs(rows[1].get("direct") - rows[1].get("main")
              - rows[1].get("R0") - rows[1].get("R1") - rows[1].get("R2"))
    assert gap <= 1e-6 * abs(rows[1].get("direct")) + 1e-9


def _sweep_digest(spec):
    rows = sw.run_sweep(spec)
    from sympwave.harness import _flat_columns
    text = "\n".join(",".join("%.17g" % v for _, v in _flat_columns(r)) for r in rows)
    return hashlib.sha256(text.encode()).hexdigest()


def test_rerun_byte_identical():
    assert _sweep_digest(kernel_spec()) == _sweep_digest(kernel_spec())


def test_worker_count_invariance(monkeypatch):
    monkeypatch.setenv("SYMPWAVE_THREADS", "1")
    one = _sweep_digest(kernel_spec("5,10,15,20"))
    monkeypatch.setenv("SYMPWAVE_THREADS", "4")
    four = _sweep_digest(kernel_spec("5,10,15,20"))
    assert one == four


def test_registered_experiments():
    assert set(EXPERIMENTS) == {"cfun", "stphase", "model", "kernel", "dispersive"}
