"""Sweep configuration, execution, and table serialization."""

import json

import numpy as np
import pytest

from critrates.quadrature import QuadratureConfig
from critrates.sweep import (SweepConfigError, SweepTable, config_to_dict,
                             emit_csv, emit_json, load_config, read_csv,
                             read_json, resolve_data_source, run_sweep,
                             write_metadata)


def composite_config(**overrides):
    spec = {
        "scenario": "percolation-composite",
        "observable": "decoherence",
        "axes": [
            {"name": "x_over_lambda", "values": [0.7]},
            {"name": "z_over_lambda", "values": [0.01]},
            {"name": "f", "values": [0.2, 0.4]},
        ],
    }
    spec.update(overrides)
    return spec


def phase_config(**overrides):
    spec = {
        "scenario": "vo2",
        "observable": "collective",
        "axes": [
            {"name": "x_over_lambda", "values": [0.1]},
            {"name": "z_over_lambda", "values": [0.01]},
            {"name": "branch", "values": ["heating", "cooling"]},
            {"name": "T_K", "values": [330.0, 342.0]},
        ],
    }
    spec.update(overrides)
    return spec


def test_load_config_from_dict():
    config = load_config(composite_config())
    assert config.scenario == "percolation-composite"
    assert [a.name for a in config.axes] == ["x_over_lambda",
                                             "z_over_lambda", "f"]
    assert config.lambda0_um == 450.0


def test_load_config_from_file(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(composite_config()))
    assert load_config(path) == load_config(composite_config())


def test_linspace_axis_expansion():
    spec = composite_config(axes=[
        {"name": "x_over_lambda", "values": [0.7]},
        {"name": "z_over_lambda", "values": [0.01]},
        {"name": "f", "linspace": [0.0, 0.8, 5]},
    ])
    config = load_config(spec)
    np.testing.assert_allclose(config.axes[-1].values,
                               [0.0, 0.2, 0.4, 0.6, 0.8])


def test_axis_needs_exactly_one_value_source():
    bad = {"name": "f", "values": [0.1], "linspace": [0.0, 1.0, 3]}
    with pytest.raises(SweepConfigError):
        load_config(composite_config(axes=[bad]))
    with pytest.raises(SweepConfigError):
        load_config(composite_config(axes=[{"name": "f"}]))


def test_unknown_keys_are_rejected():
    with pytest.raises(SweepConfigError, match="wavelength"):
        load_config(composite_config(wavelength=450.0))
    with pytest.raises(SweepConfigError):
        load_config(composite_config(
            materials={"host": "builtin:polystyrene_lorentz",
                       "solvent": "water"}))
    with pytest.raises(SweepConfigError):
        load_config(composite_config(quadrature={"tol": 1e-9}))


@pytest.mark.parametrize("mutate, fragment", [
    ({"scenario": "crystal"}, "scenario"),
    ({"observable": "fluorescence"}, "observable"),
    ({"axes": [{"name": "x_over_lambda", "values": [0.7]},
               {"name": "f", "values": [0.2]}]}, "z_over_lambda"),
    ({"axes": [{"name": "x_over_lambda", "values": [0.7]},
               {"name": "z_over_lambda", "values": [0.01]}]}, "f"),
    ({"axes": [{"name": "x_over_lambda", "values": [0.7]},
               {"name": "z_over_lambda", "values": [0.01]},
               {"name": "f", "values": [1.2]}]}, "f"),
    ({"axes": [{"name": "x_over_lambda", "values": [0.7]},
               {"name": "z_over_lambda", "values": [0.0]},
               {"name": "f", "values": [0.2]}]}, "z values"),
    ({"axes": [{"name": "x_over_lambda", "values": [0.7]},
               {"name": "z_over_lambda", "values": [0.01]},
               {"name": "f", "values": [0.2]},
               {"name": "T_K", "values": [330.0]}]}, "T_K"),
    ({"axes": [{"name": "f", "values": [0.2]},
               {"name": "f", "values": [0.3]},
               {"name": "x_over_lambda", "values": [0.7]},
               {"name": "z_over_lambda", "values": [0.01]}]}, "unique"),
    ({"quadrature": {"rel_tol": -1.0}}, "tolerances"),
])
def test_composite_validation_failures(mutate, fragment):
    with pytest.raises(SweepConfigError, match=fragment):
        load_config(composite_config(**mutate))


def test_phase_validation_failures():
    spec = phase_config(axes=[
        {"name": "x_over_lambda", "values": [0.1]},
        {"name": "z_over_lambda", "values": [0.01]},
        {"name": "T_K", "values": [330.0]},
    ])
    with pytest.raises(SweepConfigError, match="branch"):
        load_config(spec)
    spec = phase_config(axes=[
        {"name": "x_over_lambda", "values": [0.1]},
        {"name": "z_over_lambda", "values": [0.01]},
        {"name": "branch", "values": ["melting"]},
        {"name": "T_K", "values": [330.0]},
    ])
    with pytest.raises(SweepConfigError, match="branch"):
        load_config(spec)


def test_config_round_trip_through_dict():
    config = load_config(phase_config())
    assert load_config(config_to_dict(config)) == config


def test_resolve_data_source(tmp_path):
    assert resolve_data_source("builtin:gold_drude").is_file()
    assert resolve_data_source("builtin:vo2_synthetic").suffix == ".csv"
    with pytest.raises(SweepConfigError):
        resolve_data_source("builtin:unobtainium")
    with pytest.raises(FileNotFoundError):
        resolve_data_source(tmp_path / "missing.json")
    real = tmp_path / "present.json"
    real.write_text("{}")
    assert resolve_data_source(str(real)) == real


def test_run_sweep_row_layout():
    table = run_sweep(load_config(composite_config()), workers=1)
    assert table.axes == ("x_over_lambda", "z_over_lambda", "f")
    assert table.columns[:3] == ("x_over_lambda", "z_over_lambda", "f")
    assert "ratio" in table.columns and "free_ratio" in table.columns
    assert len(table.rows) == 2
    assert table.column("f") == [0.2, 0.4]
    assert not table.flagged
    # the interface-free reference is the same for both rows
    u = 2 * np.pi * 0.7
    for value in table.column("free_ratio"):
        assert value == pytest.approx(1.0 - np.sin(u) / u, abs=1e-9)


def test_run_sweep_single_point_grid():
    spec = composite_config(axes=[
        {"name": "x_over_lambda", "values": [0.7]},
        {"name": "z_over_lambda", "values": [0.01]},
        {"name": "f", "values": [0.5]},
    ])
    table = run_sweep(load_config(spec), workers=1)
    assert len(table.rows) == 1
    assert table.rows[0][-1] == "ok"


def test_run_sweep_thins_with_max_rows():
    spec = composite_config(axes=[
        {"name": "x_over_lambda", "values": [0.7]},
        {"name": "z_over_lambda", "values": [0.01]},
        {"name": "f", "linspace": [0.0, 0.8, 33]},
    ])
    table = run_sweep(load_config(spec), workers=1, max_rows=7)
    assert 0 < len(table.rows) <= 7
    fills = table.column("f")
    assert fills == sorted(fills)
    assert fills[0] == 0.0


def test_parallel_rows_match_sequential():
    config = load_config(phase_config())
    sequential = run_sweep(config, workers=1)
    parallel = run_sweep(config, workers=2)
    assert sequential.rows == parallel.rows
    assert sequential.columns == parallel.columns


def test_exhausted_quadrature_flags_row():
    spec = composite_config(
        quadrature={"rel_tol": 1e-13, "abs_tol": 1e-30,
                    "max_subdivisions": 1})
    table = run_sweep(load_config(spec), workers=1)
    assert table.flagged
    status = table.flagged[0][-1]
    assert "best estimate" in status
    # numeric outputs for a flagged row are withheld
    ratio_index = table.columns.index("ratio")
    assert table.flagged[0][ratio_index] is None


def test_csv_round_trip(tmp_path):
    table = run_sweep(load_config(phase_config()), workers=1)
    path = tmp_path / "out.csv"
    emit_csv(table, path)
    back = read_csv(path)
    assert back.columns == table.columns
    assert back.rows == table.rows
    assert back.axes == table.axes


def test_csv_round_trip_with_flagged_row(tmp_path):
    columns = ("f", "local", "nonlocal", "ratio", "free_ratio",
               "local_error", "nonlocal_error", "evaluations", "status")
    rows = ((0.2, 1.5, -0.5, 0.7, 1.2, 1e-9, 1e-9, 1234, "ok"),
            (0.4, None, None, None, None, None, None, None,
             "failed: no admissible root"))
    table = SweepTable(columns, rows, ("f",))
    path = tmp_path / "flagged.csv"
    emit_csv(table, path)
    back = read_csv(path)
    assert back.rows == table.rows
    assert len(back.flagged) == 1


def test_csv_bytes_are_deterministic(tmp_path):
    table = run_sweep(load_config(composite_config()), workers=1)
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    emit_csv(table, first)
    emit_csv(table, second)
    assert first.read_bytes() == second.read_bytes()


def test_json_round_trip(tmp_path):
    table = run_sweep(load_config(composite_config()), workers=1)
    path = tmp_path / "out.json"
    emit_json(table, path)
    back = read_json(path)
    assert back.columns == table.columns
    assert back.rows == table.rows


def test_metadata_sidecar(tmp_path):
    config = load_config(composite_config())
    table = run_sweep(config, workers=1)
    data_path = tmp_path / "out.csv"
    emit_csv(table, data_path)
    meta_path = write_metadata(data_path, config, table, 1.25)
    assert meta_path.name == "out.csv.meta.json"
    meta = json.loads(meta_path.read_text())
    assert meta["rows"] == len(table.rows)
    assert meta["flagged_rows"] == 0
    assert meta["config"]["scenario"] == "percolation-composite"
    assert "numpy" in meta["versions"]


def test_quadrature_override_reaches_rates():
    tight = load_config(composite_config(quadrature={"rel_tol": 1e-11}))
    assert tight.quadrature == QuadratureConfig(rel_tol=1e-11)
    loose = load_config(composite_config(quadrature={"rel_tol": 1e-5}))
    t_tight = run_sweep(tight, workers=1)
    t_loose = run_sweep(loose, workers=1)
    evals_index = t_tight.columns.index("evaluations")
    assert t_tight.rows[0][evals_index] > t_loose.rows[0][evals_index]
