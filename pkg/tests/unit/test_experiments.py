"""Test parameter sweeps and their output documents"""

import csv
import io
import json

import pytest

from app.exceptions import ConfigException, ValidationException
from app.schemas.experiment import SWEEP_COLUMNS
from app.services.experiment_service import emit_csv, emit_json, load_spec, parse_spec, render, run_sweep


def _spec(**kwargs):
    return parse_spec(kwargs)


def test_mu_br_sweep_lowers_redundancy():
    rows = run_sweep(_spec(axis="mu_br", values=[8, 1, 2, 4, 6]))
    assert [row.axis for row in rows] == [1, 2, 4, 6, 8]
    r_opts = [row.r_opt for row in rows]
    assert all(a >= b for a, b in zip(r_opts, r_opts[1:]))
    assert all(row.optimizer == "oracle" and row.mode == "per_request" for row in rows)


def test_oracle_never_loses_to_baselines():
    rows = run_sweep(_spec(axis="mu_br", values=[1, 2, 4, 8, 16]))
    for row in rows:
        assert row.reduction_vs_eta0_pct >= -1e-9
        assert row.reduction_vs_eta1_pct >= -1e-9
        assert row.cost_opt <= min(row.cost_eta0, row.cost_eta1) + 1e-12


def test_uniform_popularity_needs_no_redundancy():
    rows = run_sweep(_spec(axis="s", values=[0.0, 0.8, 1.2]))
    assert rows[0].r_opt == 0
    assert rows[0].reduction_vs_eta0_pct == 0.0
    assert rows[-1].r_opt >= rows[0].r_opt


def test_cache_size_sweep_raises_catalog():
    rows = run_sweep(_spec(axis="M", values=[10, 50, 100, 150]))
    assert [row.cache_size for row in rows] == [10, 50, 100, 150]
    assert all(row.file_count == 1000 for row in rows)
    assert all(row.feasible for row in rows)
    assert rows[0].note == "file_count raised to 1000"


def test_cache_size_axis_requires_integers():
    with pytest.raises(ValidationException):
        run_sweep(_spec(axis="M", values=[10.5]))


def test_redundancy_axis_evaluates_fixed_layouts():
    rows = run_sweep(_spec(axis="R", values=[0, 10, 50]))
    assert [row.optimizer for row in rows] == ["fixed"] * 3
    assert [row.eta_opt for row in rows] == pytest.approx([0.0, 0.2, 1.0])
    assert rows[0].cost_opt == pytest.approx(rows[0].cost_eta0)
    assert rows[-1].cost_opt == pytest.approx(rows[-1].cost_eta1)
    assert rows[0].reduction_vs_eta0_pct == pytest.approx(0.0)


def test_infeasible_points_produce_empty_fields():
    rows = run_sweep(_spec(axis="R", values=[0, 4], bs_count=3, cache_size=4, file_count=8))
    assert not rows[0].feasible
    assert rows[0].note.startswith("infeasible")
    assert rows[1].feasible

    lines = emit_csv(rows).splitlines()
    fields = next(csv.reader([lines[1]]))
    assert fields[0] == "0"
    assert fields[1] == "" and fields[3] == ""


def test_pso_sweep_is_reproducible():
    spec = _spec(axis="mu_br", values=[2, 4], optimizer="pso-practical", seed=5)
    assert emit_csv(run_sweep(spec)) == emit_csv(run_sweep(spec))


def test_ppp_sweep_draws_station_counts():
    spec = _spec(axis="mu_br", values=[2, 4, 6], ppp=True, seed=1)
    rows = run_sweep(spec)
    assert all(row.bs_count >= 1 for row in rows)
    assert [row.bs_count for row in rows] == [row.bs_count for row in run_sweep(spec)]


def test_csv_document():
    rows = run_sweep(_spec(axis="mu_br", values=[1, 4], mode="paper-literal"))
    document = emit_csv(rows)
    assert document.endswith("\n") and "\r" not in document
    assert document.splitlines()[0] == ",".join(SWEEP_COLUMNS)

    records = list(csv.DictReader(io.StringIO(document)))
    assert len(records) == 2
    for record, row in zip(records, rows):
        assert float(record["cost_opt"]) == pytest.approx(row.cost_opt, rel=1e-11)
        assert int(record["r_opt"]) == row.r_opt
        assert record["mode"] == "paper_literal"
        assert record["seed"] == "0"


def test_json_document_uses_csv_field_names():
    rows = run_sweep(_spec(axis="s", values=[0.6, 0.8], format="json"))
    records = json.loads(render(rows, "json"))
    assert [list(record) for record in records] == [SWEEP_COLUMNS] * 2
    assert records[1]["cost_opt"] == rows[1].cost_opt
    assert emit_json(rows).endswith("\n")


def test_load_spec(tmp_path):
    path = tmp_path / "mu_br_sweep.json"
    path.write_text(json.dumps({"axis": "mu-br", "values": [1, 2], "mode": "per-request"}))
    spec = load_spec(str(path))
    assert spec.axis == "mu_br"
    assert spec.values == [1.0, 2.0]


@pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
def test_load_spec_rejects_malformed_files(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    with pytest.raises(ConfigException):
        load_spec(str(path))


def test_load_spec_missing_file(tmp_path):
    with pytest.raises(ConfigException):
        load_spec(str(tmp_path / "missing.json"))


@pytest.mark.parametrize("data,field", [
    ({"axis": "mu_br", "values": [1], "cache_size": 0}, "cache_size"),
    ({"axis": "mu_br", "values": [1], "mode": "bogus"}, "mode"),
    ({"axis": "mu_br", "values": [1], "colour": "red"}, "colour"),
    ({"axis": "beta", "values": [1]}, "axis"),
    ({"axis": "mu_br", "values": []}, "values"),
])
def test_invalid_specs_name_the_field(data, field):
    with pytest.raises(ValidationException) as exc_info:
        parse_spec(data)
    assert exc_info.value.field == field


@pytest.mark.parametrize("mode", ["per_request", "paper_literal"])
def test_popularity_skew_trend(mode):
    rows = run_sweep(_spec(axis="s", values=[0.4, 0.6, 0.8, 1.0, 1.2], mode=mode))
    etas = [row.eta_opt for row in rows]
    costs = [row.cost_opt for row in rows]
    assert all(a <= b for a, b in zip(etas, etas[1:]))
    assert all(a > b for a, b in zip(costs, costs[1:]))


@pytest.mark.parametrize("mode", ["per_request", "paper_literal"])
def test_cache_size_trend(mode):
    rows = run_sweep(_spec(axis="M", values=[25, 50, 75, 100], mode=mode))
    etas = [row.eta_opt for row in rows]
    costs = [row.cost_opt for row in rows]
    assert all(a > b for a, b in zip(costs, costs[1:]))
    assert max(etas) - min(etas) <= 0.2


@pytest.mark.parametrize("mode", ["per_request", "paper_literal"])
def test_backhaul_ratio_trend(mode):
    rows = run_sweep(_spec(axis="mu_br", values=[1, 2, 4, 6, 8], mode=mode))
    etas = [row.eta_opt for row in rows]
    assert all(a >= b for a, b in zip(etas, etas[1:]))


def test_savings_against_full_redundancy_grow_with_backhaul_cost():
    rows = {row.axis: row for row in run_sweep(_spec(axis="mu_br", values=[4, 6]))}
    assert rows[6].reduction_vs_eta1_pct > rows[4].reduction_vs_eta1_pct
    for row in rows.values():
        assert row.reduction_vs_eta1_pct >= 25
        assert row.reduction_vs_eta1_pct == pytest.approx(100 * (1 - row.cost_opt / row.cost_eta1), abs=1e-9)
        assert row.reduction_vs_eta0_pct == pytest.approx(100 * (1 - row.cost_opt / row.cost_eta0), abs=1e-9)


@pytest.mark.parametrize("mu_br,r_opt,vs_eta0,vs_eta1", [(4, 6, 8.276, 42.214), (6, 3, 4.292, 51.392)])
def test_reference_scenario_reductions(mu_br, r_opt, vs_eta0, vs_eta1):
    row = run_sweep(_spec(axis="mu_br", values=[mu_br]))[0]
    assert row.r_opt == r_opt
    assert row.reduction_vs_eta0_pct == pytest.approx(vs_eta0, abs=1e-3)
    assert row.reduction_vs_eta1_pct == pytest.approx(vs_eta1, abs=1e-3)


def test_empty_rows_render_header_only():
    assert emit_csv([]) == ",".join(SWEEP_COLUMNS) + "\n"
    assert json.loads(emit_json([])) == []
