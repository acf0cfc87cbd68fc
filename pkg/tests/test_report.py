import json
from pathlib import Path

import pytest

from tsallis_ops.report import (
    CSV_HEADER,
    ConfigError,
    RunConfig,
    persist,
    plan_cells,
    report_from_dict,
    report_to_dict,
    run_suite,
    serialize_report,
)

GOLDEN = Path(__file__).parent / "golden"


def small(**kw):
    base = dict(suites=["KNOWN_BOUNDS_T", "XI_PSI_UNREFLECTED"], dims=[2, 3], trials=4, v_grid=[-0.5, 0.5])
    base.update(kw)
    return RunConfig(**base)


def test_plan_cells_roles():
    cells = plan_cells(RunConfig(suites=["MONO_13", "CHORD_S"], dims=[2], v_grid=[-0.3, 0.3]))
    roles = {(c.suite, c.v): c.role for c in cells}
    assert roles == {("MONO_13", -0.3): "finding", ("MONO_13", 0.3): "asserted", ("CHORD_S", None): "asserted"}


def test_four_chain_neg_always_gets_minus_one_half():
    cells = plan_cells(RunConfig(suites=["FOUR_CHAIN_NEG"], dims=[2], v_grid=[-1.0]))
    assert sorted(c.v for c in cells) == [-1.0, -0.5]


def test_smoke_run():
    report = run_suite(small())
    assert report.summary["asserted_cells"] == 4
    assert report.summary["asserted_failures"] == 0
    assert report.exit_code == 0
    assert report.findings[0]["suite"] == "XI_PSI_UNREFLECTED"


@pytest.mark.parametrize("kw", [dict(suites=[]), dict(suites=["NOPE"]), dict(dims=[1]),
                                dict(trials=0), dict(v_grid=[0.0]), dict(tol=0.0), dict(format="xml")])
def test_config_errors(kw):
    with pytest.raises(ConfigError):
        run_suite(small(**kw))


def test_runs_are_deterministic():
    assert run_suite(small()).without_runtime() == run_suite(small()).without_runtime()


def test_parallel_matches_serial():
    assert run_suite(small(workers=2)).without_runtime() == run_suite(small()).without_runtime()


def test_json_round_trip():
    report = run_suite(small())
    back = report_from_dict(json.loads(serialize_report(report, "json")))
    assert report_to_dict(back) == report_to_dict(report)


def test_csv_has_one_row_per_cell():
    report = run_suite(small())
    lines = serialize_report(report, "csv").decode().splitlines()
    assert lines[0].split(",") == CSV_HEADER
    assert len(lines) == 1 + len(report.records)


def test_text_matches_golden():
    text = serialize_report(run_suite(small()), "text").decode()
    assert text == (GOLDEN / "small_report.txt").read_text()


def test_exit_code_on_failure():
    report = run_suite(RunConfig(suites=["EXPV_OPERATOR"], dims=[3], trials=5, v_grid=[0.3]))
    assert report.summary["asserted_failures"] > 0
    assert report.exit_code == 1


def test_persist_writes_failing_cases(tmp_path):
    report = run_suite(small())
    written = persist(report, tmp_path / "r.json")
    assert (tmp_path / "r.json").exists()
    assert written and all(p.parent.name == "r_cases" for p in written)
    assert len(written) <= 3 * len(report.records)
