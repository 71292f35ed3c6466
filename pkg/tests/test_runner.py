import json

import numpy as np
import pytest

import toolkit_config
from frontend import demo_source, format_report, parse, run
from frontend.environment import ScenarioEnvironment


def run_demo(name, **options):
    return run(parse(demo_source(name)), **options)


def statuses(report):
    return [r.status for r in report.results]


def test_qubit_born_demo():
    report = run_demo("qubit-born")
    (result,) = report.results
    assert result.status == "pass"
    assert result.values["generalized"] == pytest.approx(0.5, abs=1e-12)
    assert result.values["classical"] == pytest.approx(0.5, abs=1e-12)
    assert report.exit_code == 0


def test_two_sector_demo():
    report = run_demo("two-sector")
    assert statuses(report) == ["pass", "pass", "pass"]
    gns_result, mixed, pure = report.results
    assert gns_result.values["gns_dim"] == 13
    assert mixed.values["center_dim"] == 2
    assert mixed.values["weights"] == pytest.approx([0.25, 0.75], abs=1e-10)
    assert [row["rank"] for row in mixed.tables["sectors"]] == [4, 9]
    assert pure.values["sectors"] == 1
    assert pure.values["factor_state"] is True


def test_mppc_fail_demo():
    report = run_demo("mppc-fail")
    assert statuses(report) == ["pass", "fail", "fail", "pass"]
    assert report.results[1].values["holds"] is False
    assert report.results[2].error.startswith("MppcFailed")
    assert report.exit_code == 1


def test_angle_born_demo():
    report = run_demo("angle-born")
    assert all(s == "pass" for s in statuses(report))
    for result, theta in zip(report.results[:3], (0.3, 0.7, 1.1)):
        assert result.values["generalized"] == pytest.approx(np.sin(theta) ** 2, abs=1e-10)
    assert report.results[3].values["probability"] == pytest.approx(np.cos(0.7) ** 2, abs=1e-10)


@pytest.mark.parametrize("name", ["spectral", "reference"])
def test_demo_passes(name):
    assert run_demo(name).passed


def test_failing_query_does_not_stop_the_others():
    scenario = parse(
        """
        let plus = ket(1, 1)
        algebra D { direct_sum: 1, 1 }
        measurement M { observable: pauli_z }
        measurement B { observable: pauli_x  algebra: D }
        query born measurement=M state=plus outcomes={5}
        query born measurement=B state=plus outcomes={1}
        query born measurement=M state=plus outcomes={-1}
        """
    )
    report = run(scenario)
    assert statuses(report) == ["error", "error", "pass"]
    assert report.results[0].error.startswith("UnknownOutcome")
    assert report.results[1].error.startswith("NotInAlgebra")


def test_tolerance_and_seed_precedence():
    scenario = parse('seed 5\ntolerance 1e-7\nlet s = ket(1, 0)\n')
    report = run(scenario)
    assert (report.tol, report.seed) == (1e-7, 5)
    report = run(scenario, tol=1e-6, seed=9)
    assert (report.tol, report.seed) == (1e-6, 9)
    report = run(parse("let s = ket(1, 0)\n"))
    assert (report.tol, report.seed) == (toolkit_config.default_tol, toolkit_config.default_seed)


def test_random_builtins_depend_only_on_seed_and_name():
    scenario = parse("let r = random_state(3)\nlet q = random_state(3)\n")
    first = ScenarioEnvironment(scenario, seed=1).value("r").density
    again = ScenarioEnvironment(scenario, seed=1).value("r").density
    other_seed = ScenarioEnvironment(scenario, seed=2).value("r").density
    other_name = ScenarioEnvironment(scenario, seed=1).value("q").density
    assert np.array_equal(first, again)
    assert not np.allclose(first, other_seed)
    assert not np.allclose(first, other_name)


def test_machine_report_is_deterministic():
    scenario = parse(demo_source("mppc-fail"))
    serial = format_report(run(scenario), "machine")
    parallel = format_report(run(scenario, workers=3), "machine")
    assert serial == parallel
    document = json.loads(serial)
    assert document["summary"] == {"pass": 2, "fail": 2, "error": 0}
    assert document["seed"] == 5
    assert "elapsed_sec" not in document["results"][0]


def test_timings_are_opt_in():
    report = run_demo("qubit-born", timings=True)
    document = json.loads(format_report(report, "machine"))
    assert document["results"][0]["elapsed_sec"] >= 0.0
    assert "s)" in format_report(report, "human")


def test_human_report_lists_checks():
    text = format_report(run_demo("two-sector"))
    assert text.startswith("scenario: two-sector")
    assert "central projections" in text
    assert "[1] sectors" in text


def test_empty_scenario_gives_empty_report():
    scenario = parse("")
    assert scenario.declarations == () and scenario.queries == ()
    document = json.loads(format_report(run(scenario), "machine"))
    assert document["results"] == []
    assert document["toolkit_version"] == toolkit_config.TOOLKIT_VERSION


def test_machine_numbers_survive_reparsing():
    report = run_demo("angle-born")
    document = json.loads(format_report(report, "machine"))
    for result, parsed in zip(report.results, document["results"]):
        for key, value in result.values.items():
            if isinstance(value, float):
                assert parsed["values"][key] == value
