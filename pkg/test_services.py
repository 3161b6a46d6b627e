"""
Tests for configuration, the regularity dispatcher and the verification suites
"""

import logging
from types import SimpleNamespace

import pytest

from bei.config import Config, is_prime
from bei.errors import CapExceededError, ConfigError, GraphError
from bei.graphs.families import validate_setup
from bei.graphs.graph_core import complete_graph, cycle_graph, disjoint_union, glue, path_graph
from bei.services.parallel import partition, run_partitioned
from bei.services.regularity import RegularityService
from bei.services.verification import VerificationService, VerifyOutcome, safe_run, summarize


def span(start, stop):
    return list(range(start, stop))


# ============================================================================
# CONFIGURATION
# ============================================================================


def test_config_from_environment(monkeypatch):
    monkeypatch.setenv("BEI_THREADS", "3")
    monkeypatch.setenv("BEI_FIELD_CHAR", "5")
    monkeypatch.setenv("BEI_LOG_LEVEL", "info")
    config = Config.from_env()
    assert (config.threads, config.field_char, config.log_level) == (3, 5, "INFO")
    assert Config.from_env(threads=1).threads == 1


@pytest.mark.parametrize(
    "name,value",
    [("BEI_THREADS", "0"), ("BEI_THREADS", "many"), ("BEI_FIELD_CHAR", "4"), ("BEI_LOG_LEVEL", "LOUD")],
)
def test_config_rejects_bad_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        Config.from_env()


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


# ============================================================================
# PARTITIONING
# ============================================================================


def test_partition_covers_the_range():
    ranges = partition(10, 3)
    assert ranges == [(0, 4), (4, 7), (7, 10)]
    assert partition(2, 8) == [(0, 1), (1, 2)]
    assert partition(0, 4) == []


def test_run_partitioned_keeps_order():
    chunks = run_partitioned(span, 37, threads=2)
    assert [i for chunk in chunks for i in chunk] == list(range(37))
    assert run_partitioned(span, 5, threads=1) == [[0, 1, 2, 3, 4]]


# ============================================================================
# REGULARITY DISPATCH
# ============================================================================


def test_method_choice(config, c4, diamond):
    service = RegularityService(config)
    assert service.choose_method(path_graph(4)) == "closed-form"
    assert service.choose_method(c4) == "hochster"
    assert service.choose_method(glue(diamond, 1, complete_graph(2), 1)) == "gluing"
    assert service.choose_method(disjoint_union(c4, path_graph(2))) == "gluing"


def test_compute_uses_the_configured_field(c4):
    report = RegularityService(Config(threads=1, field_char=3)).compute(c4)
    assert report.field_char == 3 and report.value == 2
    assert RegularityService(Config(threads=1)).compute(c4, field_char=5).field_char == 5


def test_compute_rejects_unknown_method(config, c4):
    with pytest.raises(GraphError):
        RegularityService(config).compute(c4, method="guess")


def test_auto_handles_graphs_beyond_the_hochster_cap(config):
    long_path = path_graph(20)
    assert RegularityService(config).compute(long_path).value == 19
    with pytest.raises(CapExceededError):
        RegularityService(config).compute(long_path, method="hochster")


# ============================================================================
# VERIFICATION
# ============================================================================


def test_outcome_relations():
    assert VerifyOutcome("t", "p", 3, 3, 0.0).passed
    assert not VerifyOutcome("t", "p", 3, 2, 0.0).passed
    assert VerifyOutcome("t", "p", 3, 2, 0.0, relation="<").passed
    assert not VerifyOutcome("t", "p", 3, 3, 0.0, relation="<").passed
    assert VerifyOutcome("t", "p", 3, 3, 0.0, relation="<=").passed
    row = VerifyOutcome("t", "p", 3, 2, 1.23456, relation="<").to_dict()
    assert row["pass"] is True and row["ms"] == 1.235


def test_missing_fixture_file_falls_back(config, tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        service = VerificationService(config, str(tmp_path / "missing.json"))
    assert "built-in corpus" in caplog.text
    assert service.chain_specs()


def test_invalid_fixture_file_falls_back(config, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert VerificationService(config, str(broken)).chain_names()


def test_unknown_suite(config):
    with pytest.raises(GraphError):
        VerificationService(config).run("everything")


def test_lemma_suite(config):
    rows = VerificationService(config).run("lemma37")
    assert rows and all(row.passed for row in rows)


def test_bounds_suite(config):
    rows = VerificationService(config).run("bounds")
    assert rows and all(row.passed for row in rows)


def test_char_suite(config):
    rows = VerificationService(config).run("char")
    assert rows and all(row.passed for row in rows)


def test_aborted_suite_becomes_a_failing_row(config, monkeypatch):
    service = VerificationService(config)

    def too_big(full):
        raise CapExceededError("Hochster variable cap", 22, 24)

    monkeypatch.setattr(service, "verify_star", too_big)
    rows = safe_run(service, "star", False)
    assert len(rows) == 1 and rows[0].params == "aborted"
    assert summarize(rows) == {"success": False, "total": 1, "failed": 1, "not_run": 0}


def test_not_run_row_is_neither_pass_nor_failure():
    row = VerifyOutcome.not_run("star regularity", "m=3 n=3 r=3", 5, "use --full")
    assert not row.ran and not row.passed
    payload = row.to_dict()
    assert payload["pass"] is None and payload["ran"] is False and payload["computed"] is None
    rows = [row, VerifyOutcome("t", "p", 3, 3, 0.0)]
    assert summarize(rows) == {"success": True, "total": 2, "failed": 0, "not_run": 1}


def test_chain_suite_reports_large_chains_as_not_run(config, monkeypatch):
    monkeypatch.setattr("bei.services.verification.MAX_HOCHSTER_VARIABLES", 0)
    monkeypatch.setattr("bei.services.verification.CHAIN_GENERAL_VERTICES", 0)
    service = VerificationService(config)
    valid = [spec for spec in service.chain_specs() if not validate_setup(spec)]
    rows = service.run("chain")
    assert len(rows) == 2 * len(valid)
    assert all(not row.ran for row in rows)
    general = [row for row in rows if row.theorem == "b cut vertex = b general"]
    assert len(general) == len(valid)
    assert all("general mode runs up to 0 vertices" in row.formula for row in general)
    summary = summarize(rows)
    assert summary["success"] and summary["not_run"] == len(rows)


def test_chain_suite_runs_general_mode_on_small_chains(config, monkeypatch):
    monkeypatch.setattr("bei.services.verification.MAX_HOCHSTER_VARIABLES", 0)
    rows = VerificationService(config).run("chain")
    general = [row for row in rows if row.theorem == "b cut vertex = b general"]
    assert general and all(row.ran and row.passed for row in general)


def stub_regularity(calls):
    def regularity_bei(G, p, threads):
        calls.append(G.n)
        return SimpleNamespace(value=0)

    return regularity_bei


def test_star_suite_lists_the_three_rung_star_as_not_run(config, monkeypatch):
    calls = []
    monkeypatch.setattr("bei.services.verification.regularity_bei", stub_regularity(calls))
    rows = VerificationService(config).run("star")
    skipped = [row for row in rows if not row.ran]
    assert [row.params for row in skipped] == ["m=3 n=3 r=3"]
    assert skipped[0].expected == 5 and "--full" in skipped[0].formula
    assert len(calls) == len(rows) - 1


def test_full_star_suite_runs_the_three_rung_star(config, monkeypatch):
    calls = []
    monkeypatch.setattr("bei.services.verification.regularity_bei", stub_regularity(calls))
    rows = VerificationService(config).run("star", full=True)
    assert all(row.ran for row in rows)
    assert "m=3 n=3 r=3" in [row.params for row in rows]
    assert len(calls) == len(rows)


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["chain", "star", "matching", "oracle", "blocks"])
def test_heavier_suites(config, suite):
    rows = VerificationService(config).run(suite)
    assert rows and all(row.passed for row in rows if row.ran)


@pytest.mark.release
@pytest.mark.parametrize("suite", ["oracle", "blocks", "bounds", "star", "char"])
def test_full_scale_suites(suite):
    rows = VerificationService(Config.from_env()).run(suite, full=True)
    assert rows and all(row.ran and row.passed for row in rows)


def test_cycle_of_length_five_heuristic_agrees(config):
    report = RegularityService(config).compute(cycle_graph(5), certified=False)
    assert report.value == 3 and not report.certified
