import numpy as np
import pytest

from conftest import edoc_from_vectors, user_with
from hare.errors import ConfigError, IoError
from hare.harness import (
    ResultsRow,
    ResultsTable,
    emit_report,
    expand_grid_pattern,
    grid_search,
    in_grid_domain,
    load_grid_file,
    read_report_csv,
    run_experiment,
    run_session,
)
from hare.policies import build_session, parse_policy_spec


def _edoc(n=10, seed=0):
    rng = np.random.default_rng(seed)
    return edoc_from_vectors(np.abs(rng.normal(size=(n, 12))) + 0.01)


class TestRunSession:
    def test_control_stops_at_budget(self):
        edoc = _edoc(10)
        user = user_with([edoc.vectors[0]], [1.0], length_pref=5, doc_length=10)
        trace = run_session(edoc, user, build_session("control", edoc),
                            np.random.default_rng(0))
        assert trace.shown == (0, 1, 2, 3, 4)
        assert trace.stop_index == 4
        assert len(trace.decisions) == 5

    def test_modulo_budget_interaction(self):
        edoc = _edoc(10)
        user = user_with([edoc.vectors[0]], [1.0], length_pref=3, doc_length=10)
        trace = run_session(edoc, user, build_session("show_modulo:k=2", edoc),
                            np.random.default_rng(0))
        assert trace.shown == (0, 2, 4)
        assert trace.stop_index == 4

    def test_budget_law(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            n = int(rng.integers(4, 20))
            edoc = _edoc(n, seed=int(rng.integers(1000)))
            l = int(rng.integers(1, n + 1))
            user = user_with([edoc.vectors[0]], [1.0], length_pref=l, doc_length=n)
            trace = run_session(edoc, user, build_session("control", edoc),
                                np.random.default_rng(int(rng.integers(1000))))
            assert len(trace.shown) <= l
            assert len(trace.shown) == min(l, n)  # control always fills the budget

    def test_same_seed_identical_traces(self):
        edoc = _edoc(12)
        user = user_with([edoc.vectors[1]], [1.0], length_pref=8, doc_length=12, m=0.1)
        traces = [
            run_session(edoc, user, build_session("hide_next:n=2", edoc),
                        np.random.default_rng(99))
            for _ in range(2)
        ]
        a, b = traces
        assert a.decisions == b.decisions
        assert a.feedback == b.feedback
        assert a.shown == b.shown

    def test_every_feedback_entry_matches_a_show(self):
        edoc = _edoc(12)
        user = user_with([edoc.vectors[1]], [1.0], length_pref=9, doc_length=12)
        trace = run_session(edoc, user, build_session("show_modulo:k=2", edoc),
                            np.random.default_rng(1))
        assert set(trace.feedback) == set(trace.shown)
        assert set(trace.importances) == set(trace.shown)

    def test_scripted_feedback_replay(self):
        edoc = _edoc(10)
        user = user_with([edoc.vectors[0]], [1.0], length_pref=10, doc_length=10)
        script = {i: (1 if i % 3 else 0) for i in range(10)}
        trace = run_session(edoc, user, build_session("hide_next:n=1", edoc),
                            np.random.default_rng(0), scripted_feedback=script)
        for i in trace.shown:
            assert trace.feedback[i] == script[i]


class TestRunExperiment:
    def test_control_advantage_is_zero(self, small_edocs):
        row = run_experiment(small_edocs, "control", noise_levels=(0.1,), trials=2, seed=7)
        assert row.score_adv == 0.0
        assert row.trials == 1  # deterministic policy

    def test_oracle_greedy_beats_control(self, small_edocs):
        greedy = run_experiment(small_edocs, "oracle_greedy", noise_levels=(0.1,), seed=3)
        control = run_experiment(small_edocs, "control", noise_levels=(0.1,), seed=3)
        assert greedy.score_noisy >= control.score_noisy
        assert greedy.score_adv > 0.0

    def test_deterministic_vs_stochastic_trial_counts(self, small_edocs):
        det = run_experiment(small_edocs, "hide_next:n=2", noise_levels=(0.1,), trials=3)
        assert det.trials == 1 and det.std is None
        sto = run_experiment(small_edocs, "oracle_uniform", noise_levels=(0.1,), trials=3)
        assert sto.trials == 3 and sto.std is not None

    def test_sharp_and_noisy_arms(self, small_edocs):
        row = run_experiment(small_edocs, "hide_next:n=2", noise_levels=(0.01, 0.1))
        assert row.score_sharp is not None
        assert row.score_noisy is not None
        single = run_experiment(small_edocs, "hide_next:n=2", noise_levels=(0.1,))
        assert single.score_sharp is None

    def test_end_to_end_determinism(self, small_edocs):
        a = run_experiment(small_edocs, "gen_dynamic:summarizer=sumbasic,eps=0.3",
                           noise_levels=(0.01, 0.1), trials=2, seed=11)
        b = run_experiment(small_edocs, "gen_dynamic:summarizer=sumbasic,eps=0.3",
                           noise_levels=(0.01, 0.1), trials=2, seed=11)
        assert a.score_sharp == b.score_sharp
        assert a.score_noisy == b.score_noisy
        assert a.score_adv == b.score_adv
        assert a.accept_rate == b.accept_rate

    def test_unknown_policy_rejected(self, small_edocs):
        with pytest.raises(ConfigError):
            run_experiment(small_edocs, "nonsense:x=1")


class TestGrids:
    def test_brace_expansion(self):
        assert expand_grid_pattern("show_modulo:k={2,3}") == [
            "show_modulo:k=2", "show_modulo:k=3",
        ]

    def test_cartesian_expansion(self):
        out = expand_grid_pattern("gen_fixed:summarizer={a,b},frac={0.25,0.5}")
        assert out == [
            "gen_fixed:summarizer=a,frac=0.25",
            "gen_fixed:summarizer=a,frac=0.5",
            "gen_fixed:summarizer=b,frac=0.25",
            "gen_fixed:summarizer=b,frac=0.5",
        ]

    def test_no_braces_passthrough(self):
        assert expand_grid_pattern("control") == ["control"]

    def test_grid_file_loading(self, tmp_path):
        path = tmp_path / "grid.txt"
        path.write_text("# comment\nshow_modulo:k={2,3}\n\nhide_next:n=1\n")
        assert load_grid_file(path) == [
            "show_modulo:k=2", "show_modulo:k=3", "hide_next:n=1",
        ]

    def test_domain_flagging(self):
        assert in_grid_domain(parse_policy_spec("coverage_opt:beta=4,c=4"))
        assert not in_grid_domain(parse_policy_spec("coverage_opt:beta=4,c=5"))
        assert in_grid_domain(parse_policy_spec("show_modulo:k=3"))
        assert not in_grid_domain(parse_policy_spec("show_modulo:k=7"))

    def test_grid_search_ranks_by_advantage(self, small_edocs):
        table = grid_search(small_edocs, ["show_modulo:k={2,3}", "hide_next:n={1,2}"],
                            noise_levels=(0.1,), trials=1, seed=5)
        assert len(table) == 4
        advs = [row.score_adv for row in table.rows]
        assert advs == sorted(advs, reverse=True)

    def test_out_of_grid_marker_in_params(self, small_edocs):
        table = grid_search(small_edocs[:3], ["coverage_opt:beta=1,c={4,5}"],
                            noise_levels=(0.1,), trials=1, seed=5)
        params = {row.params for row in table.rows}
        assert any("(out-of-grid)" in p for p in params)
        assert any("(out-of-grid)" not in p for p in params)


def _dummy_table():
    return ResultsTable([
        ResultsRow("control", "", 82.151234, 82.151234, 0.0, 0.65, 1, None, 0.123456),
        ResultsRow("hide_next", "n=2", 82.66, 82.66, 0.51, 0.64, 1, None, 1.3),
    ])


class TestEmitReport:
    def test_empty_table_is_an_error(self, tmp_path):
        with pytest.raises(ConfigError):
            emit_report(ResultsTable(), "csv", tmp_path / "x.csv")
        assert not (tmp_path / "x.csv").exists()

    def test_csv_round_trip_at_six_decimals(self, tmp_path):
        path = tmp_path / "r.csv"
        emit_report(_dummy_table(), "csv", path)
        rows = read_report_csv(path)
        assert rows[0]["policy"] == "control"
        assert rows[0]["score_sharp"] == pytest.approx(82.151234, abs=1e-6)
        assert rows[1]["score_adv"] == pytest.approx(0.51, abs=1e-6)
        assert rows[0]["trials"] == 1
        assert rows[0]["std"] is None

    def test_byte_identical_reemission(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_report(_dummy_table(), "csv", a)
        emit_report(_dummy_table(), "csv", b)
        assert a.read_bytes() == b.read_bytes()

    def test_timings_hidden_by_default(self, tmp_path):
        path = tmp_path / "r.csv"
        emit_report(_dummy_table(), "csv", path)
        rows = read_report_csv(path)
        assert all(row["ms_per_session"] is None for row in rows)
        emit_report(_dummy_table(), "csv", path, include_timings=True)
        rows = read_report_csv(path)
        assert rows[0]["ms_per_session"] == pytest.approx(0.123456)

    def test_markdown_shape(self, tmp_path):
        path = tmp_path / "r.md"
        emit_report(_dummy_table(), "markdown", path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("| policy | params | score_sharp")
        assert lines[1].startswith("|---")
        assert len(lines) == 2 + 2

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(IoError):
            emit_report(_dummy_table(), "csv", tmp_path / "missing" / "r.csv")

    def test_bad_format(self, tmp_path):
        with pytest.raises(ConfigError):
            emit_report(_dummy_table(), "tsv", tmp_path / "r.tsv")

    def test_params_with_commas_survive_csv(self, tmp_path):
        table = ResultsTable([
            ResultsRow("gen_dynamic", "summarizer=sumbasic,eps=0.5",
                       82.0, 82.0, 0.1, 0.6, 3, 0.02, 1.0),
        ])
        path = tmp_path / "r.csv"
        emit_report(table, "csv", path)
        rows = read_report_csv(path)
        assert rows[0]["params"] == "summarizer=sumbasic,eps=0.5"
