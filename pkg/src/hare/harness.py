"""Session execution, experiment orchestration, grids, and report emission.

A session walks one document sentence by sentence: the policy decides
show/hide, shown sentences collect a feedback draw from the simulated
user, and reading stops once the user's length budget of shown sentences
is exhausted (or the document ends).

Experiments pair every policy run with the control on the same sampled
user, so the advantage column is a paired difference.  Everything is
seeded: (seed, document position, trial, arm) fully determines each
number in the results table.
"""

from __future__ import annotations

import csv
import itertools
import re
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .embedding import EmbeddedDocument
from .errors import ConfigError, IoError, NoShownSentences
from .metrics import acceptance_rate, coverage_score
from .policies import PolicySession, PolicySpec, build_session, parse_policy_spec
from .summarizers import SentenceScores, score_document
from .usersim import SimulatedUser, draw_feedback, importance_profile, sample_user


@dataclass(frozen=True)
class SessionTrace:
    """Full record of one simulated read."""

    doc_id: str
    length_pref: int
    alpha: float
    m: float
    user_seed: int
    decisions: tuple[bool, ...]
    feedback: dict[int, int]
    importances: dict[int, float]
    shown: tuple[int, ...]
    stop_index: int
    duration_s: float


def run_session(
    edoc: EmbeddedDocument,
    user: SimulatedUser,
    session: PolicySession,
    rng: np.random.Generator,
    scripted_feedback: dict[int, int] | None = None,
) -> SessionTrace:
    """Drive one fresh policy session over one document.

    Sentences are visited in order; every shown sentence draws a feedback
    value which is passed back to the policy.  The user stops after
    ``length_pref`` shown sentences.  ``scripted_feedback`` replaces the
    random draws when replaying a recorded session.
    """
    n = len(edoc)
    r = importance_profile(user.interests, edoc)
    decisions: list[bool] = []
    feedback: dict[int, int] = {}
    importances: dict[int, float] = {}
    shown: list[int] = []
    stop_index = -1
    start = time.perf_counter()
    for i in range(n):
        show = session.decide(i)
        decisions.append(show)
        stop_index = i
        if show:
            shown.append(i)
            if scripted_feedback is None:
                fb = draw_feedback(user.feedback, float(r[i]), rng)
            else:
                fb = scripted_feedback[i]
            session.observe(i, fb)
            feedback[i] = fb
            importances[i] = float(r[i])
            if len(shown) >= user.length_pref:
                break
    duration = time.perf_counter() - start
    return SessionTrace(
        doc_id=edoc.id,
        length_pref=user.length_pref,
        alpha=user.feedback.alpha,
        m=user.feedback.m,
        user_seed=user.rng_seed,
        decisions=tuple(decisions),
        feedback=feedback,
        importances=importances,
        shown=tuple(shown),
        stop_index=stop_index,
        duration_s=duration,
    )


@dataclass(frozen=True)
class ResultsRow:
    policy: str
    params: str
    score_sharp: float | None
    score_noisy: float
    score_adv: float
    accept_rate: float | None
    trials: int
    std: float | None
    ms_per_session: float


@dataclass
class ResultsTable:
    rows: list[ResultsRow] = field(default_factory=list)

    def ranked(self) -> "ResultsTable":
        return ResultsTable(sorted(self.rows, key=lambda row: -row.score_adv))

    def __len__(self) -> int:
        return len(self.rows)


class _ScoreCache:
    """Summarizer scores per (document, method), computed once."""

    def __init__(self):
        self._cache: dict[tuple[str, str], SentenceScores] = {}

    def get(self, edoc: EmbeddedDocument, method: str) -> SentenceScores:
        key = (edoc.id, method)
        if key not in self._cache:
            self._cache[key] = score_document(method, edoc)
        return self._cache[key]


def _rng_for(seed: int, doc_index: int, trial: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, doc_index, trial, stream]))


def run_experiment(
    edocs: list[EmbeddedDocument],
    policy_spec: PolicySpec | str,
    noise_levels: tuple[float, ...] = (0.01, 0.1),
    trials: int = 3,
    k_user: int = 4,
    seed: int = 42,
    score_cache: _ScoreCache | None = None,
) -> ResultsRow:
    """Run a policy across (document x trial x noise level) and aggregate.

    One user is sampled per (document, trial) and reused across noise arms
    (same interests and length preference, independent feedback draws).
    The control runs on the same users, so ``score_adv`` is a paired
    difference at the highest noise level.  Deterministic policies are run
    for a single trial; their results would repeat exactly.
    """
    spec = parse_policy_spec(policy_spec) if isinstance(policy_spec, str) else policy_spec
    if not edocs:
        raise ConfigError("experiment needs at least one document")
    noise = [float(m) for m in noise_levels]
    if not noise:
        raise ConfigError("at least one noise level required")
    sharp_m = noise[0] if len(noise) > 1 else None
    noisy_m = noise[-1]
    cache = score_cache if score_cache is not None else _ScoreCache()
    eff_trials = 1 if spec.deterministic else max(1, trials)

    per_arm_scores: dict[float, list[float]] = {m: [] for m in noise}
    control_scores: list[float] = []
    adv_by_trial: list[list[float]] = [[] for _ in range(eff_trials)]
    accept_rates: list[float] = []
    durations: list[float] = []

    for doc_index, edoc in enumerate(edocs):
        for trial in range(eff_trials):
            user_rng = _rng_for(seed, doc_index, trial, 0)
            user = sample_user(edoc, k=k_user, m=noisy_m, rng=user_rng)
            r = importance_profile(user.interests, edoc)
            prefix = range(min(user.length_pref, len(edoc)))
            control_score = coverage_score(r, edoc, prefix)
            control_scores.append(control_score)
            scores = (
                cache.get(edoc, spec.summarizer) if spec.summarizer is not None else None
            )
            for arm, m in enumerate(noise):
                arm_user = user.with_noise(m)
                policy_rng = _rng_for(seed, doc_index, trial, 100 + arm)
                feedback_rng = _rng_for(seed, doc_index, trial, 200 + arm)
                session = build_session(
                    spec, edoc, user=arm_user, rng=policy_rng, scores=scores
                )
                trace = run_session(edoc, arm_user, session, feedback_rng)
                score = coverage_score(r, edoc, trace.shown)
                per_arm_scores[m].append(score)
                durations.append(trace.duration_s)
                if m == noisy_m:
                    adv_by_trial[trial].append(score - control_score)
                    try:
                        accept_rates.append(acceptance_rate(trace))
                    except NoShownSentences:
                        pass

    mean_noisy = float(np.mean(per_arm_scores[noisy_m]))
    mean_control = float(np.mean(control_scores))
    # stability across trials is measured on the paired advantage, where
    # user-resampling noise cancels and only policy randomness remains
    trial_means = [float(np.mean(s)) for s in adv_by_trial]
    return ResultsRow(
        policy=spec.name,
        params=",".join(f"{k}={v}" for k, v in spec.params.items()),
        score_sharp=float(np.mean(per_arm_scores[sharp_m])) if sharp_m is not None else None,
        score_noisy=mean_noisy,
        score_adv=mean_noisy - mean_control,
        accept_rate=float(np.mean(accept_rates)) if accept_rates else None,
        trials=eff_trials,
        std=float(np.std(trial_means, ddof=1)) if eff_trials > 1 else None,
        ms_per_session=float(np.mean(durations)) * 1000.0,
    )


# --- grids ------------------------------------------------------------------

# the default search grids, one brace-expandable pattern per policy family;
# coverage_opt includes the out-of-domain c=5 extension (flagged on expansion)
DEFAULT_GRID = [
    "show_modulo:k={2,3,4,5}",
    "hide_next:n={1,2,3,4}",
    "hide_next_similar:threshold={0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9}",
    "hide_all_similar:threshold={0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9}",
    "gen_fixed:summarizer={lexrank,sumbasic,textrank},frac={0.25,0.5,0.75}",
    "gen_dynamic:summarizer={lexrank,sumbasic,textrank},eps={0,0.1,0.2,0.3,0.4,0.5}",
    "lr:schedule=const,eps={0,0.1,0.2,0.3,0.4,0.5}",
    "lr:schedule=dec,beta={0.25,0.5,1,2,4}",
    "coverage_opt:beta={0.25,0.5,1,2,4},c={0,1,2,3,4,5}",
]

_BRACE = re.compile(r"\{([^{}]*)\}")

# parameter domains searched by the default grid; values outside are tagged
_GRID_DOMAINS: dict[str, dict[str, set]] = {
    "show_modulo": {"k": {2, 3, 4, 5}},
    "hide_next": {"n": {1, 2, 3, 4}},
    "hide_next_similar": {"threshold": {round(0.1 * i, 1) for i in range(1, 10)}},
    "hide_all_similar": {"threshold": {round(0.1 * i, 1) for i in range(1, 10)}},
    "gen_fixed": {"frac": {0.25, 0.5, 0.75}},
    "gen_dynamic": {"eps": {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}},
    "lr": {"eps": {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}, "beta": {0.25, 0.5, 1.0, 2.0, 4.0}},
    "coverage_opt": {"beta": {0.25, 0.5, 1.0, 2.0, 4.0}, "c": {0.0, 1.0, 2.0, 3.0, 4.0}},
}


def expand_grid_pattern(pattern: str) -> list[str]:
    """Expand brace-delimited value lists into the cartesian product of
    concrete policy spec strings."""
    pattern = pattern.strip()
    groups = _BRACE.findall(pattern)
    if not groups:
        return [pattern]
    template = _BRACE.sub("{}", pattern)
    combos = itertools.product(*[[v.strip() for v in g.split(",")] for g in groups])
    return [template.format(*combo) for combo in combos]


def in_grid_domain(spec: PolicySpec) -> bool:
    """Whether every searched parameter sits inside the default grid."""
    domains = _GRID_DOMAINS.get(spec.name)
    if domains is None:
        return True
    for key, allowed in domains.items():
        if key in spec.params and spec.params[key] not in allowed:
            return False
    return True


def load_grid_file(path: str | Path) -> list[str]:
    """One brace-expandable policy pattern per line; # starts a comment."""
    specs: list[str] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        specs.extend(expand_grid_pattern(line))
    return specs


def grid_search(
    edocs: list[EmbeddedDocument],
    grid: str | list[str] = "appendixA",
    noise_levels: tuple[float, ...] = (0.01, 0.1),
    trials: int = 3,
    k_user: int = 4,
    seed: int = 42,
) -> ResultsTable:
    """Run every grid point and rank rows by score advantage.

    ``grid`` is the name of the default grid, a path to a grid file, or a
    list of (brace-expandable) policy patterns.  Out-of-domain points are
    flagged in the params column.
    """
    if isinstance(grid, str):
        patterns = DEFAULT_GRID if grid == "appendixA" else load_grid_file(grid)
    else:
        patterns = list(grid)
    spec_strings: list[str] = []
    for pattern in patterns:
        spec_strings.extend(expand_grid_pattern(pattern))

    cache = _ScoreCache()
    table = ResultsTable()
    for spec_string in spec_strings:
        spec = parse_policy_spec(spec_string)
        row = run_experiment(
            edocs,
            spec,
            noise_levels=noise_levels,
            trials=trials,
            k_user=k_user,
            seed=seed,
            score_cache=cache,
        )
        if not in_grid_domain(spec):
            row = ResultsRow(
                **{**row.__dict__, "params": row.params + " (out-of-grid)"}
            )
        table.rows.append(row)
    return table.ranked()


# --- report emission --------------------------------------------------------

_COLUMNS = (
    "policy",
    "params",
    "score_sharp",
    "score_noisy",
    "score_adv",
    "accept_rate",
    "trials",
    "std",
    "ms_per_session",
)


def _cells(row: ResultsRow, include_timings: bool) -> list[str]:
    def num(value: float | None) -> str:
        return "" if value is None else f"{value:.6f}"

    return [
        row.policy,
        row.params,
        num(row.score_sharp),
        num(row.score_noisy),
        num(row.score_adv),
        num(row.accept_rate),
        str(row.trials),
        num(row.std),
        num(row.ms_per_session) if include_timings else "",
    ]


def emit_report(
    results: ResultsTable,
    format: str = "csv",
    path: str | Path = "results.csv",
    include_timings: bool = False,
) -> Path:
    """Write the results table as CSV or a markdown table.

    Column order is fixed.  Wall-clock timings vary run to run, so the
    timing column is left blank unless ``include_timings`` is set; default
    output is byte-identical across runs with the same seed.
    """
    if not results.rows:
        raise ConfigError("refusing to emit an empty results table")
    if format not in ("csv", "markdown"):
        raise ConfigError(f"format must be 'csv' or 'markdown', got {format!r}")
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            if format == "csv":
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(_COLUMNS)
                for row in results.rows:
                    writer.writerow(_cells(row, include_timings))
            else:
                fh.write("| " + " | ".join(_COLUMNS) + " |\n")
                fh.write("|" + "---|" * len(_COLUMNS) + "\n")
                for row in results.rows:
                    fh.write("| " + " | ".join(_cells(row, include_timings)) + " |\n")
    except OSError as exc:
        raise IoError(f"cannot write report to {path}: {exc}")
    return path


def read_report_csv(path: str | Path) -> list[dict]:
    """Parse an emitted CSV back into dicts (numbers as floats)."""
    out: list[dict] = []
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        for record in csv.DictReader(fh):
            parsed: dict = {}
            for key, value in record.items():
                if key in ("policy", "params"):
                    parsed[key] = value
                elif value == "":
                    parsed[key] = None
                elif key == "trials":
                    parsed[key] = int(value)
                else:
                    parsed[key] = float(value)
            out.append(parsed)
    return out
