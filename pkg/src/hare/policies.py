"""Show/hide decision policies behind one session contract.

A :class:`PolicySession` is driven index by index in reading order:
``decide(i)`` returns whether sentence i is shown, ``observe(i, feedback)``
reports the reader's 0/1 swipe for a shown sentence.  Decisions already
made never change; adaptive policies may only use feedback to shape future
decisions.  The base class enforces that contract and raises
:class:`ContractViolation` on misuse.

Policies fall into four groups: the control and positional heuristics,
similarity-based hiding, adapted generic summarizers, and preference
learners.  Three privileged "oracle" policies consume the simulated user's
true interests and length preference for comparison runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddedDocument, kmeans
from .errors import ConfigError, ContractViolation
from .summarizers import SUMMARIZER_NAMES, SentenceScores, normalize_unit_interval
from .usersim import SimulatedUser, importance_profile


class PolicySession:
    """One stateful decision process over one document.

    Subclasses implement ``_decide`` and optionally ``_observe``; the public
    wrappers check call ordering: each index decided at most once in strictly
    increasing order, feedback only for indices that were decided Show.
    """

    def __init__(self):
        self._next_index = 0
        self._shown: set[int] = set()
        self._observed: set[int] = set()

    def decide(self, index: int) -> bool:
        if index != self._next_index:
            raise ContractViolation(
                f"decide({index}) out of order; expected index {self._next_index}"
            )
        self._next_index = index + 1
        show = self._decide(index)
        if show:
            self._shown.add(index)
        return show

    def observe(self, index: int, feedback: int) -> None:
        if index not in self._shown:
            raise ContractViolation(f"observe({index}) for a sentence never shown")
        if index in self._observed:
            raise ContractViolation(f"duplicate feedback for index {index}")
        if feedback not in (0, 1):
            raise ContractViolation(f"feedback must be 0 or 1, got {feedback!r}")
        self._observed.add(index)
        self._observe(index, feedback)

    def _decide(self, index: int) -> bool:
        raise NotImplementedError

    def _observe(self, index: int, feedback: int) -> None:
        pass


class Control(PolicySession):
    """Shows every sentence; the no-personalization baseline."""

    def _decide(self, index: int) -> bool:
        return True


class ShowModulo(PolicySession):
    """Shows every k-th sentence starting from the first (index 0)."""

    def __init__(self, k: int):
        super().__init__()
        if k < 1:
            raise ConfigError(f"show_modulo requires k >= 1, got {k}")
        self.k = k

    def _decide(self, index: int) -> bool:
        return index % self.k == 0


class HideNext(PolicySession):
    """Hides the n sentences after each rejected one."""

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise ConfigError(f"hide_next requires n >= 1, got {n}")
        self.n = n
        self._hide_through = -1

    def _decide(self, index: int) -> bool:
        return index > self._hide_through

    def _observe(self, index: int, feedback: int) -> None:
        if feedback == 0:
            self._hide_through = index + self.n


class HideAllSimilar(PolicySession):
    """Hides any upcoming sentence similar to one the reader rejected."""

    def __init__(self, edoc: EmbeddedDocument, threshold: float):
        super().__init__()
        if not 0.0 <= threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0,1], got {threshold}")
        self.threshold = threshold
        self._vectors = edoc.vectors
        self._rejected: list[int] = []

    def _decide(self, index: int) -> bool:
        if not self._rejected:
            return True
        sims = self._vectors[self._rejected] @ self._vectors[index]
        return float(np.max(sims)) < self.threshold

    def _observe(self, index: int, feedback: int) -> None:
        if feedback == 0:
            self._rejected.append(index)


class HideNextSimilar(PolicySession):
    """Hides the unbroken run of sentences similar to the last rejected one.

    After a rejection the following sentences are hidden while each stays
    similar to the rejected sentence; the first dissimilar sentence breaks
    the chain and is shown.
    """

    def __init__(self, edoc: EmbeddedDocument, threshold: float):
        super().__init__()
        if not 0.0 <= threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0,1], got {threshold}")
        self.threshold = threshold
        self._vectors = edoc.vectors
        self._anchor: np.ndarray | None = None

    def _decide(self, index: int) -> bool:
        if self._anchor is None:
            return True
        if float(self._anchor @ self._vectors[index]) >= self.threshold:
            return False
        self._anchor = None
        return True

    def _observe(self, index: int, feedback: int) -> None:
        if feedback == 0:
            self._anchor = self._vectors[index]


class GenFixed(PolicySession):
    """Shows the top fraction of sentences under a generic summarizer."""

    def __init__(self, scores: SentenceScores, frac: float):
        super().__init__()
        if not 0.0 < frac <= 1.0:
            raise ConfigError(f"frac must be in (0,1], got {frac}")
        values = normalize_unit_interval(scores).scores
        n = values.shape[0]
        keep = math.ceil(frac * n)
        order = np.argsort(-values, kind="stable")  # ties resolve to earlier index
        self._show_set = frozenset(int(i) for i in order[:keep])

    def _decide(self, index: int) -> bool:
        return index in self._show_set


class GenDynamic(PolicySession):
    """Thresholds summarizer scores at a running estimate of what the reader
    rejects, with epsilon-greedy exploration.

    The threshold starts at 0 (everything is important enough) and, after
    each rejection, becomes the mean normalized score of all rejected
    sentences.  With probability epsilon a sentence is shown regardless.
    """

    def __init__(self, scores: SentenceScores, epsilon: float, rng: np.random.Generator):
        super().__init__()
        if not 0.0 <= epsilon <= 1.0:
            raise ConfigError(f"eps must be in [0,1], got {epsilon}")
        self.epsilon = epsilon
        self._scores = normalize_unit_interval(scores).scores
        self._rng = rng
        self._rejected_scores: list[float] = []
        self._threshold = 0.0

    def _decide(self, index: int) -> bool:
        explore = self._rng.random() < self.epsilon
        return explore or self._scores[index] >= self._threshold

    def _observe(self, index: int, feedback: int) -> None:
        if feedback == 0:
            self._rejected_scores.append(float(self._scores[index]))
            self._threshold = float(np.mean(self._rejected_scores))


class LogisticPolicy(PolicySession):
    """Learns accept/reject from sentence vectors with an online classifier.

    Everything is shown until both an accept and a reject have been seen;
    after that the classifier is refit on all observations after each swipe
    and a sentence is shown when its predicted accept probability reaches
    0.5, except for exploration steps.  Exploration probability is either a
    constant epsilon or the decreasing schedule (1 - frac)^beta where frac
    is the position within the article.
    """

    L2_PENALTY = 1e-3
    STEP = 0.1
    MAX_FIT_ITERS = 100
    GRAD_TOL = 1e-6

    def __init__(
        self,
        edoc: EmbeddedDocument,
        rng: np.random.Generator,
        epsilon: float | None = None,
        beta: float | None = None,
    ):
        super().__init__()
        if (epsilon is None) == (beta is None):
            raise ConfigError("lr needs exactly one of a constant eps or a decay beta")
        if epsilon is not None and not 0.0 <= epsilon <= 1.0:
            raise ConfigError(f"eps must be in [0,1], got {epsilon}")
        if beta is not None and beta <= 0.0:
            raise ConfigError(f"beta must be positive, got {beta}")
        self.epsilon = epsilon
        self.beta = beta
        self._rng = rng
        self._n = len(edoc)
        self._vectors = edoc.vectors
        self._x: list[np.ndarray] = []
        self._y: list[int] = []
        self._weights = np.zeros(edoc.dimension + 1)  # last entry is the intercept
        self._ready = False

    def _exploration_at(self, index: int) -> float:
        if self.epsilon is not None:
            return self.epsilon
        frac = index / self._n
        return (1.0 - frac) ** self.beta

    def _decide(self, index: int) -> bool:
        if not self._ready:
            return True
        if self._rng.random() < self._exploration_at(index):
            return True
        x = self._vectors[index]
        margin = float(x @ self._weights[:-1] + self._weights[-1])
        return margin >= 0.0

    def _observe(self, index: int, feedback: int) -> None:
        self._x.append(self._vectors[index])
        self._y.append(feedback)
        if 0 in self._y and 1 in self._y:
            self._fit()
            self._ready = True

    def _fit(self) -> None:
        # full-batch gradient descent on all observed pairs, warm-started
        # from the previous weights; the intercept is not penalized
        x = np.vstack(self._x)
        y = np.asarray(self._y, dtype=float)
        xb = np.hstack([x, np.ones((x.shape[0], 1))])
        w = self._weights
        m = x.shape[0]
        for _ in range(self.MAX_FIT_ITERS):
            z = xb @ w
            p = np.where(z >= 0, 1.0 / (1.0 + np.exp(-z)), np.exp(z) / (1.0 + np.exp(z)))
            grad = xb.T @ (p - y) / m
            grad[:-1] += self.L2_PENALTY * w[:-1]
            w = w - self.STEP * grad
            if float(np.abs(grad).max()) < self.GRAD_TOL:
                break
        self._weights = w


class CoverageOpt(PolicySession):
    """Explicitly estimates concept interests and length preference.

    The article's concepts are k-means centroids; each concept's importance
    estimate is a sigmoid of accumulated feedback evidence (initialized at
    c, so larger c demands more rejections before a concept is written
    off).  Sentence importance is the concept-weighted marginal gain in
    coverage over what has been shown; the policy shows a sentence when it
    ranks within the top l_frac * |D| of the not-yet-decided sentences,
    where l_frac falls as rejected sentences turn out to be important.
    """

    def __init__(
        self,
        edoc: EmbeddedDocument,
        k: int = 4,
        beta: float = 1.0,
        c: float = 0.0,
        seed: int = 0,
    ):
        super().__init__()
        if beta <= 0.0:
            raise ConfigError(f"beta must be positive, got {beta}")
        if c < 0.0:
            raise ConfigError(f"c must be non-negative, got {c}")
        self._n = len(edoc)
        clustering = kmeans(edoc.vectors, k, seed=seed)
        # concept relevance of each sentence: clipped cosine to each centroid
        self._concepts = np.clip(edoc.vectors @ clustering.centroids.T, 0.0, None)
        self.beta = beta
        self.cfsum = np.full(k, float(c))
        self._coverage = np.zeros(k)
        self._rejected_importance: list[float] = []
        self._length_frac = 1.0
        self._importance_at_decision: dict[int, float] = {}

    def concept_importances(self) -> np.ndarray:
        """Current concept-importance estimates, sigmoid(cfsum / beta)."""
        z = self.cfsum / self.beta
        return np.where(z >= 0, 1.0 / (1.0 + np.exp(-z)), np.exp(z) / (1.0 + np.exp(z)))

    def _decide(self, index: int) -> bool:
        pending = np.arange(index, self._n)
        gains = np.clip(self._concepts[pending] - self._coverage, 0.0, None)
        importance = gains @ self.concept_importances()
        # remember this sentence's importance on a [0,1] scale for the
        # length-preference update at rejection time
        lo, hi = float(importance.min()), float(importance.max())
        own = float(importance[0])
        self._importance_at_decision[index] = (
            0.5 if hi - lo <= 0.0 else (own - lo) / (hi - lo)
        )
        budget = math.ceil(self._length_frac * self._n)
        better = int(np.sum(importance > own))  # earlier index wins ties
        show = better < budget
        if show:
            self._coverage = np.maximum(self._coverage, self._concepts[index])
        return show

    def _observe(self, index: int, feedback: int) -> None:
        self.cfsum = self.cfsum + 2.0 * (feedback - 0.5) * self._concepts[index]
        if feedback == 0:
            self._rejected_importance.append(self._importance_at_decision[index])
            self._length_frac = 1.0 - float(np.mean(self._rejected_importance))


def _greedy_selection(r: np.ndarray, edoc: EmbeddedDocument, budget: int) -> list[int]:
    """Pick a subset with locally maximal coverage score: forward greedy
    selection (ties to earlier index) followed by single-swap refinement.

    The score is monotone in the shown set, so zero-gain additions never
    hurt and greedy always fills the budget.  Forward greedy alone can be
    myopic (a complementary pair may beat the best singleton's extensions);
    the exchange pass ends at a subset no single swap can improve."""
    n = len(edoc)
    distances = 1.0 - edoc.vectors @ edoc.vectors.T
    min_dist = np.ones(n)
    chosen: list[int] = []
    available = list(range(n))
    for _ in range(min(budget, n)):
        best_idx = None
        best_gain = -np.inf
        for cand in available:
            reduced = np.minimum(min_dist, distances[:, cand])
            gain = float(r @ (min_dist - reduced))
            if gain > best_gain:
                best_gain = gain
                best_idx = cand
        chosen.append(best_idx)
        available.remove(best_idx)
        min_dist = np.minimum(min_dist, distances[:, best_idx])

    def loss(subset: list[int]) -> float:
        return float(r @ distances[:, subset].min(axis=1))

    if chosen and available:
        current = loss(chosen)
        improved = True
        passes = 0
        while improved and passes < 2 * len(chosen):
            improved = False
            passes += 1
            for pos in range(len(chosen)):
                for cand_pos, cand in enumerate(available):
                    trial = chosen.copy()
                    trial[pos] = cand
                    trial_loss = loss(trial)
                    if trial_loss < current - 1e-12:
                        available[cand_pos] = chosen[pos]
                        chosen = trial
                        current = trial_loss
                        improved = True
    return sorted(chosen)


class FixedSetPolicy(PolicySession):
    """Shows a precomputed set of indices; used by the oracle policies."""

    def __init__(self, show_set: set[int]):
        super().__init__()
        self._show_set = frozenset(show_set)

    def _decide(self, index: int) -> bool:
        return index in self._show_set


def make_control() -> PolicySession:
    return Control()


def make_show_modulo(k: int) -> PolicySession:
    return ShowModulo(k)


def make_hide_next(n: int) -> PolicySession:
    return HideNext(n)


def make_hide_all_similar(edoc: EmbeddedDocument, threshold: float) -> PolicySession:
    return HideAllSimilar(edoc, threshold)


def make_hide_next_similar(edoc: EmbeddedDocument, threshold: float) -> PolicySession:
    return HideNextSimilar(edoc, threshold)


def make_gen_fixed(scores: SentenceScores, frac: float) -> PolicySession:
    return GenFixed(scores, frac)


def make_gen_dynamic(
    scores: SentenceScores, epsilon: float, rng: np.random.Generator
) -> PolicySession:
    return GenDynamic(scores, epsilon, rng)


def make_lr(
    edoc: EmbeddedDocument,
    rng: np.random.Generator,
    epsilon: float | None = None,
    beta: float | None = None,
) -> PolicySession:
    return LogisticPolicy(edoc, rng, epsilon=epsilon, beta=beta)


def make_coverage_opt(
    edoc: EmbeddedDocument, k: int = 4, beta: float = 1.0, c: float = 0.0, seed: int = 0
) -> PolicySession:
    return CoverageOpt(edoc, k=k, beta=beta, c=c, seed=seed)


def make_oracle_greedy(user: SimulatedUser, edoc: EmbeddedDocument) -> PolicySession:
    """Privileged: greedily picks the shown set that maximizes the coverage
    score under the user's true interests, within their length budget."""
    r = importance_profile(user.interests, edoc)
    return FixedSetPolicy(set(_greedy_selection(r, edoc, user.length_pref)))


def make_oracle_sorted(user: SimulatedUser, edoc: EmbeddedDocument) -> PolicySession:
    """Privileged: shows the l sentences with the highest true importance."""
    r = importance_profile(user.interests, edoc)
    order = np.argsort(-r, kind="stable")
    return FixedSetPolicy(set(int(i) for i in order[: user.length_pref]))


def make_oracle_uniform(user: SimulatedUser, rng: np.random.Generator) -> PolicySession:
    """Privileged only in the length budget: a uniformly random l-subset."""
    picks = rng.choice(user.doc_length, size=user.length_pref, replace=False)
    return FixedSetPolicy(set(int(i) for i in picks))


# --- policy specification strings ------------------------------------------
#
# "name" or "name:key=value,key=value", e.g.
#   hide_all_similar:threshold=0.5
#   gen_dynamic:summarizer=sumbasic,eps=0.5
#   lr:schedule=dec,beta=1

_POLICY_NAMES = (
    "control",
    "show_modulo",
    "hide_next",
    "hide_all_similar",
    "hide_next_similar",
    "gen_fixed",
    "gen_dynamic",
    "lr",
    "coverage_opt",
    "oracle_greedy",
    "oracle_sorted",
    "oracle_uniform",
)
_ORACLES = ("oracle_greedy", "oracle_sorted", "oracle_uniform")


@dataclass(frozen=True)
class PolicySpec:
    """A parsed policy specification string."""

    name: str
    params: dict = field(default_factory=dict)

    @property
    def raw(self) -> str:
        if not self.params:
            return self.name
        rendered = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.name}:{rendered}"

    @property
    def needs_user(self) -> bool:
        return self.name in _ORACLES

    @property
    def summarizer(self) -> str | None:
        return self.params.get("summarizer")

    @property
    def deterministic(self) -> bool:
        """True when the session consumes no random numbers of its own."""
        if self.name == "oracle_uniform":
            return False
        if self.name == "gen_dynamic":
            return self.params["eps"] == 0.0
        if self.name == "lr":
            return self.params.get("schedule") == "const" and self.params.get("eps") == 0.0
        return True


def _fmt(value) -> str:
    if isinstance(value, float) and value == int(value):
        return str(int(value))
    return str(value)


def _parse_params(text: str, spec: str) -> dict:
    params: dict = {}
    for part in text.split(","):
        if not part:
            continue
        if "=" not in part:
            raise ConfigError(f"bad parameter {part!r} in policy spec {spec!r}")
        key, _, value = part.partition("=")
        params[key.strip()] = value.strip()
    return params


def _need(params: dict, key: str, spec: str, convert, default=None):
    if key not in params:
        if default is not None:
            return default
        raise ConfigError(f"policy spec {spec!r} is missing parameter {key!r}")
    try:
        return convert(params[key])
    except (TypeError, ValueError):
        raise ConfigError(f"policy spec {spec!r}: cannot parse {key}={params[key]!r}")


def parse_policy_spec(spec: str) -> PolicySpec:
    """Parse and validate a "name:key=value,..." policy string."""
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    name = name.strip()
    if name not in _POLICY_NAMES:
        raise ConfigError(f"unknown policy {name!r}; expected one of {_POLICY_NAMES}")
    raw = _parse_params(rest, spec)

    if name == "control" or name in _ORACLES:
        if raw:
            raise ConfigError(f"policy {name!r} takes no parameters")
        return PolicySpec(name)
    if name == "show_modulo":
        k = _need(raw, "k", spec, int)
        if k < 1:
            raise ConfigError(f"show_modulo requires k >= 1, got {k}")
        return PolicySpec(name, {"k": k})
    if name == "hide_next":
        n = _need(raw, "n", spec, int)
        if n < 1:
            raise ConfigError(f"hide_next requires n >= 1, got {n}")
        return PolicySpec(name, {"n": n})
    if name in ("hide_all_similar", "hide_next_similar"):
        threshold = _need(raw, "threshold", spec, float)
        if not 0.0 <= threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0,1], got {threshold}")
        return PolicySpec(name, {"threshold": threshold})
    if name == "gen_fixed":
        summarizer = _need(raw, "summarizer", spec, str)
        if summarizer not in SUMMARIZER_NAMES:
            raise ConfigError(f"unknown summarizer {summarizer!r}")
        frac = _need(raw, "frac", spec, float)
        if not 0.0 < frac <= 1.0:
            raise ConfigError(f"frac must be in (0,1], got {frac}")
        return PolicySpec(name, {"summarizer": summarizer, "frac": frac})
    if name == "gen_dynamic":
        summarizer = _need(raw, "summarizer", spec, str)
        if summarizer not in SUMMARIZER_NAMES:
            raise ConfigError(f"unknown summarizer {summarizer!r}")
        eps = _need(raw, "eps", spec, float)
        if not 0.0 <= eps <= 1.0:
            raise ConfigError(f"eps must be in [0,1], got {eps}")
        return PolicySpec(name, {"summarizer": summarizer, "eps": eps})
    if name == "lr":
        schedule = _need(raw, "schedule", spec, str, default="const")
        if schedule == "const":
            eps = _need(raw, "eps", spec, float)
            if not 0.0 <= eps <= 1.0:
                raise ConfigError(f"eps must be in [0,1], got {eps}")
            return PolicySpec(name, {"schedule": "const", "eps": eps})
        if schedule == "dec":
            beta = _need(raw, "beta", spec, float)
            if beta <= 0.0:
                raise ConfigError(f"beta must be positive, got {beta}")
            return PolicySpec(name, {"schedule": "dec", "beta": beta})
        raise ConfigError(f"lr schedule must be 'const' or 'dec', got {schedule!r}")
    if name == "coverage_opt":
        beta = _need(raw, "beta", spec, float)
        if beta <= 0.0:
            raise ConfigError(f"beta must be positive, got {beta}")
        c = _need(raw, "c", spec, float)
        if c < 0.0:
            raise ConfigError(f"c must be non-negative, got {c}")
        k = _need(raw, "k", spec, int, default=4)
        seed = _need(raw, "seed", spec, int, default=0)
        params = {"beta": beta, "c": c}
        if k != 4:
            params["k"] = k
        if seed != 0:
            params["seed"] = seed
        return PolicySpec(name, params)
    raise ConfigError(f"unhandled policy {name!r}")  # pragma: no cover


def build_session(
    spec: PolicySpec | str,
    edoc: EmbeddedDocument,
    user: SimulatedUser | None = None,
    rng: np.random.Generator | None = None,
    scores: SentenceScores | None = None,
) -> PolicySession:
    """Instantiate a fresh session for one document from a parsed spec.

    ``user`` is required for oracle policies, ``rng`` for stochastic ones,
    and ``scores`` (the named summarizer's output for this document) for the
    gen_* policies.
    """
    if isinstance(spec, str):
        spec = parse_policy_spec(spec)
    name, p = spec.name, spec.params
    if name == "control":
        return Control()
    if name == "show_modulo":
        return ShowModulo(p["k"])
    if name == "hide_next":
        return HideNext(p["n"])
    if name == "hide_all_similar":
        return HideAllSimilar(edoc, p["threshold"])
    if name == "hide_next_similar":
        return HideNextSimilar(edoc, p["threshold"])
    if name in ("gen_fixed", "gen_dynamic"):
        if scores is None:
            from .summarizers import score_document

            scores = score_document(p["summarizer"], edoc)
        if name == "gen_fixed":
            return GenFixed(scores, p["frac"])
        if rng is None:
            raise ConfigError("gen_dynamic requires a random generator")
        return GenDynamic(scores, p["eps"], rng)
    if name == "lr":
        if rng is None:
            raise ConfigError("lr requires a random generator")
        if p["schedule"] == "const":
            return LogisticPolicy(edoc, rng, epsilon=p["eps"])
        return LogisticPolicy(edoc, rng, beta=p["beta"])
    if name == "coverage_opt":
        return CoverageOpt(
            edoc, k=p.get("k", 4), beta=p["beta"], c=p["c"], seed=p.get("seed", 0)
        )
    if name in _ORACLES:
        if user is None:
            raise ConfigError(f"{name} requires the simulated user")
        if name == "oracle_greedy":
            return make_oracle_greedy(user, edoc)
        if name == "oracle_sorted":
            return make_oracle_sorted(user, edoc)
        if rng is None:
            raise ConfigError("oracle_uniform requires a random generator")
        return make_oracle_uniform(user, rng)
    raise ConfigError(f"unhandled policy {name!r}")  # pragma: no cover
