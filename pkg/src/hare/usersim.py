"""Simulated readers: weighted concept interests and noisy binary feedback.

A user is sampled per article: their concepts are the article's k-means
centroids, their concept weights are iid uniform draws rescaled so the
largest is exactly 1, and their length preference l is uniform over
[1, |D|].  The accept/reject decision threshold is tied to l through
alpha = 1 - l/|D|: a reader who wants little accepts only the best.

Sentence importance is the maximum weighted similarity to any concept;
feedback is a Bernoulli draw whose acceptance probability is a logistic
curve in (importance - alpha) with temperature m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .embedding import EmbeddedDocument, kmeans
from .errors import DimensionMismatch


@dataclass(frozen=True)
class UserInterests:
    """k weighted concept vectors; weights in [0,1] with max exactly 1."""

    weights: np.ndarray
    concepts: np.ndarray

    def __post_init__(self):
        if self.weights.ndim != 1 or self.concepts.ndim != 2:
            raise ValueError("weights must be 1-D and concepts 2-D")
        if self.weights.shape[0] != self.concepts.shape[0]:
            raise ValueError("one weight per concept required")
        if self.weights.shape[0] < 1:
            raise ValueError("at least one concept required")
        if float(self.weights.max()) != 1.0:
            raise ValueError("max concept weight must be exactly 1")

    @property
    def k(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class FeedbackModel:
    """Logistic feedback: threshold alpha in [0,1], noise temperature m > 0."""

    alpha: float
    m: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0,1], got {self.alpha}")
        if self.m <= 0.0:
            raise ValueError(f"m must be positive, got {self.m}")


@dataclass(frozen=True)
class SimulatedUser:
    interests: UserInterests
    length_pref: int
    feedback: FeedbackModel
    rng_seed: int
    doc_length: int

    def __post_init__(self):
        if not 1 <= self.length_pref <= self.doc_length:
            raise ValueError("length preference must be within [1, |D|]")
        expected_alpha = 1.0 - self.length_pref / self.doc_length
        if abs(self.feedback.alpha - expected_alpha) > 1e-12:
            raise ValueError("alpha must equal 1 - l/|D|")

    def with_noise(self, m: float) -> "SimulatedUser":
        """Same interests and length preference, different noise level."""
        return replace(self, feedback=FeedbackModel(self.feedback.alpha, m))


def sample_user(
    edoc: EmbeddedDocument, k: int, m: float, rng: np.random.Generator
) -> SimulatedUser:
    """Draw one reader for one article.

    Concepts come from k-means over the article's sentence vectors (seeded
    from ``rng``); weights are uniform (0,1] draws divided by their max;
    l is a uniform integer in [1, |D|].  Draw order is fixed so a given
    generator state always produces the same user.
    """
    n = len(edoc)
    clustering = kmeans(edoc.vectors, k, seed=int(rng.integers(2**31)))
    raw = 1.0 - rng.random(k)  # uniform on (0, 1]
    weights = raw / raw.max()
    length_pref = int(rng.integers(1, n + 1))
    rng_seed = int(rng.integers(2**31))
    alpha = 1.0 - length_pref / n
    return SimulatedUser(
        interests=UserInterests(weights, clustering.centroids),
        length_pref=length_pref,
        feedback=FeedbackModel(alpha, m),
        rng_seed=rng_seed,
        doc_length=n,
    )


def interest(interests: UserInterests, x: np.ndarray) -> float:
    """Importance of a sentence: max over concepts of weight * similarity."""
    x = np.asarray(x, dtype=float)
    if x.shape[0] != interests.concepts.shape[1]:
        raise DimensionMismatch(
            f"sentence vector of length {x.shape[0]}, concepts of length "
            f"{interests.concepts.shape[1]}"
        )
    sims = interests.concepts @ x
    return float(np.max(interests.weights * sims))


def importance_profile(interests: UserInterests, edoc: EmbeddedDocument) -> np.ndarray:
    """Importance of every sentence in the document (vectorized ``interest``)."""
    if edoc.dimension != interests.concepts.shape[1]:
        raise DimensionMismatch("document and concept dimensions differ")
    sims = edoc.vectors @ interests.concepts.T
    return np.max(sims * interests.weights, axis=1)


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def accept_probability(fm: FeedbackModel, r: float) -> float:
    """P(accept | importance r): logistic in (r - alpha)/m, 0.5 at r = alpha.

    Increasing in r, decreasing in alpha; as m -> 0 it approaches a step
    at the threshold.
    """
    return _sigmoid((r - fm.alpha) / fm.m)


def draw_feedback(fm: FeedbackModel, r: float, rng: np.random.Generator) -> int:
    """Bernoulli swipe: 1 = accept, 0 = reject."""
    return 1 if rng.random() < accept_probability(fm, r) else 0
