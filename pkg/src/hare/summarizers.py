"""Generic extractive sentence scorers: LexRank, TextRank, SumBasic.

Each scorer assigns one score per sentence; the adapter policies rescale
them to [0, 1] with :func:`normalize_unit_interval` before thresholding.
All three are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import Document
from .embedding import EmbeddedDocument, tokenize
from .errors import ConfigError

SUMMARIZER_NAMES = ("lexrank", "sumbasic", "textrank")


@dataclass(frozen=True)
class SentenceScores:
    """Per-sentence scores; when ``normalized``, min is 0 and max is 1
    (a constant score vector rescales to all 0.5)."""

    method: str
    scores: np.ndarray
    normalized: bool = False

    def __len__(self) -> int:
        return self.scores.shape[0]


def _damped_stationary(
    transition: np.ndarray, damping: float, max_iters: int, tol: float
) -> np.ndarray:
    """Power iteration for the damped random walk.  ``transition`` rows must
    sum to 1 (dangling rows are made uniform by the callers)."""
    n = transition.shape[0]
    p = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    for _ in range(max_iters):
        p_next = teleport + damping * (transition.T @ p)
        if float(np.abs(p_next - p).sum()) < tol:
            return p_next
        p = p_next
    return p


def _row_stochastic(weights: np.ndarray) -> np.ndarray:
    """Normalize rows to sum 1; rows with no outgoing weight become uniform."""
    n = weights.shape[0]
    sums = weights.sum(axis=1, keepdims=True)
    dangling = sums[:, 0] <= 0.0
    safe = np.where(sums > 0.0, sums, 1.0)
    out = weights / safe
    out[dangling] = 1.0 / n
    return out


def lexrank_scores(
    edoc: EmbeddedDocument,
    threshold: float = 0.1,
    damping: float = 0.85,
    max_iters: int = 200,
    tol: float = 1e-6,
) -> SentenceScores:
    """Stationary distribution of a random walk on the sentence-similarity
    graph.

    Edges connect sentence pairs whose cosine similarity reaches the
    threshold (binary weights, self-loops excluded); damping keeps the walk
    well-defined on disconnected graphs.  Raw scores sum to 1.
    """
    n = len(edoc)
    if n == 1:
        return SentenceScores("lexrank", np.array([1.0]))
    sims = edoc.vectors @ edoc.vectors.T
    adjacency = (sims >= threshold).astype(float)
    np.fill_diagonal(adjacency, 0.0)
    scores = _damped_stationary(_row_stochastic(adjacency), damping, max_iters, tol)
    return SentenceScores("lexrank", scores)


def textrank_scores(
    doc: Document, damping: float = 0.85, max_iters: int = 200, tol: float = 1e-6
) -> SentenceScores:
    """Damped walk on the token-overlap graph.

    Edge weight between two sentences is the number of distinct shared
    tokens divided by log(len_i) + log(len_j) over token counts; when that
    denominator is not positive (both sentences have fewer than 2 tokens)
    it falls back to 1.
    """
    n = len(doc)
    if n == 1:
        return SentenceScores("textrank", np.array([1.0]))
    token_lists = [tokenize(s.text) for s in doc.sentences]
    token_sets = [set(toks) for toks in token_lists]
    lengths = [len(toks) for toks in token_lists]
    weights = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            shared = len(token_sets[i] & token_sets[j])
            if shared == 0:
                continue
            denom = 0.0
            if lengths[i] > 0 and lengths[j] > 0:
                denom = math.log(lengths[i]) + math.log(lengths[j])
            if denom <= 0.0:
                denom = 1.0
            weights[i, j] = weights[j, i] = shared / denom
    scores = _damped_stationary(_row_stochastic(weights), damping, max_iters, tol)
    return SentenceScores("textrank", scores)


def sumbasic_scores(doc: Document) -> SentenceScores:
    """Full SumBasic ranking turned into scores.

    Word probabilities come from frequencies within the document; a
    sentence's value is the mean probability of its tokens.  The best
    sentence is picked, the probabilities of its words are squared, and the
    process repeats until every sentence is ranked.  The sentence picked at
    rank r scores 1 - r/(n-1); a single-sentence document scores 1.
    """
    n = len(doc)
    if n == 1:
        return SentenceScores("sumbasic", np.array([1.0]))
    token_lists = [tokenize(s.text) for s in doc.sentences]
    totals: dict[str, int] = {}
    total_tokens = 0
    for toks in token_lists:
        total_tokens += len(toks)
        for t in toks:
            totals[t] = totals.get(t, 0) + 1
    if total_tokens == 0:
        # no recognizable tokens anywhere: rank by position
        ranks = np.arange(n)
    else:
        prob = {t: c / total_tokens for t, c in totals.items()}
        remaining = list(range(n))
        ranks = np.zeros(n, dtype=int)
        for rank in range(n):
            best_idx = None
            best_value = -1.0
            for i in remaining:
                toks = token_lists[i]
                value = sum(prob[t] for t in toks) / len(toks) if toks else 0.0
                if value > best_value:
                    best_value = value
                    best_idx = i
            ranks[best_idx] = rank
            remaining.remove(best_idx)
            for t in set(token_lists[best_idx]):
                prob[t] = prob[t] ** 2
    scores = 1.0 - ranks / (n - 1)
    return SentenceScores("sumbasic", scores.astype(float))


def normalize_unit_interval(scores: SentenceScores) -> SentenceScores:
    """Affine rescale to [0, 1]; a constant vector maps to all 0.5.
    Idempotent."""
    values = scores.scores
    lo = float(values.min())
    hi = float(values.max())
    if hi - lo <= 0.0:
        rescaled = np.full_like(values, 0.5, dtype=float)
    else:
        rescaled = (values - lo) / (hi - lo)
    return SentenceScores(scores.method, rescaled, normalized=True)


def score_document(name: str, edoc: EmbeddedDocument) -> SentenceScores:
    """Run the named summarizer and rescale its scores to [0, 1]."""
    if name == "lexrank":
        raw = lexrank_scores(edoc)
    elif name == "textrank":
        raw = textrank_scores(edoc.document)
    elif name == "sumbasic":
        raw = sumbasic_scores(edoc.document)
    else:
        raise ConfigError(f"unknown summarizer {name!r}; expected one of {SUMMARIZER_NAMES}")
    return normalize_unit_interval(raw)
