"""Importance-weighted coverage scoring.

The score compares the shown set S against the whole document: every
sentence acts as a reference, weighted by its importance to the user, and
is matched to its nearest shown sentence by cosine distance.  A perfect
summary (zero distance for every weighted sentence) scores 100; an empty
one scores 0 under the distance-1 floor.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .embedding import EmbeddedDocument
from .errors import DegenerateImportances, DimensionMismatch


def coverage_score(
    importances: np.ndarray | list[float],
    edoc: EmbeddedDocument,
    shown: Iterable[int],
) -> float:
    """100 * (1 - sum_x r_x * min_{s in S} dist(x, s) / sum_x r_x).

    With an empty S every min-distance term is taken as 1, the
    orthogonality distance for non-negative embeddings, so the score floor
    is 0.  Invariant under positive rescaling of the importance vector.
    """
    r = np.asarray(importances, dtype=float)
    n = len(edoc)
    if r.shape != (n,):
        raise DimensionMismatch(
            f"{r.shape[0] if r.ndim == 1 else r.shape} importances for {n} sentences"
        )
    total = float(r.sum())
    if total <= 0.0:
        raise DegenerateImportances("importances must sum to a positive value")
    shown_idx = sorted(set(int(i) for i in shown))
    if any(i < 0 or i >= n for i in shown_idx):
        raise IndexError(f"shown indices out of range for a {n}-sentence document")
    if not shown_idx:
        min_dist = np.ones(n)
    else:
        sims = edoc.vectors @ edoc.vectors[shown_idx].T
        min_dist = 1.0 - sims.max(axis=1)
    return float(100.0 * (1.0 - (r @ min_dist) / total))


def score_advantage(policy_mean: float, control_mean: float) -> float:
    """Difference between a policy's mean score and the control's, both on
    the x100 scale over the same population."""
    return policy_mean - control_mean


def acceptance_rate(trace) -> float:
    """Accepted / shown for one session trace.

    Undefined when nothing was shown; such sessions raise
    :class:`NoShownSentences` and are excluded from aggregates.
    """
    from .errors import NoShownSentences

    if not trace.shown:
        raise NoShownSentences(f"session on {trace.doc_id!r} showed no sentences")
    accepted = sum(1 for i in trace.shown if trace.feedback.get(i) == 1)
    return accepted / len(trace.shown)
