"""Hone-as-you-read: adapt which sentences of an article are shown, in
reading order, from lightweight per-sentence accept/reject feedback.

The package simulates the reader-summarizer loop against modeled users,
scores outcomes with an importance-weighted coverage metric, searches
policy parameter grids, and serves live reading sessions over HTTP.
"""

from .corpus import (
    Corpus,
    Document,
    Sentence,
    corpus_stats,
    load_corpus,
    make_document,
    save_corpus,
    split_sentences,
)
from .embedding import (
    Clustering,
    EmbeddedDocument,
    EmbeddingProvider,
    cosine_distance,
    embed_corpus,
    embed_document,
    export_embeddings,
    kmeans,
    make_file_provider,
    make_hashed_provider,
)
from .harness import (
    ResultsRow,
    ResultsTable,
    SessionTrace,
    emit_report,
    expand_grid_pattern,
    grid_search,
    read_report_csv,
    run_experiment,
    run_session,
)
from .metrics import acceptance_rate, coverage_score, score_advantage
from .policies import PolicySession, PolicySpec, build_session, parse_policy_spec
from .sample_data import build_sample_corpus, load_sample_corpus, write_sample_corpus
from .summarizers import (
    SentenceScores,
    lexrank_scores,
    normalize_unit_interval,
    score_document,
    sumbasic_scores,
    textrank_scores,
)
from .usersim import (
    FeedbackModel,
    SimulatedUser,
    UserInterests,
    accept_probability,
    draw_feedback,
    importance_profile,
    interest,
    sample_user,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "Document",
    "Sentence",
    "corpus_stats",
    "load_corpus",
    "make_document",
    "save_corpus",
    "split_sentences",
    "Clustering",
    "EmbeddedDocument",
    "EmbeddingProvider",
    "cosine_distance",
    "embed_corpus",
    "embed_document",
    "export_embeddings",
    "kmeans",
    "make_file_provider",
    "make_hashed_provider",
    "ResultsRow",
    "ResultsTable",
    "SessionTrace",
    "emit_report",
    "expand_grid_pattern",
    "grid_search",
    "read_report_csv",
    "run_experiment",
    "run_session",
    "acceptance_rate",
    "coverage_score",
    "score_advantage",
    "PolicySession",
    "PolicySpec",
    "build_session",
    "parse_policy_spec",
    "build_sample_corpus",
    "load_sample_corpus",
    "write_sample_corpus",
    "SentenceScores",
    "lexrank_scores",
    "normalize_unit_interval",
    "score_document",
    "sumbasic_scores",
    "textrank_scores",
    "FeedbackModel",
    "SimulatedUser",
    "UserInterests",
    "accept_probability",
    "draw_feedback",
    "importance_profile",
    "interest",
    "sample_user",
    "__version__",
]
