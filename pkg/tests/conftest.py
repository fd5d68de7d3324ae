import numpy as np
import pytest

from hare.corpus import Corpus, make_document
from hare.embedding import EmbeddedDocument, embed_corpus, make_hashed_provider
from hare.sample_data import load_sample_corpus
from hare.usersim import FeedbackModel, SimulatedUser, UserInterests


@pytest.fixture(scope="session")
def sample_corpus():
    return load_sample_corpus()


@pytest.fixture(scope="session")
def sample_provider(sample_corpus):
    return make_hashed_provider(sample_corpus, seed=42)


@pytest.fixture(scope="session")
def sample_edocs(sample_corpus, sample_provider):
    return embed_corpus(sample_provider, sample_corpus)


@pytest.fixture(scope="session")
def small_edocs(sample_edocs):
    """First 20 embedded documents, for cheaper end-to-end runs."""
    return sample_edocs[:20]


def unit(values) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return v / np.linalg.norm(v)


def edoc_from_vectors(vectors, doc_id="toy") -> EmbeddedDocument:
    """Embedded document with prescribed unit vectors and placeholder text."""
    matrix = np.vstack([unit(v) for v in vectors])
    doc = make_document(doc_id, [f"sentence {i}" for i in range(matrix.shape[0])])
    return EmbeddedDocument(doc, matrix)


def user_with(concept_vectors, weights, length_pref, doc_length, m=0.1, seed=0) -> SimulatedUser:
    """Hand-built simulated user; alpha follows from l and |D|."""
    interests = UserInterests(
        np.asarray(weights, dtype=float),
        np.vstack([unit(c) for c in concept_vectors]),
    )
    alpha = 1.0 - length_pref / doc_length
    return SimulatedUser(
        interests=interests,
        length_pref=length_pref,
        feedback=FeedbackModel(alpha, m),
        rng_seed=seed,
        doc_length=doc_length,
    )


def drive(session, n, feedback_by_index):
    """Run a policy session over n sentences with scripted feedback.

    ``feedback_by_index`` maps index -> 0/1; shown indices missing from the
    map default to accept.  Returns (decisions, shown_indices).
    """
    decisions = []
    shown = []
    for i in range(n):
        show = session.decide(i)
        decisions.append(show)
        if show:
            shown.append(i)
            session.observe(i, feedback_by_index.get(i, 1))
    return decisions, shown
