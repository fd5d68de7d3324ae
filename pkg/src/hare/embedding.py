"""Sentence vectors: pluggable providers, cosine distance, and k-means.

Every vector handled here is unit-norm, so cosine distance is ``1 - dot``.
The built-in provider hashes TF-IDF weights into a fixed number of buckets;
it is deterministic and keeps all entries non-negative, which bounds
pairwise cosine distances to [0, 1].  Pretrained vectors can be plugged in
through the file provider instead.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Corpus, Document
from .errors import (
    ConfigError,
    DimensionMismatch,
    MissingEmbedding,
    NormalizationError,
    ParseError,
    TooFewPoints,
)

_TOKEN = re.compile(r"[a-z0-9']+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def normalize(vector: np.ndarray) -> np.ndarray:
    """Return the vector scaled to unit Euclidean norm."""
    norm = float(np.linalg.norm(vector))
    if norm <= 0.0 or not math.isfinite(norm):
        raise NormalizationError("cannot normalize a zero-norm vector")
    return vector / norm


def cosine_distance(a: np.ndarray, b: np.ndarray) -> float:
    """1 - dot(a, b) for unit-norm vectors; 0 for identical directions."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"vector dimensions differ: {a.shape} vs {b.shape}")
    return float(1.0 - a @ b)


class EmbeddingProvider:
    """Maps (document id, sentence index, text) to a unit-norm vector."""

    name: str = "base"
    dimension: int = 0
    deterministic: bool = True

    def vector_for(self, doc_id: str, index: int, text: str) -> np.ndarray:
        raise NotImplementedError


class HashedTfidfProvider(EmbeddingProvider):
    """Hashed-token TF-IDF vectors fit on a corpus.

    Tokens hash to one of ``dimension`` buckets (keyed blake2b, so the map
    is stable across processes); each bucket accumulates term frequency
    times a smoothed inverse sentence frequency.  Raw entries are
    non-negative and the result is L2-normalized.
    """

    deterministic = True

    def __init__(self, dimension: int, seed: int, idf: dict[str, float], default_idf: float):
        self.dimension = dimension
        self.seed = seed
        self.name = f"hashed-tfidf-{dimension}"
        self._idf = idf
        self._default_idf = default_idf
        self._key = (seed % 2**64).to_bytes(8, "little")

    def _bucket(self, token: str) -> int:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8, key=self._key).digest()
        return int.from_bytes(digest, "little") % self.dimension

    def embed_text(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dimension)
        for token, count in Counter(tokenize(text)).items():
            vec[self._bucket(token)] += count * self._idf.get(token, self._default_idf)
        if not vec.any():
            # no tokens at all: fall back to a fixed unit direction
            vec[self._bucket("")] = 1.0
        return normalize(vec)

    def vector_for(self, doc_id: str, index: int, text: str) -> np.ndarray:
        return self.embed_text(text)


def make_hashed_provider(corpus: Corpus, dimension: int = 256, seed: int = 0) -> HashedTfidfProvider:
    """Fit a hashed TF-IDF provider on the corpus sentences."""
    if dimension < 8:
        raise ConfigError(f"embedding dimension must be >= 8, got {dimension}")
    if len(corpus) == 0:
        raise ConfigError("cannot fit a provider on an empty corpus")
    doc_freq: Counter[str] = Counter()
    n_sentences = 0
    for doc in corpus:
        for sent in doc.sentences:
            n_sentences += 1
            doc_freq.update(set(tokenize(sent.text)))
    idf = {
        token: math.log((1 + n_sentences) / (1 + df)) + 1.0
        for token, df in doc_freq.items()
    }
    default_idf = math.log(1 + n_sentences) + 1.0
    return HashedTfidfProvider(dimension, seed, idf, default_idf)


class FileEmbeddingProvider(EmbeddingProvider):
    """Vectors loaded from a file, looked up by (document id, sentence index)."""

    deterministic = True

    def __init__(self, table: dict[tuple[str, int], np.ndarray], dimension: int, source: str):
        self.dimension = dimension
        self.name = f"file:{source}"
        self._table = table

    def vector_for(self, doc_id: str, index: int, text: str) -> np.ndarray:
        key = (doc_id, index)
        if key not in self._table:
            raise MissingEmbedding(f"no vector for document {doc_id!r} sentence {index}")
        return self._table[key]


def make_file_provider(path: str | Path) -> FileEmbeddingProvider:
    """Load an embedding file: one {"doc", "idx", "vec"} object per line.

    Vectors are renormalized on load; zero-norm vectors and inconsistent
    dimensions are rejected.
    """
    path = Path(path)
    table: dict[tuple[str, int], np.ndarray] = {}
    dimension: int | None = None
    with path.open("r", encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                doc_id = record["doc"]
                index = int(record["idx"])
                values = record["vec"]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                raise ParseError(f"line {line_number}: invalid embedding record", line_number)
            vec = np.asarray(values, dtype=float)
            if vec.ndim != 1 or vec.size == 0:
                raise ParseError(f"line {line_number}: vector must be a flat list", line_number)
            if dimension is None:
                dimension = vec.size
            elif vec.size != dimension:
                raise DimensionMismatch(
                    f"line {line_number}: vector of length {vec.size}, expected {dimension}"
                )
            table[(doc_id, index)] = normalize(vec)
    if dimension is None:
        raise ParseError("embedding file contains no records")
    return FileEmbeddingProvider(table, dimension, str(path))


def export_embeddings(provider: EmbeddingProvider, corpus: Corpus, path: str | Path) -> None:
    """Write every corpus sentence vector in the embedding file format."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for doc in corpus:
            for sent in doc.sentences:
                vec = provider.vector_for(doc.id, sent.index, sent.text)
                record = {"doc": doc.id, "idx": sent.index, "vec": [float(x) for x in vec]}
                fh.write(json.dumps(record) + "\n")


@dataclass(frozen=True)
class EmbeddedDocument:
    """A document plus one unit-norm vector per sentence (rows of ``vectors``)."""

    document: Document
    vectors: np.ndarray

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.document):
            raise DimensionMismatch(
                f"document {self.document.id!r}: {len(self.document)} sentences but "
                f"vector array of shape {self.vectors.shape}"
            )

    def __len__(self) -> int:
        return len(self.document)

    @property
    def id(self) -> str:
        return self.document.id

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]


def embed_document(provider: EmbeddingProvider, document: Document) -> EmbeddedDocument:
    rows = [
        provider.vector_for(document.id, sent.index, sent.text)
        for sent in document.sentences
    ]
    return EmbeddedDocument(document, np.vstack(rows))


def embed_corpus(provider: EmbeddingProvider, corpus: Corpus) -> list[EmbeddedDocument]:
    return [embed_document(provider, doc) for doc in corpus]


# --- k-means on the unit sphere -------------------------------------------


@dataclass(frozen=True)
class Clustering:
    """K-means result: unit-norm centroids, per-point assignments, inertia."""

    centroids: np.ndarray
    assignments: np.ndarray
    inertia: float
    n_iter: int

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def _plusplus_seeding(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ start: spread initial centroids by squared distance."""
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    for _ in range(1, k):
        centroids = points[chosen]
        sq_dist = np.min(
            np.sum((points[:, None, :] - centroids[None, :, :]) ** 2, axis=2), axis=1
        )
        total = sq_dist.sum()
        if total <= 0.0:
            chosen.append(int(rng.integers(n)))
            continue
        chosen.append(int(rng.choice(n, p=sq_dist / total)))
    return points[chosen].copy()


def kmeans(
    vectors: np.ndarray,
    k: int,
    seed: int = 0,
    max_iters: int = 100,
    tol: float = 1e-6,
) -> Clustering:
    """Lloyd's iterations over unit-norm points, centroids renormalized.

    For unit vectors the nearest centroid under squared Euclidean distance
    is the one with the highest dot product, so each update step takes the
    renormalized cluster mean (the unit vector minimizing within-cluster
    squared distance).  A cluster that empties is re-seeded at the point
    farthest from its own centroid.  Deterministic for a given seed.
    """
    points = np.asarray(vectors, dtype=float)
    if points.ndim != 2:
        raise DimensionMismatch("vectors must be a 2-D array")
    n = points.shape[0]
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    if n < k:
        raise TooFewPoints(f"{n} points cannot form {k} clusters")

    rng = np.random.Generator(np.random.PCG64(seed))
    centroids = _plusplus_seeding(points, k, rng)
    norms = np.linalg.norm(centroids, axis=1, keepdims=True)
    centroids = centroids / np.where(norms > 0, norms, 1.0)

    assignments = np.zeros(n, dtype=int)
    iteration = 0
    for iteration in range(1, max_iters + 1):
        sims = points @ centroids.T
        assignments = np.argmax(sims, axis=1)
        new_centroids = np.empty_like(centroids)
        taken: set[int] = set()
        for j in range(k):
            members = points[assignments == j]
            if len(members) == 0:
                # farthest point from its current centroid restarts the cluster
                own_sim = sims[np.arange(n), assignments]
                order = np.argsort(own_sim)
                pick = next(int(i) for i in order if int(i) not in taken)
                taken.add(pick)
                new_centroids[j] = points[pick]
                continue
            mean = members.mean(axis=0)
            norm = np.linalg.norm(mean)
            if norm <= 1e-12:
                own_sim = sims[np.arange(n), assignments]
                order = np.argsort(own_sim)
                pick = next(int(i) for i in order if int(i) not in taken)
                taken.add(pick)
                new_centroids[j] = points[pick]
                continue
            new_centroids[j] = mean / norm
        shift = float(np.max(np.linalg.norm(new_centroids - centroids, axis=1)))
        centroids = new_centroids
        if shift < tol:
            break

    sims = points @ centroids.T
    assignments = np.argmax(sims, axis=1)
    inertia = float(np.sum(2.0 - 2.0 * sims[np.arange(n), assignments]))
    return Clustering(centroids, assignments, inertia, iteration)
