"""
Sentence vectors and article concepts
=====================================

The built-in provider hashes TF-IDF weights into a fixed number of
buckets: deterministic, dependency-free, and non-negative, so cosine
distances between sentences stay in [0, 1].  K-means over a document's
vectors yields its concept centroids, the backbone of user modelling.
"""

import numpy as np

from hare import (
    cosine_distance,
    embed_document,
    kmeans,
    load_sample_corpus,
    make_hashed_provider,
)

corpus = load_sample_corpus()
provider = make_hashed_provider(corpus, dimension=256, seed=42)

a = provider.embed_text("the committee approved the budget proposal")
b = provider.embed_text("the committee rejected the budget proposal")
c = provider.embed_text("the striker scored a late goal in extra time")
print(f"related sentences:   distance {cosine_distance(a, b):.3f}")
print(f"unrelated sentences: distance {cosine_distance(a, c):.3f}")

# cluster one article into four concepts
edoc = embed_document(provider, corpus.documents[10])
clustering = kmeans(edoc.vectors, k=4, seed=7)
print(f"\narticle {edoc.id!r}: {len(edoc)} sentences, "
      f"inertia {clustering.inertia:.3f} after {clustering.n_iter} iterations")
for j in range(4):
    members = np.flatnonzero(clustering.assignments == j)
    snippet = edoc.document.sentences[members[0]].text
    print(f"  concept {j}: {len(members)} sentences, e.g. {snippet!r}")
