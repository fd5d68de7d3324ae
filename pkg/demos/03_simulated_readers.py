"""
Simulated readers: interests, importance, and noisy swipes
==========================================================

A reader is sampled per article: weighted interest concepts (from
k-means), a length preference l, and a logistic feedback model whose
threshold alpha = 1 - l/|D| makes short-preference readers picky.
"""

import numpy as np

from hare import (
    FeedbackModel,
    accept_probability,
    draw_feedback,
    embed_document,
    importance_profile,
    load_sample_corpus,
    make_hashed_provider,
    sample_user,
)

corpus = load_sample_corpus()
provider = make_hashed_provider(corpus, seed=42)
edoc = embed_document(provider, corpus.documents[0])

rng = np.random.default_rng(5)
user = sample_user(edoc, k=4, m=0.1, rng=rng)
print(f"reader wants {user.length_pref} of {user.doc_length} sentences "
      f"-> threshold alpha = {user.feedback.alpha:.3f}")
print(f"concept weights: {np.round(user.interests.weights, 3)}")

r = importance_profile(user.interests, edoc)
print(f"sentence importances: min {r.min():.2f}, mean {r.mean():.2f}, max {r.max():.2f}")

# the accept-probability curve sharpens as the noise temperature drops
print("\nP(accept) around the threshold:")
for m in (0.1, 0.01):
    fm = FeedbackModel(user.feedback.alpha, m)
    row = [f"{accept_probability(fm, user.feedback.alpha + d):.3f}"
           for d in (-0.2, -0.05, 0.0, 0.05, 0.2)]
    print(f"  m={m:<5} " + "  ".join(row))

swipes = [draw_feedback(user.feedback, float(r[i]), rng) for i in range(len(edoc))]
print(f"\nsimulated swipes for a full read: {swipes}")
