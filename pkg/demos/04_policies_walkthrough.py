"""
Policies: one article, many ways to hone it
===========================================

Every policy implements the same session contract: decide(i) -> show or
hide, observe(i, feedback).  This walkthrough runs a few of them over the
same article and reader and prints what each chose to show.
"""

import numpy as np

from hare import (
    build_session,
    coverage_score,
    embed_document,
    importance_profile,
    load_sample_corpus,
    make_hashed_provider,
    run_session,
    sample_user,
)

corpus = load_sample_corpus()
provider = make_hashed_provider(corpus, seed=42)
edoc = embed_document(provider, corpus.documents[3])
user = sample_user(edoc, k=4, m=0.1, rng=np.random.default_rng(11))
r = importance_profile(user.interests, edoc)

print(f"article {edoc.id!r}: {len(edoc)} sentences; "
      f"reader budget l = {user.length_pref}\n")

specs = [
    "control",
    "show_modulo:k=2",
    "hide_next:n=2",
    "hide_all_similar:threshold=0.5",
    "hide_next_similar:threshold=0.5",
    "gen_fixed:summarizer=sumbasic,frac=0.75",
    "gen_dynamic:summarizer=sumbasic,eps=0.5",
    "lr:schedule=const,eps=0.3",
    "coverage_opt:beta=4,c=5",
    "oracle_greedy",
]
for spec in specs:
    session = build_session(spec, edoc, user=user, rng=np.random.default_rng(1))
    trace = run_session(edoc, user, session, np.random.default_rng(2))
    score = coverage_score(r, edoc, trace.shown)
    shown = ",".join(str(i) for i in trace.shown)
    print(f"{spec:42s} score {score:6.2f}  shown [{shown}]")
