"""
Experiments: paired scoring, advantage, and grid search
=======================================================

An experiment runs a policy across (article x trial x noise level) with
one freshly sampled reader per article and trial, scores the shown set
with the importance-weighted coverage metric, and reports the advantage
over the control on the same readers.  Everything is seeded, so tables
reproduce exactly.

This demo uses a slice of the corpus to stay quick; drop the slice (or
use the CLI: `hare sim --corpus sample --grid appendixA`) for full runs.
"""

from hare import (
    embed_corpus,
    emit_report,
    grid_search,
    load_sample_corpus,
    make_hashed_provider,
    run_experiment,
)

corpus = load_sample_corpus()
provider = make_hashed_provider(corpus, seed=42)
edocs = embed_corpus(provider, corpus)[:80]

for spec in ("control", "hide_next:n=1", "hide_all_similar:threshold=0.3",
             "oracle_greedy"):
    row = run_experiment(edocs, spec, noise_levels=(0.01, 0.1), trials=3, seed=42)
    print(f"{spec:32s} sharp {row.score_sharp:6.2f}  noisy {row.score_noisy:6.2f}  "
          f"adv {row.score_adv:+6.2f}  accept {row.accept_rate:.2f}")

# a small grid, ranked by advantage
table = grid_search(edocs, ["show_modulo:k={2,3}", "hide_next:n={1,2,3}"],
                    noise_levels=(0.1,), trials=1, seed=42)
print("\ngrid ranked by advantage:")
for row in table.rows:
    print(f"  {row.policy:12s} {row.params:6s} adv {row.score_adv:+6.2f}")

emit_report(table, format="markdown", path="demo_grid.md")
print("\nwrote demo_grid.md")
