"""
Corpus basics: sentence splitting and the bundled sample corpus
===============================================================

Articles are ordered lists of sentences.  Raw text is split by a
deterministic rule-based splitter; corpora live in line-delimited JSON
files and short documents are filtered out on load.
"""

from hare import corpus_stats, load_sample_corpus, split_sentences

text = (
    "Dr. Lane reached the summit at noon. The view stretched for miles! "
    "Was the climb worth it? Every step."
)
for sentence in split_sentences(text):
    print(f"  [{sentence.index}] {sentence.text}")

# the packaged corpus: synthetic topical articles plus curated prose
corpus = load_sample_corpus()
stats = corpus_stats(corpus)
print(f"\nsample corpus: {stats['num_documents']} documents, "
      f"mean {stats['mean_sentences']:.1f} sentences "
      f"(min {stats['min_sentences']}, max {stats['max_sentences']})")

doc = corpus.get("curated-exoplanet")
print(f"\nfirst three sentences of {doc.id!r}:")
for sentence in doc.sentences[:3]:
    print(f"  {sentence.text}")
