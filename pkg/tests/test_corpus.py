import json
from pathlib import Path

import pytest

from hare.corpus import (
    Corpus,
    corpus_stats,
    load_corpus,
    make_document,
    save_corpus,
    split_sentences,
)
from hare.errors import EmptyCorpus, EmptyDocument, ParseError
from hare.sample_data import sample_corpus_path

FIXTURE = Path(__file__).parent / "data" / "sentence_fixture.json"


class TestSplitSentences:
    def test_terminal_punctuation(self):
        parts = split_sentences("A. B? C!")
        assert [s.text for s in parts] == ["A.", "B?", "C!"]
        assert [s.index for s in parts] == [0, 1, 2]

    def test_no_terminator_yields_one_sentence(self):
        parts = split_sentences("One sentence")
        assert len(parts) == 1
        assert parts[0].text == "One sentence"

    def test_abbreviation_is_not_a_boundary(self):
        parts = split_sentences("Dr. Smith left. He ran.")
        assert [s.text for s in parts] == ["Dr. Smith left.", "He ran."]

    def test_empty_input_rejected(self):
        with pytest.raises(EmptyDocument):
            split_sentences("")
        with pytest.raises(EmptyDocument):
            split_sentences("   \n\t ")

    def test_decimal_numbers_do_not_split(self):
        parts = split_sentences("It cost 3.50 euros. Cheap.")
        assert [s.text for s in parts] == ["It cost 3.50 euros.", "Cheap."]

    def test_hand_labeled_fixture(self):
        fixture = json.loads(FIXTURE.read_text(encoding="utf-8"))
        parts = split_sentences(fixture["text"])
        assert [s.text for s in parts] == fixture["sentences"]
        assert len(parts) == 20

    def test_concatenation_reproduces_input_modulo_whitespace(self):
        fixture = json.loads(FIXTURE.read_text(encoding="utf-8"))
        parts = split_sentences(fixture["text"])
        squashed = "".join("".join(s.text.split()) for s in parts)
        assert squashed == "".join(fixture["text"].split())


def _write_corpus_file(tmp_path, records):
    path = tmp_path / "corpus.jsonl"
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path


class TestLoadCorpus:
    def test_min_sentence_filter(self, tmp_path):
        short = {"id": "short", "sentences": [f"s{i}." for i in range(5)]}
        long = {"id": "long", "sentences": [f"s{i}." for i in range(12)]}
        path = _write_corpus_file(tmp_path, [short, long])
        corpus = load_corpus(path, min_sentences=10)
        assert [d.id for d in corpus] == ["long"]
        assert corpus.dropped_count == 1

    def test_min_sentences_one_keeps_everything(self, tmp_path):
        records = [{"id": f"d{i}", "sentences": ["only one."]} for i in range(3)]
        corpus = load_corpus(_write_corpus_file(tmp_path, records), min_sentences=1)
        assert len(corpus) == 3
        assert corpus.dropped_count == 0

    def test_raw_text_records_are_split(self, tmp_path):
        records = [{"id": "raw", "text": "First. Second. Third."}]
        corpus = load_corpus(_write_corpus_file(tmp_path, records), min_sentences=1)
        assert [s.text for s in corpus.documents[0].sentences] == [
            "First.", "Second.", "Third.",
        ]

    def test_order_stability(self, tmp_path):
        records = [{"id": f"d{i}", "sentences": [f"s{j}." for j in range(10)]}
                   for i in range(6)]
        corpus = load_corpus(_write_corpus_file(tmp_path, records))
        assert [d.id for d in corpus] == [f"d{i}" for i in range(6)]

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "ok", "sentences": ["a."]}\n{broken\n', encoding="utf-8")
        with pytest.raises(ParseError) as err:
            load_corpus(path, min_sentences=1)
        assert err.value.line_number == 2

    def test_missing_fields_reports_line(self, tmp_path):
        path = _write_corpus_file(tmp_path, [{"id": "x"}])
        with pytest.raises(ParseError) as err:
            load_corpus(path, min_sentences=1)
        assert err.value.line_number == 1

    def test_duplicate_ids_rejected(self, tmp_path):
        records = [{"id": "same", "sentences": ["a."]},
                   {"id": "same", "sentences": ["b."]}]
        with pytest.raises(ParseError):
            load_corpus(_write_corpus_file(tmp_path, records), min_sentences=1)

    def test_zero_survivors(self, tmp_path):
        records = [{"id": "tiny", "sentences": ["a.", "b."]}]
        with pytest.raises(EmptyCorpus):
            load_corpus(_write_corpus_file(tmp_path, records), min_sentences=10)

    def test_round_trip_identity(self, tmp_path):
        records = [{"id": f"d{i}", "sentences": [f"sentence {j}." for j in range(11)]}
                   for i in range(4)]
        corpus = load_corpus(_write_corpus_file(tmp_path, records))
        out = tmp_path / "copy.jsonl"
        save_corpus(corpus, out)
        reloaded = load_corpus(out)
        assert [d.id for d in reloaded] == [d.id for d in corpus]
        for a, b in zip(corpus, reloaded):
            assert a.texts() == b.texts()


class TestSampleCorpus:
    def test_size_and_lengths(self, sample_corpus):
        assert len(sample_corpus) >= 200
        for doc in sample_corpus:
            assert 10 <= len(doc) <= 40

    def test_mean_sentence_count_cross_check(self, sample_corpus):
        # independent recount straight from the packaged file
        counts = []
        with open(sample_corpus_path(), encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    counts.append(len(json.loads(line)["sentences"]))
        assert len(counts) == len(sample_corpus)
        stats = corpus_stats(sample_corpus)
        assert stats["mean_sentences"] == pytest.approx(sum(counts) / len(counts))


def test_document_validation():
    with pytest.raises(ValueError):
        make_document("d", [])
    with pytest.raises(ValueError):
        make_document("d", ["ok.", "   "])
    with pytest.raises(ValueError):
        Corpus((make_document("a", ["x."]), make_document("a", ["y."])))
