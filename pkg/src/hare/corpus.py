"""Document model and corpus I/O.

A document is an ordered list of sentences; a corpus is a list of documents
read from a line-delimited JSON file.  Records carry either pre-split
sentences or raw text, in which case the rule-based splitter is applied.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyCorpus, EmptyDocument, ParseError


@dataclass(frozen=True)
class Sentence:
    """One sentence at a fixed position within its document."""

    index: int
    text: str

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"sentence index must be >= 0, got {self.index}")
        if not self.text.strip():
            raise ValueError("sentence text must be non-empty")


@dataclass(frozen=True)
class Document:
    """An article: a stable id plus sentences in their original order."""

    id: str
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        if len(self.sentences) < 1:
            raise ValueError(f"document {self.id!r} has no sentences")
        for pos, sent in enumerate(self.sentences):
            if sent.index != pos:
                raise ValueError(
                    f"document {self.id!r}: sentence index {sent.index} at position {pos}"
                )

    def __len__(self) -> int:
        return len(self.sentences)

    def texts(self) -> list[str]:
        return [s.text for s in self.sentences]


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of documents with unique ids."""

    documents: tuple[Document, ...]
    provenance: str = ""
    dropped_count: int = 0  # documents removed by the min-sentence filter

    def __post_init__(self):
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate document ids in corpus")

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def get(self, doc_id: str) -> Document | None:
        for doc in self.documents:
            if doc.id == doc_id:
                return doc
        return None


def make_document(doc_id: str, texts: list[str]) -> Document:
    """Build a Document from already-split sentence strings."""
    cleaned = [t.strip() for t in texts]
    if not cleaned or any(not t for t in cleaned):
        raise ValueError(f"document {doc_id!r}: empty sentence text")
    return Document(doc_id, tuple(Sentence(i, t) for i, t in enumerate(cleaned)))


# --- rule-based sentence splitting ---------------------------------------

# Terminal punctuation, optionally followed by closing quotes/brackets, that
# ends the text or is followed by whitespace.
_BOUNDARY = re.compile(r"[.!?]+[\"'”’)\]]*(?=\s|$)")
_WORD_BEFORE_DOT = re.compile(r"([A-Za-z]+)$")
# "e.g", "i.e", "U.S" style dotted abbreviations right before the final dot.
_DOTTED_ABBREV = re.compile(r"(?:^|[\s(\"'])[A-Za-z]\.[A-Za-z]$")

# Words whose trailing period almost never ends a sentence.
_ABBREVIATIONS = frozenset(
    """
    dr mr mrs ms messrs prof rev hon sr jr st mt vs etc inc ltd co corp
    dept univ assn approx fig capt sgt lt col maj adm sen gov
    jan feb mar apr jun jul aug sep sept oct nov dec
    """.split()
)


def split_sentences(text: str) -> list[Sentence]:
    """Split raw text into sentences on terminal punctuation.

    Periods after known abbreviations ("Dr.", "etc.") and inside dotted
    abbreviations ("e.g.", "U.S.") do not end a sentence.  Text without a
    final terminator still yields its last sentence.  Concatenating the
    returned texts reproduces the input up to whitespace.
    """
    if not text or not text.strip():
        raise EmptyDocument("cannot split empty or whitespace-only text")

    cut_points: list[int] = []
    for match in _BOUNDARY.finditer(text):
        if match.group(0).startswith("."):
            before = text[: match.start()]
            word = _WORD_BEFORE_DOT.search(before)
            if word and word.group(1).lower() in _ABBREVIATIONS:
                continue
            if _DOTTED_ABBREV.search(before):
                continue
        cut_points.append(match.end())

    pieces: list[str] = []
    start = 0
    for cut in cut_points:
        piece = text[start:cut].strip()
        if piece:
            pieces.append(piece)
        start = cut
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return [Sentence(i, p) for i, p in enumerate(pieces)]


# --- corpus file format ----------------------------------------------------
#
# One JSON object per line:
#   {"id": "...", "sentences": ["...", ...]}   pre-split
#   {"id": "...", "text": "..."}               raw text, split on load


def _document_from_record(record: dict, line_number: int) -> Document:
    doc_id = record.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise ParseError(f"line {line_number}: missing or invalid 'id'", line_number)
    if "sentences" in record:
        sents = record["sentences"]
        if (
            not isinstance(sents, list)
            or not sents
            or any(not isinstance(s, str) or not s.strip() for s in sents)
        ):
            raise ParseError(
                f"line {line_number}: 'sentences' must be a non-empty list of non-empty strings",
                line_number,
            )
        return make_document(doc_id, sents)
    if "text" in record:
        raw = record["text"]
        if not isinstance(raw, str):
            raise ParseError(f"line {line_number}: 'text' must be a string", line_number)
        try:
            parsed = split_sentences(raw)
        except EmptyDocument:
            raise ParseError(f"line {line_number}: document text is empty", line_number)
        return Document(doc_id, tuple(parsed))
    raise ParseError(
        f"line {line_number}: record needs either 'sentences' or 'text'", line_number
    )


def load_corpus(path: str | Path, min_sentences: int = 10) -> Corpus:
    """Load a line-delimited corpus file, dropping documents shorter than
    ``min_sentences``.  Retained documents keep their file order."""
    path = Path(path)
    documents: list[Document] = []
    seen_ids: set[str] = set()
    dropped = 0
    with path.open("r", encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {line_number}: invalid JSON ({exc.msg})", line_number)
            if not isinstance(record, dict):
                raise ParseError(f"line {line_number}: record must be an object", line_number)
            doc = _document_from_record(record, line_number)
            if doc.id in seen_ids:
                raise ParseError(f"line {line_number}: duplicate id {doc.id!r}", line_number)
            seen_ids.add(doc.id)
            if len(doc) < min_sentences:
                dropped += 1
                continue
            documents.append(doc)
    if not documents:
        raise EmptyCorpus(f"no documents with >= {min_sentences} sentences in {path}")
    return Corpus(tuple(documents), provenance=str(path), dropped_count=dropped)


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus in the line-delimited record format (pre-split form)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for doc in corpus:
            record = {"id": doc.id, "sentences": doc.texts()}
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def corpus_stats(corpus: Corpus) -> dict:
    """Document count and sentence-count summary for a corpus."""
    counts = [len(d) for d in corpus]
    return {
        "num_documents": len(counts),
        "mean_sentences": sum(counts) / len(counts),
        "min_sentences": min(counts),
        "max_sentences": max(counts),
        "dropped_count": corpus.dropped_count,
    }
