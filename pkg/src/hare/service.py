"""Live reading sessions over HTTP.

A human reads one article through a policy: sentences are served one at a
time (policy-hidden ones skipped silently), each swipe is forwarded as 0/1
feedback, and the reader may stop at any point.  Stopping moves the
session to a review phase where all unseen sentences are listed; the
reader marks the interesting ones and rates coherence and decision ease,
which yields the study's coverage number.

State is in-memory with an append-only event log for persistence; requests
within one session are serialized.  Oracle policies need ground-truth
interests, which real readers don't have, so they are rejected here.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .corpus import Corpus, Document, split_sentences
from .embedding import EmbeddedDocument, EmbeddingProvider, embed_document, make_hashed_provider
from .errors import ConfigError, EmptyDocument
from .policies import PolicySession, build_session, parse_policy_spec
from .sample_data import load_sample_corpus

_LIVE_POLICIES_REJECTED = ("oracle_greedy", "oracle_sorted", "oracle_uniform")


@dataclass
class LiveSession:
    id: str
    edoc: EmbeddedDocument
    policy_spec: str
    policy: PolicySession
    created_at: float
    cursor: int = 0  # next index the policy has not decided yet
    served: list[int] = field(default_factory=list)
    hidden: list[int] = field(default_factory=list)
    feedback: dict[int, int] = field(default_factory=dict)
    phase: str = "reading"  # reading -> review -> closed
    unseen: list[int] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def last_served(self) -> int | None:
        return self.served[-1] if self.served else None

    @property
    def accepted(self) -> int:
        return sum(1 for v in self.feedback.values() if v == 1)

    def sentence_payload(self, index: int) -> dict:
        return {"index": index, "text": self.edoc.document.sentences[index].text}

    def advance(self) -> dict | None:
        """Decide forward from the cursor to the next shown sentence."""
        n = len(self.edoc)
        while self.cursor < n:
            index = self.cursor
            self.cursor += 1
            if self.policy.decide(index):
                self.served.append(index)
                return self.sentence_payload(index)
            self.hidden.append(index)
        return None


class _EventLog:
    """Append-only study log, optionally mirrored to a JSONL file."""

    def __init__(self, path: str | Path | None):
        self._events: list[dict] = []
        self._path = Path(path) if path else None
        self._lock = threading.Lock()

    def append(self, event: dict) -> None:
        event = {"ts": time.time(), **event}
        with self._lock:
            self._events.append(event)
            if self._path is not None:
                with self._path.open("a", encoding="utf-8") as fh:
                    fh.write(json.dumps(event) + "\n")

    def dump(self) -> list[dict]:
        with self._lock:
            return list(self._events)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"detail": message}, status_code=status)


def create_app(
    corpus: Corpus | None = None,
    provider: EmbeddingProvider | None = None,
    event_log_path: str | Path | None = None,
    session_ttl_s: float = 24 * 3600.0,
) -> FastAPI:
    """Build the session service around a corpus and embedding provider."""
    if corpus is None:
        corpus = load_sample_corpus()
    if provider is None:
        provider = make_hashed_provider(corpus)

    app = FastAPI(title="hare reading service")
    sessions: dict[str, LiveSession] = {}
    edoc_cache: dict[str, EmbeddedDocument] = {}
    store_lock = threading.Lock()
    log = _EventLog(event_log_path)

    def _embedded(document: Document) -> EmbeddedDocument:
        if document.id not in edoc_cache:
            edoc_cache[document.id] = embed_document(provider, document)
        return edoc_cache[document.id]

    def _get_session(session_id: str) -> LiveSession | None:
        with store_lock:
            session = sessions.get(session_id)
            if session is None:
                return None
            if time.time() - session.created_at > session_ttl_s:
                del sessions[session_id]
                return None
            return session

    @app.get("/articles")
    def list_articles():
        return [
            {
                "id": doc.id,
                "sentences": len(doc),
                "preview": doc.sentences[0].text[:120],
            }
            for doc in corpus
        ]

    @app.post("/sessions")
    async def create_session(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        if not isinstance(body, dict):
            return _error(400, "request body must be an object")
        spec_string = body.get("policy")
        if not isinstance(spec_string, str):
            return _error(400, "missing 'policy' spec string")
        try:
            spec = parse_policy_spec(spec_string)
        except ConfigError as exc:
            return _error(400, f"bad policy spec: {exc}")
        if spec.name in _LIVE_POLICIES_REJECTED:
            return _error(400, f"policy {spec.name!r} needs ground-truth user "
                               "interests and cannot run live")

        if "article" in body and body["article"] is not None:
            document = corpus.get(body["article"])
            if document is None:
                return _error(404, f"unknown article {body['article']!r}")
        elif "text" in body and body["text"] is not None:
            if not isinstance(body["text"], str):
                return _error(400, "'text' must be a string")
            try:
                parsed = split_sentences(body["text"])
            except EmptyDocument:
                return _error(400, "article text is empty")
            document = Document(f"adhoc-{uuid.uuid4().hex[:8]}", tuple(parsed))
        else:
            return _error(400, "provide 'article' (id) or 'text' (raw article)")

        edoc = _embedded(document)
        try:
            policy = build_session(spec, edoc, rng=_policy_rng())
        except ConfigError as exc:
            return _error(400, str(exc))
        session = LiveSession(
            id=uuid.uuid4().hex,
            edoc=edoc,
            policy_spec=spec.raw,
            policy=policy,
            created_at=time.time(),
        )
        with store_lock:
            sessions[session.id] = session
        with session.lock:
            sentence = session.advance()
            log.append({
                "event": "create", "session": session.id, "article": document.id,
                "policy": spec.raw, "sentences": len(document),
            })
            if sentence is not None:
                log.append({"event": "serve", "session": session.id,
                            "index": sentence["index"]})
            return {
                "session_id": session.id,
                "article": document.id,
                "sentence": sentence,
                "done": sentence is None,
            }

    @app.post("/sessions/{session_id}/feedback")
    async def submit_feedback(session_id: str, request: Request):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        index = body.get("index")
        accept = body.get("accept")
        if not isinstance(index, int) or not isinstance(accept, bool):
            return _error(400, "feedback needs integer 'index' and boolean 'accept'")
        with session.lock:
            if session.phase != "reading":
                return _error(409, f"session is in {session.phase} phase")
            if session.last_served != index or index in session.feedback:
                return _error(409, f"feedback must target the last served sentence "
                                   f"({session.last_served})")
            value = 1 if accept else 0
            session.policy.observe(index, value)
            session.feedback[index] = value
            log.append({"event": "feedback", "session": session.id,
                        "index": index, "accept": accept})
            sentence = session.advance()
            if sentence is not None:
                log.append({"event": "serve", "session": session.id,
                            "index": sentence["index"]})
            return {"sentence": sentence, "done": sentence is None}

    @app.post("/sessions/{session_id}/stop")
    def stop_session(session_id: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            if session.phase != "reading":
                return _error(409, f"session is in {session.phase} phase")
            session.phase = "review"
            served = set(session.served)
            session.unseen = [i for i in range(len(session.edoc)) if i not in served]
            log.append({"event": "stop", "session": session.id,
                        "served": len(session.served)})
            return {
                "unseen": [session.sentence_payload(i) for i in session.unseen],
            }

    @app.post("/sessions/{session_id}/review")
    async def submit_review(session_id: str, request: Request):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        interesting = body.get("interesting")
        coherence = body.get("coherence")
        ease = body.get("ease")
        if not isinstance(interesting, list) or not all(isinstance(i, int) for i in interesting):
            return _error(400, "'interesting' must be a list of sentence indices")
        if not isinstance(coherence, int) or not 1 <= coherence <= 5:
            return _error(400, "'coherence' rating must be an integer in 1..5")
        if not isinstance(ease, int) or not 1 <= ease <= 5:
            return _error(400, "'ease' rating must be an integer in 1..5")
        with session.lock:
            if session.phase != "review":
                return _error(409, f"session is in {session.phase} phase")
            marked = sorted(set(interesting))
            if any(i not in session.unseen for i in marked):
                return _error(400, "'interesting' indices must come from the unseen list")
            accepted = session.accepted
            denom = accepted + len(marked)
            coverage = accepted / denom if denom > 0 else None
            session.phase = "closed"
            outcome = {
                "coverage": coverage,
                "coherence": coherence,
                "ease": ease,
                "accepted_shown": accepted,
                "interesting_unseen": marked,
            }
            log.append({"event": "review", "session": session.id, **outcome})
            return outcome

    @app.get("/sessions/{session_id}/stats")
    def session_stats(session_id: str):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            shown = len(session.served)
            swiped = len(session.feedback)
            n = len(session.edoc)
            return {
                "phase": session.phase,
                "policy": session.policy_spec,
                "article": session.edoc.id,
                "document_length": n,
                "shown": shown,
                "hidden": len(session.hidden),
                "percent_read": shown / n,
                # over swiped sentences; the just-served one is still pending
                "acceptance_rate": session.accepted / swiped if swiped else None,
            }

    @app.get("/study/export")
    def study_export():
        return {"events": log.dump()}

    return app


def _policy_rng():
    import numpy as np

    # live sessions have no reproducibility contract; seed from the clock
    return np.random.default_rng()
