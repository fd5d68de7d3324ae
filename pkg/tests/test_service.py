import numpy as np
import pytest
from fastapi.testclient import TestClient

from hare.corpus import Corpus, make_document
from hare.embedding import embed_document, make_hashed_provider
from hare.harness import run_session
from hare.policies import build_session
from hare.service import create_app
from hare.usersim import FeedbackModel, SimulatedUser, UserInterests


def _corpus():
    docs = []
    for d in range(3):
        texts = [f"Document {d} talks about topic {i % 4} in sentence {i}."
                 for i in range(12)]
        docs.append(make_document(f"doc-{d}", texts))
    return Corpus(tuple(docs), provenance="service test corpus")


@pytest.fixture()
def corpus():
    return _corpus()


@pytest.fixture()
def client(corpus):
    app = create_app(corpus=corpus, provider=make_hashed_provider(corpus, seed=1))
    return TestClient(app)


def _create(client, policy="control", article="doc-0"):
    response = client.post("/sessions", json={"article": article, "policy": policy})
    assert response.status_code == 200, response.text
    return response.json()


class TestArticles:
    def test_listing(self, client):
        articles = client.get("/articles").json()
        assert [a["id"] for a in articles] == ["doc-0", "doc-1", "doc-2"]
        assert articles[0]["sentences"] == 12
        assert "preview" in articles[0]


class TestCreateSession:
    def test_control_serves_first_sentence(self, client):
        body = _create(client)
        assert body["sentence"]["index"] == 0
        assert not body["done"]

    def test_modulo_skips_hidden_prefix(self, client):
        body = _create(client, policy="show_modulo:k=2")
        assert body["sentence"]["index"] == 0
        after = client.post(
            f"/sessions/{body['session_id']}/feedback",
            json={"index": 0, "accept": True},
        ).json()
        assert after["sentence"]["index"] == 2

    def test_unknown_article_404(self, client):
        response = client.post("/sessions", json={"article": "nope", "policy": "control"})
        assert response.status_code == 404

    def test_malformed_policy_400(self, client):
        response = client.post("/sessions", json={"article": "doc-0", "policy": "bogus:x=1"})
        assert response.status_code == 400
        assert "policy" in response.json()["detail"]

    def test_oracle_policies_rejected_live(self, client):
        for policy in ("oracle_greedy", "oracle_sorted", "oracle_uniform"):
            response = client.post("/sessions", json={"article": "doc-0", "policy": policy})
            assert response.status_code == 400

    def test_raw_text_article(self, client):
        response = client.post(
            "/sessions",
            json={"text": "First sentence. Second sentence. Third one.", "policy": "control"},
        )
        assert response.status_code == 200
        assert response.json()["sentence"]["text"] == "First sentence."


class TestFeedback:
    def test_accept_advances_by_one_under_control(self, client):
        body = _create(client)
        sid = body["session_id"]
        nxt = client.post(f"/sessions/{sid}/feedback",
                          json={"index": 0, "accept": True}).json()
        assert nxt["sentence"]["index"] == 1

    def test_reject_with_hide_next_skips_window(self, client):
        body = _create(client, policy="hide_next:n=2")
        sid = body["session_id"]
        index = 0
        for _ in range(3):  # accept 0, 1, 2
            out = client.post(f"/sessions/{sid}/feedback",
                              json={"index": index, "accept": True}).json()
            index = out["sentence"]["index"]
        assert index == 3
        out = client.post(f"/sessions/{sid}/feedback",
                          json={"index": 3, "accept": False}).json()
        assert out["sentence"]["index"] == 6

    def test_stale_index_409(self, client):
        sid = _create(client)["session_id"]
        response = client.post(f"/sessions/{sid}/feedback",
                               json={"index": 5, "accept": True})
        assert response.status_code == 409

    def test_duplicate_feedback_409(self, client):
        sid = _create(client)["session_id"]
        assert client.post(f"/sessions/{sid}/feedback",
                           json={"index": 0, "accept": True}).status_code == 200
        response = client.post(f"/sessions/{sid}/feedback",
                               json={"index": 0, "accept": True})
        assert response.status_code == 409

    def test_feedback_after_stop_409(self, client):
        sid = _create(client)["session_id"]
        client.post(f"/sessions/{sid}/stop")
        response = client.post(f"/sessions/{sid}/feedback",
                               json={"index": 0, "accept": True})
        assert response.status_code == 409

    def test_unknown_session_404(self, client):
        response = client.post("/sessions/nope/feedback", json={"index": 0, "accept": True})
        assert response.status_code == 404


class TestStopAndReview:
    def test_stop_after_first_sentence(self, client):
        sid = _create(client)["session_id"]
        out = client.post(f"/sessions/{sid}/stop").json()
        unseen = [s["index"] for s in out["unseen"]]
        assert unseen == list(range(1, 12))

    def test_unseen_is_hidden_set_when_read_to_end(self, client):
        body = _create(client, policy="show_modulo:k=2")
        sid = body["session_id"]
        index = 0
        while True:
            out = client.post(f"/sessions/{sid}/feedback",
                              json={"index": index, "accept": True}).json()
            if out["done"]:
                break
            index = out["sentence"]["index"]
        unseen = [s["index"] for s in client.post(f"/sessions/{sid}/stop").json()["unseen"]]
        assert unseen == [1, 3, 5, 7, 9, 11]  # exactly the policy-hidden set

    def test_review_coverage_six_of_eight(self, client):
        sid = _create(client)["session_id"]
        # accept 6, reject 1 (7 shown), then stop
        for index in range(7):
            accept = index != 3
            out = client.post(f"/sessions/{sid}/feedback",
                              json={"index": index, "accept": accept}).json()
        unseen = client.post(f"/sessions/{sid}/stop").json()["unseen"]
        marked = [s["index"] for s in unseen[:2]]
        review = client.post(
            f"/sessions/{sid}/review",
            json={"interesting": marked, "coherence": 4, "ease": 5},
        ).json()
        assert review["coverage"] == pytest.approx(6 / 8)
        assert review["accepted_shown"] == 6

    def test_review_without_marks_is_full_coverage(self, client):
        sid = _create(client)["session_id"]
        client.post(f"/sessions/{sid}/feedback", json={"index": 0, "accept": True})
        client.post(f"/sessions/{sid}/stop")
        review = client.post(f"/sessions/{sid}/review",
                             json={"interesting": [], "coherence": 3, "ease": 3}).json()
        assert review["coverage"] == 1.0

    def test_zero_interesting_anywhere_is_undefined(self, client):
        sid = _create(client)["session_id"]
        client.post(f"/sessions/{sid}/feedback", json={"index": 0, "accept": False})
        client.post(f"/sessions/{sid}/stop")
        review = client.post(f"/sessions/{sid}/review",
                             json={"interesting": [], "coherence": 3, "ease": 3}).json()
        assert review["coverage"] is None

    def test_rating_out_of_range_400(self, client):
        sid = _create(client)["session_id"]
        client.post(f"/sessions/{sid}/stop")
        response = client.post(f"/sessions/{sid}/review",
                               json={"interesting": [], "coherence": 6, "ease": 3})
        assert response.status_code == 400

    def test_marks_must_be_unseen_400(self, client):
        sid = _create(client)["session_id"]
        client.post(f"/sessions/{sid}/feedback", json={"index": 0, "accept": True})
        client.post(f"/sessions/{sid}/stop")
        response = client.post(f"/sessions/{sid}/review",
                               json={"interesting": [0], "coherence": 3, "ease": 3})
        assert response.status_code == 400

    def test_double_stop_and_double_review_409(self, client):
        sid = _create(client)["session_id"]
        assert client.post(f"/sessions/{sid}/stop").status_code == 200
        assert client.post(f"/sessions/{sid}/stop").status_code == 409
        assert client.post(f"/sessions/{sid}/review",
                           json={"interesting": [], "coherence": 3, "ease": 3}
                           ).status_code == 200
        assert client.post(f"/sessions/{sid}/review",
                           json={"interesting": [], "coherence": 3, "ease": 3}
                           ).status_code == 409


class TestStats:
    def test_counts_and_percent_read(self, client):
        sid = _create(client, policy="show_modulo:k=2")["session_id"]
        index = 0
        for _ in range(5):
            out = client.post(f"/sessions/{sid}/feedback",
                              json={"index": index, "accept": index % 4 != 0}).json()
            index = out["sentence"]["index"]
        stats = client.get(f"/sessions/{sid}/stats").json()
        assert stats["shown"] == 6
        assert stats["percent_read"] == pytest.approx(6 / 12)
        assert stats["document_length"] == 12
        again = client.get(f"/sessions/{sid}/stats").json()
        assert again == stats  # read-only snapshot

    def test_acceptance_rate(self, client):
        sid = _create(client)["session_id"]
        for index in range(10):
            client.post(f"/sessions/{sid}/feedback",
                        json={"index": index, "accept": index < 7})
        stats = client.get(f"/sessions/{sid}/stats").json()
        assert stats["acceptance_rate"] == pytest.approx(0.7)

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/never/stats").status_code == 404


class TestInvariantsAndReplay:
    def test_served_at_most_once_and_disjoint_from_hidden(self, client):
        sid = _create(client, policy="hide_next:n=1")["session_id"]
        index = 0
        rng = np.random.default_rng(5)
        while True:
            accept = bool(rng.integers(2))
            out = client.post(f"/sessions/{sid}/feedback",
                              json={"index": index, "accept": accept}).json()
            if out["done"]:
                break
            index = out["sentence"]["index"]
        events = client.get("/study/export").json()["events"]
        served = [e["index"] for e in events if e["event"] == "serve" and e["session"] == sid]
        assert len(served) == len(set(served))
        stats = client.get(f"/sessions/{sid}/stats").json()
        assert stats["shown"] + stats["hidden"] == 12

    def test_live_session_matches_simulator_replay(self, corpus, client):
        # drive a live session with a fixed swipe sequence, then replay the
        # same feedback through the simulator and compare decisions
        script = {0: 1, 1: 0, 2: 1, 3: 1, 4: 0, 5: 1, 6: 1, 7: 0, 8: 1, 9: 1, 10: 0, 11: 1}
        sid = _create(client, policy="hide_next:n=2", article="doc-1")["session_id"]
        index = 0
        live_served = [0]
        while True:
            out = client.post(
                f"/sessions/{sid}/feedback",
                json={"index": index, "accept": bool(script[index])},
            ).json()
            if out["done"]:
                break
            index = out["sentence"]["index"]
            live_served.append(index)

        provider = make_hashed_provider(corpus, seed=1)
        edoc = embed_document(provider, corpus.get("doc-1"))
        dummy_user = SimulatedUser(
            interests=UserInterests(np.array([1.0]), edoc.vectors[:1]),
            length_pref=12,
            feedback=FeedbackModel(0.0, 0.1),
            rng_seed=0,
            doc_length=12,
        )
        trace = run_session(edoc, dummy_user, build_session("hide_next:n=2", edoc),
                            np.random.default_rng(0), scripted_feedback=script)
        assert list(trace.shown) == live_served


def test_session_ttl_expiry(corpus):
    app = create_app(corpus=corpus, provider=make_hashed_provider(corpus, seed=1),
                     session_ttl_s=0.0)
    client = TestClient(app)
    sid = client.post("/sessions", json={"article": "doc-0", "policy": "control"}
                      ).json()["session_id"]
    assert client.get(f"/sessions/{sid}/stats").status_code == 404


def test_event_log_file(tmp_path, corpus):
    log_path = tmp_path / "events.jsonl"
    app = create_app(corpus=corpus, provider=make_hashed_provider(corpus, seed=1),
                     event_log_path=log_path)
    client = TestClient(app)
    sid = client.post("/sessions", json={"article": "doc-0", "policy": "control"}
                      ).json()["session_id"]
    client.post(f"/sessions/{sid}/feedback", json={"index": 0, "accept": True})
    lines = log_path.read_text().strip().splitlines()
    assert len(lines) == 4  # create, serve, feedback, serve
