"""
Live reading sessions over HTTP
===============================

The service serves one sentence at a time through a policy, absorbs
accept/reject swipes, and finishes with a review phase over the unseen
sentences.  This demo drives the full flow in-process; `hare serve` runs
the same app on a real port for the browser reader in frontend/.
"""

from fastapi.testclient import TestClient

from hare import load_sample_corpus, make_hashed_provider
from hare.service import create_app

corpus = load_sample_corpus()
app = create_app(corpus=corpus, provider=make_hashed_provider(corpus, seed=42))
client = TestClient(app)

articles = client.get("/articles").json()
article = articles[0]["id"]
print(f"reading {article!r} through hide_next:n=2\n")

session = client.post(
    "/sessions", json={"article": article, "policy": "hide_next:n=2"}
).json()
sid = session["session_id"]
sentence = session["sentence"]

# accept everything except every fourth sentence, stop after eight swipes
swipes = 0
while sentence is not None and swipes < 8:
    accept = sentence["index"] % 4 != 3
    mark = "+" if accept else "-"
    print(f"  {mark} [{sentence['index']:2d}] {sentence['text'][:68]}")
    out = client.post(f"/sessions/{sid}/feedback",
                      json={"index": sentence["index"], "accept": accept}).json()
    sentence = out["sentence"]
    swipes += 1

unseen = client.post(f"/sessions/{sid}/stop").json()["unseen"]
print(f"\nstopped; {len(unseen)} sentences were never shown")

marked = [s["index"] for s in unseen[:2]]
review = client.post(
    f"/sessions/{sid}/review",
    json={"interesting": marked, "coherence": 4, "ease": 5},
).json()
print(f"review: coverage {review['coverage']:.2f} "
      f"({review['accepted_shown']} accepted shown, {len(marked)} interesting unseen)")

stats = client.get(f"/sessions/{sid}/stats").json()
print(f"stats: read {stats['percent_read']:.0%} of the article, "
      f"acceptance {stats['acceptance_rate']:.0%}")
