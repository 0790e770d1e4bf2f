from __future__ import annotations

import json

import httpx
import pytest

from argproj.corpus import (
    AnnotatedSentence,
    ComponentLabel,
    Corpus,
    Document,
    Span,
    parse_conll,
)
from argproj.review.server import create_app
from argproj.review.store import ReviewQueueConfig, ReviewStore
from serverutil import LiveServer

CLAIM = ComponentLabel.CLAIM
PREMISE = ComponentLabel.PREMISE


def fixture_corpora() -> tuple[Corpus, Corpus]:
    """Five sentence pairs: sources are 3 partial + 2 full-component."""
    src_sents = (
        AnnotatedSentence.from_words(["a", "b", "c"], [Span(0, 2, CLAIM)]),      # partial
        AnnotatedSentence.from_words(["d", "e"], [Span(0, 2, PREMISE)]),          # full
        AnnotatedSentence.from_words(["f", "g", "h"], [Span(1, 2, PREMISE)]),     # partial
        AnnotatedSentence.from_words(["i", "j", "."], [Span(0, 2, CLAIM)]),       # full
        AnnotatedSentence.from_words(["k", "l", "m"]),                            # partial (full_O)
    )
    tgt_sents = (
        AnnotatedSentence.from_words(["ta", "tb", "tc"], [Span(0, 2, CLAIM)]),
        AnnotatedSentence.from_words(["td", "te"], [Span(0, 2, PREMISE)]),
        AnnotatedSentence.from_words(["tf", "tg", "th"], [Span(1, 2, PREMISE)]),
        AnnotatedSentence.from_words(["ti", "tj", "."], [Span(0, 3, CLAIM)]),
        AnnotatedSentence.from_words(["tk", "tl", "tm"]),
    )
    src = Corpus(documents=(Document("doc0", src_sents[:3]), Document("doc1", src_sents[3:])))
    tgt = Corpus(documents=(Document("doc0", tgt_sents[:3]), Document("doc1", tgt_sents[3:])))
    return src, tgt


@pytest.fixture()
def session_dir(tmp_path):
    src, tgt = fixture_corpora()
    ReviewStore.initialize(tmp_path / "session", src, tgt)
    return tmp_path / "session"


@pytest.fixture()
def live(session_dir):
    store = ReviewStore(session_dir)
    with LiveServer(create_app(store)) as base:
        with httpx.Client(base_url=base, timeout=10) as client:
            yield client, session_dir


class TestQueue:
    def test_full_component_sources_filtered(self, live):
        client, _ = live
        resp = client.get("/items")
        assert resp.status_code == 200
        data = resp.json()
        assert data["total"] == 3
        assert resp.headers["X-Total-Count"] == "3"
        assert all(item["source_class"] != "full_component" for item in data["items"])

    def test_unfiltered_when_config_off(self, session_dir, tmp_path):
        src, tgt = fixture_corpora()
        ReviewStore.initialize(tmp_path / "all", src, tgt,
                               ReviewQueueConfig(skip_full_components=False))
        store = ReviewStore(tmp_path / "all")
        with LiveServer(create_app(store)) as base:
            resp = httpx.get(base + "/items")
            assert resp.json()["total"] == 5

    def test_status_filter_fresh_session(self, live):
        client, _ = live
        resp = client.get("/items", params={"status": "accepted"})
        assert resp.status_code == 200
        assert resp.json()["items"] == []

    def test_page_beyond_range(self, live):
        client, _ = live
        resp = client.get("/items", params={"page": 99})
        assert resp.json()["items"] == []
        assert resp.headers["X-Total-Count"] == "3"

    def test_bad_filter_is_400(self, live):
        client, _ = live
        assert client.get("/items", params={"status": "bogus"}).status_code == 400
        assert client.get("/items", params={"outcome": "bogus"}).status_code == 400
        assert client.get("/items", params={"page": -1}).status_code == 400

    def test_outcome_filter(self, live):
        client, _ = live
        resp = client.get("/items", params={"outcome": "full_O"})
        ids = [item["id"] for item in resp.json()["items"]]
        assert ids == ["s00004"]


class TestCorrections:
    def test_write_read_consistency(self, live):
        client, _ = live
        spans = [{"start": 0, "end": 3, "label": "Premise"}]
        resp = client.post("/items/s00000/correction", json=spans)
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "edited"
        assert body["target"]["spans"] == spans
        again = client.get("/items/s00000").json()
        assert again["target"]["spans"] == spans
        export = client.get("/export").json()
        assert export["audit"]["manual_corrections"] == 1
        corpus = parse_conll(export["conll"], mode="strict")
        first = next(corpus.sentences())
        assert first.spans == (Span(0, 3, PREMISE),)

    def test_noop_submission_accepts(self, live):
        client, _ = live
        current = client.get("/items/s00000").json()["target"]["spans"]
        resp = client.post("/items/s00000/correction", json=current)
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "accepted"
        assert body["history"][-1]["action"] == "accept"

    def test_invalid_spans_422_state_unchanged(self, live):
        client, _ = live
        before = client.get("/items/s00000").json()
        overlapping = [{"start": 0, "end": 2, "label": "Claim"},
                       {"start": 1, "end": 3, "label": "Premise"}]
        resp = client.post("/items/s00000/correction", json=overlapping)
        assert resp.status_code == 422
        out_of_range = [{"start": 0, "end": 99, "label": "Claim"}]
        assert client.post("/items/s00000/correction", json=out_of_range).status_code == 422
        bad_label = [{"start": 0, "end": 1, "label": "Nope"}]
        assert client.post("/items/s00000/correction", json=bad_label).status_code == 422
        after = client.get("/items/s00000").json()
        assert after == before

    def test_unknown_item_404(self, live):
        client, _ = live
        assert client.post("/items/sxxxxx/correction", json=[]).status_code == 404
        assert client.get("/items/sxxxxx").status_code == 404

    def test_skip(self, live):
        client, _ = live
        resp = client.post("/items/s00002/skip")
        assert resp.json()["status"] == "skipped"
        assert client.get("/stats").json()["by_status"]["skipped"] == 1

    def test_manual_count_tracks_distinct_edits(self, live):
        client, _ = live
        client.post("/items/s00000/correction", json=[{"start": 1, "end": 2, "label": "Claim"}])
        client.post("/items/s00002/correction", json=[{"start": 0, "end": 1, "label": "Premise"}])
        # editing the same item again does not double-count
        client.post("/items/s00000/correction", json=[{"start": 0, "end": 1, "label": "Claim"}])
        audit = client.get("/export").json()["audit"]
        assert audit["manual_corrections"] == 2


class TestPersistence:
    def test_history_replay_reproduces_state(self, live):
        client, session_dir = live
        client.post("/items/s00000/correction", json=[{"start": 0, "end": 1, "label": "Claim"}])
        client.post("/items/s00002/correction", json=[])
        client.post("/items/s00004/skip")
        export_live = client.get("/export").json()

        reloaded = ReviewStore(session_dir)
        with LiveServer(create_app(reloaded)) as base:
            export_again = httpx.get(base + "/export").json()
        assert export_again == export_live

    def test_rejected_submission_not_journaled(self, live):
        client, session_dir = live
        client.post("/items/s00000/correction",
                    json=[{"start": 0, "end": 99, "label": "Claim"}])
        journal = session_dir / "journal.jsonl"
        assert not journal.exists() or journal.read_text() == ""

    def test_snapshot_written_periodically(self, session_dir):
        store = ReviewStore(session_dir)
        store.snapshot_interval = 2
        store.submit_correction("s00000", [Span(0, 1, CLAIM)])
        store.submit_correction("s00002", [])
        snapshot = json.loads((session_dir / "snapshot.json").read_text())
        assert snapshot["event_seq"] == 2
        assert snapshot["items"]["s00000"]["status"] == "edited"

    def test_export_is_strict_valid_after_random_edits(self, live):
        client, _ = live
        import random
        rng = random.Random(131)
        ids = [item["id"] for item in client.get("/items", params={"page_size": 100}).json()["items"]]
        for _ in range(20):
            item_id = rng.choice(ids)
            tokens = client.get(f"/items/{item_id}").json()["target"]["tokens"]
            n = len(tokens)
            spans = []
            if n and rng.random() < 0.8:
                start = rng.randrange(n)
                end = rng.randint(start + 1, n)
                spans = [{"start": start, "end": end,
                          "label": rng.choice(["Claim", "Premise", "MajorClaim"])}]
            assert client.post(f"/items/{item_id}/correction", json=spans).status_code == 200
        parse_conll(client.get("/export").json()["conll"], mode="strict")


class TestAuth:
    def test_token_required_when_configured(self, session_dir):
        store = ReviewStore(session_dir)
        with LiveServer(create_app(store, token="sesame")) as base:
            assert httpx.get(base + "/items").status_code == 401
            ok = httpx.get(base + "/items", headers={"X-Review-Token": "sesame"})
            assert ok.status_code == 200
            assert httpx.get(base + "/health").status_code == 200


class TestStoreInit:
    def test_mismatched_corpora_rejected(self, tmp_path):
        src, tgt = fixture_corpora()
        short = Corpus(documents=(tgt.documents[0],))
        with pytest.raises(ValueError):
            ReviewStore.initialize(tmp_path / "bad", src, short)

    def test_double_init_rejected(self, session_dir):
        src, tgt = fixture_corpora()
        with pytest.raises(FileExistsError):
            ReviewStore.initialize(session_dir, src, tgt)

    def test_uninitialized_dir_rejected(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            ReviewStore(tmp_path / "nope")
