"""Review session state: items, append-only journal, periodic snapshots.

A session directory holds `initial.json` (the frozen input corpora and queue
settings) and `journal.jsonl` (one correction event per line).  Loading a
session replays the whole journal over the initial state, so any stored
session is reproducible by construction; `snapshot.json` is written every few
events as a recovery artifact but is never needed for loading.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from argproj.corpus import (
    AnnotatedSentence,
    ComponentLabel,
    Corpus,
    Document,
    Span,
    parse_conll,
    serialize_conll,
)
from argproj.projection import SentenceClass, classify_sentence

INITIAL_FILE = "initial.json"
JOURNAL_FILE = "journal.jsonl"
SNAPSHOT_FILE = "snapshot.json"

STATUSES = ("pending", "accepted", "edited", "skipped")


class UnknownItemError(KeyError):
    pass


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat()


def _spans_to_wire(spans: Sequence[Span]) -> list[dict]:
    return [{"start": s.start, "end": s.end, "label": s.label.value} for s in spans]


def _spans_from_wire(data: Sequence[dict]) -> list[Span]:
    return [Span(d["start"], d["end"], ComponentLabel(d["label"])) for d in data]


@dataclass
class ReviewItem:
    item_id: str
    doc_id: str | None
    source: AnnotatedSentence
    initial_target: AnnotatedSentence
    target: AnnotatedSentence
    outcome: SentenceClass        # classification of the loaded target sentence
    source_class: SentenceClass   # classification of the source sentence
    status: str = "pending"
    history: list[dict] = field(default_factory=list)

    def to_wire(self) -> dict:
        return {
            "id": self.item_id,
            "doc_id": self.doc_id,
            "status": self.status,
            "outcome": self.outcome.value,
            "source_class": self.source_class.value,
            "target": {"tokens": list(self.target.words),
                       "spans": _spans_to_wire(self.target.spans)},
            "source": {"tokens": list(self.source.words),
                       "spans": _spans_to_wire(self.source.spans)},
            "history": list(self.history),
        }


@dataclass(frozen=True)
class ReviewQueueConfig:
    skip_full_components: bool = True


class ReviewStore:
    """Single-writer session store; all mutations are journaled before they
    take effect and are therefore durable and replayable."""

    def __init__(self, session_dir: str | Path):
        self.session_dir = Path(session_dir)
        self._lock = threading.RLock()
        self.snapshot_interval = 100
        initial_path = self.session_dir / INITIAL_FILE
        if not initial_path.exists():
            raise FileNotFoundError(
                f"{self.session_dir} is not an initialized review session")
        data = json.loads(initial_path.read_text(encoding="utf-8"))
        self.queue_config = ReviewQueueConfig(
            skip_full_components=data.get("skip_full_components", True))
        self._source = parse_conll(data["source_conll"], mode=data.get("iob_mode", "strict"))
        self._target = parse_conll(data["target_conll"], mode=data.get("iob_mode", "strict"))
        self._build_items()
        self._event_seq = 0
        self._replay_journal()

    # --- construction ----------------------------------------------------------

    @classmethod
    def initialize(
        cls,
        session_dir: str | Path,
        source: Corpus,
        target: Corpus,
        queue_config: ReviewQueueConfig = ReviewQueueConfig(),
        iob_mode: str = "strict",
    ) -> "ReviewStore":
        if source.n_sentences != target.n_sentences:
            raise ValueError(
                f"sentence count mismatch: source {source.n_sentences}, "
                f"target {target.n_sentences}")
        session_dir = Path(session_dir)
        session_dir.mkdir(parents=True, exist_ok=True)
        initial_path = session_dir / INITIAL_FILE
        if initial_path.exists():
            raise FileExistsError(f"session already initialized: {session_dir}")
        initial_path.write_text(json.dumps({
            "created": _now(),
            "skip_full_components": queue_config.skip_full_components,
            "iob_mode": iob_mode,
            "source_conll": serialize_conll(source),
            "target_conll": serialize_conll(target),
        }, ensure_ascii=False), encoding="utf-8")
        return cls(session_dir)

    def _build_items(self) -> None:
        self.items: dict[str, ReviewItem] = {}
        self.order: list[str] = []
        src_sentences = list(self._source.sentences())
        index = 0
        for doc in self._target.documents:
            for sentence in doc.sentences:
                source = src_sentences[index]
                item_id = f"s{index:05d}"
                self.items[item_id] = ReviewItem(
                    item_id=item_id,
                    doc_id=doc.doc_id,
                    source=source,
                    initial_target=sentence,
                    target=sentence,
                    outcome=classify_sentence(sentence),
                    source_class=classify_sentence(source),
                )
                self.order.append(item_id)
                index += 1

    # --- journal ----------------------------------------------------------------

    @property
    def journal_path(self) -> Path:
        return self.session_dir / JOURNAL_FILE

    def _replay_journal(self) -> None:
        if not self.journal_path.exists():
            return
        with self.journal_path.open(encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                self._apply_event(event)
                self._event_seq = max(self._event_seq, event["seq"])

    def _append_event(self, event: dict) -> None:
        with self.journal_path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(event, ensure_ascii=False) + "\n")
            handle.flush()
            os.fsync(handle.fileno())

    def _apply_event(self, event: dict) -> ReviewItem:
        item = self.items[event["item"]]
        if event["action"] == "skip":
            item.status = "skipped"
            item.history.append({
                "seq": event["seq"], "ts": event["ts"], "action": "skip",
                "prior_spans": _spans_to_wire(item.target.spans),
                "spans": _spans_to_wire(item.target.spans),
            })
            return item
        spans = _spans_from_wire(event["spans"])
        prior = item.target.spans
        new_target = item.target.with_spans(spans)
        action = "accept" if new_target.spans == prior else "edit"
        item.target = new_target
        item.status = "accepted" if action == "accept" else "edited"
        item.history.append({
            "seq": event["seq"], "ts": event["ts"], "action": action,
            "prior_spans": _spans_to_wire(prior),
            "spans": _spans_to_wire(new_target.spans),
        })
        return item

    def _record(self, item_id: str, action: str, spans: Sequence[Span] | None) -> ReviewItem:
        with self._lock:
            if item_id not in self.items:
                raise UnknownItemError(item_id)
            event: dict = {
                "seq": self._event_seq + 1,
                "ts": _now(),
                "item": item_id,
                "action": action,
            }
            if action == "correction":
                # Validates range/overlap before anything is journaled.
                self.items[item_id].target.with_spans(spans or [])
                event["spans"] = _spans_to_wire(spans or [])
            self._append_event(event)
            self._event_seq += 1
            item = self._apply_event(event)
            if self._event_seq % self.snapshot_interval == 0:
                self.write_snapshot()
            return item

    # --- operations ---------------------------------------------------------------

    def get(self, item_id: str) -> ReviewItem:
        with self._lock:
            if item_id not in self.items:
                raise UnknownItemError(item_id)
            return self.items[item_id]

    def submit_correction(self, item_id: str, spans: Sequence[Span]) -> ReviewItem:
        return self._record(item_id, "correction", list(spans))

    def skip(self, item_id: str) -> ReviewItem:
        return self._record(item_id, "skip", None)

    def reviewable_ids(self) -> list[str]:
        if not self.queue_config.skip_full_components:
            return list(self.order)
        return [i for i in self.order
                if self.items[i].source_class is not SentenceClass.FULL_COMPONENT]

    def list_items(
        self,
        status: str | None = None,
        outcome: str | None = None,
        page: int = 0,
        page_size: int = 50,
    ) -> tuple[list[ReviewItem], int]:
        if status is not None and status not in STATUSES:
            raise ValueError(f"unknown status {status!r}")
        if outcome is not None and outcome not in [c.value for c in SentenceClass]:
            raise ValueError(f"unknown outcome class {outcome!r}")
        if page < 0 or page_size < 1:
            raise ValueError("page must be >= 0 and page_size >= 1")
        with self._lock:
            selected = [self.items[i] for i in self.reviewable_ids()]
            if status is not None:
                selected = [it for it in selected if it.status == status]
            if outcome is not None:
                selected = [it for it in selected if it.outcome.value == outcome]
            total = len(selected)
            start = page * page_size
            return selected[start:start + page_size], total

    def stats(self) -> dict:
        with self._lock:
            by_status = {s: 0 for s in STATUSES}
            by_outcome = {c.value: 0 for c in SentenceClass}
            for item in self.items.values():
                by_status[item.status] += 1
                by_outcome[item.outcome.value] += 1
            return {
                "total": len(self.items),
                "reviewable": len(self.reviewable_ids()),
                "by_status": by_status,
                "by_outcome": by_outcome,
            }

    def export_corpus(self) -> Corpus:
        with self._lock:
            documents = []
            cursor = 0
            for doc in self._target.documents:
                k = len(doc.sentences)
                ids = self.order[cursor:cursor + k]
                documents.append(Document(
                    doc_id=doc.doc_id,
                    sentences=tuple(self.items[i].target for i in ids),
                    origin=doc.origin,
                ))
                cursor += k
            return Corpus(documents=tuple(documents), name=self._target.name)

    def audit(self) -> dict:
        with self._lock:
            stats = self.stats()
            return {
                "manual_corrections": stats["by_status"]["edited"],
                "items_total": stats["total"],
                "by_status": stats["by_status"],
                "events": self._event_seq,
            }

    def write_snapshot(self) -> Path:
        with self._lock:
            path = self.session_dir / SNAPSHOT_FILE
            tmp = path.with_suffix(".json.tmp")
            tmp.write_text(json.dumps({
                "event_seq": self._event_seq,
                "items": {
                    item_id: {
                        "status": item.status,
                        "spans": _spans_to_wire(item.target.spans),
                    }
                    for item_id, item in self.items.items()
                },
            }, ensure_ascii=False), encoding="utf-8")
            os.replace(tmp, path)
            return path
