"""Pharaoh word alignments and a self-contained IBM Model 1 EM aligner.

The aligner is a desk-scale substitute for neural alignment toolkits: any
Pharaoh `i-j` file can be consumed directly, and the bundled Model 1
implementation produces such files from parallel tokenized text.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

SOURCE_NULL = None  # empty-source word present in every source sentence

LL_TOLERANCE = 1e-9
SUM_TOLERANCE = 1e-9


class PharaohError(ValueError):
    pass


@dataclass(frozen=True)
class SentenceAlignment:
    """Set of src->tgt token index links for one sentence pair."""

    links: frozenset[tuple[int, int]]
    src_len: int
    tgt_len: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "links", frozenset(self.links))
        if self.src_len < 0 or self.tgt_len < 0:
            raise ValueError("sentence lengths must be >= 0")
        for src, tgt in self.links:
            if not (0 <= src < self.src_len):
                raise ValueError(f"source index {src} out of range [0, {self.src_len})")
            if not (0 <= tgt < self.tgt_len):
                raise ValueError(f"target index {tgt} out of range [0, {self.tgt_len})")

    def sorted_links(self) -> list[tuple[int, int]]:
        return sorted(self.links)

    def transposed(self) -> "SentenceAlignment":
        """Swap alignment direction: links become tgt->src."""
        return SentenceAlignment(
            links=frozenset((tgt, src) for src, tgt in self.links),
            src_len=self.tgt_len,
            tgt_len=self.src_len,
        )


def parse_pharaoh(line: str, src_len: int, tgt_len: int) -> SentenceAlignment:
    """Parse one space-separated `i-j` line into a validated alignment."""
    links: set[tuple[int, int]] = set()
    for pair in line.split():
        src_s, sep, tgt_s = pair.partition("-")
        if not sep or not src_s.isdigit() or not tgt_s.isdigit():
            raise PharaohError(f"malformed alignment pair {pair!r}")
        src, tgt = int(src_s), int(tgt_s)
        if src >= src_len:
            raise PharaohError(f"source index {src} out of range for length {src_len}")
        if tgt >= tgt_len:
            raise PharaohError(f"target index {tgt} out of range for length {tgt_len}")
        links.add((src, tgt))
    return SentenceAlignment(links=frozenset(links), src_len=src_len, tgt_len=tgt_len)


def serialize_pharaoh(alignment: SentenceAlignment) -> str:
    """Canonical Pharaoh line: links ordered by source then target index."""
    return " ".join(f"{src}-{tgt}" for src, tgt in alignment.sorted_links())


def symmetrize(forward: SentenceAlignment, reverse: SentenceAlignment,
               method: str = "intersection") -> SentenceAlignment:
    """Combine two alignments over the same pair by set intersection or union.

    Both arguments must be in forward (src->tgt) coordinates; a reverse-trained
    alignment is flipped with SentenceAlignment.transposed() first.
    """
    if (forward.src_len, forward.tgt_len) != (reverse.src_len, reverse.tgt_len):
        raise ValueError(
            f"length mismatch: {forward.src_len}/{forward.tgt_len} vs "
            f"{reverse.src_len}/{reverse.tgt_len}"
        )
    if method == "intersection":
        links = forward.links & reverse.links
    elif method == "union":
        links = forward.links | reverse.links
    else:
        raise ValueError(f"method must be 'intersection' or 'union', got {method!r}")
    return SentenceAlignment(links=links, src_len=forward.src_len, tgt_len=forward.tgt_len)


# --- IBM Model 1 ---------------------------------------------------------------

ParallelPair = tuple[Sequence[str], Sequence[str]]


@dataclass
class TranslationTable:
    """Lexical probabilities t(target word | source word), NULL keyed by None."""

    probs: dict[str | None, dict[str, float]]
    epsilon: float = 1.0
    lowercase: bool = False
    log_likelihoods: list[float] = field(default_factory=list)

    def prob(self, target: str, source: str | None) -> float:
        return self.probs.get(source, {}).get(target, 0.0)

    def to_json(self) -> dict:
        return {
            "format": "argproj-model1",
            "epsilon": self.epsilon,
            "lowercase": self.lowercase,
            "log_likelihoods": self.log_likelihoods,
            "null": self.probs.get(SOURCE_NULL, {}),
            "sources": {src: row for src, row in self.probs.items() if src is not SOURCE_NULL},
        }

    @classmethod
    def from_json(cls, data: dict) -> "TranslationTable":
        if data.get("format") != "argproj-model1":
            raise ValueError("not a translation table file")
        probs: dict[str | None, dict[str, float]] = {SOURCE_NULL: dict(data.get("null", {}))}
        probs.update({src: dict(row) for src, row in data.get("sources", {}).items()})
        return cls(
            probs=probs,
            epsilon=data.get("epsilon", 1.0),
            lowercase=data.get("lowercase", False),
            log_likelihoods=list(data.get("log_likelihoods", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False)

    @classmethod
    def loads(cls, text: str) -> "TranslationTable":
        return cls.from_json(json.loads(text))


def _fold_pairs(pairs: Iterable[ParallelPair], lowercase: bool) -> list[tuple[list[str], list[str]]]:
    out = []
    for src, tgt in pairs:
        src = [w.lower() for w in src] if lowercase else list(src)
        tgt = [w.lower() for w in tgt] if lowercase else list(tgt)
        out.append((src, tgt))
    return out


def train_model1(pairs: Sequence[ParallelPair], iterations: int,
                 epsilon: float = 1.0, lowercase: bool = False) -> TranslationTable:
    """Estimate t(target|source) by EM over a parallel tokenized corpus.

    Uniform initialization over the target vocabulary, one NULL source word
    per sentence, deterministic given input order.  The returned table records
    the corpus log-likelihood of each table it passed through (iterations + 1
    values); EM guarantees the sequence is non-decreasing, which is verified
    numerically on every run.
    """
    corpus = _fold_pairs(pairs, lowercase)
    if not corpus:
        raise ValueError("empty parallel corpus")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")

    tgt_vocab = {w for _, tgt in corpus for w in tgt}
    uniform = 1.0 / len(tgt_vocab) if tgt_vocab else 0.0

    # Sparse uniform init over co-occurring pairs; entries that never co-occur
    # can never receive posterior mass so they are not stored.
    table: dict[str | None, dict[str, float]] = {}
    for src, tgt in corpus:
        for word in (SOURCE_NULL, *src):
            row = table.setdefault(word, {})
            for t_word in tgt:
                row[t_word] = uniform

    log_likelihoods: list[float] = []

    def em_pass(update: bool) -> float:
        counts: dict[str | None, dict[str, float]] = {}
        totals: dict[str | None, float] = {}
        ll = 0.0
        for src, tgt in corpus:
            sources = (SOURCE_NULL, *src)
            ll += math.log(epsilon)
            for t_word in tgt:
                scores = [table[s_word][t_word] for s_word in sources]
                denom = sum(scores)
                ll += math.log(denom) - math.log(len(sources)) if denom > 0 else float("-inf")
                if not update or denom <= 0:
                    continue
                for s_word, score in zip(sources, scores):
                    post = score / denom
                    row = counts.setdefault(s_word, {})
                    row[t_word] = row.get(t_word, 0.0) + post
                    totals[s_word] = totals.get(s_word, 0.0) + post
        if update:
            for s_word, row in counts.items():
                total = totals[s_word]
                table[s_word] = {t_word: c / total for t_word, c in row.items()}
        return ll

    for _ in range(iterations):
        log_likelihoods.append(em_pass(update=True))
    log_likelihoods.append(em_pass(update=False))

    for i in range(1, len(log_likelihoods)):
        if log_likelihoods[i] < log_likelihoods[i - 1] - LL_TOLERANCE:
            raise RuntimeError(
                f"EM log-likelihood decreased at iteration {i}: "
                f"{log_likelihoods[i - 1]} -> {log_likelihoods[i]}"
            )
    for s_word, row in table.items():
        if row and abs(sum(row.values()) - 1.0) > SUM_TOLERANCE:
            raise RuntimeError(f"probabilities for source {s_word!r} do not sum to 1")

    return TranslationTable(
        probs=table, epsilon=epsilon, lowercase=lowercase, log_likelihoods=log_likelihoods
    )


def align_with_table(table: TranslationTable, pair: ParallelPair) -> SentenceAlignment:
    """Greedy alignment: each target token links to its argmax source token.

    The NULL word leaves a target token unaligned only when it strictly beats
    every real source token; ties between real source tokens go to the
    smaller index.
    """
    (src, tgt), = _fold_pairs([pair], table.lowercase)
    links: set[tuple[int, int]] = set()
    for j, t_word in enumerate(tgt):
        best_i = -1
        best_p = -1.0
        for i, s_word in enumerate(src):
            p = table.prob(t_word, s_word)
            if p > best_p:
                best_i, best_p = i, p
        if best_i >= 0 and table.prob(t_word, SOURCE_NULL) <= best_p:
            links.add((best_i, j))
    return SentenceAlignment(links=frozenset(links), src_len=len(src), tgt_len=len(tgt))


def align_corpus(table: TranslationTable, pairs: Sequence[ParallelPair]) -> list[SentenceAlignment]:
    return [align_with_table(table, pair) for pair in pairs]
