"""Data model and serialization for token-level annotated corpora.

Corpora are CoNLL-style files of `token<TAB>tag` lines with IOB tags over
the argument component labels, blank lines between sentences and optional
`#doc <id>` lines separating documents.  Relation instances live in their
own one-per-line tab-separated format.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence


class ComponentLabel(Enum):
    """Closed set of argument component types."""

    CLAIM = "Claim"
    PREMISE = "Premise"
    MAJOR_CLAIM = "MajorClaim"

    def __str__(self) -> str:
        return self.value


class RelationLabel(Enum):
    """Closed set of argument relation types, serialized exactly as listed."""

    SUPPORT = "Support"
    ATTACK = "Attack"
    PARTIAL_ATTACK = "Partial-Attack"
    NO_REL = "noRel"

    def __str__(self) -> str:
        return self.value


_COMPONENT_BY_NAME = {label.value: label for label in ComponentLabel}
_RELATION_BY_NAME = {label.value: label for label in RelationLabel}


class ConllError(ValueError):
    """Malformed CoNLL input; `line` is the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IobError(ValueError):
    """Invalid IOB tag sequence; `index` is the 0-based offending tag position."""

    def __init__(self, index: int, message: str):
        super().__init__(f"tag {index}: {message}")
        self.index = index


class RelationError(ValueError):
    """Malformed relation-instance input; `line` is the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def is_punctuation(text: str) -> bool:
    """True when the text consists solely of Unicode punctuation/symbol characters."""
    return bool(text) and all(unicodedata.category(ch)[0] in "PS" for ch in text)


@dataclass(frozen=True)
class Token:
    """One whitespace-free token at a dense 0-based position in its sentence."""

    text: str
    index: int
    is_punct: bool | None = None  # derived from text when omitted

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("token text must be non-empty")
        if any(ch.isspace() for ch in self.text):
            raise ValueError(f"token text contains whitespace: {self.text!r}")
        if self.index < 0:
            raise ValueError(f"token index must be >= 0, got {self.index}")
        if self.is_punct is None:
            object.__setattr__(self, "is_punct", is_punctuation(self.text))


@dataclass(frozen=True)
class Span:
    """Half-open token interval [start, end) carrying a component label."""

    start: int
    end: int
    label: ComponentLabel

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"invalid span bounds [{self.start}, {self.end})")
        if not isinstance(self.label, ComponentLabel):
            raise ValueError(f"invalid span label: {self.label!r}")


def _sorted_disjoint(spans: Sequence[Span], n_tokens: int) -> tuple[Span, ...]:
    ordered = tuple(sorted(spans, key=lambda s: (s.start, s.end)))
    prev_end = 0
    for span in ordered:
        if span.end > n_tokens:
            raise ValueError(f"span {span} exceeds sentence length {n_tokens}")
        if span.start < prev_end:
            raise ValueError(f"span {span} overlaps a preceding span")
        prev_end = span.end
    return ordered


@dataclass(frozen=True)
class AnnotatedSentence:
    """Immutable tokens plus non-overlapping labeled spans, sorted by start."""

    tokens: tuple[Token, ...]
    spans: tuple[Span, ...] = ()

    def __post_init__(self) -> None:
        tokens = tuple(self.tokens)
        for i, tok in enumerate(tokens):
            if tok.index != i:
                raise ValueError(f"token index {tok.index} at position {i}: indices must be dense")
        spans = _sorted_disjoint(tuple(self.spans), len(tokens))
        object.__setattr__(self, "tokens", tokens)
        object.__setattr__(self, "spans", spans)

    @classmethod
    def from_words(cls, words: Iterable[str], spans: Sequence[Span] = ()) -> "AnnotatedSentence":
        tokens = tuple(Token(text=w, index=i) for i, w in enumerate(words))
        return cls(tokens=tokens, spans=tuple(spans))

    def with_spans(self, spans: Sequence[Span]) -> "AnnotatedSentence":
        return AnnotatedSentence(tokens=self.tokens, spans=tuple(spans))

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(tok.text for tok in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Document:
    """Ordered sentences under one document id.

    `doc_id` may be None only for the leading anonymous document of a file
    that starts without a `#doc` line.  `origin` is provenance metadata
    (set by corpus merges) and does not participate in equality.
    """

    doc_id: str | None
    sentences: tuple[AnnotatedSentence, ...]
    origin: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if self.doc_id is not None:
            if not self.doc_id or self.doc_id != self.doc_id.strip():
                raise ValueError(f"invalid document id: {self.doc_id!r}")
            if any(ch in self.doc_id for ch in "\n\t"):
                raise ValueError(f"document id contains control characters: {self.doc_id!r}")


@dataclass(frozen=True)
class Corpus:
    """Ordered documents with unique ids."""

    documents: tuple[Document, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        documents = tuple(self.documents)
        object.__setattr__(self, "documents", documents)
        seen: set[str] = set()
        for i, doc in enumerate(documents):
            if doc.doc_id is None:
                if i != 0:
                    raise ValueError("only the first document may be anonymous")
                continue
            if doc.doc_id in seen:
                raise ValueError(f"duplicate document id: {doc.doc_id!r}")
            seen.add(doc.doc_id)

    def sentences(self) -> Iterator[AnnotatedSentence]:
        for doc in self.documents:
            yield from doc.sentences

    @property
    def n_sentences(self) -> int:
        return sum(len(doc.sentences) for doc in self.documents)


@dataclass(frozen=True)
class RelationInstance:
    """(label, source text, target text) triple of one relation example."""

    label: RelationLabel
    source_text: str
    target_text: str

    def __post_init__(self) -> None:
        for name, text in (("source", self.source_text), ("target", self.target_text)):
            if not text:
                raise ValueError(f"{name} text must be non-empty")
            if "\t" in text or "\n" in text:
                raise ValueError(f"{name} text contains tab or newline")


# --- IOB conversion ---------------------------------------------------------

_VALID_PREFIXES = ("B-", "I-")


def _split_tag(tag: str, index: int) -> tuple[str, ComponentLabel | None]:
    if tag == "O":
        return "O", None
    if len(tag) > 2 and tag[:2] in _VALID_PREFIXES:
        label = _COMPONENT_BY_NAME.get(tag[2:])
        if label is not None:
            return tag[:2], label
    raise IobError(index, f"unknown tag {tag!r}")


def spans_to_iob(sentence: AnnotatedSentence) -> list[str]:
    """Render the sentence's spans as one IOB tag per token."""
    tags = ["O"] * len(sentence.tokens)
    for span in sentence.spans:
        tags[span.start] = f"B-{span.label.value}"
        for i in range(span.start + 1, span.end):
            tags[i] = f"I-{span.label.value}"
    return tags


def iob_to_spans(tags: Sequence[str], mode: str = "strict") -> list[Span]:
    """Decode an IOB tag sequence into spans.

    Strict mode rejects an I- tag that does not continue a same-label span;
    repair mode promotes such tags to B- (a fresh span).
    """
    if mode not in ("strict", "repair"):
        raise ValueError(f"mode must be 'strict' or 'repair', got {mode!r}")
    spans: list[Span] = []
    open_start: int | None = None
    open_label: ComponentLabel | None = None

    def close(end: int) -> None:
        nonlocal open_start, open_label
        if open_start is not None:
            spans.append(Span(open_start, end, open_label))
            open_start, open_label = None, None

    for i, tag in enumerate(tags):
        prefix, label = _split_tag(tag, i)
        if prefix == "O":
            close(i)
        elif prefix == "B-":
            close(i)
            open_start, open_label = i, label
        else:  # I-
            if open_label is label:
                continue
            if mode == "strict":
                detail = "without opening B-" if open_label is None else f"after {open_label.value} span"
                raise IobError(i, f"I-{label.value} {detail}")
            close(i)
            open_start, open_label = i, label
    close(len(tags))
    return spans


# --- CoNLL parsing / serialization -------------------------------------------

_DOC_PREFIX = "#doc"


def parse_conll(text: str, mode: str = "strict", name: str = "") -> Corpus:
    """Parse CoNLL text into a Corpus; IOB errors carry the file line number."""
    documents: list[Document] = []
    current_id: str | None = None
    have_doc = False
    sentences: list[AnnotatedSentence] = []
    words: list[str] = []
    tags: list[str] = []
    first_line = 0

    def flush_sentence() -> None:
        nonlocal words, tags
        if not words:
            return
        try:
            spans = iob_to_spans(tags, mode=mode)
        except IobError as err:
            raise ConllError(first_line + err.index, str(err).split(": ", 1)[1]) from err
        sentences.append(AnnotatedSentence.from_words(words, spans))
        words, tags = [], []

    def flush_document() -> None:
        nonlocal sentences
        if have_doc or sentences:
            documents.append(Document(doc_id=current_id, sentences=tuple(sentences)))
        sentences = []

    for line_no, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if line.startswith(_DOC_PREFIX) and (line == _DOC_PREFIX or line[len(_DOC_PREFIX)] == " "):
            flush_sentence()
            flush_document()
            doc_id = line[len(_DOC_PREFIX):].strip()
            if not doc_id:
                raise ConllError(line_no, "empty document id")
            current_id = doc_id
            have_doc = True
            continue
        if not line:
            flush_sentence()
            continue
        if "\t" not in line:
            raise ConllError(line_no, f"expected 'token<TAB>tag', got {line!r}")
        token_text, tag = line.split("\t", 1)
        if not token_text:
            raise ConllError(line_no, "empty token")
        if any(ch.isspace() for ch in token_text):
            raise ConllError(line_no, f"token contains whitespace: {token_text!r}")
        try:
            _split_tag(tag, 0)
        except IobError:
            raise ConllError(line_no, f"invalid tag {tag!r}") from None
        if not words:
            first_line = line_no
        words.append(token_text)
        tags.append(tag)

    flush_sentence()
    flush_document()
    return Corpus(documents=tuple(documents), name=name)


def serialize_conll(corpus: Corpus) -> str:
    """Serialize a corpus to CoNLL text; inverse of parse_conll."""
    out: list[str] = []
    for doc in corpus.documents:
        if doc.doc_id is not None:
            out.append(f"{_DOC_PREFIX} {doc.doc_id}\n")
        for sentence in doc.sentences:
            for tok, tag in zip(sentence.tokens, spans_to_iob(sentence)):
                out.append(f"{tok.text}\t{tag}\n")
            out.append("\n")
    return "".join(out)


def component_stats(corpus: Corpus) -> Counter[ComponentLabel]:
    """Span counts per component label over the whole corpus."""
    counts: Counter[ComponentLabel] = Counter()
    for sentence in corpus.sentences():
        counts.update(span.label for span in sentence.spans)
    return counts


# --- relation instance files --------------------------------------------------

_LABEL_PREFIX = "__label__"


def parse_relations(text: str) -> list[RelationInstance]:
    """Parse `__label__<Label>\\t[<text1>]\\t[<text2>]` lines."""
    instances: list[RelationInstance] = []
    for line_no, line in enumerate(text.splitlines(), 1):
        fields = line.split("\t")
        if len(fields) != 3:
            raise RelationError(line_no, f"expected 3 tab-separated fields, got {len(fields)}")
        head, raw_src, raw_tgt = fields
        if not head.startswith(_LABEL_PREFIX):
            raise RelationError(line_no, f"first field must start with {_LABEL_PREFIX!r}")
        label = _RELATION_BY_NAME.get(head[len(_LABEL_PREFIX):])
        if label is None:
            raise RelationError(line_no, f"unknown relation label {head[len(_LABEL_PREFIX):]!r}")
        texts = []
        for raw in (raw_src, raw_tgt):
            if len(raw) < 2 or not raw.startswith("[") or not raw.endswith("]"):
                raise RelationError(line_no, f"text field must be bracketed, got {raw!r}")
            texts.append(raw[1:-1])
        try:
            instances.append(RelationInstance(label, texts[0], texts[1]))
        except ValueError as err:
            raise RelationError(line_no, str(err)) from err
    return instances


def serialize_relations(instances: Sequence[RelationInstance]) -> str:
    """Serialize relation instances, one per line; inverse of parse_relations."""
    return "".join(
        f"{_LABEL_PREFIX}{inst.label.value}\t[{inst.source_text}]\t[{inst.target_text}]\n"
        for inst in instances
    )


def relation_stats(instances: Iterable[RelationInstance]) -> Counter[RelationLabel]:
    """Instance counts per relation label."""
    return Counter(inst.label for inst in instances)
