from __future__ import annotations

import random

import pytest

from argproj.corpus import (
    AnnotatedSentence,
    ComponentLabel,
    Corpus,
    Document,
    RelationInstance,
    RelationLabel,
    Span,
)
from argproj.evaluate import compare_variants, score_components, score_relations
from genutil import random_sentence

CLAIM = ComponentLabel.CLAIM
PREMISE = ComponentLabel.PREMISE


def corpus_of(*sentences: AnnotatedSentence) -> Corpus:
    return Corpus(documents=(Document("d", tuple(sentences)),))


class TestScoreComponents:
    def test_perfect_prediction(self):
        rng = random.Random(73)
        sents = [random_sentence(rng) for _ in range(20)]
        gold = corpus_of(*sents)
        for mode in ("token", "span"):
            report = score_components(gold, gold, mode=mode)
            for metrics in report.per_class.values():
                if metrics.support:
                    assert metrics.precision == metrics.recall == metrics.f1 == 1.0
            assert report.headline_f1 == 1.0

    def test_hand_worked_token_example(self):
        # gold Claim [0,2), pred Claim [0,3) over 4 tokens:
        # TP=2, predicted=3, gold=2 -> P=2/3, R=1, F1=0.8
        gold = corpus_of(AnnotatedSentence.from_words(list("abcd"), [Span(0, 2, CLAIM)]))
        pred = corpus_of(AnnotatedSentence.from_words(list("abcd"), [Span(0, 3, CLAIM)]))
        token = score_components(gold, pred, mode="token")
        claim = token.per_class["Claim"]
        assert claim.precision == pytest.approx(2 / 3, abs=1e-12)
        assert claim.recall == pytest.approx(1.0, abs=1e-12)
        assert claim.f1 == pytest.approx(0.8, abs=1e-12)
        span = score_components(gold, pred, mode="span")
        assert span.per_class["Claim"].f1 == 0.0

    def test_all_o_prediction(self):
        gold = corpus_of(AnnotatedSentence.from_words(list("abc"), [Span(0, 2, CLAIM)]))
        pred = corpus_of(AnnotatedSentence.from_words(list("abc")))
        for mode in ("token", "span"):
            report = score_components(gold, pred, mode=mode)
            claim = report.per_class["Claim"]
            assert claim.precision == 0.0 and claim.recall == 0.0 and claim.f1 == 0.0
            assert report.headline_f1 == 0.0

    def test_headline_is_mean_of_claim_and_premise(self):
        rng = random.Random(79)
        for _ in range(100):
            gold_sents = [random_sentence(rng) for _ in range(5)]
            pred_sents = [s.with_spans(random_sentence(rng, max_tokens=len(s)).spans
                                       if rng.random() < 0.5 else s.spans)
                          for s in gold_sents]
            # keep token counts aligned: re-generate spans over same tokens
            pred_sents = [
                AnnotatedSentence(tokens=g.tokens, spans=p.spans if all(
                    sp.end <= len(g.tokens) for sp in p.spans) else ())
                for g, p in zip(gold_sents, pred_sents)
            ]
            report = score_components(corpus_of(*gold_sents), corpus_of(*pred_sents))
            assert report.headline_f1 == (report.f1(CLAIM) + report.f1(PREMISE)) / 2

    def test_f1_is_harmonic_mean(self):
        rng = random.Random(83)
        gold_sents = [random_sentence(rng) for _ in range(30)]
        pred_sents = [AnnotatedSentence(tokens=s.tokens,
                                        spans=random_sentence(rng, max_tokens=1).spans
                                        if len(s.tokens) >= 1 and rng.random() < 0.5 else s.spans)
                      for s in gold_sents]
        for mode in ("token", "span"):
            report = score_components(corpus_of(*gold_sents), corpus_of(*pred_sents), mode=mode)
            for metrics in report.per_class.values():
                p, r = metrics.precision, metrics.recall
                expected = 2 * p * r / (p + r) if p + r else 0.0
                assert metrics.f1 == pytest.approx(expected, abs=1e-12)

    def test_token_mode_invariant_to_b_i_split(self):
        # same contiguous block annotated as one span vs two adjacent spans
        gold = corpus_of(AnnotatedSentence.from_words(list("abcd"), [Span(0, 3, PREMISE)]))
        pred_one = corpus_of(AnnotatedSentence.from_words(list("abcd"), [Span(0, 3, PREMISE)]))
        pred_two = corpus_of(AnnotatedSentence.from_words(
            list("abcd"), [Span(0, 1, PREMISE), Span(1, 3, PREMISE)]))
        token_one = score_components(gold, pred_one, mode="token")
        token_two = score_components(gold, pred_two, mode="token")
        assert token_one.per_class["Premise"] == token_two.per_class["Premise"]
        # span mode distinguishes them
        assert score_components(gold, pred_two, mode="span").per_class["Premise"].f1 < 1.0

    def test_precision_recall_symmetry(self):
        rng = random.Random(89)
        gold_sents = [random_sentence(rng) for _ in range(20)]
        pred_sents = [AnnotatedSentence(tokens=s.tokens, spans=())
                      if rng.random() < 0.3 else s for s in gold_sents]
        a = score_components(corpus_of(*gold_sents), corpus_of(*pred_sents), mode="token")
        b = score_components(corpus_of(*pred_sents), corpus_of(*gold_sents), mode="token")
        for name in a.per_class:
            if name in b.per_class:
                assert a.per_class[name].precision == pytest.approx(b.per_class[name].recall)

    def test_major_claim_reported_but_not_in_headline(self):
        gold = corpus_of(AnnotatedSentence.from_words(
            list("ab"), [Span(0, 2, ComponentLabel.MAJOR_CLAIM)]))
        report = score_components(gold, gold)
        assert report.per_class["MajorClaim"].f1 == 1.0
        assert report.headline_f1 == 0.0  # no claim/premise anywhere

    def test_misalignment_rejected(self):
        gold = corpus_of(AnnotatedSentence.from_words(["a"]))
        pred = corpus_of(AnnotatedSentence.from_words(["a", "b"]))
        with pytest.raises(ValueError):
            score_components(gold, pred)
        with pytest.raises(ValueError):
            score_components(gold, corpus_of())

    def test_span_mode_perfect_iff_identical(self):
        gold = corpus_of(AnnotatedSentence.from_words(list("abc"), [Span(0, 2, CLAIM)]))
        pred = corpus_of(AnnotatedSentence.from_words(list("abc"), [Span(0, 2, CLAIM)]))
        assert score_components(gold, pred, mode="span").per_class["Claim"].f1 == 1.0


class TestScoreRelations:
    def test_perfect(self):
        gold = [RelationInstance(RelationLabel.SUPPORT, "a", "b"),
                RelationInstance(RelationLabel.NO_REL, "c", "d")]
        scores = score_relations(gold, [RelationLabel.SUPPORT, RelationLabel.NO_REL])
        assert scores.macro_f1 == 1.0

    def test_hand_worked_example(self):
        # gold [Support, NoRel], pred [NoRel, NoRel]:
        # F1(Support)=0, F1(NoRel)=2/3, macro=1/3
        gold = [RelationInstance(RelationLabel.SUPPORT, "a", "b"),
                RelationInstance(RelationLabel.NO_REL, "c", "d")]
        scores = score_relations(gold, [RelationLabel.NO_REL, RelationLabel.NO_REL])
        assert scores.per_class["Support"].f1 == 0.0
        assert scores.per_class["noRel"].f1 == pytest.approx(2 / 3, abs=1e-12)
        assert scores.macro_f1 == pytest.approx(1 / 3, abs=1e-12)

    def test_single_class(self):
        gold = [RelationLabel.ATTACK, RelationLabel.ATTACK]
        scores = score_relations(gold, [RelationLabel.ATTACK, RelationLabel.ATTACK])
        assert scores.macro_f1 == 1.0
        assert set(scores.per_class) == {"Attack"}

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            score_relations([RelationLabel.ATTACK], [])


class TestCompareVariants:
    def make_report(self, claim_f1):
        gold = corpus_of(AnnotatedSentence.from_words(list("abcd"), [Span(0, 2, CLAIM)]))
        pred = corpus_of(AnnotatedSentence.from_words(
            list("abcd"), [Span(0, 2 if claim_f1 else 3, CLAIM)]))
        return score_components(gold, pred, mode="span")

    def test_single_report(self):
        table = compare_variants({"only": self.make_report(True)})
        assert list(table.rows) == ["only"]
        assert table.best["headline_f1"] == ("only",)

    def test_best_marked(self):
        table = compare_variants({"good": self.make_report(True),
                                  "bad": self.make_report(False)})
        assert table.best["f1_Claim"] == ("good",)
        assert "good" in table.render()

    def test_ties_all_marked(self):
        table = compare_variants({"a": self.make_report(True),
                                  "b": self.make_report(True)})
        assert set(table.best["f1_Claim"]) == {"a", "b"}

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compare_variants({})
