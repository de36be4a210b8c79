import random

import pytest

from daseg import (
    EvaluationError,
    FunctionalSegment,
    Predictions,
    Segmentation,
    align_segments,
    compare_models,
    encode_joint,
    mid_segment_punctuation,
    per_act_rates,
    punctuation_by_act,
    segment_error_rates,
)
from daseg.align import final_punctuation_class
from conftest import ABC, make_corpus, make_dialog, random_reference_dialog
from oracles import random_partition, recursive_edit_distance


class TestAlignSegments:
    def test_identical_all_match(self):
        seg = Segmentation((FunctionalSegment(0, 1, "A"),
                            FunctionalSegment(2, 2, "B")))
        al = align_segments(seg, seg, "boundary")
        assert [op.op for op in al.ops] == ["match", "match"]
        assert al.distance == 0

    def test_split_is_substitution_plus_insertion(self):
        ref = Segmentation((FunctionalSegment(0, 2, "A"),))
        hyp = Segmentation((FunctionalSegment(0, 0, "B"),
                            FunctionalSegment(1, 2, "A")))
        al = align_segments(ref, hyp, "boundary")
        assert sorted(op.op for op in al.ops) == ["insert", "substitute"]

    def test_labeled_mode_counts_act_mismatches(self):
        ref = Segmentation((FunctionalSegment(0, 0, "A"),
                            FunctionalSegment(1, 1, "B"),
                            FunctionalSegment(2, 2, "C")))
        hyp = Segmentation((FunctionalSegment(0, 0, "B"),
                            FunctionalSegment(1, 1, "B"),
                            FunctionalSegment(2, 2, "A")))
        al = align_segments(ref, hyp, "labeled")
        assert al.count("substitute") == 2
        assert al.count("match") == 1
        # boundary mode ignores the labels entirely
        assert align_segments(ref, hyp, "boundary").distance == 0

    def test_word_count_mismatch(self):
        with pytest.raises(EvaluationError):
            align_segments(Segmentation((FunctionalSegment(0, 0, "A"),)),
                           Segmentation((FunctionalSegment(0, 1, "A"),)),
                           "boundary")

    def test_op_count_identities(self):
        rng = random.Random(21)
        for _ in range(200):
            n = rng.randint(1, 25)
            ref = random_partition(rng, n, ABC.acts)
            hyp = random_partition(rng, n, ABC.acts)
            for mode in ("boundary", "labeled"):
                al = align_segments(ref, hyp, mode)
                assert al.count("match") + al.count("substitute") + \
                    al.count("delete") == len(ref.segments)
                assert al.count("match") + al.count("substitute") + \
                    al.count("insert") == len(hyp.segments)

    def test_distance_equals_recursive_oracle(self):
        rng = random.Random(42)
        checked = 0
        while checked < 200:
            n = rng.randint(1, 12)
            ref = random_partition(rng, n, ABC.acts)
            hyp = random_partition(rng, n, ABC.acts)
            if len(ref.segments) > 8 or len(hyp.segments) > 8:
                continue
            checked += 1
            for mode in ("boundary", "labeled"):
                assert align_segments(ref, hyp, mode).distance == \
                    recursive_edit_distance(ref, hyp, mode)

    def test_match_count_ties_out_with_dser(self):
        rng = random.Random(84)
        for _ in range(200):
            n = rng.randint(1, 25)
            ref = random_partition(rng, n, ABC.acts)
            hyp = random_partition(rng, n, ABC.acts)
            al = align_segments(ref, hyp, "boundary")
            dser = segment_error_rates(ref, hyp)["DSER"]
            assert al.count("match") == round(len(ref.segments) * (1 - dser / 100))


def single_dialog_corpus(words, segments, dialog_id="d1"):
    d = make_dialog(dialog_id, [("A", words)], segments)
    return make_corpus([d])


def preds_from_labels(corpus, labels_by_dialog):
    preds = Predictions(corpus.label_set, corpus.variant, "test")
    for did, labels in labels_by_dialog.items():
        preds.add(did, labels)
    return preds


class TestPerActRates:
    def test_all_matched_zero(self):
        corpus = single_dialog_corpus(["x", "y"], [(0, 0, "A"), (1, 1, "B")])
        preds = preds_from_labels(corpus, {"d1": ["E_A", "E_B"]})
        rows = {r.act: r for r in per_act_rates(corpus, preds)}
        assert rows["A"].dser == 0.0
        assert rows["A"].der == 0.0

    def test_insertion_attribution_can_exceed_100(self):
        # one ref segment of act A mis-segmented, plus a spurious inserted A
        corpus = single_dialog_corpus(["x", "y"], [(0, 1, "A")])
        preds = preds_from_labels(corpus, {"d1": ["E_A", "E_A"]})
        rows = {r.act: r for r in per_act_rates(corpus, preds)}
        # labeled alignment: ref (0,1,A) vs hyp (0,0,A),(1,1,A) ->
        # substitute + insert, both attributed to A
        assert rows["A"].der == 200.0
        assert rows["A"].dser == 100.0

    def test_support_weighted_dser_sums_to_corpus_dser(self):
        rng = random.Random(31)
        dialogs = [random_reference_dialog(rng, f"d{i}", ABC.acts)
                   for i in range(6)]
        corpus = make_corpus(dialogs)
        labels_by_dialog = {}
        for d in dialogs:
            labels = list(encode_joint(d.reference, ABC, d.id).labels)
            for i in range(0, len(labels), 3):
                labels[i] = "E_B"  # corrupt
            labels_by_dialog[d.id] = labels
        preds = preds_from_labels(corpus, labels_by_dialog)
        rows = per_act_rates(corpus, preds)
        from daseg import evaluate_corpus
        report = evaluate_corpus(corpus, preds)
        weighted = sum(r.dser * r.count for r in rows)
        total = sum(r.count for r in rows)
        assert weighted / total == pytest.approx(report.dser)


class TestCompareModels:
    def test_identical_models_zero_gain(self):
        corpus = single_dialog_corpus(
            ["a"] * 12, [(i, i, "A") for i in range(12)])
        preds = preds_from_labels(corpus, {"d1": ["E_A"] * 12})
        table = compare_models(corpus, preds, preds, rate="DSER", min_count=10)
        assert all(r.abs_gain == 0.0 for r in table.rows)
        assert table.rows  # A has support 12 >= 10

    def test_min_count_excludes_rare_acts(self):
        corpus = single_dialog_corpus(
            ["a"] * 11,
            [(i, i, "A") for i in range(10)] + [(10, 10, "B")])
        preds = preds_from_labels(corpus, {"d1": ["E_A"] * 10 + ["E_B"]})
        table = compare_models(corpus, preds, preds, min_count=10)
        assert [r.act for r in table.rows] == ["A"]

    def test_never_recognized_set(self):
        corpus = single_dialog_corpus(["x", "y"], [(0, 0, "A"), (1, 1, "B")])
        good = preds_from_labels(corpus, {"d1": ["E_A", "E_B"]})
        bad = preds_from_labels(corpus, {"d1": ["E_A", "E_C"]})
        table = compare_models(corpus, good, bad, min_count=1)
        assert table.never_recognized_a == []
        assert table.never_recognized_b == ["B"]


class TestPunctuationTables:
    def test_final_class_rules(self):
        assert final_punctuation_class("okay.") == "full_stop"
        assert final_punctuation_class("what?") == "question_mark"
        assert final_punctuation_class("wow!") == "exclamation_mark"
        assert final_punctuation_class("uh-huh") == "none"
        assert final_punctuation_class("so,") == "none"  # by last character

    def test_by_act_counts(self):
        corpus = single_dialog_corpus(
            ["Okay.", "Right?", "yeah"],
            [(0, 0, "A"), (1, 1, "B"), (2, 2, "A")])
        table = punctuation_by_act(corpus)
        assert table.rows["A"]["full_stop"]["count"] == 1
        assert table.rows["A"]["none"]["count"] == 1
        assert table.rows["B"]["question_mark"]["count"] == 1

    def test_every_segment_in_exactly_one_cell(self):
        rng = random.Random(13)
        dialogs = [random_reference_dialog(rng, f"d{i}", ABC.acts)
                   for i in range(5)]
        corpus = make_corpus(dialogs)
        table = punctuation_by_act(corpus)
        total = sum(cell["count"] for row in table.rows.values()
                    for cell in row.values())
        assert total == sum(len(d.reference.segments) for d in dialogs)

    def test_error_percentages_zero_when_perfect(self):
        corpus = single_dialog_corpus(["Okay."], [(0, 0, "A")])
        preds = preds_from_labels(corpus, {"d1": ["E_A"]})
        table = punctuation_by_act(corpus, preds)
        assert table.rows["A"]["full_stop"]["error_pct"] == 0.0

    def test_lower_corpus_rejected(self):
        from daseg import normalize
        corpus = single_dialog_corpus(["Okay.", "yes"], [(0, 1, "A")])
        lowered = normalize(corpus, "lower")
        with pytest.raises(EvaluationError):
            punctuation_by_act(lowered)
        with pytest.raises(EvaluationError):
            mid_segment_punctuation(lowered)

    def test_mid_segment_counts(self):
        corpus = single_dialog_corpus(["okay,", "thanks."], [(0, 1, "A")])
        table = mid_segment_punctuation(corpus)
        row = table.rows["reference"]
        assert row == {"full_stop": 0, "comma": 1, "question_mark": 0,
                       "segments": 1}

    def test_single_word_segments_have_no_mid_punct(self):
        corpus = single_dialog_corpus(
            ["okay.", "what?"], [(0, 0, "A"), (1, 1, "B")])
        row = mid_segment_punctuation(corpus).rows["reference"]
        assert row["full_stop"] == 0 and row["comma"] == 0
        assert row["segments"] == 2

    def test_predictions_source(self):
        corpus = single_dialog_corpus(["a,", "b.", "c"], [(0, 2, "A")])
        preds = preds_from_labels(corpus, {"d1": ["E_A", "I", "E_A"]})
        row = mid_segment_punctuation(corpus, preds).rows["predictions"]
        assert row == {"full_stop": 1, "comma": 0, "question_mark": 0,
                       "segments": 2}
