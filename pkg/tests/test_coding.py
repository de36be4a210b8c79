import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from daseg import (
    DasegError,
    Dialog,
    FixedChunkTokenizer,
    FunctionalSegment,
    LabelSet,
    Segmentation,
    SubwordProjection,
    Turn,
    WhitespaceTokenizer,
    canonical,
    chunk,
    collapse_from_subwords,
    decode_joint,
    encode_joint,
    project_to_subwords,
    projection_for,
    serialize,
    stitch,
)
from conftest import ABC, random_reference_dialog


def dlg(*turns):
    return Dialog("d", tuple(Turn(s, tuple(w)) for s, w in turns))


class TestSerialize:
    def test_single_turn_no_sentinel(self):
        view = serialize(dlg(("A", ["a", "b", "c"])))
        assert view.items == ("a", "b", "c")
        assert view.word_indices == (0, 1, 2)

    def test_two_turns(self):
        view = serialize(dlg(("A", ["w", "w"]), ("B", ["w"])))
        assert view.items == ("w", "w", "TURN", "w")
        assert view.word_indices == (0, 1, None, 2)

    def test_sentinel_count_is_turns_minus_one(self):
        view = serialize(dlg(("A", ["x"]), ("B", ["x"]), ("A", ["x"])))
        assert view.items.count("TURN") == 2


class TestEncodeJoint:
    def test_single_statement_segment(self):
        seg = Segmentation((FunctionalSegment(0, 2, "A"),))
        assert encode_joint(seg, ABC).labels == ("I", "I", "E_A")

    def test_two_single_word_segments(self):
        seg = Segmentation((FunctionalSegment(0, 0, "B"),
                            FunctionalSegment(1, 1, "A")))
        assert encode_joint(seg, ABC).labels == ("E_B", "E_A")

    def test_continuation_keeps_inner_end_as_I(self):
        # part1 (w0-w1, continued) + other speaker backchannel (w2) + part2 (w3)
        seg = Segmentation((
            FunctionalSegment(0, 1, "A", True),
            FunctionalSegment(2, 2, "B"),
            FunctionalSegment(3, 3, "A"),
        ))
        assert encode_joint(seg, ABC).labels == ("I", "I", "E_B", "E_A")

    def test_act_outside_label_set(self):
        seg = Segmentation((FunctionalSegment(0, 0, "Z"),))
        with pytest.raises(DasegError):
            encode_joint(seg, ABC)


class TestDecodeJoint:
    def test_inverse_of_encode(self):
        seg = decode_joint(("I", "I", "E_A"), ABC)
        assert seg.segments == (FunctionalSegment(0, 2, "A"),)

    def test_two_segments(self):
        seg = decode_joint(("E_A", "I", "E_B"), ABC)
        assert seg.segments == (FunctionalSegment(0, 0, "A"),
                                FunctionalSegment(1, 2, "B"))

    def test_trailing_run_closed_with_fallback(self):
        seg = decode_joint(("I", "I"), ABC)
        assert seg.segments == (FunctionalSegment(0, 1, "A"),)

    def test_empty_sequence(self):
        assert decode_joint((), ABC).segments == ()

    @given(st.lists(st.sampled_from(["I", "E_A", "E_B", "E_C"]), max_size=40))
    def test_decode_always_yields_partition(self, labels):
        seg = decode_joint(tuple(labels), ABC)
        seg.validate_partition(len(labels))


class TestRoundTrip:
    def test_exact_identity_without_continuations(self):
        rng = random.Random(7)
        for i in range(200):
            d = random_reference_dialog(rng, f"d{i}", ABC.acts)
            enc = encode_joint(d.reference, ABC)
            assert decode_joint(enc, ABC) == d.reference

    def test_continuations_merge_forward(self):
        # continued part + interleaved segment merge up to the next E
        seg = Segmentation((
            FunctionalSegment(0, 1, "A", True),
            FunctionalSegment(2, 2, "B"),
            FunctionalSegment(3, 4, "A"),
        ))
        got = canonical(seg, ABC)
        assert got.segments == (FunctionalSegment(0, 2, "B"),
                                FunctionalSegment(3, 4, "A"))

    def test_canonical_is_idempotent(self):
        rng = random.Random(11)
        for i in range(100):
            d = random_reference_dialog(rng, f"d{i}", ABC.acts, continuations=True)
            c1 = canonical(d.reference, ABC)
            assert canonical(c1, ABC) == c1


class TestChunk:
    def test_1000_items_size_512(self):
        view = serialize(dlg(("A", [f"w{i}" for i in range(1000)])))
        windows = chunk(view, 512)
        assert [(w.start, w.end) for w in windows] == [(0, 512), (512, 1000)]

    def test_exact_fit_single_window(self):
        view = serialize(dlg(("A", [f"w{i}" for i in range(512)])))
        assert len(chunk(view, 512)) == 1

    def test_size_one(self):
        view = serialize(dlg(("A", ["a", "b", "c"])))
        assert len(chunk(view, 1)) == 3

    def test_windows_cover_view(self):
        view = serialize(dlg(("A", ["a"] * 7), ("B", ["b"] * 5)))
        for size in range(1, 15):
            windows = chunk(view, size)
            assert windows[0].start == 0
            assert windows[-1].end == len(view.items)
            for a, b in zip(windows, windows[1:]):
                assert a.end == b.start


class TestStitch:
    def test_single_window_identity(self):
        view = serialize(dlg(("A", ["a", "b"]), ("B", ["c"])))
        labels = ["I", "E_A", None, "E_B"]
        seq = stitch(view, [labels])
        assert seq.labels == ("I", "E_A", "E_B")

    def test_chunked_stitch_identity_all_window_sizes(self):
        view = serialize(dlg(("A", ["a", "b", "c"]), ("B", ["d", "e"])))
        per_item = ["I", "I", "E_A", "X", "I", "E_B"]
        expected = ("I", "I", "E_A", "I", "E_B")
        for size in range(1, 9):
            windows = chunk(view, size)
            fragments = [per_item[w.start:w.end] for w in windows]
            assert stitch(view, fragments).labels == expected

    def test_coverage_mismatch_rejected(self):
        view = serialize(dlg(("A", ["a", "b"])))
        with pytest.raises(DasegError):
            stitch(view, [["I"]])


class TestSubwordProjection:
    def test_first_token_gets_label(self):
        out = project_to_subwords(("E_A",), SubwordProjection((2,)))
        assert out == ["E_A", None]

    def test_identity_when_all_single(self):
        out = project_to_subwords(("I", "E_A"), SubwordProjection((1, 1)))
        assert out == ["I", "E_A"]

    def test_counts_1_3(self):
        out = project_to_subwords(("I", "E_A"), SubwordProjection((1, 3)))
        assert out == ["I", "E_A", None, None]

    def test_inconsistent_totals_error(self):
        with pytest.raises(DasegError):
            project_to_subwords(("I",), SubwordProjection((1, 2)))
        with pytest.raises(DasegError):
            collapse_from_subwords(["I", None], SubwordProjection((1,)))

    @given(st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=30))
    @settings(max_examples=50)
    def test_round_trip_identity(self, counts):
        rng = random.Random(sum(counts))
        labels = tuple(rng.choice(["I", "E_A", "E_B"]) for _ in counts)
        proj = SubwordProjection(tuple(counts))
        assert collapse_from_subwords(project_to_subwords(labels, proj),
                                      proj).labels == labels


class TestTokenizers:
    def test_whitespace_identity(self):
        assert WhitespaceTokenizer().tokenize("hello") == ["hello"]

    def test_chunk_tokenizer_splits_long_words(self):
        assert FixedChunkTokenizer(6).tokenize("uninterpretable") == \
            ["uninte", "rpreta", "ble"]

    def test_projection_for(self):
        proj = projection_for(["okay", "uninterpretable"], FixedChunkTokenizer(6))
        assert proj.counts == (1, 3)
