import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from daseg import (
    Corpus,
    Dialog,
    FunctionalSegment,
    LabelSet,
    Segmentation,
    Turn,
)

ABC = LabelSet("abc", ("A", "B", "C"))


def make_dialog(dialog_id, turn_specs, segment_specs):
    """turn_specs: [(speaker, [words...])]; segment_specs: [(start, end, act)]
    or [(start, end, act, continues)]."""
    turns = tuple(Turn(s, tuple(w)) for s, w in turn_specs)
    segs = tuple(
        FunctionalSegment(*args) for args in segment_specs
    )
    return Dialog(dialog_id, turns, Segmentation(segs))


def make_corpus(dialogs, label_set=ABC, variant="nolower", name="test"):
    return Corpus(name, variant, label_set, tuple(dialogs))


def random_reference_dialog(rng: random.Random, dialog_id, acts,
                            max_turns=8, max_words=20, continuations=False):
    """A random dialog whose reference may include + continuation chains."""
    n_turns = rng.randint(1, max_turns)
    vocab = ["w%d" % i for i in range(30)]
    turns = []
    for t in range(n_turns):
        n = rng.randint(1, max_words)
        turns.append(Turn("AB"[t % 2], tuple(rng.choice(vocab) for _ in range(n))))
    word_count = sum(len(t.words) for t in turns)
    # random partition of the words
    bounds = sorted(rng.sample(range(1, word_count),
                               rng.randint(0, min(word_count - 1, 12)))) \
        if word_count > 1 else []
    starts = [0] + bounds
    ends = [b - 1 for b in bounds] + [word_count - 1]
    segs = []
    for s, e in zip(starts, ends):
        segs.append(FunctionalSegment(s, e, rng.choice(acts)))
    if continuations and len(segs) > 2:
        # Mark a few random non-final segments as continued and force the
        # next-but-one segment to share their act (a plausible + chain).
        for i in sorted(rng.sample(range(len(segs) - 1), rng.randint(0, 2))):
            segs[i] = FunctionalSegment(segs[i].start, segs[i].end,
                                        segs[i].act, True)
    return Dialog(dialog_id, tuple(turns), Segmentation(tuple(segs)))


@pytest.fixture
def abc_label_set():
    return ABC
