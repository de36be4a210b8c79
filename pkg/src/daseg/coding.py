"""Joint E/I coding, transcript serialization, windowing, subword projection.

Per-word joint labels are plain strings: the shared ``I`` for non-final
words and ``E_<act>`` on each segment-final word.  Serialization flattens a
dialog's turns into one token stream with a TURN sentinel between
consecutive turns; the sentinel never carries a label and is excluded from
scoring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Dialog, FunctionalSegment, Segmentation
from .errors import DasegError
from .labels import LabelSet, is_end_label, joint_label_act

TURN_SENTINEL = "TURN"
# Surface form used when an imported word collides with the sentinel.
TURN_ESCAPE = "\\TURN"

# Mask value for subword positions that never participate in training or
# prediction read-out (continuation subwords and TURN sentinels).
IGNORE = None


@dataclass(frozen=True)
class LabelSequence:
    """One joint label per word of a dialog (TURN sentinels excluded)."""

    dialog_id: str
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class TokenView:
    """A dialog serialized to a flat item sequence with TURN sentinels.

    ``word_indices[i]`` is the global word index of item i, or None when the
    item is a sentinel.
    """

    dialog_id: str
    items: tuple[str, ...]
    word_indices: tuple[int | None, ...]

    @property
    def word_count(self) -> int:
        return sum(1 for i in self.word_indices if i is not None)


@dataclass(frozen=True)
class Window:
    """A contiguous, non-overlapping item range [start, end) over a TokenView."""

    dialog_id: str
    start: int
    end: int
    ordinal: int


@dataclass(frozen=True)
class SubwordProjection:
    """Per-word subword token counts produced by some tokenizer."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 1 for c in self.counts):
            raise ValueError("every word must produce at least one subword")

    @property
    def total(self) -> int:
        return sum(self.counts)


def serialize(dialog: Dialog) -> TokenView:
    """Flatten turns into one item sequence with a sentinel between turns."""
    if not dialog.turns:
        raise DasegError(f"dialog {dialog.id} has no turns")
    items: list[str] = []
    indices: list[int | None] = []
    word_idx = 0
    for t, turn in enumerate(dialog.turns):
        if t > 0:
            items.append(TURN_SENTINEL)
            indices.append(None)
        for w in turn.words:
            items.append(w)
            indices.append(word_idx)
            word_idx += 1
    return TokenView(dialog.id, tuple(items), tuple(indices))


def encode_joint(segmentation: Segmentation, label_set: LabelSet,
                 dialog_id: str = "") -> LabelSequence:
    """Code a segmentation as per-word joint labels.

    Each segment's final word gets ``E_<act>`` and all other words get
    ``I`` -- except non-final parts of a continued segment (``continues``),
    whose last word stays ``I`` so that only the final part carries the E.
    """
    word_count = segmentation.word_count
    segmentation.validate_partition(word_count)
    labels = ["I"] * word_count
    for seg in segmentation.segments:
        if seg.act not in label_set:
            raise DasegError(f"act {seg.act!r} not in label set {label_set.name}")
        if not seg.continues:
            labels[seg.end] = f"E_{seg.act}"
    return LabelSequence(dialog_id, tuple(labels))


def decode_joint(labels: LabelSequence | tuple[str, ...] | list[str],
                 label_set: LabelSet) -> Segmentation:
    """Greedy inverse of the joint coding.

    A segment ends at every E-labeled word; a trailing run of I labels with
    no closing E is closed at the final word with the label set's fallback
    act.  The result is always a valid partition.
    """
    if isinstance(labels, LabelSequence):
        seq = labels.labels
    else:
        seq = tuple(labels)
    segments: list[FunctionalSegment] = []
    start = 0
    for i, label in enumerate(seq):
        if is_end_label(label):
            act = joint_label_act(label)
            if act not in label_set:
                raise DasegError(f"act {act!r} not in label set {label_set.name}")
            segments.append(FunctionalSegment(start, i, act))
            start = i + 1
        elif label != "I":
            raise DasegError(f"unknown joint label {label!r}")
    if start < len(seq):
        segments.append(
            FunctionalSegment(start, len(seq) - 1, label_set.fallback_act)
        )
    return Segmentation(tuple(segments))


def canonical(segmentation: Segmentation, label_set: LabelSet) -> Segmentation:
    """The serialized-order canonical form: continued parts merged forward."""
    return decode_joint(encode_joint(segmentation, label_set), label_set)


def chunk(view: TokenView, window_size: int) -> list[Window]:
    """Split the serialized items into fixed-size non-overlapping windows."""
    if window_size < 1:
        raise DasegError(f"window size must be >= 1, got {window_size}")
    windows = []
    n = len(view.items)
    for ordinal, start in enumerate(range(0, n, window_size)):
        windows.append(Window(view.dialog_id, start, min(start + window_size, n),
                              ordinal))
    return windows


def stitch(view: TokenView, fragments: list[list[str | None]]) -> LabelSequence:
    """Reassemble per-window item labels into one per-word label sequence.

    Fragments must cover the view's items contiguously (their lengths sum to
    the item count); labels at sentinel positions are discarded.
    """
    total = sum(len(f) for f in fragments)
    if total != len(view.items):
        raise DasegError(
            f"fragments cover {total} items but the view has {len(view.items)}"
        )
    flat: list[str | None] = []
    for frag in fragments:
        flat.extend(frag)
    labels = []
    for label, widx in zip(flat, view.word_indices):
        if widx is None:
            continue
        if label is None:
            raise DasegError(f"missing label for word index {widx}")
        labels.append(label)
    return LabelSequence(view.dialog_id, tuple(labels))


def project_to_subwords(
    labels: LabelSequence | tuple[str, ...] | list[str],
    proj: SubwordProjection,
) -> list[str | None]:
    """Spread word labels over subwords: first subword active, rest ignored."""
    seq = labels.labels if isinstance(labels, LabelSequence) else tuple(labels)
    if len(proj.counts) != len(seq):
        raise DasegError(
            f"projection has {len(proj.counts)} words but labels have {len(seq)}"
        )
    out: list[str | None] = []
    for label, count in zip(seq, proj.counts):
        out.append(label)
        out.extend([IGNORE] * (count - 1))
    return out


def collapse_from_subwords(
    subword_labels: list[str | None], proj: SubwordProjection,
    dialog_id: str = "",
) -> LabelSequence:
    """Read back word labels from the first subword of each word."""
    if len(subword_labels) != proj.total:
        raise DasegError(
            f"{len(subword_labels)} subword labels but projection totals "
            f"{proj.total}"
        )
    labels = []
    pos = 0
    for count in proj.counts:
        label = subword_labels[pos]
        if label is None:
            raise DasegError(f"first subword at position {pos} carries no label")
        labels.append(label)
        pos += count
    return LabelSequence(dialog_id, tuple(labels))


class WhitespaceTokenizer:
    """Identity tokenizer: every word is a single subword."""

    def tokenize(self, word: str) -> list[str]:
        return [word]


class FixedChunkTokenizer:
    """Deterministic test tokenizer: splits words longer than ``max_len``."""

    def __init__(self, max_len: int = 6):
        if max_len < 1:
            raise ValueError("max_len must be >= 1")
        self.max_len = max_len

    def tokenize(self, word: str) -> list[str]:
        return [word[i:i + self.max_len] for i in range(0, len(word), self.max_len)]


def projection_for(words: list[str] | tuple[str, ...], tokenizer) -> SubwordProjection:
    return SubwordProjection(tuple(len(tokenizer.tokenize(w)) for w in words))
