"""In-memory corpus model and corpus-level operations.

A Corpus holds dialogs in temporal turn order together with (optional)
reference segmentations: contiguous, exhaustive, non-overlapping partitions
of each dialog's flattened word sequence into act-labeled functional
segments.  Two text-formatting variants exist: ``nolower`` keeps the
original casing and punctuation, ``lower`` lowercases everything and strips
punctuation characters.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace

from .errors import CorpusFormatError, DasegError
from .labels import LabelSet

log = logging.getLogger(__name__)

# Characters removed from word texts when producing the `lower` variant.
# Hyphens inside words (e.g. "uh-huh") are deliberately retained.
PUNCTUATION_CHARS = ".,?!;:\"'()"
_STRIP_TABLE = str.maketrans("", "", PUNCTUATION_CHARS)

CORPUS_FORMAT = "daseg-corpus"
CORPUS_VERSION = 1


@dataclass(frozen=True)
class Turn:
    speaker: str
    words: tuple[str, ...]

    def __post_init__(self):
        if not self.words:
            raise ValueError("empty turn")
        for w in self.words:
            if not w or any(c.isspace() for c in w):
                raise ValueError(f"bad word {w!r}: empty or contains whitespace")


@dataclass(frozen=True)
class FunctionalSegment:
    """A [start, end] span of global word indices carrying one dialog act.

    ``continues`` marks a non-final part of a segment that resumes later
    (SWDA ``+`` continuations): its last word is coded I rather than E.
    """

    start: int
    end: int
    act: str
    continues: bool = False

    def __post_init__(self):
        if self.start < 0 or self.start > self.end:
            raise ValueError(f"bad segment span ({self.start}, {self.end})")

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class Segmentation:
    segments: tuple[FunctionalSegment, ...]

    @property
    def word_count(self) -> int:
        return self.segments[-1].end + 1 if self.segments else 0

    def validate_partition(self, word_count: int) -> None:
        """Assert the segments tile [0, word_count) exactly."""
        expected_start = 0
        for seg in self.segments:
            if seg.start != expected_start:
                raise DasegError(
                    f"segmentation is not a partition: expected a segment "
                    f"starting at {expected_start}, got {seg.start}"
                )
            expected_start = seg.end + 1
        if expected_start != word_count:
            raise DasegError(
                f"segmentation covers [0, {expected_start}) but the dialog "
                f"has {word_count} words"
            )


@dataclass(frozen=True)
class Dialog:
    id: str
    turns: tuple[Turn, ...]
    reference: Segmentation | None = None

    def __post_init__(self):
        if self.reference is not None:
            self.reference.validate_partition(self.word_count)

    @property
    def word_count(self) -> int:
        return sum(len(t.words) for t in self.turns)

    @property
    def words(self) -> list[str]:
        return [w for t in self.turns for w in t.words]


@dataclass(frozen=True)
class Corpus:
    name: str
    variant: str  # "lower" | "nolower"
    label_set: LabelSet
    dialogs: tuple[Dialog, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variant not in ("lower", "nolower"):
            raise ValueError(f"unknown variant {self.variant!r}")
        for d in self.dialogs:
            if d.reference is None:
                continue
            for seg in d.reference.segments:
                if seg.act not in self.label_set:
                    raise DasegError(
                        f"dialog {d.id}: act {seg.act!r} not in label set "
                        f"{self.label_set.name}"
                    )

    def dialog(self, dialog_id: str) -> Dialog:
        for d in self.dialogs:
            if d.id == dialog_id:
                return d
        raise DasegError(f"no dialog {dialog_id!r} in corpus {self.name}")


@dataclass(frozen=True)
class CorpusStats:
    dialogs: int
    turns: int
    words: int
    segments: int
    per_act_segments: dict[str, int]
    mean_words_per_dialog: float
    max_words_per_dialog: int

    def to_dict(self) -> dict:
        return {
            "dialogs": self.dialogs,
            "turns": self.turns,
            "words": self.words,
            "segments": self.segments,
            "per_act_segments": dict(self.per_act_segments),
            "mean_words_per_dialog": self.mean_words_per_dialog,
            "max_words_per_dialog": self.max_words_per_dialog,
        }


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Exact corpus-level counts; requires every dialog to carry a reference."""
    per_act: dict[str, int] = {}
    n_turns = n_words = n_segments = 0
    max_words = 0
    for d in corpus.dialogs:
        if d.reference is None:
            raise DasegError(f"dialog {d.id} has no reference segmentation")
        n_turns += len(d.turns)
        wc = d.word_count
        n_words += wc
        max_words = max(max_words, wc)
        n_segments += len(d.reference.segments)
        for seg in d.reference.segments:
            per_act[seg.act] = per_act.get(seg.act, 0) + 1
    n_dialogs = len(corpus.dialogs)
    return CorpusStats(
        dialogs=n_dialogs,
        turns=n_turns,
        words=n_words,
        segments=n_segments,
        per_act_segments=per_act,
        mean_words_per_dialog=(n_words / n_dialogs) if n_dialogs else 0.0,
        max_words_per_dialog=max_words,
    )


def _normalize_word(word: str) -> str:
    return word.lower().translate(_STRIP_TABLE)


def normalize(corpus: Corpus, variant: str) -> Corpus:
    """Convert a corpus to the requested text-formatting variant.

    ``nolower`` -> ``nolower`` and ``lower`` -> ``lower`` are identities.
    Producing ``lower`` lowercases every word and deletes punctuation
    characters; words that become empty are removed and segment spans are
    recomputed.  Segments left with no words are dropped (counted in the
    result metadata and logged).
    """
    if variant not in ("lower", "nolower"):
        raise DasegError(f"unknown variant {variant!r}")
    if variant == corpus.variant:
        return corpus
    if variant == "nolower":
        raise DasegError(
            "cannot recover the nolower variant from a lower corpus: "
            "casing and punctuation are not recoverable"
        )

    dropped_segments = 0
    dropped_words = 0
    new_dialogs = []
    for d in corpus.dialogs:
        # survivors[i] is the new index of old word i, or None if deleted
        survivors: list[int | None] = []
        new_turns = []
        next_idx = 0
        for turn in d.turns:
            kept = []
            for w in turn.words:
                nw = _normalize_word(w)
                if nw:
                    kept.append(nw)
                    survivors.append(next_idx)
                    next_idx += 1
                else:
                    survivors.append(None)
                    dropped_words += 1
            if kept:
                new_turns.append(Turn(turn.speaker, tuple(kept)))
        # prefix[i] = number of surviving words among old indices [0, i)
        prefix = [0]
        for s in survivors:
            prefix.append(prefix[-1] + (1 if s is not None else 0))

        new_ref = None
        if d.reference is not None:
            new_segments = []
            for seg in d.reference.segments:
                lo = prefix[seg.start]
                hi = prefix[seg.end + 1]
                if hi == lo:
                    dropped_segments += 1
                    continue
                new_segments.append(
                    FunctionalSegment(lo, hi - 1, seg.act, seg.continues)
                )
            new_ref = Segmentation(tuple(new_segments))
        if not new_turns:
            # entire dialog emptied; keep the id with no content is invalid,
            # so the dialog is dropped outright
            dropped_segments += 0
            continue
        dialog = Dialog(d.id, tuple(new_turns), new_ref)
        if new_ref is not None:
            new_ref.validate_partition(dialog.word_count)
        new_dialogs.append(dialog)

    if dropped_segments:
        log.warning(
            "normalize(lower): dropped %d segment(s) emptied by punctuation "
            "stripping", dropped_segments,
        )
    metadata = dict(corpus.metadata)
    metadata["dropped_segments"] = dropped_segments
    metadata["dropped_words"] = dropped_words
    return Corpus(corpus.name, "lower", corpus.label_set, tuple(new_dialogs), metadata)


def to_pure(corpus: Corpus) -> Corpus:
    """Strip acts: remap every segment to the single pure-segmentation act."""
    from .labels import PURE_1

    new_dialogs = []
    for d in corpus.dialogs:
        ref = d.reference
        if ref is not None:
            ref = Segmentation(
                tuple(
                    FunctionalSegment(s.start, s.end, PURE_1.acts[0], s.continues)
                    for s in ref.segments
                )
            )
        new_dialogs.append(Dialog(d.id, d.turns, ref))
    return Corpus(corpus.name, corpus.variant, PURE_1, tuple(new_dialogs),
                  dict(corpus.metadata))


def split(corpus: Corpus, manifest: dict) -> tuple[Corpus, Corpus, Corpus]:
    """Partition a corpus into (train, validation, test) by dialog id.

    The manifest maps split names to dialog id lists; ids must be disjoint
    across splits and all present in the corpus.  Dialog order within each
    split follows the corpus order.
    """
    names = {"train": "train", "validation": "validation", "val": "validation",
             "test": "test"}
    ids: dict[str, str] = {}
    for key, value in manifest.items():
        if key not in names:
            raise DasegError(f"unknown split name {key!r} in manifest")
        for did in value:
            if did in ids:
                raise DasegError(f"dialog id {did!r} appears in multiple splits")
            ids[did] = names[key]
    known = {d.id for d in corpus.dialogs}
    for did in ids:
        if did not in known:
            raise DasegError(f"manifest lists unknown dialog id {did!r}")

    out = {"train": [], "validation": [], "test": []}
    for d in corpus.dialogs:
        which = ids.get(d.id)
        if which is not None:
            out[which].append(d)
    mk = lambda ds: Corpus(corpus.name, corpus.variant, corpus.label_set,
                           tuple(ds), dict(corpus.metadata))
    return mk(out["train"]), mk(out["validation"]), mk(out["test"])


def load_manifest(path) -> dict:
    with open(path, encoding="utf-8") as f:
        manifest = json.load(f)
    if not isinstance(manifest, dict):
        raise DasegError(f"split manifest {path} must be a JSON object")
    return manifest


# ---------------------------------------------------------------------------
# Normalized corpus file format: a JSON-lines file whose first line is a
# header record and every following line one dialog.  See docs/formats.md.
# ---------------------------------------------------------------------------

def _dialog_record(d: Dialog, variant: str) -> dict:
    rec = {
        "id": d.id,
        "variant": variant,
        "turns": [{"speaker": t.speaker, "words": list(t.words)} for t in d.turns],
    }
    if d.reference is not None:
        segs = []
        for s in d.reference.segments:
            seg = {"start": s.start, "end": s.end, "act": s.act}
            if s.continues:
                seg["continues"] = True
            segs.append(seg)
        rec["segments"] = segs
    return rec


def write_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        header = {
            "format": CORPUS_FORMAT,
            "version": CORPUS_VERSION,
            "name": corpus.name,
            "variant": corpus.variant,
            "label_set": corpus.label_set.to_dict(),
            "metadata": corpus.metadata,
        }
        f.write(json.dumps(header, ensure_ascii=False) + "\n")
        for d in corpus.dialogs:
            f.write(json.dumps(_dialog_record(d, corpus.variant),
                               ensure_ascii=False) + "\n")


def read_corpus(path) -> Corpus:
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise CorpusFormatError(f"{path}: empty corpus file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise CorpusFormatError(f"{path}:1: bad header: {e}") from None
    if header.get("format") != CORPUS_FORMAT:
        raise CorpusFormatError(f"{path}: not a {CORPUS_FORMAT} file")
    if header.get("version") != CORPUS_VERSION:
        raise CorpusFormatError(
            f"{path}: unsupported corpus format version {header.get('version')}"
        )
    label_set = LabelSet.from_dict(header["label_set"])
    variant = header["variant"]
    dialogs = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusFormatError(f"{path}:{lineno}: bad dialog record: {e}") from None
        try:
            turns = tuple(
                Turn(t["speaker"], tuple(t["words"])) for t in rec["turns"]
            )
            ref = None
            if "segments" in rec:
                ref = Segmentation(
                    tuple(
                        FunctionalSegment(
                            s["start"], s["end"], s["act"], s.get("continues", False)
                        )
                        for s in rec["segments"]
                    )
                )
            dialogs.append(Dialog(rec["id"], turns, ref))
        except (KeyError, TypeError, ValueError, DasegError) as e:
            raise CorpusFormatError(f"{path}:{lineno}: {e}") from None
    return Corpus(header["name"], variant, label_set, tuple(dialogs),
                  header.get("metadata", {}))
