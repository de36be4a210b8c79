"""Importer for the Meeting Recorder Dialog Act (MRDA) distribution.

Targets the preprocessed per-meeting text release: one ``.txt`` file per
meeting, one functional segment per line, pipe-separated as

    speaker|text|basic_tag|general_tag|full_tag

Granularities: ``basic`` (5 acts), ``general`` (12), ``full`` (51).
"""

from __future__ import annotations

import glob
import os

from .coding import TURN_ESCAPE, TURN_SENTINEL
from .corpus import Corpus, Dialog, FunctionalSegment, Segmentation, Turn
from .errors import CorpusImportError
from .labels import (
    MRDA_BASIC_5,
    MRDA_BASIC_TAG_TO_ACT,
    MRDA_FULL_51,
    MRDA_GENERAL_12,
    LabelSet,
)

GRANULARITY_SETS: dict[str, LabelSet] = {
    "basic": MRDA_BASIC_5,
    "general": MRDA_GENERAL_12,
    "full": MRDA_FULL_51,
}
_TAG_FIELD = {"basic": 2, "general": 3, "full": 4}


def _words(text: str) -> list[str]:
    out = []
    for token in text.split():
        if token == TURN_SENTINEL:
            token = TURN_ESCAPE
        out.append(token)
    return out


def _import_meeting(path: str, granularity: str, label_set: LabelSet) -> Dialog | None:
    try:
        with open(path, encoding="utf-8", errors="replace") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise CorpusImportError(f"cannot read {path}: {e}") from None
    field_idx = _TAG_FIELD[granularity]

    utts: list[tuple[str, list[str], str]] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split("|")
        if len(parts) < 5:
            raise CorpusImportError(
                f"{path}:{lineno}: expected 5 pipe-separated fields, got {len(parts)}"
            )
        speaker, text = parts[0], parts[1]
        tag = parts[field_idx].strip()
        words = _words(text)
        if not words:
            continue
        if granularity == "basic":
            act = MRDA_BASIC_TAG_TO_ACT.get(tag)
            if act is None:
                raise CorpusImportError(
                    f"{path}:{lineno}: unknown basic tag {tag!r}"
                )
        else:
            act = tag
            if act not in label_set:
                raise CorpusImportError(
                    f"{path}:{lineno}: tag {tag!r} not in the {granularity} "
                    f"inventory ({label_set.name})"
                )
        utts.append((speaker, words, act))
    if not utts:
        return None

    turns: list[Turn] = []
    segments: list[FunctionalSegment] = []
    offset = 0
    cur_speaker = None
    cur_words: list[str] = []
    for speaker, words, act in utts:
        if speaker != cur_speaker:
            if cur_words:
                turns.append(Turn(cur_speaker, tuple(cur_words)))
            cur_speaker = speaker
            cur_words = []
        cur_words.extend(words)
        segments.append(FunctionalSegment(offset, offset + len(words) - 1, act))
        offset += len(words)
    if cur_words:
        turns.append(Turn(cur_speaker, tuple(cur_words)))

    dialog_id = os.path.splitext(os.path.basename(path))[0]
    dialog = Dialog(dialog_id, tuple(turns), Segmentation(tuple(segments)))
    dialog.reference.validate_partition(dialog.word_count)
    return dialog


def import_mrda(root, granularity: str = "basic") -> Corpus:
    """Parse an MRDA distribution rooted at ``root`` into a nolower Corpus."""
    label_set = GRANULARITY_SETS.get(granularity)
    if label_set is None:
        raise CorpusImportError(
            f"unknown MRDA granularity {granularity!r}; "
            f"expected one of {sorted(GRANULARITY_SETS)}"
        )
    paths = sorted(glob.glob(os.path.join(str(root), "**", "*.txt"), recursive=True))
    if not paths:
        raise CorpusImportError(f"no meeting .txt files found under {root}")
    dialogs = []
    for path in paths:
        d = _import_meeting(path, granularity, label_set)
        if d is not None:
            dialogs.append(d)
    return Corpus("mrda", "nolower", label_set, tuple(dialogs))
