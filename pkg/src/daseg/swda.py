"""Importer for the Switchboard Dialog Act (SWDA) distribution.

Targets the CSV release in which each call is a ``sw_*.utt.csv`` file with
one row per utterance (columns include ``act_tag``, ``caller``, ``text``).
Transcription and annotator markup is stripped from the text; DAMSL act
tags are clustered to the 42-act set with Abandoned-or-Turn-Exit merged
into Uninterpretable; ``+``-tagged utterances are attached to the most
recent prior segment of the same speaker as continuation parts.

The exact markup-stripping rules live in :func:`clean_text`; they are the
contract behind the corpus word counts.
"""

from __future__ import annotations

import csv
import glob
import os
import re

from .coding import TURN_ESCAPE, TURN_SENTINEL
from .corpus import Corpus, Dialog, FunctionalSegment, Segmentation, Turn
from .errors import CorpusImportError
from .labels import SWDA_42, SWDA_TAG_TO_ACT, LabelSet

# Markup removed wholesale: <<annotator comments>>, <non-verbal events>,
# curly-brace discourse codes ({D ...} keeps the words, drops the marker),
# repair brackets ([ reparandum + repair ] keeps the words), and
# uncertain-transcription parentheses ((...)) keep the words.
_COMMENT_RE = re.compile(r"<<[^>]*>>|<[^>]*>")
_BRACE_OPEN_RE = re.compile(r"\{[A-Za-z]\b")
_PAREN_RE = re.compile(r"\(\(|\)\)")
_PLUS_TOKEN_RE = re.compile(r"(?<!\S)\+(?!\S)")


def clean_text(text: str) -> list[str]:
    """Strip SWDA transcription/annotator markup, keeping spoken words.

    Word-attached punctuation survives (this is the nolower variant);
    tokens without any alphanumeric character are markup and are dropped.
    """
    text = _COMMENT_RE.sub(" ", text)
    text = _BRACE_OPEN_RE.sub(" ", text)
    text = text.replace("{", " ").replace("}", " ")
    text = _PAREN_RE.sub(" ", text)
    text = text.replace("[", " ").replace("]", " ")
    text = _PLUS_TOKEN_RE.sub(" ", text)
    text = text.replace("/", " ").replace("#", " ")
    words = []
    for token in text.split():
        if not any(c.isalnum() for c in token):
            continue
        if token == TURN_SENTINEL:
            token = TURN_ESCAPE
        words.append(token)
    return words


def cluster_act_tag(raw: str) -> str:
    """Cluster a raw DAMSL act tag to the 42-act inventory's tag.

    Returns ``+`` unchanged for continuation rows.  Abandoned-or-Turn-Exit
    (``%-``) folds into Uninterpretable (``%``).
    """
    tag = re.split(r"\s*[,;]\s*", raw.strip())[0]
    if tag == "+":
        return "+"
    tag = re.sub(r"[()@*]", "", tag)
    # Specials that keep (or are defined by) their ^ suffix.
    if tag in ("qy^d", "qw^d", "b^m"):
        return tag
    if tag == "nn^e":
        return "ng"
    if tag == "ny^e":
        return "na"
    for special in ("^q", "^2", "^h", "^g"):
        if special in tag:
            return special
    tag = re.sub(r"(.+?)\^.*", r"\1", tag)
    if tag in ("qr", "qy"):
        return "qy"
    if tag in ("fe", "ba"):
        return "ba"
    if tag in ("oo", "co", "cc", "oo_co_cc"):
        return "oo_co_cc"
    if tag in ("fx", "sv"):
        return "sv"
    if tag in ("aap", "am", "aap_am"):
        return "aap_am"
    if tag in ("arp", "nd", "arp_nd"):
        return "arp_nd"
    if tag in ("fo", "o", "fw", '"', "by", "bc", 'fo_o_fw_"_by_bc'):
        return 'fo_o_fw_"_by_bc'
    if tag in ("%", "%-", "x-"):
        return "%"
    if tag.startswith("%"):
        return "%"
    return tag


def _import_call(path: str, label_set: LabelSet, stats: dict) -> Dialog | None:
    try:
        with open(path, encoding="utf-8", errors="replace") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise CorpusImportError(f"cannot read {path}: {e}") from None
    if not rows or "act_tag" not in rows[0] or "caller" not in rows[0]:
        raise CorpusImportError(f"{path}: not an SWDA utterance CSV")

    conv = rows[0].get("conversation_no") or os.path.basename(path)
    dialog_id = f"sw{conv}"

    # (speaker, words, act, continues) in transcript order
    utts: list[dict] = []
    last_seg_by_speaker: dict[str, int] = {}
    for row in rows:
        words = clean_text(row["text"])
        if not words:
            continue
        speaker = row["caller"].strip()
        tag = cluster_act_tag(row["act_tag"])
        if tag == "+":
            prior = last_seg_by_speaker.get(speaker)
            if prior is None:
                # Dialog-initial continuation with nothing to attach to:
                # treated as Uninterpretable.
                stats["orphan_continuations"] = stats.get("orphan_continuations", 0) + 1
                act = SWDA_TAG_TO_ACT["%"]
                utts.append({"speaker": speaker, "words": words, "act": act,
                             "continues": False})
                last_seg_by_speaker[speaker] = len(utts) - 1
                continue
            utts[prior]["continues"] = True
            stats["continuations"] = stats.get("continuations", 0) + 1
            utts.append({"speaker": speaker, "words": words,
                         "act": utts[prior]["act"], "continues": False})
            last_seg_by_speaker[speaker] = len(utts) - 1
            continue
        act = SWDA_TAG_TO_ACT.get(tag)
        if act is None or act not in label_set:
            raise CorpusImportError(
                f"{path}: act tag {row['act_tag']!r} (clustered: {tag!r}) "
                f"is outside the label set {label_set.name}"
            )
        utts.append({"speaker": speaker, "words": words, "act": act,
                     "continues": False})
        last_seg_by_speaker[speaker] = len(utts) - 1

    if not utts:
        return None

    turns: list[Turn] = []
    segments: list[FunctionalSegment] = []
    offset = 0
    cur_speaker = None
    cur_words: list[str] = []
    for u in utts:
        if u["speaker"] != cur_speaker:
            if cur_words:
                turns.append(Turn(cur_speaker, tuple(cur_words)))
            cur_speaker = u["speaker"]
            cur_words = []
        cur_words.extend(u["words"])
        segments.append(
            FunctionalSegment(offset, offset + len(u["words"]) - 1,
                              u["act"], u["continues"])
        )
        offset += len(u["words"])
    if cur_words:
        turns.append(Turn(cur_speaker, tuple(cur_words)))

    dialog = Dialog(dialog_id, tuple(turns), Segmentation(tuple(segments)))
    dialog.reference.validate_partition(dialog.word_count)
    return dialog


def import_swda(root, label_set: LabelSet = SWDA_42) -> Corpus:
    """Parse an SWDA distribution rooted at ``root`` into a nolower Corpus."""
    pattern = os.path.join(str(root), "**", "sw_*.csv")
    paths = sorted(glob.glob(pattern, recursive=True))
    if not paths:
        raise CorpusImportError(f"no sw_*.csv call files found under {root}")
    stats: dict = {}
    dialogs = []
    for path in paths:
        d = _import_call(path, label_set, stats)
        if d is not None:
            dialogs.append(d)
    return Corpus("swda", "nolower", label_set, tuple(dialogs), stats)
