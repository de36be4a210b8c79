"""Token-level F1 and segment-level error rates.

Segment metrics follow the strict exact-boundary definition: a reference
segment counts as correctly segmented only when some hypothesis segment has
identical start and end words, and as correctly recognized when the act also
matches.

- DSER: share of reference segments without an exact boundary match.
- SegWER: the same numerator and denominator weighted by reference segment
  word counts.
- DER: like DSER but additionally requiring the correct act.
- JointWER: word-weighted DER.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .align import align_segments, hypothesis_pairs
from .coding import LabelSequence, encode_joint
from .corpus import Corpus, Segmentation
from .errors import EvaluationError
from .predio import Predictions


@dataclass
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall,
                "f1": self.f1, "support": self.support}


@dataclass
class MetricsReport:
    micro_f1: float
    macro_f1: float
    dser: float
    segwer: float
    der: float | None
    jointwer: float | None
    per_class: dict[str, ClassScores] = field(default_factory=dict)
    confusion: dict[str, dict[str, int]] = field(default_factory=dict)
    ref_segments: int = 0
    ref_words: int = 0
    tokens: int = 0
    pure_segmentation: bool = False

    def to_dict(self) -> dict:
        return {
            "micro_f1": round(self.micro_f1, 2),
            "macro_f1": round(self.macro_f1, 2),
            "DSER": round(self.dser, 2),
            "SegWER": round(self.segwer, 2),
            "DER": None if self.der is None else round(self.der, 2),
            "JointWER": None if self.jointwer is None else round(self.jointwer, 2),
            "per_class": {k: v.to_dict() for k, v in self.per_class.items()},
            "confusion": self.confusion,
            "denominators": {
                "ref_segments": self.ref_segments,
                "ref_words": self.ref_words,
                "tokens": self.tokens,
            },
        }

    def to_text(self) -> str:
        """Plain-text table in the headline column order."""
        headers = ["micro_f1", "macro_f1", "DSER", "SegWER", "DER", "JointWER"]
        values = [self.micro_f1, self.macro_f1, self.dser, self.segwer,
                  self.der, self.jointwer]
        cells = ["-" if v is None else f"{v:.2f}" for v in values]
        widths = [max(len(h), len(c)) for h, c in zip(headers, cells)]
        head = "  ".join(h.rjust(w) for h, w in zip(headers, widths))
        body = "  ".join(c.rjust(w) for c, w in zip(cells, widths))
        lines = [head, body]
        if self.per_class:
            lines.append("")
            lines.append(f"{'label':<20} {'prec':>8} {'rec':>8} {'f1':>8} {'support':>8}")
            for label, s in sorted(self.per_class.items()):
                lines.append(
                    f"{label:<20} {s.precision:>8.2f} {s.recall:>8.2f} "
                    f"{s.f1:>8.2f} {s.support:>8d}"
                )
        return "\n".join(lines) + "\n"


def _f1_counts(ref, hyp):
    """Per-class true positive / reference / hypothesis counts."""
    tp: dict[str, int] = {}
    ref_n: dict[str, int] = {}
    hyp_n: dict[str, int] = {}
    for r, h in zip(ref, hyp):
        ref_n[r] = ref_n.get(r, 0) + 1
        hyp_n[h] = hyp_n.get(h, 0) + 1
        if r == h:
            tp[r] = tp.get(r, 0) + 1
    return tp, ref_n, hyp_n


def _scores_from_counts(tp, ref_n, hyp_n):
    per_class = {}
    for label in sorted(set(ref_n) | set(hyp_n)):
        t = tp.get(label, 0)
        r = ref_n.get(label, 0)
        h = hyp_n.get(label, 0)
        prec = 100.0 * t / h if h else 0.0
        rec = 100.0 * t / r if r else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        per_class[label] = ClassScores(prec, rec, f1, r)
    total = sum(ref_n.values())
    micro = 100.0 * sum(tp.values()) / total if total else 0.0
    macro = (sum(s.f1 for s in per_class.values()) / len(per_class)
             if per_class else 0.0)
    return micro, macro, per_class


def token_f1(ref: LabelSequence | list[str] | tuple[str, ...],
             hyp: LabelSequence | list[str] | tuple[str, ...]) -> dict:
    """Micro (accuracy) and macro F1 over per-word joint labels.

    Macro averages per-class F1 over the classes present in the reference or
    the hypothesis.
    """
    r = ref.labels if isinstance(ref, LabelSequence) else tuple(ref)
    h = hyp.labels if isinstance(hyp, LabelSequence) else tuple(hyp)
    if len(r) != len(h):
        raise EvaluationError(
            f"label sequence length mismatch: {len(r)} vs {len(h)}"
        )
    micro, macro, per_class = _scores_from_counts(*_f1_counts(r, h))
    return {"micro": micro, "macro": macro, "per_class": per_class}


def _segment_tallies(ref: Segmentation, hyp: Segmentation) -> dict:
    """Integer numerators/denominators from which all four rates derive."""
    hyp_bounds = {(s.start, s.end) for s in hyp.segments}
    hyp_labeled = {(s.start, s.end, s.act) for s in hyp.segments}
    t = {"segments": 0, "words": 0, "dser": 0, "segwer": 0, "der": 0, "jointwer": 0}
    for seg in ref.segments:
        t["segments"] += 1
        t["words"] += seg.length
        if (seg.start, seg.end) not in hyp_bounds:
            t["dser"] += 1
            t["segwer"] += seg.length
        if (seg.start, seg.end, seg.act) not in hyp_labeled:
            t["der"] += 1
            t["jointwer"] += seg.length
    return t


def _rates_from_tallies(t: dict) -> dict:
    segs, words = t["segments"], t["words"]
    return {
        "DSER": 100.0 * t["dser"] / segs if segs else 0.0,
        "SegWER": 100.0 * t["segwer"] / words if words else 0.0,
        "DER": 100.0 * t["der"] / segs if segs else 0.0,
        "JointWER": 100.0 * t["jointwer"] / words if words else 0.0,
    }


def segment_error_rates(ref: Segmentation, hyp: Segmentation) -> dict:
    """The four segment rates for one (reference, hypothesis) pair."""
    if ref.word_count != hyp.word_count:
        raise EvaluationError(
            f"word count mismatch: reference {ref.word_count}, "
            f"hypothesis {hyp.word_count}"
        )
    ref.validate_partition(ref.word_count)
    hyp.validate_partition(ref.word_count)
    return _rates_from_tallies(_segment_tallies(ref, hyp))


def _max_workers() -> int:
    raw = os.environ.get("DASEG_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def evaluate_corpus(ref: Corpus, hyp: Predictions) -> MetricsReport:
    """Corpus-pooled metrics: token scores over all word positions, segment
    rates over all reference segments and words, confusion over the labeled
    segment alignment."""
    pairs = list(hypothesis_pairs(ref, hyp))

    def per_dialog(args):
        dialog, ref_seg, hyp_seg = args
        ref_labels = encode_joint(ref_seg, ref.label_set).labels
        hyp_labels = hyp.by_dialog[dialog.id]
        tallies = _segment_tallies(ref_seg, hyp_seg)
        confusion: dict[str, dict[str, int]] = {}
        for op in align_segments(ref_seg, hyp_seg, "labeled").ops:
            if op.op in ("match", "substitute"):
                row = confusion.setdefault(op.ref.act, {})
                row[op.hyp.act] = row.get(op.hyp.act, 0) + 1
        return _f1_counts(ref_labels, hyp_labels), tallies, confusion

    workers = _max_workers()
    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(per_dialog, pairs))
    else:
        results = [per_dialog(p) for p in pairs]

    tp: dict[str, int] = {}
    ref_n: dict[str, int] = {}
    hyp_n: dict[str, int] = {}
    totals = {"segments": 0, "words": 0, "dser": 0, "segwer": 0,
              "der": 0, "jointwer": 0}
    confusion: dict[str, dict[str, int]] = {}
    for (d_tp, d_ref, d_hyp), tallies, conf in results:
        for k, v in d_tp.items():
            tp[k] = tp.get(k, 0) + v
        for k, v in d_ref.items():
            ref_n[k] = ref_n.get(k, 0) + v
        for k, v in d_hyp.items():
            hyp_n[k] = hyp_n.get(k, 0) + v
        for k, v in tallies.items():
            totals[k] += v
        for ra, row in conf.items():
            dst = confusion.setdefault(ra, {})
            for ha, v in row.items():
                dst[ha] = dst.get(ha, 0) + v

    micro, macro, per_class = _scores_from_counts(tp, ref_n, hyp_n)
    rates = _rates_from_tallies(totals)
    pure = len(ref.label_set.acts) == 1
    return MetricsReport(
        micro_f1=micro,
        macro_f1=macro,
        dser=rates["DSER"],
        segwer=rates["SegWER"],
        der=None if pure else rates["DER"],
        jointwer=None if pure else rates["JointWER"],
        per_class=per_class,
        confusion=confusion,
        ref_segments=totals["segments"],
        ref_words=totals["words"],
        tokens=sum(ref_n.values()),
        pure_segmentation=pure,
    )
