"""Segment-level Levenshtein alignment and error analyses.

Alignments treat two segmentations of the same word sequence as symbol
sequences under unit edit costs.  In ``boundary`` mode two segments are
equal when they start and end at the same words; ``labeled`` mode
additionally requires the same dialog act.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coding import canonical, decode_joint
from .corpus import Corpus, FunctionalSegment, Segmentation
from .errors import EvaluationError
from .predio import Predictions, validate_against

MODES = ("boundary", "labeled")


@dataclass(frozen=True)
class AlignOp:
    op: str  # "match" | "substitute" | "insert" | "delete"
    ref: FunctionalSegment | None = None
    hyp: FunctionalSegment | None = None


@dataclass(frozen=True)
class SegmentAlignment:
    ops: tuple[AlignOp, ...]
    mode: str

    @property
    def distance(self) -> int:
        return sum(1 for op in self.ops if op.op != "match")

    def count(self, kind: str) -> int:
        return sum(1 for op in self.ops if op.op == kind)


def _segments_equal(a: FunctionalSegment, b: FunctionalSegment, mode: str) -> bool:
    if a.start != b.start or a.end != b.end:
        return False
    return mode == "boundary" or a.act == b.act


def align_segments(ref: Segmentation, hyp: Segmentation, mode: str) -> SegmentAlignment:
    """Levenshtein alignment of two partitions of the same word sequence.

    Equal segments are always matched: the objective is lexicographic, first
    maximizing match ops and then minimizing the remaining edit ops.  Because
    partitions admit at most one exact counterpart per segment and equal pairs
    never cross, the match count equals the number of segments with an exact
    counterpart, which keeps alignment counts and the segment error rates on
    one shared definition of equality.  Ties are resolved at each backtrace
    step by preferring match > substitute > delete > insert.
    """
    if mode not in MODES:
        raise EvaluationError(f"unknown alignment mode {mode!r}")
    if ref.word_count != hyp.word_count:
        raise EvaluationError(
            f"word count mismatch: reference {ref.word_count}, "
            f"hypothesis {hyp.word_count}"
        )
    r, h = ref.segments, hyp.segments
    m, n = len(r), len(h)
    # d[i][j] = (-matches, edit distance) between r[:i] and h[:j]
    d = [[(0, 0)] * (n + 1) for _ in range(m + 1)]
    choice = [[""] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        d[i][0] = (0, i)
        choice[i][0] = "delete"
    for j in range(1, n + 1):
        d[0][j] = (0, j)
        choice[0][j] = "insert"
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            equal = _segments_equal(r[i - 1], h[j - 1], mode)
            diag = d[i - 1][j - 1]
            # candidates in tie-break preference order
            candidates = []
            if equal:
                candidates.append(((diag[0] - 1, diag[1]), "match"))
            else:
                candidates.append(((diag[0], diag[1] + 1), "substitute"))
            up = d[i - 1][j]
            candidates.append(((up[0], up[1] + 1), "delete"))
            left = d[i][j - 1]
            candidates.append(((left[0], left[1] + 1), "insert"))
            best, op = candidates[0]
            for cand, cop in candidates[1:]:
                if cand < best:
                    best, op = cand, cop
            d[i][j] = best
            choice[i][j] = op

    ops: list[AlignOp] = []
    i, j = m, n
    while i > 0 or j > 0:
        op = choice[i][j]
        if op == "match":
            ops.append(AlignOp("match", r[i - 1], h[j - 1]))
            i, j = i - 1, j - 1
        elif op == "substitute":
            ops.append(AlignOp("substitute", r[i - 1], h[j - 1]))
            i, j = i - 1, j - 1
        elif op == "delete":
            ops.append(AlignOp("delete", r[i - 1], None))
            i -= 1
        else:
            ops.append(AlignOp("insert", None, h[j - 1]))
            j -= 1
    ops.reverse()
    return SegmentAlignment(tuple(ops), mode)


def hypothesis_pairs(ref: Corpus, hyp: Predictions):
    """Yield (dialog, canonical reference segmentation, decoded hypothesis).

    Raises on the first violation that would make the pair unscorable.
    """
    violations = validate_against(hyp, ref)
    if violations:
        raise EvaluationError("; ".join(violations))
    for d in ref.dialogs:
        if d.reference is None:
            raise EvaluationError(f"dialog {d.id} has no reference segmentation")
        ref_seg = canonical(d.reference, ref.label_set)
        hyp_seg = decode_joint(hyp.by_dialog[d.id], ref.label_set)
        yield d, ref_seg, hyp_seg


# ---------------------------------------------------------------------------
# Per-act attribution and model comparison
# ---------------------------------------------------------------------------

@dataclass
class ActRates:
    act: str
    count: int  # reference support
    dser: float
    der: float


def per_act_rates(ref: Corpus, hyp: Predictions) -> list[ActRates]:
    """Per-act DSER and DER over reference segments bearing each act.

    DER attribution counts labeled-mode substitutions and deletions against
    the reference act and insertions against the hypothesized act, so a
    per-act DER may exceed 100%.
    """
    support: dict[str, int] = {}
    dser_num: dict[str, int] = {}
    der_num: dict[str, int] = {}
    for _d, ref_seg, hyp_seg in hypothesis_pairs(ref, hyp):
        hyp_bounds = {(s.start, s.end) for s in hyp_seg.segments}
        for seg in ref_seg.segments:
            support[seg.act] = support.get(seg.act, 0) + 1
            if (seg.start, seg.end) not in hyp_bounds:
                dser_num[seg.act] = dser_num.get(seg.act, 0) + 1
        for op in align_segments(ref_seg, hyp_seg, "labeled").ops:
            if op.op in ("substitute", "delete"):
                der_num[op.ref.act] = der_num.get(op.ref.act, 0) + 1
            elif op.op == "insert":
                der_num[op.hyp.act] = der_num.get(op.hyp.act, 0) + 1
    rows = []
    for act in ref.label_set.acts:
        n = support.get(act, 0)
        if n == 0:
            continue
        rows.append(ActRates(
            act=act,
            count=n,
            dser=100.0 * dser_num.get(act, 0) / n,
            der=100.0 * der_num.get(act, 0) / n,
        ))
    return rows


@dataclass
class ActGainRow:
    act: str
    count: int
    rate_a: float
    rate_b: float

    @property
    def abs_gain(self) -> float:
        return self.rate_b - self.rate_a


@dataclass
class ActGainTable:
    rate: str  # "DSER" | "DER"
    rows: list[ActGainRow]
    never_recognized_a: list[str]
    never_recognized_b: list[str]


def _never_recognized(ref: Corpus, hyp: Predictions) -> list[str]:
    """Acts with reference support whose segments were never exactly
    recognized (boundaries and label)."""
    support: dict[str, int] = {}
    correct: dict[str, int] = {}
    for _d, ref_seg, hyp_seg in hypothesis_pairs(ref, hyp):
        labeled = {(s.start, s.end, s.act) for s in hyp_seg.segments}
        for seg in ref_seg.segments:
            support[seg.act] = support.get(seg.act, 0) + 1
            if (seg.start, seg.end, seg.act) in labeled:
                correct[seg.act] = correct.get(seg.act, 0) + 1
    return [a for a in ref.label_set.acts
            if support.get(a, 0) > 0 and correct.get(a, 0) == 0]


def compare_models(ref: Corpus, hyp_a: Predictions, hyp_b: Predictions,
                   rate: str = "DSER", min_count: int = 10) -> ActGainTable:
    """Per-act gain of model B over model A, sorted by absolute gain.

    Rows cover acts with reference support >= min_count; negative gains mean
    model B has the lower error rate.
    """
    if rate not in ("DSER", "DER"):
        raise EvaluationError(f"unknown rate {rate!r}")
    rates_a = {r.act: r for r in per_act_rates(ref, hyp_a)}
    rates_b = {r.act: r for r in per_act_rates(ref, hyp_b)}
    rows = []
    for act, ra in rates_a.items():
        if ra.count < min_count:
            continue
        rb = rates_b[act]
        value = lambda r: r.dser if rate == "DSER" else r.der
        rows.append(ActGainRow(act, ra.count, value(ra), value(rb)))
    rows.sort(key=lambda r: (r.abs_gain, r.act))
    return ActGainTable(
        rate=rate,
        rows=rows,
        never_recognized_a=_never_recognized(ref, hyp_a),
        never_recognized_b=_never_recognized(ref, hyp_b),
    )


# ---------------------------------------------------------------------------
# Punctuation analyses
# ---------------------------------------------------------------------------

_PUNCT = set(".,?!;:\"'()")
_FINAL_CLASSES = {"." : "full_stop", "!": "exclamation_mark", "?": "question_mark"}


def final_punctuation_class(word: str) -> str:
    """Class of the longest trailing punctuation run, by its last character."""
    if not word or word[-1] not in _PUNCT:
        return "none"
    return _FINAL_CLASSES.get(word[-1], "none")


@dataclass
class PunctuationTable:
    kind: str  # "final_by_act" | "mid_segment"
    rows: dict[str, dict]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "rows": self.rows}


def punctuation_by_act(corpus: Corpus, hyp: Predictions | None = None) -> PunctuationTable:
    """Per-act counts of segment-final punctuation, optionally with the share
    of each cell's segments not recognized exactly (boundaries and label)."""
    if corpus.variant != "nolower":
        raise EvaluationError(
            "punctuation analysis needs a nolower corpus (punctuation present)"
        )
    cells: dict[str, dict[str, list[int]]] = {}  # act -> class -> [count, errors]

    def tally(dialog, ref_seg, hyp_labeled):
        words = dialog.words
        for seg in ref_seg.segments:
            klass = final_punctuation_class(words[seg.end])
            cell = cells.setdefault(seg.act, {}).setdefault(klass, [0, 0])
            cell[0] += 1
            if hyp_labeled is not None and \
                    (seg.start, seg.end, seg.act) not in hyp_labeled:
                cell[1] += 1

    if hyp is not None:
        for d, ref_seg, hyp_seg in hypothesis_pairs(corpus, hyp):
            labeled = {(s.start, s.end, s.act) for s in hyp_seg.segments}
            tally(d, ref_seg, labeled)
    else:
        for d in corpus.dialogs:
            if d.reference is None:
                raise EvaluationError(f"dialog {d.id} has no reference segmentation")
            tally(d, canonical(d.reference, corpus.label_set), None)

    rows = {}
    for act, by_class in cells.items():
        row = {}
        for klass in ("full_stop", "exclamation_mark", "question_mark", "none"):
            count, errors = by_class.get(klass, [0, 0])
            entry = {"count": count}
            if hyp is not None:
                entry["error_pct"] = (100.0 * errors / count) if count else 0.0
            row[klass] = entry
        rows[act] = row
    return PunctuationTable("final_by_act", rows)


_MID_CLASSES = {".": "full_stop", ",": "comma", "?": "question_mark"}


def mid_segment_punctuation(corpus: Corpus,
                            hyp: Predictions | None = None) -> PunctuationTable:
    """Counts of punctuation characters attached to non-final segment words.

    With ``hyp`` given, segments come from the decoded predictions; otherwise
    from the reference.  Only full stops, commas, and question marks are
    tabulated, alongside the total segment count.
    """
    if corpus.variant != "nolower":
        raise EvaluationError(
            "punctuation analysis needs a nolower corpus (punctuation present)"
        )
    counts = {"full_stop": 0, "comma": 0, "question_mark": 0, "segments": 0}

    def tally(dialog, segmentation):
        words = dialog.words
        counts["segments"] += len(segmentation.segments)
        for seg in segmentation.segments:
            for i in range(seg.start, seg.end):  # non-final words only
                for ch in words[i]:
                    klass = _MID_CLASSES.get(ch)
                    if klass:
                        counts[klass] += 1

    if hyp is not None:
        for d, _ref_seg, hyp_seg in hypothesis_pairs(corpus, hyp):
            tally(d, hyp_seg)
    else:
        for d in corpus.dialogs:
            if d.reference is None:
                raise EvaluationError(f"dialog {d.id} has no reference segmentation")
            tally(d, canonical(d.reference, corpus.label_set))
    source = "predictions" if hyp is not None else "reference"
    return PunctuationTable("mid_segment", {source: counts})
