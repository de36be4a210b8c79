"""Baseline joint segmenter/recognizer.

A linear-chain model over the joint E/I labels: binary context features
score emissions, label-bigram weights score transitions, and Viterbi search
decodes.  Training is the averaged structured perceptron, which is
deterministic given a seed and needs no numerical tuning.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field

from .coding import TURN_SENTINEL, LabelSequence, encode_joint
from .corpus import Corpus, Dialog
from .errors import DasegError, ModelFormatError
from .labels import LabelSet
from .predio import Predictions

MODEL_FORMAT = "daseg-tagger"
MODEL_VERSION = 1

START = "<s>"
STOP = "</s>"
BOS_WORD = "<BOS>"
EOS_WORD = "<EOS>"


@dataclass(frozen=True)
class TokenContext:
    """Everything the feature extractor may look at for one word."""

    word: str
    prev2: str | None
    prev: str | None
    next: str | None
    next2: str | None
    first_in_turn: bool
    last_in_turn: bool
    speaker_change: bool


def word_shape(word: str) -> str:
    """Case/digit pattern with runs compressed, e.g. "Okay." -> "Xx-"."""
    out = []
    for c in word:
        if c.isupper():
            k = "X"
        elif c.islower():
            k = "x"
        elif c.isdigit():
            k = "d"
        else:
            k = "-"
        if not out or out[-1] != k:
            out.append(k)
    return "".join(out)


def extract_features(ctx: TokenContext) -> tuple[str, ...]:
    """Deterministic binary feature identifiers for one token context."""
    low = ctx.word.lower()
    feats = [
        "bias",
        f"w0={low}",
        f"w-1={ctx.prev.lower() if ctx.prev is not None else BOS_WORD}",
        f"w+1={ctx.next.lower() if ctx.next is not None else EOS_WORD}",
        f"w-2={ctx.prev2.lower() if ctx.prev2 is not None else BOS_WORD}",
        f"w+2={ctx.next2.lower() if ctx.next2 is not None else EOS_WORD}",
        f"shape={word_shape(ctx.word)}",
    ]
    if ctx.word.endswith("."):
        feats.append("ends-with-.")
    if ctx.word.endswith("?"):
        feats.append("ends-with-?")
    if ctx.word.endswith("!"):
        feats.append("ends-with-!")
    if "," in ctx.word:
        feats.append("contains-comma")
    if ctx.first_in_turn:
        feats.append("first-in-turn")
    if ctx.last_in_turn:
        feats.append("last-in-turn")
    if ctx.speaker_change:
        feats.append("speaker-change")
    return tuple(feats)


def _turn_contexts(turn_words, first_turn: bool) -> list[TokenContext]:
    n = len(turn_words)

    def at(i):
        return turn_words[i] if 0 <= i < n else None

    return [
        TokenContext(
            word=turn_words[i],
            prev2=at(i - 2), prev=at(i - 1), next=at(i + 1), next2=at(i + 2),
            first_in_turn=(i == 0),
            last_in_turn=(i == n - 1),
            speaker_change=(i == 0 and not first_turn),
        )
        for i in range(n)
    ]


def dialog_contexts(dialog: Dialog, unit: str) -> list[TokenContext]:
    """One TokenContext per word, in global word order.

    ``turn``: neighbors never cross a turn boundary and the speaker-change
    flag stays off (the decoder sees one turn at a time).
    ``dialog``: neighbors come from the serialized item sequence, so the
    TURN sentinel appears as a neighboring token and the word right after a
    sentinel carries the speaker-change flag.
    """
    if unit == "turn":
        contexts = []
        for turn in dialog.turns:
            n = len(turn.words)
            for i, _ in enumerate(turn.words):
                at = lambda j: turn.words[j] if 0 <= j < n else None
                contexts.append(TokenContext(
                    word=turn.words[i],
                    prev2=at(i - 2), prev=at(i - 1),
                    next=at(i + 1), next2=at(i + 2),
                    first_in_turn=(i == 0),
                    last_in_turn=(i == n - 1),
                    speaker_change=False,
                ))
        return contexts
    if unit != "dialog":
        raise DasegError(f"unknown prediction unit {unit!r}")

    items: list[str] = []
    flags: list[tuple[bool, bool, bool] | None] = []  # None for sentinels
    for t, turn in enumerate(dialog.turns):
        if t > 0:
            items.append(TURN_SENTINEL)
            flags.append(None)
        n = len(turn.words)
        for i, w in enumerate(turn.words):
            items.append(w)
            flags.append((i == 0, i == n - 1, i == 0 and t > 0))
    m = len(items)
    at = lambda j: items[j] if 0 <= j < m else None
    contexts = []
    for j, f in enumerate(flags):
        if f is None:
            continue
        first, last, change = f
        contexts.append(TokenContext(
            word=items[j],
            prev2=at(j - 2), prev=at(j - 1), next=at(j + 1), next2=at(j + 2),
            first_in_turn=first, last_in_turn=last, speaker_change=change,
        ))
    return contexts


@dataclass
class TaggerModel:
    label_set: LabelSet
    # feature id -> joint label -> weight
    emission: dict[str, dict[str, float]] = field(default_factory=dict)
    # previous label (or <s>) -> next label (or </s>) -> weight
    transition: dict[str, dict[str, float]] = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "label_set": self.label_set.to_dict(),
            "emission": self.emission,
            "transition": self.transition,
            "config": self.config,
            "metadata": self.metadata,
        }

    @staticmethod
    def from_dict(d: dict) -> "TaggerModel":
        return TaggerModel(
            label_set=LabelSet.from_dict(d["label_set"]),
            emission=d["emission"],
            transition=d["transition"],
            config=d.get("config", {}),
            metadata=d.get("metadata", {}),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, TaggerModel) and self.to_dict() == other.to_dict()


def viterbi(model: TaggerModel, contexts: list[TokenContext]) -> list[str]:
    """Argmax label sequence under emission + transition + start/stop scores.

    Score ties are broken toward the lower joint-label index (I first) at
    every backtrace decision.
    """
    if not contexts:
        raise DasegError("cannot decode an empty context sequence")
    labels = model.label_set.joint_labels()
    k = len(labels)
    emission = model.emission
    trans = model.transition

    def emit_scores(ctx) -> list[float]:
        scores = [0.0] * k
        for f in extract_features(ctx):
            row = emission.get(f)
            if row:
                for j, label in enumerate(labels):
                    w = row.get(label)
                    if w:
                        scores[j] += w
        return scores

    start_row = trans.get(START, {})
    tr = [[trans.get(a, {}).get(b, 0.0) for b in labels] for a in labels]
    stop = [trans.get(a, {}).get(STOP, 0.0) for a in labels]

    e0 = emit_scores(contexts[0])
    score = [start_row.get(label, 0.0) + e0[j] for j, label in enumerate(labels)]
    back: list[list[int]] = []
    for ctx in contexts[1:]:
        e = emit_scores(ctx)
        new_score = [0.0] * k
        pointers = [0] * k
        for j in range(k):
            best_i = 0
            best = score[0] + tr[0][j]
            for i in range(1, k):
                s = score[i] + tr[i][j]
                if s > best:  # strict: ties keep the lower index
                    best, best_i = s, i
            new_score[j] = best + e[j]
            pointers[j] = best_i
        score = new_score
        back.append(pointers)

    best_j = 0
    best = score[0] + stop[0]
    for j in range(1, k):
        s = score[j] + stop[j]
        if s > best:
            best, best_j = s, j
    path = [best_j]
    for pointers in reversed(back):
        path.append(pointers[path[-1]])
    path.reverse()
    return [labels[j] for j in path]


def sequence_score(model: TaggerModel, contexts: list[TokenContext],
                   labels: list[str]) -> float:
    """Total linear score of one labeling (used by tests and diagnostics)."""
    trans = model.transition
    total = trans.get(START, {}).get(labels[0], 0.0)
    prev = None
    for ctx, label in zip(contexts, labels):
        if prev is not None:
            total += trans.get(prev, {}).get(label, 0.0)
        row_feats = extract_features(ctx)
        for f in row_feats:
            total += model.emission.get(f, {}).get(label, 0.0)
        prev = label
    total += trans.get(prev, {}).get(STOP, 0.0)
    return total


class _AveragedWeights:
    """Nested weight store with lazy averaging (Daume's trick).

    ``live`` is the raw weight table (outer key -> inner key -> weight),
    readable in place by the decoder during training; ``u`` accumulates
    update-time-weighted deltas so the average never needs a full pass per
    example.
    """

    def __init__(self):
        self.live: dict[str, dict[str, float]] = {}
        self.u: dict = {}
        self.c = 1

    def add(self, outer: str, inner: str, delta: float) -> None:
        row = self.live.setdefault(outer, {})
        row[inner] = row.get(inner, 0.0) + delta
        self.u[(outer, inner)] = self.u.get((outer, inner), 0.0) + self.c * delta

    def averaged(self) -> dict[str, dict[str, float]]:
        out: dict[str, dict[str, float]] = {}
        for outer, row in self.live.items():
            for inner, v in row.items():
                a = v - self.u[(outer, inner)] / self.c
                if a:
                    out.setdefault(outer, {})[inner] = a
        return out

    def raw(self) -> dict[str, dict[str, float]]:
        return {outer: {k: v for k, v in row.items() if v}
                for outer, row in self.live.items()}


def _pooled_macro_f1(ref_labels: list[str], hyp_labels: list[str]) -> float:
    from .metrics import token_f1

    if not ref_labels:
        return 0.0
    return token_f1(ref_labels, hyp_labels)["macro"]


DEFAULT_CONFIG = {"epochs": 10, "seed": 42, "averaging": True, "unit": "dialog"}


def train(train_corpus: Corpus, dev_corpus: Corpus, config: dict | None = None) -> TaggerModel:
    """Averaged structured-perceptron training with dev-set model selection.

    Dialogs are shuffled each epoch by a seeded generator; after every epoch
    the (averaged) weights are scored on the dev set by pooled macro F1 and
    the best epoch's weights are returned.  Reruns with identical inputs and
    config produce bit-identical models.
    """
    cfg = dict(DEFAULT_CONFIG)
    if config:
        cfg.update(config)
    if tuple(train_corpus.label_set.acts) != tuple(dev_corpus.label_set.acts):
        raise DasegError("train and dev corpora use different label sets")
    if train_corpus.variant != dev_corpus.variant:
        raise DasegError("train and dev corpora use different variants")
    cfg["variant"] = train_corpus.variant
    label_set = train_corpus.label_set
    unit = cfg["unit"]

    examples = []
    for d in train_corpus.dialogs:
        if d.reference is None:
            raise DasegError(f"training dialog {d.id} has no reference")
        contexts = dialog_contexts(d, unit)
        gold = list(encode_joint(d.reference, label_set, d.id).labels)
        examples.append((contexts, gold))
    dev_gold: list[str] = []
    dev_contexts = []
    for d in dev_corpus.dialogs:
        if d.reference is None:
            raise DasegError(f"dev dialog {d.id} has no reference")
        dev_contexts.append(dialog_contexts(d, unit))
        dev_gold.extend(encode_joint(d.reference, label_set, d.id).labels)

    feat_w = _AveragedWeights()
    trans_w = _AveragedWeights()
    rng = random.Random(cfg["seed"])
    order = list(range(len(examples)))

    def weights():
        if cfg["averaging"]:
            return feat_w.averaged(), trans_w.averaged()
        return feat_w.raw(), trans_w.raw()

    live_model = TaggerModel(label_set, feat_w.live, trans_w.live, cfg, {})
    best_model = None
    best_f1 = -1.0
    for epoch in range(1, cfg["epochs"] + 1):
        rng.shuffle(order)
        for idx in order:
            contexts, gold = examples[idx]
            pred = viterbi(live_model, contexts)
            if pred != gold:
                _perceptron_update(feat_w, trans_w, contexts, gold, pred)
            feat_w.c += 1
            trans_w.c += 1
        fw, tw = weights()
        candidate = TaggerModel(label_set, fw, tw, dict(cfg), {"epoch": epoch})
        dev_pred: list[str] = []
        for ctxs in dev_contexts:
            dev_pred.extend(viterbi(candidate, ctxs))
        f1 = _pooled_macro_f1(dev_gold, dev_pred)
        candidate.metadata["dev_macro_f1"] = f1
        if f1 > best_f1:
            best_f1 = f1
            best_model = candidate
    assert best_model is not None
    return best_model


def _perceptron_update(feat_w, trans_w, contexts, gold, pred) -> None:
    for ctx, g, p in zip(contexts, gold, pred):
        if g == p:
            continue
        for f in extract_features(ctx):
            feat_w.add(f, g, 1.0)
            feat_w.add(f, p, -1.0)
    g_prev = p_prev = START
    for g, p in zip(gold, pred):
        if (g_prev, g) != (p_prev, p):
            trans_w.add(g_prev, g, 1.0)
            trans_w.add(p_prev, p, -1.0)
        g_prev, p_prev = g, p
    if (g_prev, STOP) != (p_prev, STOP):
        trans_w.add(g_prev, STOP, 1.0)
        trans_w.add(p_prev, STOP, -1.0)


def predict(model: TaggerModel, corpus: Corpus, unit: str = "dialog") -> Predictions:
    """Decode every dialog; ``turn`` decodes each turn independently."""
    trained_variant = model.config.get("variant")
    if trained_variant and trained_variant != corpus.variant:
        raise DasegError(
            f"model was trained on the {trained_variant!r} variant but the "
            f"corpus is {corpus.variant!r}"
        )
    preds = Predictions(model.label_set, corpus.variant, "daseg-perceptron")
    for d in corpus.dialogs:
        if unit == "turn":
            labels: list[str] = []
            for t, turn in enumerate(d.turns):
                ctxs = _turn_contexts(turn.words, first_turn=(t == 0))
                # speaker-change is a dialog-level cue; keep it off per turn
                ctxs = [TokenContext(c.word, c.prev2, c.prev, c.next, c.next2,
                                     c.first_in_turn, c.last_in_turn, False)
                        for c in ctxs]
                labels.extend(viterbi(model, ctxs))
        else:
            labels = viterbi(model, dialog_contexts(d, unit))
        preds.add(d.id, labels)
    return preds


# ---------------------------------------------------------------------------
# Persistence: a two-line UTF-8 file -- a header record with a checksum,
# then the canonical-JSON payload.  Round-trips bit-exactly.
# ---------------------------------------------------------------------------

def save(model: TaggerModel, path) -> None:
    payload = json.dumps(model.to_dict(), sort_keys=True, ensure_ascii=False)
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    header = json.dumps({"format": MODEL_FORMAT, "version": MODEL_VERSION,
                         "sha256": digest}, sort_keys=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(header + "\n" + payload + "\n")


def load(path) -> TaggerModel:
    with open(path, encoding="utf-8") as f:
        content = f.read()
    try:
        header_line, payload = content.split("\n", 1)
        payload = payload.rstrip("\n")
        header = json.loads(header_line)
    except (ValueError, json.JSONDecodeError) as e:
        raise ModelFormatError(f"{path}: corrupt model file: {e}") from None
    if header.get("format") != MODEL_FORMAT:
        raise ModelFormatError(f"{path}: not a {MODEL_FORMAT} file")
    if header.get("version") != MODEL_VERSION:
        raise ModelFormatError(
            f"{path}: unsupported model version {header.get('version')}"
        )
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    if digest != header.get("sha256"):
        raise ModelFormatError(f"{path}: checksum mismatch")
    try:
        return TaggerModel.from_dict(json.loads(payload))
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"{path}: bad model payload: {e}") from None
