"""Predictions interchange format.

A newline-delimited UTF-8 file: the first line is a header record naming
the label set, corpus variant, and producer; each following line carries one
dialog's per-word joint labels.  This is the surface through which any
external model delivers hypotheses for scoring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .corpus import Corpus
from .errors import PredictionsFormatError
from .labels import LabelSet, is_end_label, joint_label_act

PREDICTIONS_FORMAT = "daseg-predictions"
PREDICTIONS_VERSION = 1


@dataclass
class Predictions:
    label_set: LabelSet
    variant: str
    producer: str
    by_dialog: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def validate(self) -> None:
        for did, labels in self.by_dialog.items():
            for label in labels:
                _check_label(label, self.label_set, where=f"dialog {did}")

    def add(self, dialog_id: str, labels) -> None:
        if dialog_id in self.by_dialog:
            raise PredictionsFormatError(f"duplicate dialog id {dialog_id!r}")
        labels = tuple(labels)
        for label in labels:
            _check_label(label, self.label_set, where=f"dialog {dialog_id}")
        self.by_dialog[dialog_id] = labels


def _check_label(label: str, label_set: LabelSet, where: str = "") -> None:
    prefix = f"{where}: " if where else ""
    if label == "I":
        return
    if not is_end_label(label):
        raise PredictionsFormatError(f"{prefix}malformed label {label!r}")
    act = joint_label_act(label)
    if act not in label_set:
        raise PredictionsFormatError(
            f"{prefix}act {act!r} not in label set {label_set.name}"
        )


def write_predictions(preds: Predictions, path) -> None:
    preds.validate()
    with open(path, "w", encoding="utf-8") as f:
        header = {
            "format": PREDICTIONS_FORMAT,
            "version": PREDICTIONS_VERSION,
            "label_set": preds.label_set.to_dict(),
            "variant": preds.variant,
            "producer": preds.producer,
        }
        f.write(json.dumps(header, ensure_ascii=False) + "\n")
        for did, labels in preds.by_dialog.items():
            rec = {"dialog_id": did, "labels": list(labels)}
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


def read_predictions(path) -> Predictions:
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise PredictionsFormatError(f"{path}: empty predictions file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise PredictionsFormatError(f"{path}:1: bad header: {e}") from None
    if header.get("format") != PREDICTIONS_FORMAT:
        raise PredictionsFormatError(f"{path}: not a {PREDICTIONS_FORMAT} file")
    if header.get("version") != PREDICTIONS_VERSION:
        raise PredictionsFormatError(
            f"{path}: unsupported predictions version {header.get('version')}"
        )
    try:
        label_set = LabelSet.from_dict(header["label_set"])
        preds = Predictions(label_set, header["variant"], header.get("producer", ""))
    except (KeyError, TypeError, ValueError) as e:
        raise PredictionsFormatError(f"{path}:1: bad header: {e}") from None

    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            did = rec["dialog_id"]
            labels = rec["labels"]
            if not isinstance(labels, list):
                raise TypeError("labels must be a list")
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise PredictionsFormatError(f"{path}:{lineno}: bad record: {e}") from None
        if did in preds.by_dialog:
            raise PredictionsFormatError(
                f"{path}:{lineno}: duplicate dialog id {did!r}"
            )
        for label in labels:
            try:
                _check_label(label, label_set)
            except PredictionsFormatError as e:
                raise PredictionsFormatError(f"{path}:{lineno}: {e}") from None
        preds.by_dialog[did] = tuple(labels)
    return preds


def validate_against(preds: Predictions, corpus: Corpus) -> list[str]:
    """All violations preventing the pair from being scored (empty = OK)."""
    violations = []
    if preds.variant != corpus.variant:
        violations.append(
            f"variant mismatch: predictions are {preds.variant!r}, "
            f"corpus is {corpus.variant!r}"
        )
    if tuple(preds.label_set.acts) != tuple(corpus.label_set.acts):
        violations.append(
            f"label set mismatch: predictions use {preds.label_set.name!r}, "
            f"corpus uses {corpus.label_set.name!r}"
        )
    corpus_ids = {d.id for d in corpus.dialogs}
    pred_ids = set(preds.by_dialog)
    for did in sorted(corpus_ids - pred_ids):
        violations.append(f"missing predictions for dialog {did!r}")
    for did in sorted(pred_ids - corpus_ids):
        violations.append(f"predictions for unknown dialog {did!r}")
    for d in corpus.dialogs:
        labels = preds.by_dialog.get(d.id)
        if labels is None:
            continue
        if len(labels) != d.word_count:
            violations.append(
                f"dialog {d.id!r}: {len(labels)} labels for {d.word_count} words"
            )
    return violations
