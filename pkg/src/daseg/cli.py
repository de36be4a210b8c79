"""Command-line entry point.

Subcommands wire the library into complete workflows: import native corpora,
inspect statistics, preview the joint coding, train/apply the baseline
tagger, score predictions, compare two models, and tabulate punctuation
correlations.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import align as align_mod
from . import coding, corpus as corpus_mod, metrics, predio, tagger
from .errors import DasegError
from .mrda import import_mrda
from .swda import import_swda


def _load_corpus(path, pure: bool = False):
    c = corpus_mod.read_corpus(path)
    if pure:
        c = corpus_mod.to_pure(c)
    return c


def _write_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")


def _run_config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    return {k: str(v) if v is not None else None for k, v in cfg.items()}


def cmd_import(args) -> int:
    if args.corpus == "swda":
        if args.labelset not in ("42", "1"):
            raise DasegError("SWDA supports --labelset 42 or 1")
        imported = import_swda(args.input)
    else:
        if args.labelset not in ("basic", "general", "full", "1"):
            raise DasegError("MRDA supports --labelset basic|general|full|1")
        granularity = "basic" if args.labelset == "1" else args.labelset
        imported = import_mrda(args.input, granularity)
    if args.labelset == "1":
        imported = corpus_mod.to_pure(imported)
    if args.variant == "lower":
        imported = corpus_mod.normalize(imported, "lower")

    import os
    os.makedirs(args.output_dir, exist_ok=True)
    if args.split_manifest:
        manifest = corpus_mod.load_manifest(args.split_manifest)
        parts = dict(zip(("train", "validation", "test"),
                         corpus_mod.split(imported, manifest)))
    else:
        parts = {"full": imported}
    stats = {}
    for name, part in parts.items():
        path = os.path.join(args.output_dir, f"{name}.corpus")
        corpus_mod.write_corpus(part, path)
        stats[name] = corpus_mod.corpus_stats(part).to_dict()
        print(f"wrote {path}: {stats[name]['dialogs']} dialogs, "
              f"{stats[name]['words']} words, {stats[name]['segments']} segments")
    _write_json({"config": _run_config(args), "stats": stats},
                os.path.join(args.output_dir, "stats.json"))
    return 0


def cmd_stats(args) -> int:
    c = _load_corpus(args.corpus)
    stats = corpus_mod.corpus_stats(c).to_dict()
    print(json.dumps(stats, ensure_ascii=False, indent=2, sort_keys=True))
    return 0


def cmd_encode(args) -> int:
    c = _load_corpus(args.corpus, pure=args.labelset == "1")
    dialog = c.dialog(args.dialog) if args.dialog else c.dialogs[0]
    view = coding.serialize(dialog)
    labels = coding.encode_joint(dialog.reference, c.label_set, dialog.id)
    by_word = dict(zip((i for i in view.word_indices if i is not None),
                       labels.labels))
    windows = coding.chunk(view, args.window)
    for w in windows:
        print(f"# window {w.ordinal} [{w.start}:{w.end})")
        for pos in range(w.start, w.end):
            widx = view.word_indices[pos]
            label = "-" if widx is None else by_word[widx]
            print(f"{view.items[pos]}\t{label}")
    return 0


def cmd_train(args) -> int:
    train_c = _load_corpus(args.train, pure=args.labelset == "1")
    dev_c = _load_corpus(args.dev, pure=args.labelset == "1")
    model = tagger.train(train_c, dev_c, {
        "epochs": args.epochs, "seed": args.seed, "unit": args.unit,
    })
    tagger.save(model, args.model)
    print(f"wrote {args.model}: best epoch {model.metadata.get('epoch')}, "
          f"dev macro F1 {model.metadata.get('dev_macro_f1'):.2f}")
    return 0


def cmd_predict(args) -> int:
    model = tagger.load(args.model)
    c = _load_corpus(args.corpus, pure=len(model.label_set.acts) == 1)
    preds = tagger.predict(model, c, unit=args.unit)
    predio.write_predictions(preds, args.output)
    print(f"wrote {args.output}: {len(preds.by_dialog)} dialogs")
    return 0


def cmd_evaluate(args) -> int:
    pure = args.labelset == "1"
    ref = _load_corpus(args.ref, pure=pure)
    hyp = predio.read_predictions(args.hyp)
    if pure and len(hyp.label_set.acts) != 1:
        raise DasegError(
            "--labelset 1 requires pure-segmentation predictions "
            "(single-act label set)"
        )
    report = metrics.evaluate_corpus(ref, hyp)
    doc = report.to_dict()
    doc["config"] = _run_config(args)
    if args.report:
        _write_json(doc, args.report)
    if args.text:
        with open(args.text, "w", encoding="utf-8") as f:
            f.write(report.to_text())
    print(report.to_text(), end="")
    return 0


def cmd_compare(args) -> int:
    ref = _load_corpus(args.ref)
    hyp_a = predio.read_predictions(args.hyp_a)
    hyp_b = predio.read_predictions(args.hyp_b)
    table = align_mod.compare_models(ref, hyp_a, hyp_b, rate=args.rate,
                                     min_count=args.min_count)
    doc = {
        "config": _run_config(args),
        "rate": table.rate,
        "rows": [
            {"act": r.act, "count": r.count, "rate_a": round(r.rate_a, 2),
             "rate_b": round(r.rate_b, 2), "abs_gain": round(r.abs_gain, 2)}
            for r in table.rows
        ],
        "never_recognized_a": table.never_recognized_a,
        "never_recognized_b": table.never_recognized_b,
    }
    if args.report:
        _write_json(doc, args.report)
    print(f"{'act':<30} {'count':>6} {'rate_A':>8} {'rate_B':>8} {'gain':>8}")
    for r in table.rows:
        print(f"{r.act:<30} {r.count:>6d} {r.rate_a:>8.2f} {r.rate_b:>8.2f} "
              f"{r.abs_gain:>8.2f}")
    return 0


def cmd_analyze_punct(args) -> int:
    c = _load_corpus(args.corpus)
    hyp = predio.read_predictions(args.hyp) if args.hyp else None
    if args.mode == "final":
        table = align_mod.punctuation_by_act(c, hyp)
    else:
        table = align_mod.mid_segment_punctuation(c, hyp)
    doc = table.to_dict()
    doc["config"] = _run_config(args)
    if args.report:
        _write_json(doc, args.report)
    print(json.dumps(table.to_dict(), ensure_ascii=False, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="daseg",
                                description="Dialog act segmentation toolkit")
    sub = p.add_subparsers(dest="subcommand", required=True)

    imp = sub.add_parser("import", help="parse a native corpus distribution")
    imp.add_argument("--corpus", choices=("swda", "mrda"), required=True)
    imp.add_argument("--labelset", default="42",
                     choices=("42", "basic", "general", "full", "1"))
    imp.add_argument("--variant", choices=("lower", "nolower"), default="nolower")
    imp.add_argument("--input", required=True)
    imp.add_argument("--split-manifest")
    imp.add_argument("--output-dir", required=True)
    imp.set_defaults(func=cmd_import)

    st = sub.add_parser("stats", help="print corpus statistics")
    st.add_argument("--corpus", required=True)
    st.set_defaults(func=cmd_stats)

    enc = sub.add_parser("encode", help="preview serialization and joint coding")
    enc.add_argument("--corpus", required=True)
    enc.add_argument("--dialog")
    enc.add_argument("--window", type=int, default=512)
    enc.add_argument("--labelset", default=None, choices=("1",))
    enc.set_defaults(func=cmd_encode)

    tr = sub.add_parser("train", help="train the baseline tagger")
    tr.add_argument("--train", required=True)
    tr.add_argument("--dev", required=True)
    tr.add_argument("--model", required=True)
    tr.add_argument("--epochs", type=int, default=10)
    tr.add_argument("--seed", type=int, default=42)
    tr.add_argument("--unit", choices=("turn", "dialog"), default="dialog")
    tr.add_argument("--labelset", default=None, choices=("1",))
    tr.set_defaults(func=cmd_train)

    pr = sub.add_parser("predict", help="run the baseline tagger")
    pr.add_argument("--model", required=True)
    pr.add_argument("--corpus", required=True)
    pr.add_argument("--output", required=True)
    pr.add_argument("--unit", choices=("turn", "dialog"), default="dialog")
    pr.set_defaults(func=cmd_predict)

    ev = sub.add_parser("evaluate", help="score predictions against a reference")
    ev.add_argument("--ref", required=True)
    ev.add_argument("--hyp", required=True)
    ev.add_argument("--report")
    ev.add_argument("--text")
    ev.add_argument("--labelset", default=None, choices=("1",))
    ev.set_defaults(func=cmd_evaluate)

    cp = sub.add_parser("compare", help="per-act gain table for two models")
    cp.add_argument("--ref", required=True)
    cp.add_argument("--hyp-a", required=True)
    cp.add_argument("--hyp-b", required=True)
    cp.add_argument("--rate", choices=("DSER", "DER"), default="DSER")
    cp.add_argument("--min-count", type=int, default=10)
    cp.add_argument("--report")
    cp.set_defaults(func=cmd_compare)

    ap = sub.add_parser("analyze-punct", help="punctuation correlation tables")
    ap.add_argument("--corpus", required=True)
    ap.add_argument("--hyp")
    ap.add_argument("--mode", choices=("final", "mid"), default="final")
    ap.add_argument("--report")
    ap.set_defaults(func=cmd_analyze_punct)

    return p


def dispatch(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DasegError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
