"""Train the baseline perceptron on a synthetic corpus and score it.

Every generated segment deterministically ends in "." (act A) or "?"
(act B), so the tagger should drive the boundary error rates near zero.

Run: python3 demos/02_train_and_score.py
"""

import random

from daseg import (
    Corpus,
    Dialog,
    FunctionalSegment,
    LabelSet,
    Segmentation,
    Turn,
    evaluate_corpus,
    predict,
    train,
)

acts = LabelSet("demo", ("A", "B"))
rng = random.Random(42)
vocab = [f"w{i}" for i in range(50)]


def make_dialog(i):
    words, segs, pos = [], [], 0
    for _ in range(rng.randint(1, 4)):
        act = rng.choice(acts.acts)
        n = rng.randint(1, 5)
        seg = [rng.choice(vocab) for _ in range(n)]
        seg[-1] += "." if act == "A" else "?"
        words.extend(seg)
        segs.append(FunctionalSegment(pos, pos + n - 1, act))
        pos += n
    return Dialog(f"demo-{i}", (Turn("spk", tuple(words)),),
                  Segmentation(tuple(segs)))


def corpus(ids):
    return Corpus("demo", "nolower", acts,
                  tuple(make_dialog(i) for i in ids), {})


train_c = corpus(range(200))
dev_c = corpus(range(200, 220))
test_c = corpus(range(220, 260))

model = train(train_c, dev_c, {"epochs": 5, "seed": 42})
print(f"selected epoch {model.metadata['epoch']} "
      f"(dev macro F1 {model.metadata['dev_macro_f1']:.2f})")

report = evaluate_corpus(test_c, predict(model, test_c))
print(report.to_text())
