"""Per-act error attribution and punctuation tables.

Run: python3 demos/03_analysis_tables.py
"""

import random

from daseg import (
    Corpus,
    Dialog,
    FunctionalSegment,
    LabelSet,
    Predictions,
    Segmentation,
    Turn,
    encode_joint,
    mid_segment_punctuation,
    per_act_rates,
    punctuation_by_act,
)

acts = LabelSet("demo", ("Statement", "Question"))
rng = random.Random(7)


def make_dialog(i):
    words, segs, pos = [], [], 0
    for _ in range(rng.randint(2, 5)):
        act = rng.choice(acts.acts)
        n = rng.randint(1, 4)
        seg = [f"w{rng.randint(0, 30)}" for _ in range(n)]
        if n > 1 and rng.random() < 0.3:
            seg[0] += ","  # mid-segment comma
        seg[-1] += "." if act == "Statement" else "?"
        words.extend(seg)
        segs.append(FunctionalSegment(pos, pos + n - 1, act))
        pos += n
    return Dialog(f"demo-{i}", (Turn("spk", tuple(words)),),
                  Segmentation(tuple(segs)))


corpus = Corpus("demo", "nolower", acts,
                tuple(make_dialog(i) for i in range(30)), {})

# a deliberately sloppy hypothesis: drop every third segment-final E
hyp = Predictions(acts, "nolower", "sloppy")
for d in corpus.dialogs:
    labels = list(encode_joint(d.reference, acts, d.id).labels)
    e_positions = [i for i, l in enumerate(labels) if l != "I"]
    for i in e_positions[::3][:-1]:
        labels[i] = "I"
    hyp.add(d.id, labels)

print("per-act rates (insertions attribute to the hypothesized act,")
print("so DER can exceed 100%):")
for row in per_act_rates(corpus, hyp):
    print(f"  {row.act:<12} n={row.count:<4} DSER={row.dser:6.2f}% "
          f"DER={row.der:6.2f}%")

print("\nfinal punctuation by act (with error % given the hypothesis):")
table = punctuation_by_act(corpus, hyp)
for act, cells in sorted(table.rows.items()):
    print(f"  {act}: {cells}")

print("\nmid-segment punctuation:")
for source, cells in mid_segment_punctuation(corpus).rows.items():
    print(f"  {source}: {cells}")
