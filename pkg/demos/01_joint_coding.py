"""Walk through the joint E/I coding on a tiny two-speaker dialog.

Run: python3 demos/01_joint_coding.py
"""

from daseg import (
    Dialog,
    FunctionalSegment,
    LabelSet,
    Segmentation,
    Turn,
    canonical,
    chunk,
    decode_joint,
    encode_joint,
    serialize,
)

acts = LabelSet("demo", ("Statement", "Question", "Backchannel"))

# Speaker A asks a question that resumes after B's backchannel: the first
# part is marked continues=True, so its last word stays I and only the
# resumed part carries the E label.
dialog = Dialog(
    "demo",
    (
        Turn("A", ("so", "did", "you", "ever")),
        Turn("B", ("uh-huh",)),
        Turn("A", ("finish", "the", "report?")),
    ),
    Segmentation((
        FunctionalSegment(0, 3, "Question", continues=True),
        FunctionalSegment(4, 4, "Backchannel"),
        FunctionalSegment(5, 7, "Question"),
    )),
)

view = serialize(dialog)
print("serialized items (note the TURN sentinel between turns):")
print(" ", " ".join(view.items))

seq = encode_joint(dialog.reference, acts, dialog.id)
print("\nword labels:")
for word, label in zip(dialog.words, seq.labels):
    print(f"  {word:<10} {label}")

print("\ndecoded back (continued parts merge forward):")
for seg in decode_joint(seq, acts).segments:
    print(f"  [{seg.start}:{seg.end}] {seg.act}")
assert decode_joint(seq, acts) == canonical(dialog.reference, acts)

print("\nwindows of 4 serialized tokens:")
for w in chunk(view, 4):
    print(f"  window {w.ordinal}: {view.items[w.start:w.end]}")
