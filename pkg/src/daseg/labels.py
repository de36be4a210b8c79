"""Built-in dialog act label sets.

Act inventories for the two supported corpora, at every granularity the
toolkit knows how to import, plus the single-label pure-segmentation set.
Each inventory is ordered roughly by corpus frequency so that index 0 is a
sensible fallback act for decoding label sequences with a dangling tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class LabelSet:
    """An ordered dialog act inventory with a designated fallback act."""

    name: str
    acts: tuple[str, ...]
    fallback_act: str = ""

    def __post_init__(self):
        if len(set(self.acts)) != len(self.acts):
            raise ValueError(f"duplicate acts in label set {self.name!r}")
        if not self.acts:
            raise ValueError("label set needs at least one act")
        if not self.fallback_act:
            object.__setattr__(self, "fallback_act", self.acts[0])
        if self.fallback_act not in self.acts:
            raise ValueError(f"fallback act {self.fallback_act!r} not in acts")

    def __contains__(self, act: str) -> bool:
        return act in self._act_index

    @property
    def _act_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.acts)}

    def joint_labels(self) -> list[str]:
        """All per-word labels: the shared I plus one segment-end label per act."""
        return ["I"] + [f"E_{act}" for act in self.acts]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "acts": list(self.acts),
            "fallback_act": self.fallback_act,
        }

    @staticmethod
    def from_dict(d: dict) -> "LabelSet":
        return LabelSet(d["name"], tuple(d["acts"]), d.get("fallback_act", ""))


# SWDA-DAMSL clustered act set with Abandoned-or-Turn-Exit folded into
# Uninterpretable (42 acts).  Each entry: (clustered damsl tag, act name).
SWDA_TAG_NAMES = (
    ("sd", "Statement-non-opinion"),
    ("b", "Acknowledge-Backchannel"),
    ("sv", "Statement-opinion"),
    ("aa", "Agree-Accept"),
    ("%", "Uninterpretable"),
    ("ba", "Appreciation"),
    ("qy", "Yes-No-Question"),
    ("x", "Non-verbal"),
    ("ny", "Yes-answers"),
    ("fc", "Conventional-closing"),
    ("qw", "Wh-Question"),
    ("nn", "No-answers"),
    ("bk", "Response-Acknowledgement"),
    ("h", "Hedge"),
    ("qy^d", "Declarative-Yes-No-Question"),
    ('fo_o_fw_"_by_bc', "Other"),
    ("bh", "Backchannel-in-question-form"),
    ("^q", "Quotation"),
    ("bf", "Summarize/reformulate"),
    ("na", "Affirmative-non-yes-answers"),
    ("ad", "Action-directive"),
    ("^2", "Collaborative-Completion"),
    ("b^m", "Repeat-phrase"),
    ("qo", "Open-Question"),
    ("qh", "Rhetorical-Questions"),
    ("^h", "Hold-before-answer-agreement"),
    ("ar", "Reject"),
    ("ng", "Negative-non-no-answers"),
    ("br", "Signal-non-understanding"),
    ("no", "Other-answers"),
    ("fp", "Conventional-opening"),
    ("qrr", "Or-Clause"),
    ("arp_nd", "Dispreferred-answers"),
    ("t3", "3rd-party-talk"),
    ("oo_co_cc", "Offers-Options-Commits"),
    ("t1", "Self-talk"),
    ("bd", "Downplayer"),
    ("aap_am", "Maybe-Accept-part"),
    ("^g", "Tag-Question"),
    ("qw^d", "Declarative-Wh-Question"),
    ("fa", "Apology"),
    ("ft", "Thanking"),
)

SWDA_TAG_TO_ACT = {tag: name for tag, name in SWDA_TAG_NAMES}

SWDA_42 = LabelSet("swda42", tuple(name for _, name in SWDA_TAG_NAMES))

# MRDA basic granularity (5 acts).
MRDA_BASIC_TAG_TO_ACT = {
    "S": "Statement",
    "Q": "Question",
    "B": "Backchannel",
    "D": "Disruption",
    "F": "Floor-Grabber",
}
MRDA_BASIC_5 = LabelSet(
    "mrda_basic5",
    ("Statement", "Backchannel", "Disruption", "Floor-Grabber", "Question"),
    fallback_act="Statement",
)

# MRDA general granularity (12 acts); raw transcript tags are kept as act
# names since the distribution uses them directly.
MRDA_GENERAL_12 = LabelSet(
    "mrda_general12",
    ("s", "b", "fh", "fg", "%", "h", "qy", "qw", "qr", "qrr", "qo", "qh"),
    fallback_act="s",
)

# MRDA full granularity (51 acts, raw tags as act names).
MRDA_FULL_51 = LabelSet(
    "mrda_full51",
    (
        "s", "b", "fh", "fg", "%", "x", "h",
        "qy", "qw", "qr", "qrr", "qo", "qh",
        "aa", "aap", "am", "ar", "arp",
        "ba", "bc", "bd", "bh", "bk", "br", "bs", "bsc", "bu", "by",
        "cc", "co", "cs", "d", "df", "e", "f",
        "fa", "fe", "ft", "fw", "g", "j", "m",
        "na", "nd", "ng", "no", "ns", "r", "t1", "t3", "tc",
    ),
    fallback_act="s",
)

# Pure segmentation: a single generic act so only boundaries carry signal.
PURE_1 = LabelSet("pure1", ("Segment",))

GRANULARITIES = {
    "swda42": SWDA_42,
    "mrda_basic5": MRDA_BASIC_5,
    "mrda_general12": MRDA_GENERAL_12,
    "mrda_full51": MRDA_FULL_51,
    "pure1": PURE_1,
}

EXPECTED_SIZES = {
    "swda42": 42,
    "mrda_basic5": 5,
    "mrda_general12": 12,
    "mrda_full51": 51,
    "pure1": 1,
}

for _name, _ls in GRANULARITIES.items():
    assert len(_ls.acts) == EXPECTED_SIZES[_name], _name


def joint_label_act(label: str) -> str | None:
    """The act carried by a joint label, or None for the shared I label."""
    if label == "I":
        return None
    if label.startswith("E_"):
        return label[2:]
    raise ValueError(f"not a joint label: {label!r}")


def is_end_label(label: str) -> bool:
    return label.startswith("E_")
