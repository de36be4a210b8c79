import pytest

from daseg import CorpusImportError, import_mrda


def write_meeting(tmp_path, lines, name="Bmr001.txt"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


MEETING = [
    "me011|so we should start the meeting|S|s|s",
    "me011|right ?|Q|qy|qy",
    "fe008|yeah|B|b|b",
    "me011|okay so the first item -|D|%|%",
    "fe008|can I grab the|F|fg|fg",
]


class TestImportMrda:
    def test_basic_granularity(self, tmp_path):
        write_meeting(tmp_path, MEETING)
        corpus = import_mrda(tmp_path, "basic")
        assert corpus.label_set.name == "mrda_basic5"
        (d,) = corpus.dialogs
        assert d.id == "Bmr001"
        acts = [s.act for s in d.reference.segments]
        assert acts == ["Statement", "Question", "Backchannel", "Disruption",
                        "Floor-Grabber"]

    def test_general_granularity(self, tmp_path):
        write_meeting(tmp_path, MEETING)
        corpus = import_mrda(tmp_path, "general")
        acts = [s.act for s in corpus.dialogs[0].reference.segments]
        assert acts == ["s", "qy", "b", "%", "fg"]

    def test_full_granularity(self, tmp_path):
        write_meeting(tmp_path, MEETING)
        corpus = import_mrda(tmp_path, "full")
        assert [s.act for s in corpus.dialogs[0].reference.segments] == \
            ["s", "qy", "b", "%", "fg"]

    def test_turn_grouping_by_consecutive_speaker(self, tmp_path):
        write_meeting(tmp_path, MEETING)
        (d,) = import_mrda(tmp_path).dialogs
        assert [t.speaker for t in d.turns] == ["me011", "fe008", "me011",
                                                "fe008"]
        assert d.turns[0].words == ("so", "we", "should", "start", "the",
                                    "meeting", "right", "?")

    def test_partition_invariant(self, tmp_path):
        write_meeting(tmp_path, MEETING)
        for d in import_mrda(tmp_path).dialogs:
            d.reference.validate_partition(d.word_count)

    def test_blank_lines_skipped(self, tmp_path):
        write_meeting(tmp_path, ["", MEETING[0], "", MEETING[2]])
        (d,) = import_mrda(tmp_path).dialogs
        assert len(d.reference.segments) == 2

    def test_unknown_basic_tag_names_file_and_line(self, tmp_path):
        write_meeting(tmp_path, [MEETING[0], "me011|huh|Z|z|z"])
        with pytest.raises(CorpusImportError, match=r"Bmr001\.txt:2"):
            import_mrda(tmp_path, "basic")

    def test_short_line_errors(self, tmp_path):
        write_meeting(tmp_path, ["me011|only text|S"])
        with pytest.raises(CorpusImportError, match=":1"):
            import_mrda(tmp_path)

    def test_unknown_granularity(self, tmp_path):
        write_meeting(tmp_path, MEETING)
        with pytest.raises(CorpusImportError):
            import_mrda(tmp_path, "ultra")

    def test_no_files(self, tmp_path):
        with pytest.raises(CorpusImportError):
            import_mrda(tmp_path)

    def test_multiple_meetings_sorted(self, tmp_path):
        write_meeting(tmp_path, MEETING, "Bmr002.txt")
        write_meeting(tmp_path, MEETING[:2], "Bed003.txt")
        corpus = import_mrda(tmp_path)
        assert [d.id for d in corpus.dialogs] == ["Bed003", "Bmr002"]

    def test_turn_sentinel_word_escaped(self, tmp_path):
        write_meeting(tmp_path, ["me011|watch the TURN signal|S|s|s"])
        (d,) = import_mrda(tmp_path).dialogs
        assert d.words == ["watch", "the", "\\TURN", "signal"]
