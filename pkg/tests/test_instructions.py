import pytest

from conftest import build_instruction
from pride.errors import EmptyContentSet, MalformedParse, UnknownVariationTag
from pride.instructions import (CONTENT_POS, UPOS_TAGS, ActionVariation,
                                Instruction, ObjectVariation, ParaphrasePair,
                                Token, build_dependency_tree,
                                extract_content_words, legal_combinations)


def test_upos_inventory():
    assert len(UPOS_TAGS) == 17
    assert CONTENT_POS <= UPOS_TAGS
    assert CONTENT_POS == {"NOUN", "PROPN", "VERB", "ADJ", "ADV", "NUM"}
    # particles are function words here, "turn on" contributes only "turn"
    assert "PART" not in CONTENT_POS


class TestVariationTags:
    def test_object_tags_round_trip(self):
        for var in ObjectVariation:
            assert ObjectVariation.from_tag(var.value) is var

    def test_action_tags_round_trip(self):
        for var in ActionVariation:
            assert ActionVariation.from_tag(var.value) is var

    def test_unknown_tags_rejected(self):
        with pytest.raises(UnknownVariationTag):
            ObjectVariation.from_tag("blue")
        with pytest.raises(UnknownVariationTag):
            ActionVariation.from_tag("imperative")

    def test_axis_sizes(self):
        assert len(ObjectVariation) == 4
        assert len(ActionVariation) == 11

    def test_legal_combinations(self):
        combos = legal_combinations()
        assert len(combos) == 43
        assert len(set(combos)) == 43
        assert (ObjectVariation.NONE, ActionVariation.NONE) not in combos
        # canonical order: object-major, enum declaration order within
        assert combos[0] == (ObjectVariation.NONE, ActionVariation.ADDITION)
        assert combos[-1] == (ObjectVariation.SP_HABITUAL,
                              ActionVariation.HINT)


class TestToken:
    def test_valid(self):
        t = Token(index=1, surface="stove", lemma="stove", pos="NOUN",
                  head=0, deprel="root")
        assert t.embedding is None

    def test_bad_index(self):
        with pytest.raises(ValueError):
            Token(index=0, surface="a", lemma="a", pos="DET", head=1,
                  deprel="det")

    def test_self_head(self):
        with pytest.raises(ValueError, match="names itself"):
            Token(index=2, surface="a", lemma="a", pos="DET", head=2,
                  deprel="det")

    def test_negative_head(self):
        with pytest.raises(ValueError):
            Token(index=1, surface="a", lemma="a", pos="DET", head=-1,
                  deprel="det")

    def test_unknown_pos(self):
        with pytest.raises(ValueError, match="universal POS"):
            Token(index=1, surface="a", lemma="a", pos="NN", head=0,
                  deprel="root")


class TestInstruction:
    def test_no_tokens(self):
        with pytest.raises(ValueError, match="no tokens"):
            Instruction(id="s1", text="x", tokens=())

    def test_gap_in_indices(self):
        tokens = (
            Token(index=1, surface="a", lemma="a", pos="VERB", head=0,
                  deprel="root"),
            Token(index=3, surface="b", lemma="b", pos="NOUN", head=1,
                  deprel="obj"),
        )
        with pytest.raises(ValueError, match="1..n"):
            Instruction(id="s1", text="a b", tokens=tokens)

    def test_head_beyond_sentence(self):
        tokens = (
            Token(index=1, surface="a", lemma="a", pos="VERB", head=9,
                  deprel="root"),
        )
        with pytest.raises(ValueError, match="beyond"):
            Instruction(id="s1", text="a", tokens=tokens)


class TestParaphrasePair:
    def _instr(self, sid):
        return build_instruction(sid, [("go", "VERB", 0, "root")])

    def test_valid(self):
        pair = ParaphrasePair(
            pair_id="p1", task_id=3, original=self._instr("a"),
            paraphrase=self._instr("b"),
            object_var=ObjectVariation.ADDITION,
            action_var=ActionVariation.NONE)
        assert pair.task_id == 3

    @pytest.mark.parametrize("task_id", [-1, 10, 99])
    def test_task_range(self, task_id):
        with pytest.raises(ValueError):
            ParaphrasePair(
                pair_id="p1", task_id=task_id, original=self._instr("a"),
                paraphrase=self._instr("b"),
                object_var=ObjectVariation.ADDITION,
                action_var=ActionVariation.NONE)

    def test_none_none_rejected(self):
        with pytest.raises(ValueError, match="varies neither"):
            ParaphrasePair(
                pair_id="p1", task_id=0, original=self._instr("a"),
                paraphrase=self._instr("b"),
                object_var=ObjectVariation.NONE,
                action_var=ActionVariation.NONE)


class TestContentWords:
    def test_filters_function_words(self):
        instr = build_instruction("s1", [
            ("Put", "VERB", 0, "root"),
            ("the", "DET", 4, "det"),
            ("cream", "NOUN", 4, "compound"),
            ("cheese", "NOUN", 1, "obj"),
            ("in", "ADP", 7, "case"),
            ("the", "DET", 7, "det"),
            ("bowl", "NOUN", 1, "obl"),
        ])
        words = extract_content_words(instr)
        assert [t.surface for t in words] == ["Put", "cream", "cheese",
                                              "bowl"]

    def test_numbers_and_names_count(self):
        instr = build_instruction("s1", [
            ("move", "VERB", 0, "root"),
            ("2", "NUM", 3, "nummod"),
            ("Rubik", "PROPN", 1, "obj"),
        ])
        assert len(extract_content_words(instr)) == 3

    def test_particle_not_content(self):
        instr = build_instruction("s1", [
            ("Turn", "VERB", 0, "root"),
            ("on", "ADP", 1, "compound:prt"),
            ("the", "DET", 4, "det"),
            ("stove", "NOUN", 1, "obj"),
        ])
        assert [t.surface for t in extract_content_words(instr)] == [
            "Turn", "stove"]

    def test_empty_content_set(self):
        instr = build_instruction("s1", [
            ("the", "DET", 0, "root"),
            ("of", "ADP", 1, "case"),
        ])
        with pytest.raises(EmptyContentSet):
            extract_content_words(instr)

    def test_duplicates_kept(self):
        instr = build_instruction("s1", [
            ("stack", "VERB", 0, "root"),
            ("bowl", "NOUN", 1, "obj"),
            ("on", "ADP", 4, "case"),
            ("bowl", "NOUN", 1, "obl"),
        ])
        assert len(extract_content_words(instr)) == 3


class TestDependencyTree:
    def test_labels_and_order(self):
        instr = build_instruction("s1", [
            ("Open", "VERB", 0, "root"),
            ("the", "DET", 3, "det"),
            ("drawer", "NOUN", 1, "obj"),
        ])
        tree = build_dependency_tree(instr)
        assert tree.root == 0
        assert tree.labels[0] == ("VERB", "root")
        assert tree.labels[2] == ("NOUN", "obj")
        assert tree.children[0] == (2,)
        assert tree.children[2] == (1,)

    def test_children_in_token_order(self):
        # root's dependents appear left to right regardless of depth
        instr = build_instruction("s1", [
            ("a", "NOUN", 2, "nsubj"),
            ("is", "VERB", 0, "root"),
            ("b", "NOUN", 2, "obj"),
        ])
        tree = build_dependency_tree(instr)
        assert tree.children[1] == (0, 2)

    def test_cycle_raises(self):
        instr = build_instruction("s1", [
            ("a", "NOUN", 2, "dep"),
            ("b", "NOUN", 1, "dep"),
        ])
        with pytest.raises(MalformedParse) as info:
            build_dependency_tree(instr)
        assert info.value.sent_id == "s1"

    def test_two_roots_raise(self):
        instr = build_instruction("s1", [
            ("a", "NOUN", 0, "root"),
            ("b", "NOUN", 0, "root"),
        ])
        with pytest.raises(MalformedParse):
            build_dependency_tree(instr)
