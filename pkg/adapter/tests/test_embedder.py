import math

import pytest

from preprocess_adapter import DIMENSION, embed_word
from preprocess_adapter.embedder import check_embed_model
from preprocess_adapter.errors import EmbedderUnavailable


def cos(u, v):
    return math.fsum(a * b for a, b in zip(u, v))


class TestVectors:
    def test_dimension(self):
        assert len(embed_word("bowl")) == DIMENSION

    def test_unit_norm(self):
        for word in ("bowl", "vessel", "put", "zorblax"):
            norm = math.sqrt(math.fsum(x * x for x in embed_word(word)))
            assert norm == pytest.approx(1.0, abs=1e-12)

    def test_deterministic(self):
        assert embed_word("cheese") == embed_word("cheese")

    def test_case_insensitive(self):
        assert embed_word("Put") == embed_word("put")

    def test_distinct_words_differ(self):
        assert embed_word("bowl") != embed_word("plate")


class TestSimilarityStructure:
    def test_same_group_words_are_close(self):
        # container nouns share a group direction worth cos ~ 0.46
        assert cos(embed_word("bowl"), embed_word("vessel")) > 0.3

    def test_unrelated_words_are_far(self):
        assert abs(cos(embed_word("bowl"), embed_word("stove"))) < 0.25

    def test_out_of_lexicon_words_are_far_from_everything(self):
        u = embed_word("zorblax")
        for word in ("bowl", "put", "cheese"):
            assert abs(cos(u, embed_word(word))) < 0.25


class TestModelCheck:
    def test_known_model_passes(self):
        check_embed_model("featlex-256")

    def test_unknown_model_raises(self):
        with pytest.raises(EmbedderUnavailable, match="featlex-256"):
            check_embed_model("minilm-l6-v2")
