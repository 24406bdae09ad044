# Copyright 2026 The Kawing Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the kawing extension module."""

import math

import pytest

import kawing


def test_clean_strips_tags_and_controls():
    assert kawing.clean("<seg id='b.GEN.1.1'>ug mitubag si jose</seg>") == "ug mitubag si jose"
    assert kawing.clean("ang\x07 damgo\t ni  faraon ") == "ang damgo ni faraon"
    s = kawing.clean("  mixed <b>up</b>\ttext ")
    assert kawing.clean(s) == s


def test_tokenize_spaced_punctuation():
    tokens = kawing.tokenize("Ug mitubag si jose kang faraon: ang damgo")
    assert tokens == ["ug", "mitubag", "si", "jose", "kang", "faraon", ":", "ang", "damgo"]
    assert kawing.tokenize("siya'y umalis.") == ["siya'y", "umalis", "."]
    assert kawing.tokenize("") == []
    assert kawing.detokenize(tokens) == "ug mitubag si jose kang faraon : ang damgo"


def test_bleu_identity_and_hand_case():
    corpus = [["ang", "damgo", "ni", "faraon"], ["usa", "lamang", "ang", "damgo"]]
    report = kawing.bleu_corpus(corpus, corpus)
    assert report["score"] == pytest.approx(100.0, abs=1e-9)

    report = kawing.bleu_corpus([["a", "b", "c", "d"]], [["a", "b", "c", "d", "e"]])
    assert report["score"] == pytest.approx(77.88, abs=0.01)
    assert report["bp"] == pytest.approx(math.exp(1 - 5 / 4))


def test_bleu_sentence_smoothing():
    report = kawing.bleu_sentence(["at", "x", "y"], ["at", "z", "w"])
    assert 0.0 < report["score"] < 100.0
    assert kawing.bleu_sentence(["a"], ["b"])["score"] == 0.0


def test_translation_table_and_canonical():
    pairs = [
        ("ngadto siya", "paroon siya"),
        ("ngadto siya", "paroon siya"),
        ("ngadto sila", "pumaroon sila"),
        ("ngadto ka", "walang katumbas"),
    ]
    table = kawing.build_translation_table(pairs, ["ngadto"])
    entry = table["ngadto"]
    assert entry["total_occurrences"] == 4
    attributed = sum(c["attributed"] for c in entry["candidates"])
    assert attributed + entry["none_count"] == 4
    assert kawing.select_canonical(pairs, "ngadto") == "paroon"


def test_canonicalize_inserts_when_absent():
    pairs = [("si dios miingon", "sinabi ng panginoon"), ("walay labot", "walang kinalaman")]
    corrected, changes = kawing.canonicalize(
        pairs, "dios", "dios", ["panginoon", "jehova"], mode="insert_if_absent"
    )
    assert corrected[0][1] == "sinabi ng dios"
    assert corrected[1] == pairs[1]
    assert changes[0]["action"] == "replace"

    again, second_changes = kawing.canonicalize(
        corrected, "dios", "dios", ["panginoon", "jehova"], mode="insert_if_absent"
    )
    assert again == corrected
    assert second_changes == []


def test_split_corpus_partition():
    pairs = [(f"linya {i}", f"linyang {i}") for i in range(10)]
    result = kawing.split_corpus(pairs, ratios=(0.8, 0.1, 0.1), seed=5)
    assert len(result["train"]) == 8
    assert len(result["valid"]) == 1
    assert len(result["test"]) == 1
    rerun = kawing.split_corpus(pairs, ratios=(0.8, 0.1, 0.1), seed=5)
    assert rerun == result


def test_mine_topic_segments():
    sentences = ["ang lugar%d maoy rehiyon sa pilipinas" % i for i in range(8)]
    sentences += ["kaugalingon%d nga%d sulod%d dinhi%d" % (i, i, i, i) for i in range(12)]
    segments = kawing.mine_topic_segments(sentences, min_support=5)
    assert segments[0]["ngram"] == ["maoy", "rehiyon", "sa", "pilipinas"]
    assert segments[0]["count"] == 8
    assert segments[0]["coverage"] == pytest.approx(8 / 20)


def test_split_sentences_and_url():
    assert kawing.split_sentences("A. B. Cruz dumated. Siya ay umalis.") == [
        "A. B. Cruz dumated.",
        "Siya ay umalis.",
    ]
    assert (
        kawing.build_article_url("tl", "Abra (lalawigan)")
        == "https://tl.wikipedia.org/wiki/Abra_%28lalawigan%29"
    )
    with pytest.raises(kawing.KawingError):
        kawing.build_article_url("ceb", "")


def test_extract_article_text():
    html = "<html><p>Ang Abra usa ka lalawigan sa Pilipinas.[1]</p><script>x()</script></html>"
    assert kawing.extract_article_text(html) == "Ang Abra usa ka lalawigan sa Pilipinas."
