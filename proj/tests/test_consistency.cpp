// Copyright 2026 The Kawing Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "kawing/consistency.hpp"
#include "kawing/error.hpp"
#include "kawing/text.hpp"
#include "oracles.hpp"

using namespace kawing;

namespace {

const PipelineConfig kDefault{};

SentencePair mk(std::int64_t id, const std::string &src, const std::string &tgt) {
  SentencePair pair;
  pair.pair_id = id;
  pair.origin = ImportedOrigin{static_cast<std::size_t>(id) + 1};
  pair.source = make_sentence(src, kDefault);
  pair.target = make_sentence(tgt, kDefault);
  return pair;
}

Corpus corpus_of(const std::vector<std::pair<std::string, std::string>> &raw) {
  Corpus corpus;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    corpus.push_back(mk(static_cast<std::int64_t>(i), raw[i].first, raw[i].second));
  }
  return corpus;
}

// Five pairs whose source mentions "dios"; filler pairs push the shared
// function words below the dice threshold so only the real translations
// survive as candidates.
Corpus dios_fixture() {
  std::vector<std::pair<std::string, std::string>> raw = {
      {"misulti ang dios kang moises", "ang dios"},
      {"dios sa langit", "ug dios"},
      {"gihimo sa dios ang kalibutan", "sa dios"},
      {"dios nagpadala", "mga panginoon"},
      {"ang dios wala mitubag", "og wala"},
  };
  for (int i = 0; i < 20; ++i) {
    raw.push_back({"langgam molupad " + std::to_string(i), "ang ug sa mga og wala"});
  }
  return corpus_of(raw);
}

bool pairs_identical(const Corpus &a, const Corpus &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].pair_id != b[i].pair_id) return false;
    if (a[i].source.raw != b[i].source.raw || a[i].target.raw != b[i].target.raw) return false;
    if (a[i].source.tokens != b[i].source.tokens || a[i].target.tokens != b[i].target.tokens) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("translation table on the dios toy corpus") {
  TranslationTable table = build_translation_table(dios_fixture(), {"dios"}, kDefault);
  const TableEntry *entry = table.find("dios");
  REQUIRE(entry != nullptr);
  CHECK(entry->total_occurrences == 5);
  REQUIRE(entry->candidates.size() == 2);
  CHECK(entry->candidates[0].target_word == "dios");
  CHECK(entry->candidates[0].cooccurrence == 3);
  CHECK(entry->candidates[0].dice == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(entry->candidates[0].attributed == 3);
  CHECK(entry->candidates[1].target_word == "panginoon");
  CHECK(entry->candidates[1].dice == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(entry->candidates[1].attributed == 1);
  CHECK(entry->none_count == 1);
}

TEST_CASE("single-pair corpus gives dice 1.0 for every co-occurring word") {
  TranslationTable table = build_translation_table(corpus_of({{"dios", "usa duha tulo"}}),
                                                   {"dios"}, kDefault);
  const TableEntry *entry = table.find("dios");
  REQUIRE(entry != nullptr);
  CHECK(entry->candidates.size() == 3);
  for (const auto &candidate : entry->candidates) {
    CHECK(candidate.dice == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("watched names with NONE cases all carry a none count") {
  std::vector<std::pair<std::string, std::string>> raw;
  const std::vector<std::pair<std::string, std::string>> translations = {
      {"jehova", "jehova"}, {"dios", "dios"}, {"israel", "israelita"},
      {"moises", "siya"},   {"aaron", "aarong"},
  };
  for (const auto &[word, translated] : translations) {
    raw.push_back({"si " + word + " miingon", "sinabi ni " + translated});
    raw.push_back({"ug si " + word, "at ni " + translated});
    raw.push_back({"si " + word + " mibiya", "umalis na lamang"});  // no equivalent
  }
  // filler pairs push the no-equivalent vocabulary under the threshold
  for (int i = 0; i < 30; ++i) raw.push_back({"puno ug dahon", "umalis na lamang"});
  Corpus corpus = corpus_of(raw);
  TranslationTable table = build_translation_table(
      corpus, {"jehova", "dios", "israel", "moises", "aaron"}, kDefault);
  REQUIRE(table.entries.size() == 5);
  for (const auto &entry : table.entries) {
    CHECK(entry.total_occurrences == 3);
    CHECK(entry.none_count > 0);
    std::size_t attributed = 0;
    for (const auto &candidate : entry.candidates) attributed += candidate.attributed;
    CHECK(attributed + entry.none_count == entry.total_occurrences);
  }
}

TEST_CASE("missing watched word yields a zero-total entry, not an error") {
  TranslationTable table =
      build_translation_table(corpus_of({{"walay sulod", "walang laman"}}), {"dios"}, kDefault);
  const TableEntry *entry = table.find("dios");
  REQUIRE(entry != nullptr);
  CHECK(entry->total_occurrences == 0);
  CHECK(entry->candidates.empty());
}

TEST_CASE("table counts match an exhaustive recount on random corpora") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::pair<oracle::Tokens, oracle::Tokens>> token_pairs;
    Corpus corpus;
    int n_pairs = 1 + static_cast<int>(rng() % 50);
    for (int i = 0; i < n_pairs; ++i) {
      auto src = oracle::random_sentence(rng, 8, 30);
      auto tgt = oracle::random_sentence(rng, 8, 30);
      token_pairs.emplace_back(src, tgt);
      corpus.push_back(mk(i, detokenize(src), detokenize(tgt)));
    }
    std::vector<std::string> watchlist = {"w0", "w7", "w15"};
    TranslationTable table = build_translation_table(corpus, watchlist, kDefault);
    for (const auto &word : watchlist) {
      auto expected = oracle::recount_word(token_pairs, word, kDefault.dice_threshold,
                                           kDefault.max_candidates);
      const TableEntry *entry = table.find(word);
      REQUIRE(entry != nullptr);
      CHECK(entry->total_occurrences == expected.total);
      CHECK(entry->none_count == expected.none_count);
      REQUIRE(entry->candidates.size() == expected.candidates.size());
      std::size_t attributed_sum = 0;
      for (std::size_t c = 0; c < entry->candidates.size(); ++c) {
        CHECK(entry->candidates[c].target_word == expected.candidates[c].target_word);
        CHECK(entry->candidates[c].cooccurrence == expected.candidates[c].cooccurrence);
        CHECK(entry->candidates[c].source_count == expected.candidates[c].source_count);
        CHECK(entry->candidates[c].target_count == expected.candidates[c].target_count);
        CHECK(entry->candidates[c].dice == expected.candidates[c].dice);
        CHECK(entry->candidates[c].attributed == expected.candidates[c].attributed);
        attributed_sum += entry->candidates[c].attributed;
      }
      CHECK(attributed_sum + entry->none_count == entry->total_occurrences);
    }
  }
}

TEST_CASE("detect_inconsistencies filters and sorts") {
  // "ngadto" translates three ways plus NONEs; "sumala" is consistent.
  std::vector<std::pair<std::string, std::string>> raw;
  for (int i = 0; i < 6; ++i) raw.push_back({"ngadto siya", "paroon siya"});
  for (int i = 0; i < 2; ++i) raw.push_back({"ngadto sila", "pumaroon sila"});
  raw.push_back({"ngadto na", "wala nay-laman"});
  for (int i = 0; i < 4; ++i) raw.push_back({"sumala kaniya", "ayon kaniya"});
  Corpus corpus = corpus_of(raw);
  TranslationTable table = build_translation_table(corpus, {"ngadto", "sumala"}, kDefault);

  auto flagged = detect_inconsistencies(table, 2);
  REQUIRE(flagged.size() == 1);
  CHECK(flagged[0].source_word == "ngadto");
  CHECK(flagged[0].total_occurrences == 9);

  SUBCASE("min_total filters by occurrences") {
    CHECK(detect_inconsistencies(table, 100).empty());
  }
}

TEST_CASE("select_canonical picks the most frequent attributed translation") {
  std::vector<std::pair<std::string, std::string>> raw;
  for (int i = 0; i < 5; ++i) raw.push_back({"ngadto siya", "paroon siya"});
  for (int i = 0; i < 2; ++i) raw.push_back({"ngadto sila", "pumaroon sila"});
  raw.push_back({"ngadto ka", "walang katumbas"});
  Corpus corpus = corpus_of(raw);
  TranslationTable table = build_translation_table(corpus, {"ngadto"}, kDefault);
  CHECK(select_canonical(table, "ngadto") == "paroon");

  SUBCASE("argmax is invariant under scaling every count") {
    Corpus scaled;
    for (int k = 0; k < 7; ++k) {
      for (const auto &pair : corpus) {
        scaled.push_back(mk(static_cast<std::int64_t>(scaled.size()), pair.source.raw,
                            pair.target.raw));
      }
    }
    TranslationTable scaled_table = build_translation_table(scaled, {"ngadto"}, kDefault);
    const TableEntry *entry = scaled_table.find("ngadto");
    REQUIRE(entry != nullptr);
    CHECK(entry->total_occurrences == 7 * 8);
    CHECK(select_canonical(scaled_table, "ngadto") == "paroon");
  }
}

TEST_CASE("select_canonical copy case: canonical equals the source word") {
  TranslationTable table = build_translation_table(dios_fixture(), {"dios"}, kDefault);
  CHECK(select_canonical(table, "dios") == "dios");
}

TEST_CASE("select_canonical breaks exact ties lexicographically") {
  std::vector<std::pair<std::string, std::string>> raw;
  for (int i = 0; i < 5; ++i) raw.push_back({"ngadto uno", "bb"});
  for (int i = 0; i < 5; ++i) raw.push_back({"ngadto dos", "aa"});
  Corpus corpus = corpus_of(raw);
  TranslationTable table = build_translation_table(corpus, {"ngadto"}, kDefault);
  const TableEntry *entry = table.find("ngadto");
  REQUIRE(entry != nullptr);
  CHECK(select_canonical(table, "ngadto") == "aa");
}

TEST_CASE("select_canonical errors when everything is NONE") {
  // Filler pairs dilute every target word below the dice threshold, so
  // the watched word ends up with no candidate at all.
  std::vector<std::pair<std::string, std::string>> raw = {
      {"dios miingon", "ibang salita lamang"}, {"dios mibiya", "ibang salita lamang"}};
  for (int i = 0; i < 20; ++i) raw.push_back({"puno sa kahoy", "ibang salita lamang"});
  PipelineConfig strict = kDefault;
  strict.dice_threshold = 0.5;
  TranslationTable table = build_translation_table(corpus_of(raw), {"dios"}, strict);
  CHECK_THROWS_WITH_AS(select_canonical(table, "dios"), doctest::Contains("NONE"), Error);
  CHECK_THROWS_AS(select_canonical(table, "wala"), Error);
}

TEST_CASE("canonicalize_names replaces variants in the target") {
  CanonicalizationRule rule{"dios", "dios", {"panginoon", "jehova"},
                            CanonicalizationRule::Mode::kInsertIfAbsent};
  Corpus corpus = corpus_of({{"ang dios miingon", "sinabi ng panginoon"}});
  auto [rewritten, records] = canonicalize_names(corpus, rule);
  CHECK(rewritten[0].target.raw == "sinabi ng dios");
  REQUIRE(records.size() == 1);
  CHECK(records[0].action == ChangeRecord::Action::kReplace);
  CHECK(records[0].old_token == "panginoon");
  CHECK(records[0].new_token == "dios");
  CHECK(records[0].position == 2);
}

TEST_CASE("canonicalize_names inserts at the relative source position") {
  CanonicalizationRule rule{"dios", "dios", {"panginoon"},
                            CanonicalizationRule::Mode::kInsertIfAbsent};
  // "dios" at source index 3 of 10 tokens; target has 7 tokens and no
  // variant: round(0.3 * 7) = 2.
  Corpus corpus = corpus_of(
      {{"a b c dios e f g h i j", "t0 t1 t2 t3 t4 t5 t6"}});
  auto [rewritten, records] = canonicalize_names(corpus, rule);
  REQUIRE(records.size() == 1);
  CHECK(records[0].action == ChangeRecord::Action::kInsert);
  CHECK(records[0].position == 2);
  REQUIRE(rewritten[0].target.tokens.size() == 8);
  CHECK(rewritten[0].target.tokens[2] == "dios");
  CHECK(rewritten[0].target.raw == "t0 t1 dios t2 t3 t4 t5 t6");
}

TEST_CASE("canonicalize_names leaves pairs without the source word untouched") {
  CanonicalizationRule rule{"dios", "dios", {"panginoon"},
                            CanonicalizationRule::Mode::kInsertIfAbsent};
  Corpus corpus = corpus_of({{"walay labot", "sinabi ng panginoon"}});
  auto [rewritten, records] = canonicalize_names(corpus, rule);
  CHECK(records.empty());
  CHECK(pairs_identical(corpus, rewritten));
}

TEST_CASE("after canonicalize_names every matching pair carries the canonical token") {
  CanonicalizationRule rule{"dios", "dios", {"panginoon", "jehova"},
                            CanonicalizationRule::Mode::kInsertIfAbsent};
  std::mt19937 rng(57);
  std::vector<std::pair<std::string, std::string>> raw;
  const std::vector<std::string> tgt_words = {"panginoon", "jehova", "siya", "ang", "sinabi"};
  for (int i = 0; i < 60; ++i) {
    std::string src = (rng() % 2) ? "si dios miingon" : "walay diyos dinhi";
    std::string tgt;
    int len = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < len; ++k) {
      if (!tgt.empty()) tgt += " ";
      tgt += tgt_words[rng() % tgt_words.size()];
    }
    raw.push_back({src, tgt});
  }
  Corpus corpus = corpus_of(raw);
  auto [rewritten, records] = canonicalize_names(corpus, rule);
  for (const auto &pair : rewritten) {
    bool src_has = false;
    for (const auto &token : pair.source.tokens) src_has = src_has || token == "dios";
    if (!src_has) continue;
    bool tgt_has = false;
    for (const auto &token : pair.target.tokens) tgt_has = tgt_has || token == "dios";
    CHECK(tgt_has);
  }

  SUBCASE("second application is a byte-level no-op") {
    auto [twice, second_records] = canonicalize_names(rewritten, rule);
    CHECK(second_records.empty());
    CHECK(pairs_identical(rewritten, twice));
  }
}

TEST_CASE("canonicalize_verbs replaces but never inserts") {
  CanonicalizationRule rule{"ngadto", "paroon", {"pumaroon", "bumaba", "yumaon"},
                            CanonicalizationRule::Mode::kReplaceOnly};

  SUBCASE("variant present") {
    Corpus corpus = corpus_of({{"ngadto sila", "pumaroon sila"}});
    auto [rewritten, records] = canonicalize_verbs(corpus, rule);
    CHECK(rewritten[0].target.raw == "paroon sila");
    CHECK(records.size() == 1);
  }

  SUBCASE("no variant leaves the pair unchanged") {
    Corpus corpus = corpus_of({{"ngadto sila", "umalis sila"}});
    auto [rewritten, records] = canonicalize_verbs(corpus, rule);
    CHECK(records.empty());
    CHECK(pairs_identical(corpus, rewritten));
    CHECK(rewritten[0].target.tokens.size() == 2);
  }

  SUBCASE("two variants both replaced") {
    Corpus corpus = corpus_of({{"ngadto sila", "pumaroon sila bumaba"}});
    auto [rewritten, records] = canonicalize_verbs(corpus, rule);
    CHECK(rewritten[0].target.raw == "paroon sila paroon");
    REQUIRE(records.size() == 2);
    CHECK(records[0].position == 0);
    CHECK(records[1].position == 2);
    // Brute-force check: exactly the variant positions changed.
    Corpus original = corpus_of({{"ngadto sila", "pumaroon sila bumaba"}});
    for (std::size_t i = 0; i < original[0].target.tokens.size(); ++i) {
      const std::string &before = original[0].target.tokens[i];
      const std::string &after = rewritten[0].target.tokens[i];
      bool variant = before == "pumaroon" || before == "bumaba" || before == "yumaon";
      CHECK(after == (variant ? "paroon" : before));
    }
  }

  SUBCASE("verb pass is idempotent") {
    Corpus corpus = corpus_of({{"ngadto sila", "pumaroon sila bumaba"}});
    auto [once, first_records] = canonicalize_verbs(corpus, rule);
    auto [twice, second_records] = canonicalize_verbs(once, rule);
    CHECK(second_records.empty());
    CHECK(pairs_identical(once, twice));
  }
}

TEST_CASE("canonicalize preserves pair order and count") {
  CanonicalizationRule rule{"dios", "dios", {"panginoon"},
                            CanonicalizationRule::Mode::kInsertIfAbsent};
  Corpus corpus = corpus_of({{"dios una", "panginoon muna"},
                             {"walay labot", "walang kinalaman"},
                             {"dios ulahi", "huli ang panginoon"}});
  auto [rewritten, records] = canonicalize(corpus, rule);
  REQUIRE(rewritten.size() == 3);
  CHECK(rewritten[0].pair_id == 0);
  CHECK(rewritten[1].pair_id == 1);
  CHECK(rewritten[2].pair_id == 2);
  CHECK(rewritten[1].target.raw == "walang kinalaman");
}

TEST_CASE("results are identical across worker counts") {
  // Large enough to cross the parallel threshold.
  std::mt19937 rng(303);
  Corpus corpus;
  std::vector<std::string> variants = {"panginoon", "jehova", "ginoo"};
  for (int i = 0; i < 5000; ++i) {
    std::string src = (rng() % 3) ? "ug ang dios miingon " + std::to_string(rng() % 40)
                                  : "walay labot kini " + std::to_string(rng() % 40);
    std::string tgt = (rng() % 4) ? "at sinabi ng " + variants[rng() % 3]
                                  : "walang sinabi rito " + std::to_string(rng() % 40);
    corpus.push_back(mk(i, src, tgt));
  }

  PipelineConfig serial = kDefault;
  serial.jobs = 1;
  PipelineConfig threaded = kDefault;
  threaded.jobs = 4;

  TranslationTable t1 = build_translation_table(corpus, {"dios"}, serial);
  TranslationTable t4 = build_translation_table(corpus, {"dios"}, threaded);
  const TableEntry *e1 = t1.find("dios");
  const TableEntry *e4 = t4.find("dios");
  REQUIRE(e1 != nullptr);
  REQUIRE(e4 != nullptr);
  CHECK(e1->total_occurrences == e4->total_occurrences);
  CHECK(e1->none_count == e4->none_count);
  REQUIRE(e1->candidates.size() == e4->candidates.size());
  for (std::size_t i = 0; i < e1->candidates.size(); ++i) {
    CHECK(e1->candidates[i].target_word == e4->candidates[i].target_word);
    CHECK(e1->candidates[i].attributed == e4->candidates[i].attributed);
    CHECK(e1->candidates[i].dice == e4->candidates[i].dice);
  }

  CanonicalizationRule rule{"dios", "dios", {"panginoon", "jehova", "ginoo"},
                            CanonicalizationRule::Mode::kInsertIfAbsent};
  auto [serial_pairs, serial_log] = canonicalize_names(corpus, rule, 1);
  auto [threaded_pairs, threaded_log] = canonicalize_names(corpus, rule, 4);
  CHECK(pairs_identical(serial_pairs, threaded_pairs));
  REQUIRE(serial_log.size() == threaded_log.size());
  for (std::size_t i = 0; i < serial_log.size(); ++i) {
    CHECK(serial_log[i].pair_id == threaded_log[i].pair_id);
    CHECK(serial_log[i].position == threaded_log[i].position);
  }
}

TEST_CASE("rule validation") {
  CanonicalizationRule bad{"dios", "dios", {"dios"}, CanonicalizationRule::Mode::kInsertIfAbsent};
  CHECK_THROWS_AS(bad.validate(), Error);
  CanonicalizationRule no_variants{"ngadto", "paroon", {}, CanonicalizationRule::Mode::kReplaceOnly};
  CHECK_THROWS_AS(no_variants.validate(), Error);
  CanonicalizationRule ok{"ngadto", "paroon", {}, CanonicalizationRule::Mode::kInsertIfAbsent};
  CHECK_NOTHROW(ok.validate());
  CHECK_THROWS_AS(canonicalize_names(Corpus{}, no_variants), Error);
  CHECK_THROWS_AS(canonicalize_verbs(Corpus{}, ok), Error);
}
