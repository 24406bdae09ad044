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

#ifndef KAWING_CONSISTENCY_HPP_
#define KAWING_CONSISTENCY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "kawing/config.hpp"
#include "kawing/corpus.hpp"

namespace kawing {

// One possible translation of a watched source word. All counts are
// document frequencies over sentence pairs (presence, not multiplicity).
struct Candidate {
  std::string target_word;
  std::size_t cooccurrence = 0;  // pairs containing both words
  std::size_t source_count = 0;  // pairs whose source contains the watched word
  std::size_t target_count = 0;  // pairs whose target contains this word
  double dice = 0.0;             // 2 * cooccurrence / (source_count + target_count)
  std::size_t attributed = 0;    // pairs where this candidate was the chosen translation
};

struct TableEntry {
  std::string source_word;
  std::vector<Candidate> candidates;  // dice descending, ties lexicographic
  std::size_t none_count = 0;         // pairs with the word but no candidate in the target
  std::size_t total_occurrences = 0;  // pairs whose source contains the word

  // sum(attributed) + none_count == total_occurrences, always.
};

struct TranslationTable {
  std::vector<TableEntry> entries;  // sorted by source_word

  const TableEntry *find(const std::string &source_word) const;
};

// Builds the co-occurrence table for every watched word. Candidates are
// the target word types with dice >= config.dice_threshold, capped at the
// top config.max_candidates by dice. Per pair containing the word, the
// attributed translation is the present candidate with the highest dice,
// or NONE when no candidate token occurs in the target. A watched word
// absent from every source sentence yields an entry with
// total_occurrences == 0 rather than an error.
TranslationTable build_translation_table(const Corpus &pairs,
                                         const std::vector<std::string> &watchlist,
                                         const PipelineConfig &config);

// Entries with total_occurrences >= min_total that translate
// inconsistently: two or more attributed candidates, or any NONE cases.
// Sorted by total_occurrences descending (ties by word).
std::vector<TableEntry> detect_inconsistencies(const TranslationTable &table,
                                               std::size_t min_total);

// The candidate with the most attributed pairs; ties broken by higher
// dice, then lexicographic order. Throws when the entry is missing or
// every occurrence was attributed NONE (a human has to decide those).
std::string select_canonical(const TranslationTable &table, const std::string &source_word);

struct CanonicalizationRule {
  enum class Mode { kInsertIfAbsent, kReplaceOnly };

  std::string source_word;
  std::string canonical;
  std::vector<std::string> variants;  // canonical itself never appears here
  Mode mode = Mode::kInsertIfAbsent;

  void validate() const;
};

struct ChangeRecord {
  std::int64_t pair_id = 0;
  enum class Action { kReplace, kInsert } action = Action::kReplace;
  std::size_t position = 0;  // target token index
  std::string old_token;     // empty for insertions
  std::string new_token;
};

// Copy-able correction for names (mode kInsertIfAbsent): in every pair
// whose source contains the watched word, variant target tokens are
// rewritten to the canonical form, and when the target still lacks the
// canonical token it is inserted at the source word's relative position
// (round(p * |target|), p = first source index / |source|). Untouched
// pairs are returned byte-identical; applying the same rule twice is a
// no-op.
std::pair<Corpus, std::vector<ChangeRecord>> canonicalize_names(
    const Corpus &pairs, const CanonicalizationRule &rule, int jobs = 1);

// Verb correction (mode kReplaceOnly): variant rewriting as above but
// never inserts on the NONE case.
std::pair<Corpus, std::vector<ChangeRecord>> canonicalize_verbs(
    const Corpus &pairs, const CanonicalizationRule &rule, int jobs = 1);

// Dispatches on rule.mode.
std::pair<Corpus, std::vector<ChangeRecord>> canonicalize(
    const Corpus &pairs, const CanonicalizationRule &rule, int jobs = 1);

// TSV rows: source_word, target_word, cooccurrence, dice, attributed;
// one extra __NONE__ row per entry carries the NONE count.
void export_table_tsv(const TranslationTable &table, const std::string &path);

// JSON array of {source_word, canonical, variants[], mode}.
std::vector<CanonicalizationRule> load_rules(const std::string &path);

// JSON lines {pair_id, action, position, old, new}.
void write_change_log(const std::string &path, const std::vector<ChangeRecord> &records);

}  // namespace kawing

#endif  // KAWING_CONSISTENCY_HPP_
