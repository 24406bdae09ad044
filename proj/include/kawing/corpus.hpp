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

#ifndef KAWING_CORPUS_HPP_
#define KAWING_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "kawing/config.hpp"

namespace kawing {

// b.GEN.1.3 -> {GEN, 1, 3}
struct VerseId {
  std::string book;  // three chars, [A-Z0-9]{3}
  int chapter = 0;
  int verse = 0;

  bool valid() const;
  std::string str() const;  // "GEN 1:3"

  friend bool operator==(const VerseId &a, const VerseId &b) = default;
  friend auto operator<=>(const VerseId &a, const VerseId &b) {
    return std::tie(a.book, a.chapter, a.verse) <=> std::tie(b.book, b.chapter, b.verse);
  }
};

struct BibleVerseOrigin {
  VerseId verse;
  friend bool operator==(const BibleVerseOrigin &, const BibleVerseOrigin &) = default;
};

struct WikiSentenceOrigin {
  std::string category;
  std::string article_title;
  std::size_t source_index = 0;  // positions within the article's sentence lists
  std::size_t target_index = 0;
  friend bool operator==(const WikiSentenceOrigin &, const WikiSentenceOrigin &) = default;
};

// Pairs read back from plain bitext files carry only their line number.
struct ImportedOrigin {
  std::size_t line = 0;  // 1-based
  friend bool operator==(const ImportedOrigin &, const ImportedOrigin &) = default;
};

using Origin = std::variant<BibleVerseOrigin, WikiSentenceOrigin, ImportedOrigin>;

struct Sentence {
  std::string raw;                  // cleaned surface form
  std::vector<std::string> tokens;  // tokenize(raw)
};

// Builds a Sentence from arbitrary raw text (cleans, then tokenizes).
Sentence make_sentence(std::string_view raw, const PipelineConfig &config);

struct SentencePair {
  std::int64_t pair_id = 0;  // position in the corpus
  Origin origin;
  Sentence source;
  Sentence target;
};

using Corpus = std::vector<SentencePair>;

// Resets pair_id to each pair's position.
void renumber(Corpus &corpus);

// JSON-lines interchange: one object per line with keys
// pair_id, origin, source_raw, target_raw. Tokens are recomputed on load.
void save_corpus_jsonl(const std::string &path, const Corpus &corpus);
Corpus load_corpus_jsonl(const std::string &path, const PipelineConfig &config);

}  // namespace kawing

#endif  // KAWING_CORPUS_HPP_
