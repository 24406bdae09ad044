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

#ifndef KAWING_BIBLE_HPP_
#define KAWING_BIBLE_HPP_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kawing/config.hpp"
#include "kawing/corpus.hpp"

namespace kawing {

struct MonolingualDocument {
  std::string language_code;
  std::vector<std::pair<VerseId, std::string>> segments;  // file order, ids unique
};

struct BibleParseOptions {
  std::string language_code;
  std::string segment_element = "seg";
  std::string id_prefix = "b";
  char id_separator = '.';
  std::optional<std::set<std::string>> book_filter;
};

struct BibleParseStats {
  std::size_t segments_seen = 0;
  std::size_t skipped_ids = 0;      // id attribute missing or unparseable
  std::size_t filtered_out = 0;     // book excluded by the filter
  std::size_t duplicate_ids = 0;    // later repeats of an already-seen id
  std::size_t empty_segments = 0;   // text empty after cleaning
};

// Parses verse-indexed Bible XML. Each <seg id="b.BOOK.C.V"> element that
// survives the book filter yields one cleaned (VerseId, text) entry.
// Throws on malformed XML (with line number) and when no segment at all
// could be extracted.
std::pair<MonolingualDocument, BibleParseStats> parse_bible_xml(
    std::string_view xml, const BibleParseOptions &options);

struct AlignmentReport {
  std::size_t pairs_emitted = 0;
  std::vector<VerseId> source_only;
  std::vector<VerseId> target_only;
  std::size_t duplicates_dropped = 0;  // filled in by dedupe_repetitive
};

// One pair per verse id present in both documents, ordered by
// (book, chapter, verse) with the book order taken from the source
// document's first occurrences. Verses on one side only are reported,
// never dropped silently.
std::pair<Corpus, AlignmentReport> align_by_verse(const MonolingualDocument &source,
                                                  const MonolingualDocument &target,
                                                  const PipelineConfig &config);

// Keeps the first pair for each distinct source token sequence. Output is
// renumbered; the second member is the number of pairs dropped.
std::pair<Corpus, std::size_t> dedupe_repetitive(const Corpus &pairs);

}  // namespace kawing

#endif  // KAWING_BIBLE_HPP_
