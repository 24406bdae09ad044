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

#ifndef KAWING_WIKI_HPP_
#define KAWING_WIKI_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kawing/config.hpp"
#include "kawing/corpus.hpp"

namespace kawing {

// https://<lang>.wikipedia.org/wiki/<title>, spaces mapped to underscores
// and everything outside the RFC 3986 unreserved set percent-encoded.
// `allowed_langs` guards against typos in language codes.
std::string build_article_url(const std::string &language_code, const std::string &article_title,
                              const std::vector<std::string> &allowed_langs = {"ceb", "tl"});

// Concatenated text content of <p> elements in document order, with
// markup stripped, [n] citation markers removed and clean() applied.
// Throws when the page has no paragraph text at all.
std::string extract_article_text(std::string_view html);

struct SentenceSplitOptions {
  // Words (lowercased, no trailing period) after which a period never
  // ends a sentence. Single letters and bare numbers are always treated
  // as abbreviations/ordinals.
  std::vector<std::string> abbreviations = {"mr", "mrs", "dr", "prof", "st", "gng", "bb", "no"};
};

// Splits cleaned text at . ! ? followed by whitespace and an uppercase
// letter (or end of text). Each piece is tokenized.
std::vector<Sentence> split_sentences(std::string_view text, const PipelineConfig &config,
                                      const SentenceSplitOptions &options = {});

struct ArticlePair {
  std::string category;
  std::string title;
  std::vector<Sentence> source_sentences;
  std::vector<Sentence> target_sentences;
};

enum class Side { kSource, kTarget };

std::string side_name(Side side);

// A frequent contiguous token sequence characteristic of a category.
struct TopicSegment {
  std::string category;
  Side side = Side::kSource;
  std::vector<std::string> ngram;
  std::size_t occurrence_count = 0;         // sentences containing the ngram
  std::size_t category_sentence_count = 0;  // sentences scanned on this side

  double coverage() const {
    return category_sentence_count == 0
               ? 0.0
               : static_cast<double>(occurrence_count) / static_cast<double>(category_sentence_count);
  }
};

// Mines all contiguous n-grams (config.ngram_min..ngram_max) over the
// chosen side of the category's sentences. Counting is per sentence
// (presence, not multiplicity); results need count >= config.min_support
// and are sorted by count descending, then longer n, then lexicographic.
// N-grams contained in an equally frequent longer result are suppressed.
std::vector<TopicSegment> mine_topic_segments(const std::vector<ArticlePair> &articles,
                                              const std::string &category, Side side,
                                              const PipelineConfig &config);

struct SegmentPair {
  std::string category;
  std::vector<std::string> source_ngram;
  std::vector<std::string> target_ngram;
};

struct TemplateExtraction {
  Corpus pairs;
  std::size_t unpaired_source = 0;
  std::size_t unpaired_target = 0;
};

// Zips, in document order, the source sentences containing the source
// segment with the target sentences containing the target segment.
// Surplus sentences on either side stay unpaired and are counted.
TemplateExtraction extract_parallel_by_template(const ArticlePair &article,
                                                const SegmentPair &segment_pair);

// Offline article layout: <root>/<category>/<title>.<lang>.html or .txt.
// Titles present in both languages become ArticlePairs.
std::vector<ArticlePair> load_article_dir(const std::string &root, const std::string &source_lang,
                                          const std::string &target_lang,
                                          const PipelineConfig &config);

// JSON-lines persistence for extracted article pairs.
void save_articles_jsonl(const std::string &path, const std::vector<ArticlePair> &articles);
std::vector<ArticlePair> load_articles_jsonl(const std::string &path, const PipelineConfig &config);

// JSON array of {category, side, ngram[], count, coverage}.
void save_segments_json(const std::string &path, const std::vector<TopicSegment> &segments);

// JSON object {category, source_ngram[], target_ngram[]}.
SegmentPair load_segment_pair_json(const std::string &path);

struct FetchOptions {
  std::vector<std::string> lang_codes = {"ceb", "tl"};
  std::map<std::string, std::vector<std::string>> categories;  // category -> titles
  int delay_ms = 1000;     // politeness delay between requests
  int max_requests = 100;  // total request cap
  std::string out_dir;
};

struct FetchReport {
  std::size_t requests_made = 0;
  std::size_t pages_saved = 0;
  std::vector<std::string> failures;
};

// Downloads <title>.<lang>.html files into out_dir/<category>/, one
// request in flight at a time with the configured delay. Network use is
// confined to this function; everything else in the module is offline.
FetchReport fetch_articles(const FetchOptions &options);

}  // namespace kawing

#endif  // KAWING_WIKI_HPP_
