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

#include "kawing/corpus.hpp"

#include <fstream>

#include <json.hpp>

#include "kawing/error.hpp"
#include "kawing/text.hpp"

namespace kawing {

using nlohmann::json;

bool VerseId::valid() const {
  if (book.size() != 3) return false;
  for (char c : book) {
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))) return false;
  }
  return chapter >= 1 && verse >= 1;
}

std::string VerseId::str() const {
  return book + " " + std::to_string(chapter) + ":" + std::to_string(verse);
}

Sentence make_sentence(std::string_view raw, const PipelineConfig &config) {
  Sentence s;
  s.raw = clean(raw);
  s.tokens = tokenize(s.raw, config);
  return s;
}

void renumber(Corpus &corpus) {
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    corpus[i].pair_id = static_cast<std::int64_t>(i);
  }
}

namespace {

json origin_to_json(const Origin &origin) {
  json j;
  if (const auto *bible = std::get_if<BibleVerseOrigin>(&origin)) {
    j["type"] = "bible";
    j["book"] = bible->verse.book;
    j["chapter"] = bible->verse.chapter;
    j["verse"] = bible->verse.verse;
  } else if (const auto *wiki = std::get_if<WikiSentenceOrigin>(&origin)) {
    j["type"] = "wiki";
    j["category"] = wiki->category;
    j["article_title"] = wiki->article_title;
    j["source_index"] = wiki->source_index;
    j["target_index"] = wiki->target_index;
  } else {
    const auto &imported = std::get<ImportedOrigin>(origin);
    j["type"] = "imported";
    j["line"] = imported.line;
  }
  return j;
}

Origin origin_from_json(const json &j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "bible") {
    BibleVerseOrigin o;
    o.verse.book = j.at("book").get<std::string>();
    o.verse.chapter = j.at("chapter").get<int>();
    o.verse.verse = j.at("verse").get<int>();
    return o;
  }
  if (type == "wiki") {
    WikiSentenceOrigin o;
    o.category = j.at("category").get<std::string>();
    o.article_title = j.at("article_title").get<std::string>();
    o.source_index = j.at("source_index").get<std::size_t>();
    o.target_index = j.at("target_index").get<std::size_t>();
    return o;
  }
  if (type == "imported") {
    ImportedOrigin o;
    o.line = j.at("line").get<std::size_t>();
    return o;
  }
  throw Error("corpus: unknown origin type '" + type + "'");
}

}  // namespace

void save_corpus_jsonl(const std::string &path, const Corpus &corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  for (const auto &pair : corpus) {
    json j;
    j["pair_id"] = pair.pair_id;
    j["origin"] = origin_to_json(pair.origin);
    j["source_raw"] = pair.source.raw;
    j["target_raw"] = pair.target.raw;
    out << j.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

Corpus load_corpus_jsonl(const std::string &path, const PipelineConfig &config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file: " + path);
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      throw Error("corpus: bad JSON at " + path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    SentencePair pair;
    pair.pair_id = j.at("pair_id").get<std::int64_t>();
    pair.origin = origin_from_json(j.at("origin"));
    pair.source = make_sentence(j.at("source_raw").get<std::string>(), config);
    pair.target = make_sentence(j.at("target_raw").get<std::string>(), config);
    if (pair.source.tokens.empty() || pair.target.tokens.empty()) {
      throw Error("corpus: empty sentence at " + path + ":" + std::to_string(line_no));
    }
    corpus.push_back(std::move(pair));
  }
  return corpus;
}

}  // namespace kawing
