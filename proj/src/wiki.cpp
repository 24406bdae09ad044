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

#include "kawing/wiki.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "kawing/error.hpp"
#include "kawing/text.hpp"
#include "kawing/utf8.hpp"

namespace kawing {

namespace fs = std::filesystem;
using nlohmann::json;

std::string side_name(Side side) { return side == Side::kSource ? "source" : "target"; }

std::string build_article_url(const std::string &language_code, const std::string &article_title,
                              const std::vector<std::string> &allowed_langs) {
  if (article_title.empty()) throw Error("article title is empty");
  if (std::find(allowed_langs.begin(), allowed_langs.end(), language_code) == allowed_langs.end()) {
    throw Error("language code '" + language_code + "' not in the configured set");
  }

  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string encoded;
  for (unsigned char c : article_title) {
    if (c == ' ') {
      encoded.push_back('_');
    } else if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '-' || c == '.' || c == '_' || c == '~') {
      encoded.push_back(static_cast<char>(c));
    } else {
      encoded.push_back('%');
      encoded.push_back(kHex[c >> 4]);
      encoded.push_back(kHex[c & 0x0F]);
    }
  }
  return "https://" + language_code + ".wikipedia.org/wiki/" + encoded;
}

namespace {

std::string lower_ascii(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string decode_html_entities(std::string_view raw) {
  static const std::unordered_map<std::string, std::string> kNamed = {
      {"lt", "<"},   {"gt", ">"},     {"amp", "&"},   {"quot", "\""}, {"apos", "'"},
      {"nbsp", " "}, {"ndash", "-"},  {"mdash", "-"}, {"hellip", "..."},
      {"laquo", "\xC2\xAB"}, {"raquo", "\xC2\xBB"},
  };
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out.push_back(raw[i++]);
      continue;
    }
    std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(raw[i++]);
      continue;
    }
    std::string entity(raw.substr(i + 1, semi - i - 1));
    if (auto hit = kNamed.find(entity); hit != kNamed.end()) {
      out += hit->second;
    } else if (!entity.empty() && entity[0] == '#') {
      long cp = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')
                    ? std::strtol(entity.c_str() + 2, nullptr, 16)
                    : std::strtol(entity.c_str() + 1, nullptr, 10);
      if (cp > 0 && cp <= 0x10FFFF) {
        utf8::encode(static_cast<char32_t>(cp), out);
      } else {
        out.append(raw.substr(i, semi - i + 1));
      }
    } else {
      out.append(raw.substr(i, semi - i + 1));
    }
    i = semi + 1;
  }
  return out;
}

// Drops [1]-style citation markers left over from reference lists.
std::string strip_citation_markers(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i + 1 && j < text.size() && text[j] == ']') {
        i = j + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace

std::string extract_article_text(std::string_view html) {
  // Paragraph text only; script/style subtrees contribute nothing even
  // when nested inside <p>. Tags act as soft separators.
  std::string collected;
  int paragraph_depth = 0;
  std::string skip_until_close;  // "script" or "style" while active
  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      std::size_t start = i;
      while (i < html.size() && html[i] != '<') ++i;
      if (paragraph_depth > 0 && skip_until_close.empty()) {
        collected += decode_html_entities(html.substr(start, i - start));
      }
      continue;
    }
    if (html.substr(i, 4) == "<!--") {
      std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    bool closing = i + 1 < html.size() && html[i + 1] == '/';
    std::size_t name_start = i + (closing ? 2 : 1);
    std::size_t name_end = name_start;
    while (name_end < html.size() && std::isalnum(static_cast<unsigned char>(html[name_end]))) {
      ++name_end;
    }
    std::string name = lower_ascii(std::string(html.substr(name_start, name_end - name_start)));

    // Advance past the tag, honoring quoted attribute values.
    std::size_t j = name_end;
    char quote = 0;
    bool self_closing = false;
    while (j < html.size()) {
      char c = html[j];
      if (quote != 0) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        self_closing = j > 0 && html[j - 1] == '/';
        ++j;
        break;
      }
      ++j;
    }
    i = j;

    if (!skip_until_close.empty()) {
      if (closing && name == skip_until_close) skip_until_close.clear();
      continue;
    }
    if (!closing && (name == "script" || name == "style") && !self_closing) {
      skip_until_close = name;
      continue;
    }
    if (name == "p") {
      if (closing) {
        if (paragraph_depth > 0) --paragraph_depth;
        collected.push_back('\n');
      } else if (!self_closing) {
        ++paragraph_depth;
      }
      continue;
    }
    // Any other tag inside a paragraph separates words.
    if (paragraph_depth > 0) collected.push_back(' ');
  }

  std::string text = clean(strip_citation_markers(collected));
  if (text.empty()) throw Error("empty article: no paragraph content found");
  return text;
}

namespace {

bool is_split_punct(char c) { return c == '.' || c == '!' || c == '?'; }

// Trailing letter/digit run before position `end` (exclusive), lowercased;
// used for the abbreviation checks.
std::string word_before(std::string_view text, std::size_t end, const PipelineConfig &config) {
  std::size_t begin = end;
  while (begin > 0) {
    unsigned char c = static_cast<unsigned char>(text[begin - 1]);
    if (std::isspace(c)) break;
    if (!(std::isalnum(c) || c >= 0x80)) break;
    --begin;
  }
  PipelineConfig lowered = config;
  lowered.lowercase = true;
  auto tokens = tokenize(text.substr(begin, end - begin), lowered);
  return tokens.empty() ? "" : tokens.back();
}

bool all_digits(const std::string &word) {
  if (word.empty()) return false;
  return std::all_of(word.begin(), word.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool single_letter(const std::string &word) {
  if (word.empty()) return false;
  std::size_t pos = 0;
  auto cp = utf8::decode_next(word, pos);
  return cp && pos == word.size() && utf8::is_letter(*cp);
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text, const PipelineConfig &config,
                                      const SentenceSplitOptions &options) {
  std::unordered_set<std::string> abbreviations(options.abbreviations.begin(),
                                                options.abbreviations.end());
  std::vector<Sentence> sentences;
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && text[begin] == ' ') ++begin;
    while (end > begin && text[end - 1] == ' ') --end;
    if (begin >= end) return;
    Sentence s;
    s.raw = std::string(text.substr(begin, end - begin));
    s.tokens = tokenize(s.raw, config);
    if (!s.tokens.empty()) sentences.push_back(std::move(s));
  };

  std::size_t sentence_start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (!is_split_punct(c)) {
      ++i;
      continue;
    }
    if (c == '.') {
      std::string prev = word_before(text, i, config);
      if (single_letter(prev) || all_digits(prev) || abbreviations.count(prev)) {
        ++i;
        continue;
      }
    }
    // Split when followed by end of text or whitespace + uppercase.
    std::size_t next = i + 1;
    if (next >= text.size()) {
      ++i;
      continue;  // end of text closes the last sentence anyway
    }
    if (text[next] != ' ') {
      ++i;
      continue;
    }
    std::size_t after_space = next;
    while (after_space < text.size() && text[after_space] == ' ') ++after_space;
    if (after_space >= text.size()) {
      ++i;
      continue;
    }
    std::size_t probe = after_space;
    auto cp = utf8::decode_next(text, probe);
    if (cp && utf8::is_upper(*cp)) {
      emit(sentence_start, i + 1);
      sentence_start = after_space;
      i = after_space;
    } else {
      ++i;
    }
  }
  emit(sentence_start, text.size());
  return sentences;
}

std::vector<TopicSegment> mine_topic_segments(const std::vector<ArticlePair> &articles,
                                              const std::string &category, Side side,
                                              const PipelineConfig &config) {
  config.validate();
  std::vector<const std::vector<std::string> *> sentences;
  for (const auto &article : articles) {
    if (article.category != category) continue;
    const auto &list = side == Side::kSource ? article.source_sentences : article.target_sentences;
    for (const auto &sentence : list) sentences.push_back(&sentence.tokens);
  }
  if (sentences.empty()) throw Error("no articles in category '" + category + "'");

  // Presence counts: a sentence contributes once per distinct n-gram.
  struct SegmentCount {
    std::vector<std::string> ngram;
    std::size_t count = 0;
  };
  std::unordered_map<std::string, SegmentCount> counts;
  std::unordered_set<std::string> seen_in_sentence;
  for (const auto *tokens : sentences) {
    seen_in_sentence.clear();
    for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
      if (tokens->size() < static_cast<std::size_t>(n)) break;
      for (std::size_t start = 0; start + n <= tokens->size(); ++start) {
        std::string key;
        for (int k = 0; k < n; ++k) {
          key += (*tokens)[start + k];
          key.push_back('\x1F');
        }
        if (!seen_in_sentence.insert(key).second) continue;
        auto [it, inserted] = counts.try_emplace(std::move(key));
        if (inserted) {
          it->second.ngram.assign(tokens->begin() + static_cast<std::ptrdiff_t>(start),
                                  tokens->begin() + static_cast<std::ptrdiff_t>(start + n));
        }
        ++it->second.count;
      }
    }
  }

  std::vector<SegmentCount> frequent;
  for (auto &[key, sc] : counts) {
    if (sc.count >= static_cast<std::size_t>(config.min_support)) frequent.push_back(std::move(sc));
  }

  // Closed-frequent filtering: drop n-grams contained in an equally
  // frequent longer n-gram. A sub-n-gram can never be rarer than its
  // superstring, so checking equal counts is enough.
  auto contains = [](const std::vector<std::string> &longer, const std::vector<std::string> &shorter) {
    if (shorter.size() > longer.size()) return false;
    for (std::size_t offset = 0; offset + shorter.size() <= longer.size(); ++offset) {
      if (std::equal(shorter.begin(), shorter.end(), longer.begin() + static_cast<std::ptrdiff_t>(offset))) {
        return true;
      }
    }
    return false;
  };
  std::map<std::size_t, std::vector<const SegmentCount *>> by_count;
  for (const auto &sc : frequent) by_count[sc.count].push_back(&sc);
  std::vector<const SegmentCount *> kept;
  for (const auto &sc : frequent) {
    bool suppressed = false;
    for (const SegmentCount *other : by_count[sc.count]) {
      if (other->ngram.size() > sc.ngram.size() && contains(other->ngram, sc.ngram)) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(&sc);
  }

  std::sort(kept.begin(), kept.end(), [](const SegmentCount *a, const SegmentCount *b) {
    if (a->count != b->count) return a->count > b->count;
    if (a->ngram.size() != b->ngram.size()) return a->ngram.size() > b->ngram.size();
    return a->ngram < b->ngram;
  });

  std::vector<TopicSegment> result;
  result.reserve(kept.size());
  for (const SegmentCount *sc : kept) {
    TopicSegment segment;
    segment.category = category;
    segment.side = side;
    segment.ngram = sc->ngram;
    segment.occurrence_count = sc->count;
    segment.category_sentence_count = sentences.size();
    result.push_back(std::move(segment));
  }
  return result;
}

namespace {

bool contains_ngram(const std::vector<std::string> &tokens, const std::vector<std::string> &ngram) {
  if (ngram.empty() || ngram.size() > tokens.size()) return false;
  for (std::size_t offset = 0; offset + ngram.size() <= tokens.size(); ++offset) {
    if (std::equal(ngram.begin(), ngram.end(), tokens.begin() + static_cast<std::ptrdiff_t>(offset))) {
      return true;
    }
  }
  return false;
}

}  // namespace

TemplateExtraction extract_parallel_by_template(const ArticlePair &article,
                                                const SegmentPair &segment_pair) {
  if (article.category != segment_pair.category) {
    throw Error("segment pair category '" + segment_pair.category + "' does not match article '" +
                article.category + "'");
  }
  std::vector<std::size_t> source_hits, target_hits;
  for (std::size_t i = 0; i < article.source_sentences.size(); ++i) {
    if (contains_ngram(article.source_sentences[i].tokens, segment_pair.source_ngram)) {
      source_hits.push_back(i);
    }
  }
  for (std::size_t i = 0; i < article.target_sentences.size(); ++i) {
    if (contains_ngram(article.target_sentences[i].tokens, segment_pair.target_ngram)) {
      target_hits.push_back(i);
    }
  }

  TemplateExtraction extraction;
  std::size_t n = std::min(source_hits.size(), target_hits.size());
  for (std::size_t i = 0; i < n; ++i) {
    SentencePair pair;
    pair.pair_id = static_cast<std::int64_t>(i);
    pair.origin = WikiSentenceOrigin{article.category, article.title, source_hits[i], target_hits[i]};
    pair.source = article.source_sentences[source_hits[i]];
    pair.target = article.target_sentences[target_hits[i]];
    extraction.pairs.push_back(std::move(pair));
  }
  extraction.unpaired_source = source_hits.size() - n;
  extraction.unpaired_target = target_hits.size() - n;
  return extraction;
}

namespace {

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<ArticlePair> load_article_dir(const std::string &root, const std::string &source_lang,
                                          const std::string &target_lang,
                                          const PipelineConfig &config) {
  if (!fs::is_directory(root)) throw Error("article directory not found: " + root);

  std::vector<ArticlePair> articles;
  std::vector<fs::path> category_dirs;
  for (const auto &entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) category_dirs.push_back(entry.path());
  }
  std::sort(category_dirs.begin(), category_dirs.end());

  for (const auto &dir : category_dirs) {
    // title -> lang -> file path; extensions .html and .txt both accepted.
    std::map<std::string, std::map<std::string, fs::path>> titles;
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      fs::path p = entry.path();
      std::string ext = p.extension().string();
      if (ext != ".html" && ext != ".txt") continue;
      fs::path stem = p.stem();  // "<title>.<lang>"
      std::string lang = stem.extension().string();
      if (lang.size() < 2) continue;
      lang = lang.substr(1);
      std::string title = stem.stem().string();
      if (lang == source_lang || lang == target_lang) titles[title][lang] = p;
    }
    for (const auto &[title, by_lang] : titles) {
      auto src = by_lang.find(source_lang);
      auto tgt = by_lang.find(target_lang);
      if (src == by_lang.end() || tgt == by_lang.end()) continue;
      auto sentences_of = [&](const fs::path &p) {
        std::string content = read_file(p);
        std::string text =
            p.extension() == ".html" ? extract_article_text(content) : clean(content);
        return split_sentences(text, config);
      };
      ArticlePair pair;
      pair.category = dir.filename().string();
      pair.title = title;
      pair.source_sentences = sentences_of(src->second);
      pair.target_sentences = sentences_of(tgt->second);
      if (pair.source_sentences.empty() || pair.target_sentences.empty()) continue;
      articles.push_back(std::move(pair));
    }
  }
  return articles;
}

void save_articles_jsonl(const std::string &path, const std::vector<ArticlePair> &articles) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  for (const auto &article : articles) {
    json j;
    j["category"] = article.category;
    j["title"] = article.title;
    json src = json::array();
    for (const auto &s : article.source_sentences) src.push_back(s.raw);
    json tgt = json::array();
    for (const auto &s : article.target_sentences) tgt.push_back(s.raw);
    j["source_sentences"] = std::move(src);
    j["target_sentences"] = std::move(tgt);
    out << j.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

std::vector<ArticlePair> load_articles_jsonl(const std::string &path,
                                             const PipelineConfig &config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open articles file: " + path);
  std::vector<ArticlePair> articles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      throw Error("articles: bad JSON at " + path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    ArticlePair article;
    article.category = j.at("category").get<std::string>();
    article.title = j.at("title").get<std::string>();
    for (const auto &s : j.at("source_sentences")) {
      article.source_sentences.push_back(make_sentence(s.get<std::string>(), config));
    }
    for (const auto &s : j.at("target_sentences")) {
      article.target_sentences.push_back(make_sentence(s.get<std::string>(), config));
    }
    articles.push_back(std::move(article));
  }
  return articles;
}

void save_segments_json(const std::string &path, const std::vector<TopicSegment> &segments) {
  json doc = json::array();
  for (const auto &segment : segments) {
    json j;
    j["category"] = segment.category;
    j["side"] = side_name(segment.side);
    j["ngram"] = segment.ngram;
    j["count"] = segment.occurrence_count;
    j["coverage"] = segment.coverage();
    doc.push_back(std::move(j));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path);
}

SegmentPair load_segment_pair_json(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open segment pair file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error &e) {
    throw Error("segment pair: bad JSON in " + path + ": " + e.what());
  }
  SegmentPair pair;
  pair.category = j.at("category").get<std::string>();
  for (const auto &t : j.at("source_ngram")) pair.source_ngram.push_back(t.get<std::string>());
  for (const auto &t : j.at("target_ngram")) pair.target_ngram.push_back(t.get<std::string>());
  if (pair.source_ngram.empty() || pair.target_ngram.empty()) {
    throw Error("segment pair: ngrams must be non-empty");
  }
  return pair;
}

}  // namespace kawing
