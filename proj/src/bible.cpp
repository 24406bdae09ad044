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

#include "kawing/bible.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "kawing/error.hpp"
#include "kawing/text.hpp"

namespace kawing {

namespace {

// Minimal streaming XML reader: enough for verse-indexed Bible corpora
// (elements, attributes, comments, CDATA, the five named entities plus
// numeric references). Reports the line number of the first defect.
class XmlReader {
 public:
  explicit XmlReader(std::string_view xml) : xml_(xml) {}

  struct Element {
    std::string name;
    std::unordered_map<std::string, std::string> attributes;
    bool self_closing = false;
  };

  // Event callbacks: on_open(Element), on_close(name), on_text(decoded).
  template <typename OnOpen, typename OnClose, typename OnText>
  void parse(OnOpen &&on_open, OnClose &&on_close, OnText &&on_text) {
    std::vector<std::string> stack;
    while (pos_ < xml_.size()) {
      if (xml_[pos_] != '<') {
        std::size_t start = pos_;
        while (pos_ < xml_.size() && xml_[pos_] != '<') advance();
        on_text(decode_entities(xml_.substr(start, pos_ - start)));
        continue;
      }
      if (starts_with("<!--")) {
        skip_until("-->", "unterminated comment");
      } else if (starts_with("<![CDATA[")) {
        std::size_t start = pos_ + 9;
        skip_until("]]>", "unterminated CDATA section");
        on_text(std::string(xml_.substr(start, pos_ - 3 - start)));
      } else if (starts_with("<!")) {
        skip_doctype();
      } else if (starts_with("<?")) {
        skip_until("?>", "unterminated processing instruction");
      } else if (pos_ + 1 < xml_.size() && xml_[pos_ + 1] == '/') {
        std::string name = parse_close_tag();
        if (stack.empty()) fail("closing tag '" + name + "' without matching open");
        if (stack.back() != name) {
          fail("mismatched closing tag '" + name + "', expected '" + stack.back() + "'");
        }
        stack.pop_back();
        on_close(name);
      } else {
        Element element = parse_open_tag();
        if (!element.self_closing) stack.push_back(element.name);
        bool self_closing = element.self_closing;
        std::string name = element.name;
        on_open(std::move(element));
        if (self_closing) on_close(name);
      }
    }
    if (!stack.empty()) fail("unclosed element '" + stack.back() + "'");
  }

 private:
  void advance() {
    if (xml_[pos_] == '\n') ++line_;
    ++pos_;
  }

  bool starts_with(std::string_view prefix) const { return xml_.substr(pos_, prefix.size()) == prefix; }

  [[noreturn]] void fail(const std::string &what) const {
    throw Error("XML parse error at line " + std::to_string(line_) + ": " + what);
  }

  void skip_until(std::string_view terminator, const char *error) {
    std::size_t found = xml_.find(terminator, pos_);
    if (found == std::string_view::npos) fail(error);
    while (pos_ < found + terminator.size()) advance();
  }

  // DOCTYPE may carry an internal subset in brackets.
  void skip_doctype() {
    int bracket_depth = 0;
    while (pos_ < xml_.size()) {
      char c = xml_[pos_];
      if (c == '[') ++bracket_depth;
      if (c == ']') --bracket_depth;
      advance();
      if (c == '>' && bracket_depth <= 0) return;
    }
    fail("unterminated DOCTYPE declaration");
  }

  std::string parse_close_tag() {
    advance();  // <
    advance();  // /
    std::string name = parse_name();
    skip_space();
    if (pos_ >= xml_.size() || xml_[pos_] != '>') fail("malformed closing tag");
    advance();
    return name;
  }

  Element parse_open_tag() {
    advance();  // <
    Element element;
    element.name = parse_name();
    if (element.name.empty()) fail("malformed tag");
    while (true) {
      skip_space();
      if (pos_ >= xml_.size()) fail("unterminated tag '" + element.name + "'");
      if (xml_[pos_] == '>') {
        advance();
        return element;
      }
      if (xml_[pos_] == '/') {
        advance();
        if (pos_ >= xml_.size() || xml_[pos_] != '>') fail("malformed self-closing tag");
        advance();
        element.self_closing = true;
        return element;
      }
      std::string attr = parse_name();
      if (attr.empty()) fail("malformed attribute in '" + element.name + "'");
      skip_space();
      std::string value;
      if (pos_ < xml_.size() && xml_[pos_] == '=') {
        advance();
        skip_space();
        if (pos_ >= xml_.size() || (xml_[pos_] != '"' && xml_[pos_] != '\'')) {
          fail("attribute '" + attr + "' value must be quoted");
        }
        char quote = xml_[pos_];
        advance();
        std::size_t start = pos_;
        while (pos_ < xml_.size() && xml_[pos_] != quote) advance();
        if (pos_ >= xml_.size()) fail("unterminated attribute value for '" + attr + "'");
        value = decode_entities(xml_.substr(start, pos_ - start));
        advance();
      }
      element.attributes.emplace(std::move(attr), std::move(value));
    }
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < xml_.size()) {
      char c = xml_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '>' || c == '/' || c == '=') break;
      advance();
    }
    return std::string(xml_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < xml_.size()) {
      char c = xml_[pos_];
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
      advance();
    }
  }

  std::string decode_entities(std::string_view raw) const {
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
        out.push_back(raw[i++]);  // bare ampersand, keep literal
        continue;
      }
      std::string_view entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "lt") {
        out.push_back('<');
      } else if (entity == "gt") {
        out.push_back('>');
      } else if (entity == "amp") {
        out.push_back('&');
      } else if (entity == "quot") {
        out.push_back('"');
      } else if (entity == "apos") {
        out.push_back('\'');
      } else if (!entity.empty() && entity[0] == '#') {
        long cp = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')
                      ? std::strtol(std::string(entity.substr(2)).c_str(), nullptr, 16)
                      : std::strtol(std::string(entity.substr(1)).c_str(), nullptr, 10);
        if (cp <= 0 || cp > 0x10FFFF) {
          out.append(raw.substr(i, semi - i + 1));
        } else {
          char32_t u = static_cast<char32_t>(cp);
          if (u < 0x80) {
            out.push_back(static_cast<char>(u));
          } else if (u < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (u >> 6)));
            out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
          } else if (u < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (u >> 12)));
            out.push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
          } else {
            out.push_back(static_cast<char>(0xF0 | (u >> 18)));
            out.push_back(static_cast<char>(0x80 | ((u >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
          }
        }
      } else {
        out.append(raw.substr(i, semi - i + 1));  // unknown entity, keep literal
      }
      i = semi + 1;
    }
    return out;
  }

  std::string_view xml_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

// "b.GEN.1.3" -> VerseId{GEN, 1, 3}. Anything off-pattern is rejected.
std::optional<VerseId> parse_verse_id(const std::string &id, const std::string &prefix, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t at = id.find(sep, start);
    if (at == std::string::npos) {
      parts.push_back(id.substr(start));
      break;
    }
    parts.push_back(id.substr(start, at - start));
    start = at + 1;
  }
  if (parts.size() != 4 || parts[0] != prefix) return std::nullopt;

  VerseId verse;
  verse.book = parts[1];
  auto parse_positive = [](const std::string &s) -> std::optional<int> {
    if (s.empty() || s.size() > 9) return std::nullopt;
    int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v >= 1 ? std::optional<int>(v) : std::nullopt;
  };
  auto chapter = parse_positive(parts[2]);
  auto number = parse_positive(parts[3]);
  if (!chapter || !number) return std::nullopt;
  verse.chapter = *chapter;
  verse.verse = *number;
  if (!verse.valid()) return std::nullopt;
  return verse;
}

}  // namespace

std::pair<MonolingualDocument, BibleParseStats> parse_bible_xml(std::string_view xml,
                                                                const BibleParseOptions &options) {
  MonolingualDocument doc;
  doc.language_code = options.language_code;
  BibleParseStats stats;
  std::unordered_set<std::string> seen_ids;

  // Capture state for the innermost matching segment element; nested
  // markup inside a segment contributes its text content.
  int capture_depth = 0;
  std::string capture_id;
  std::string capture_text;

  auto finish_segment = [&] {
    ++stats.segments_seen;
    auto verse = parse_verse_id(capture_id, options.id_prefix, options.id_separator);
    if (!verse) {
      ++stats.skipped_ids;
      return;
    }
    if (options.book_filter && !options.book_filter->count(verse->book)) {
      ++stats.filtered_out;
      return;
    }
    if (!seen_ids.insert(capture_id).second) {
      ++stats.duplicate_ids;
      return;
    }
    std::string text = clean(capture_text);
    if (text.empty()) {
      ++stats.empty_segments;
      return;
    }
    doc.segments.emplace_back(*verse, std::move(text));
  };

  XmlReader reader(xml);
  reader.parse(
      [&](XmlReader::Element element) {
        if (capture_depth > 0) {
          ++capture_depth;
          return;
        }
        if (element.name != options.segment_element) return;
        auto id = element.attributes.find("id");
        capture_id = id == element.attributes.end() ? "" : id->second;
        capture_text.clear();
        capture_depth = 1;
      },
      [&](const std::string &) {
        if (capture_depth == 0) return;
        if (--capture_depth == 0) finish_segment();
      },
      [&](const std::string &text) {
        if (capture_depth > 0) capture_text += text;
      });

  if (doc.segments.empty()) {
    throw Error("empty document: no verse segments extracted (saw " +
                std::to_string(stats.segments_seen) + " segment elements, " +
                std::to_string(stats.skipped_ids) + " with unparseable ids)");
  }
  return {std::move(doc), stats};
}

std::pair<Corpus, AlignmentReport> align_by_verse(const MonolingualDocument &source,
                                                  const MonolingualDocument &target,
                                                  const PipelineConfig &config) {
  AlignmentReport report;

  std::map<VerseId, const std::string *> target_by_id;
  for (const auto &[verse, text] : target.segments) target_by_id.emplace(verse, &text);

  // Book order follows first occurrence in the source document.
  std::unordered_map<std::string, std::size_t> book_rank;
  for (const auto &[verse, text] : source.segments) {
    book_rank.emplace(verse.book, book_rank.size());
  }

  struct Shared {
    VerseId verse;
    const std::string *source_text;
    const std::string *target_text;
  };
  std::vector<Shared> shared;
  std::set<VerseId> matched;
  for (const auto &[verse, text] : source.segments) {
    auto hit = target_by_id.find(verse);
    if (hit == target_by_id.end()) {
      report.source_only.push_back(verse);
    } else {
      shared.push_back({verse, &text, hit->second});
      matched.insert(verse);
    }
  }
  for (const auto &[verse, text] : target.segments) {
    if (!matched.count(verse)) report.target_only.push_back(verse);
  }

  std::sort(shared.begin(), shared.end(), [&](const Shared &a, const Shared &b) {
    std::size_t ra = book_rank.at(a.verse.book);
    std::size_t rb = book_rank.at(b.verse.book);
    if (ra != rb) return ra < rb;
    if (a.verse.chapter != b.verse.chapter) return a.verse.chapter < b.verse.chapter;
    return a.verse.verse < b.verse.verse;
  });

  Corpus pairs;
  pairs.reserve(shared.size());
  for (const auto &entry : shared) {
    SentencePair pair;
    pair.pair_id = static_cast<std::int64_t>(pairs.size());
    pair.origin = BibleVerseOrigin{entry.verse};
    pair.source = make_sentence(*entry.source_text, config);
    pair.target = make_sentence(*entry.target_text, config);
    pairs.push_back(std::move(pair));
  }
  report.pairs_emitted = pairs.size();
  return {std::move(pairs), std::move(report)};
}

std::pair<Corpus, std::size_t> dedupe_repetitive(const Corpus &pairs) {
  Corpus kept;
  kept.reserve(pairs.size());
  std::unordered_set<std::string> seen;
  std::size_t dropped = 0;
  for (const auto &pair : pairs) {
    std::string key;
    for (const auto &token : pair.source.tokens) {
      key += token;
      key.push_back('\x1F');  // never occurs inside a token
    }
    if (seen.insert(std::move(key)).second) {
      kept.push_back(pair);
    } else {
      ++dropped;
    }
  }
  renumber(kept);
  return {std::move(kept), dropped};
}

}  // namespace kawing
