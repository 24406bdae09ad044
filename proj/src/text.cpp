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

#include "kawing/text.hpp"

#include <string>
#include <vector>

#include "kawing/error.hpp"
#include "kawing/utf8.hpp"

namespace kawing {

namespace {

// Tag removal matches the leftmost-shortest <...> span; a '<' with no
// closing '>' is literal text.
std::string strip_tags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<') {
      std::size_t close = text.find('>', i + 1);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

bool is_punct_token_char(char32_t cp) {
  switch (cp) {
    case U'.':
    case U',':
    case U':':
    case U';':
    case U'!':
    case U'?':
    case U'(':
    case U')':
    case U'"':
    case 0xAB:  // «
    case 0xBB:  // »
    case U'[':
    case U']':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string clean(std::string_view text) {
  if (auto bad = utf8::find_invalid(text)) {
    throw Error("invalid UTF-8 at byte offset " + std::to_string(*bad));
  }

  std::string untagged = strip_tags(text);

  // Control characters: tab/newline/CR become spaces, the rest vanish.
  // NBSP also maps to a plain space so the whitespace collapse sees it.
  // Combining marks compose with the preceding character (NFC over the
  // Latin repertoire).
  std::string out;
  out.reserve(untagged.size());
  char32_t pending = 0;        // last codepoint, held back for composition
  bool last_was_space = true;  // swallows leading whitespace
  auto flush_pending = [&] {
    if (pending != 0) {
      utf8::encode(pending, out);
      last_was_space = false;
      pending = 0;
    }
  };
  std::size_t pos = 0;
  while (pos < untagged.size()) {
    char32_t cp = *utf8::decode_next(untagged, pos);
    if (cp == '\t' || cp == '\n' || cp == '\r' || cp == 0xA0) cp = ' ';
    if (cp < 0x20 || cp == 0x7F) continue;
    if (cp == ' ') {
      flush_pending();
      if (!last_was_space) out.push_back(' ');
      last_was_space = true;
      continue;
    }
    if (pending != 0) {
      if (char32_t composed = utf8::compose(pending, cp)) {
        pending = composed;
        continue;
      }
      flush_pending();
    }
    pending = cp;
  }
  flush_pending();
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::string> tokenize(std::string_view text, const PipelineConfig &config) {
  std::vector<std::string> tokens;
  std::string current;
  auto push_current = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto decoded = utf8::decode_next(text, pos);
    if (!decoded) throw Error("invalid UTF-8 at byte offset " + std::to_string(pos));
    char32_t cp = *decoded;
    if (cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r') {
      push_current();
      continue;
    }
    if (config.lowercase) cp = utf8::to_lower(cp);
    if (is_punct_token_char(cp)) {
      push_current();
      std::string punct;
      utf8::encode(cp, punct);
      tokens.push_back(std::move(punct));
      continue;
    }
    utf8::encode(cp, current);
  }
  push_current();
  return tokens;
}

std::string detokenize(const std::vector<std::string> &tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace kawing
