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

#include "kawing/utf8.hpp"

namespace kawing::utf8 {

std::optional<char32_t> decode_next(std::string_view text, std::size_t &pos) {
  if (pos >= text.size()) return std::nullopt;
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return static_cast<char32_t>(b0);
  }

  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;  // stray continuation or invalid lead byte
  }
  if (pos + len > text.size()) return std::nullopt;
  for (int i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong forms, surrogates and out-of-range codepoints.
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
  pos += len;
  return cp;
}

std::optional<std::size_t> find_invalid(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t at = pos;
    if (!decode_next(text, pos)) return at;
  }
  return std::nullopt;
}

void encode(char32_t cp, std::string &out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1 uppercase
  if (cp == 0x178) return 0xFF;                                  // Y with diaeresis
  if (cp == 0x130) return U'i';                                  // dotted capital I
  // Latin Extended-A alternates upper/lower in pairs.
  if (cp >= 0x100 && cp <= 0x137 && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && (cp % 2) == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x179 && cp <= 0x17E && (cp % 2) == 1) return cp + 1;
  return cp;
}

bool is_upper(char32_t cp) { return to_lower(cp) != cp; }

bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  if (cp >= 0xC0 && cp <= 0x17F && cp != 0xD7 && cp != 0xF7) return true;
  return false;
}

namespace {

struct Composition {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

// Precomposed Latin-1 forms: combining grave U+0300, acute U+0301,
// circumflex U+0302, tilde U+0303, diaeresis U+0308, ring U+030A and
// cedilla U+0327.
constexpr Composition kCompositions[] = {
    {U'A', 0x300, 0xC0}, {U'A', 0x301, 0xC1}, {U'A', 0x302, 0xC2}, {U'A', 0x303, 0xC3},
    {U'A', 0x308, 0xC4}, {U'A', 0x30A, 0xC5}, {U'C', 0x327, 0xC7}, {U'E', 0x300, 0xC8},
    {U'E', 0x301, 0xC9}, {U'E', 0x302, 0xCA}, {U'E', 0x308, 0xCB}, {U'I', 0x300, 0xCC},
    {U'I', 0x301, 0xCD}, {U'I', 0x302, 0xCE}, {U'I', 0x308, 0xCF}, {U'N', 0x303, 0xD1},
    {U'O', 0x300, 0xD2}, {U'O', 0x301, 0xD3}, {U'O', 0x302, 0xD4}, {U'O', 0x303, 0xD5},
    {U'O', 0x308, 0xD6}, {U'U', 0x300, 0xD9}, {U'U', 0x301, 0xDA}, {U'U', 0x302, 0xDB},
    {U'U', 0x308, 0xDC}, {U'Y', 0x301, 0xDD}, {U'a', 0x300, 0xE0}, {U'a', 0x301, 0xE1},
    {U'a', 0x302, 0xE2}, {U'a', 0x303, 0xE3}, {U'a', 0x308, 0xE4}, {U'a', 0x30A, 0xE5},
    {U'c', 0x327, 0xE7}, {U'e', 0x300, 0xE8}, {U'e', 0x301, 0xE9}, {U'e', 0x302, 0xEA},
    {U'e', 0x308, 0xEB}, {U'i', 0x300, 0xEC}, {U'i', 0x301, 0xED}, {U'i', 0x302, 0xEE},
    {U'i', 0x308, 0xEF}, {U'n', 0x303, 0xF1}, {U'o', 0x300, 0xF2}, {U'o', 0x301, 0xF3},
    {U'o', 0x302, 0xF4}, {U'o', 0x303, 0xF5}, {U'o', 0x308, 0xF6}, {U'u', 0x300, 0xF9},
    {U'u', 0x301, 0xFA}, {U'u', 0x302, 0xFB}, {U'u', 0x308, 0xFC}, {U'y', 0x301, 0xFD},
    {U'y', 0x308, 0xFF},
};

}  // namespace

char32_t compose(char32_t base, char32_t mark) {
  for (const auto &c : kCompositions) {
    if (c.base == base && c.mark == mark) return c.composed;
  }
  return 0;
}

}  // namespace kawing::utf8
