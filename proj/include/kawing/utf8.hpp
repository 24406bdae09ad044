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

#ifndef KAWING_UTF8_HPP_
#define KAWING_UTF8_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace kawing::utf8 {

// Decodes the codepoint starting at byte `pos`. On success advances `pos`
// past the encoded sequence. Returns std::nullopt on malformed input
// (overlong encodings, surrogates and truncated sequences all count as
// malformed) and leaves `pos` at the offending byte.
std::optional<char32_t> decode_next(std::string_view text, std::size_t &pos);

// Byte offset of the first invalid sequence, or nullopt if `text` is valid.
std::optional<std::size_t> find_invalid(std::string_view text);

void encode(char32_t cp, std::string &out);

// Case helpers for the Latin repertoire (ASCII, Latin-1 Supplement,
// Latin Extended-A). Codepoints outside that range pass through.
char32_t to_lower(char32_t cp);
bool is_upper(char32_t cp);
bool is_letter(char32_t cp);

// Canonical composition of base + combining mark for the precomposed
// Latin-1 range (grave, acute, circumflex, tilde, diaeresis, ring,
// cedilla). Returns 0 when the pair has no precomposed form.
char32_t compose(char32_t base, char32_t mark);

}  // namespace kawing::utf8

#endif  // KAWING_UTF8_HPP_
