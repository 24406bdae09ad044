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

#ifndef KAWING_TEXT_HPP_
#define KAWING_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "kawing/config.hpp"

namespace kawing {

// Normalizes raw text into the corpus form: strips markup tags, drops
// control characters (tab/newline/CR become spaces first), composes
// combining marks (NFC over the Latin repertoire), collapses whitespace
// runs and trims. Idempotent. Throws on invalid UTF-8, naming the byte
// offset.
std::string clean(std::string_view text);

// Splits cleaned text into tokens. Lowercases when config.lowercase is
// set. Each punctuation character in .,:;!?()"«»[] becomes its own
// token; apostrophes and hyphens stay inside their word. Joining the
// result with single spaces and re-tokenizing is a fixed point.
std::vector<std::string> tokenize(std::string_view text, const PipelineConfig &config);

// Joins tokens with single spaces.
std::string detokenize(const std::vector<std::string> &tokens);

}  // namespace kawing

#endif  // KAWING_TEXT_HPP_
