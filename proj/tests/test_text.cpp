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

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "kawing/error.hpp"
#include "kawing/text.hpp"

using namespace kawing;

namespace {
const PipelineConfig kDefault{};
}

TEST_CASE("clean strips markup tags") {
  CHECK(clean("<seg id='b.GEN.1.1'>ug mitubag si jose</seg>") == "ug mitubag si jose");
  CHECK(clean("a <b>bold</b> word") == "a bold word");
  CHECK(clean("unclosed < bracket stays") == "unclosed < bracket stays");
}

TEST_CASE("clean removes control characters and collapses whitespace") {
  CHECK(clean("ang\x07 damgo\t ni  faraon ") == "ang damgo ni faraon");
  CHECK(clean("line\nbreak\r\nand\ttab") == "line break and tab");
  CHECK(clean("   ") == "");
  CHECK(clean("") == "");
}

TEST_CASE("clean composes combining marks") {
  // n + combining tilde -> precomposed ñ
  CHECK(clean("sen\xCC\x83or") == "se\xC3\xB1or");
  CHECK(clean("pin\xCC\x83"
              "a colada") == "pi\xC3\xB1"
                             "a colada");
  // already-composed input passes through unchanged
  CHECK(clean("se\xC3\xB1or") == "se\xC3\xB1or");
}

TEST_CASE("clean rejects invalid UTF-8 with the byte offset") {
  CHECK_THROWS_WITH_AS(clean(std::string_view("abc\xFFzz", 6)), doctest::Contains("byte offset 3"),
                       Error);
  CHECK_THROWS_AS(clean(std::string_view("\xC3", 1)), Error);  // truncated sequence
}

TEST_CASE("clean is idempotent") {
  std::mt19937 rng(7);
  const std::vector<std::string> pieces = {"ang",  "<tag>", "damgo", "\t", "  ", "ni\n",
                                           "jose", "&",     "\x01",  ".",  "ña", "<",
                                           ">",    "faraon", "«uy»"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    int parts = static_cast<int>(rng() % 12);
    for (int i = 0; i < parts; ++i) s += pieces[pick(rng)];
    std::string once = clean(s);
    CHECK(clean(once) == once);
  }
}

TEST_CASE("tokenize matches the spaced-punctuation lowercase form") {
  auto tokens = tokenize(clean("Ug mitubag si jose kang faraon: ang damgo"), kDefault);
  CHECK(tokens == std::vector<std::string>{"ug", "mitubag", "si", "jose", "kang", "faraon", ":",
                                           "ang", "damgo"});
}

TEST_CASE("tokenize keeps apostrophes and hyphens inside tokens") {
  auto tokens = tokenize("siya'y naging parang pakinabang.", kDefault);
  CHECK(tokens == std::vector<std::string>{"siya'y", "naging", "parang", "pakinabang", "."});
  CHECK(tokenize("crypto-collateral", kDefault) ==
        std::vector<std::string>{"crypto-collateral"});
}

TEST_CASE("tokenize splits every listed punctuation character") {
  auto tokens = tokenize("a.b,c:d;e!f?g(h)i\"j«k»l[m]n", kDefault);
  std::vector<std::string> expected = {"a", ".", "b", ",", "c", ":", "d", ";", "e", "!", "f",
                                       "?", "g", "(", "h", ")", "i", "\"", "j", "\xC2\xAB", "k",
                                       "\xC2\xBB", "l", "[", "m", "]", "n"};
  CHECK(tokens == expected);
}

TEST_CASE("tokenize on empty input") { CHECK(tokenize("", kDefault).empty()); }

TEST_CASE("tokenize respects the lowercase switch") {
  PipelineConfig keep_case;
  keep_case.lowercase = false;
  CHECK(tokenize("Ang Abra", keep_case) == std::vector<std::string>{"Ang", "Abra"});
  CHECK(tokenize("Ang Abra", kDefault) == std::vector<std::string>{"ang", "abra"});
  CHECK(tokenize("ÑAÑO", kDefault) == std::vector<std::string>{"\xC3\xB1"
                                                               "a\xC3\xB1o"});
}

TEST_CASE("detokenize then tokenize is a fixed point") {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {"ang", "dios", "si", "jose", ".", ",", "siya'y",
                                          "faraon", ":", "«", "»", "(", ")", "ña"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    int parts = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < parts; ++i) {
      if (!text.empty()) text += " ";
      text += words[pick(rng)];
    }
    auto tokens = tokenize(clean(text), kDefault);
    CHECK(tokenize(detokenize(tokens), kDefault) == tokens);
  }
}
