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

#ifndef KAWING_BLEU_HPP_
#define KAWING_BLEU_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace kawing {

using TokenList = std::vector<std::string>;

struct BleuReport {
  double score = 0.0;                      // 0..100, full precision
  std::array<double, 4> precisions{};      // modified n-gram precisions p1..p4
  double brevity_penalty = 1.0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  // Presentation form, rounded to two decimals ("77.88").
  std::string formatted_score() const;
  std::string to_json() const;  // {score, p1..p4, bp, hyp_len, ref_len}
};

// Corpus BLEU with uniform 1/4 weights over n = 1..4: clipped and total
// n-gram counts are summed over all pairs before dividing, lengths are
// totals, and BP = 1 when hyp_len > ref_len, exp(1 - r/c) otherwise.
// Any zero aggregate precision forces a zero score. Throws on empty or
// mismatched inputs.
BleuReport bleu_corpus(const std::vector<TokenList> &hypotheses,
                       const std::vector<TokenList> &references);

// Single-pair BLEU with add-one smoothing on the n >= 2 precisions,
// applied only when at least one unigram matches, so near-misses on
// short sentences score above zero.
BleuReport bleu_sentence(const TokenList &hypothesis, const TokenList &reference);

}  // namespace kawing

#endif  // KAWING_BLEU_HPP_
