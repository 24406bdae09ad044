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

#include "kawing/bleu.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include <json.hpp>

#include "kawing/error.hpp"

namespace kawing {

namespace {

constexpr int kMaxOrder = 4;

using NgramCounts = std::unordered_map<std::string, std::size_t>;

// N-grams keyed by tokens joined with a separator that clean() never
// lets through.
NgramCounts count_ngrams(const TokenList &tokens, int n) {
  NgramCounts counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      key += tokens[i + k];
      key.push_back('\x1F');
    }
    ++counts[key];
  }
  return counts;
}

struct MatchStats {
  std::array<std::size_t, kMaxOrder> clipped{};  // sum over types of min(hyp, ref)
  std::array<std::size_t, kMaxOrder> total{};    // hypothesis n-gram count
};

MatchStats match_pair(const TokenList &hypothesis, const TokenList &reference) {
  MatchStats stats;
  for (int n = 1; n <= kMaxOrder; ++n) {
    NgramCounts hyp = count_ngrams(hypothesis, n);
    NgramCounts ref = count_ngrams(reference, n);
    std::size_t clipped = 0;
    std::size_t total = 0;
    for (const auto &[key, count] : hyp) {
      total += count;
      auto hit = ref.find(key);
      if (hit != ref.end()) clipped += std::min(count, hit->second);
    }
    stats.clipped[n - 1] = clipped;
    stats.total[n - 1] = total;
  }
  return stats;
}

BleuReport score_from_stats(const MatchStats &stats, std::size_t hyp_len, std::size_t ref_len,
                            bool smooth_higher_orders) {
  BleuReport report;
  report.hyp_len = hyp_len;
  report.ref_len = ref_len;

  for (int n = 0; n < kMaxOrder; ++n) {
    double num = static_cast<double>(stats.clipped[n]);
    double den = static_cast<double>(stats.total[n]);
    if (smooth_higher_orders && n >= 1) {
      num += 1.0;
      den += 1.0;
    }
    report.precisions[n] = den > 0.0 ? num / den : 0.0;
  }

  if (hyp_len == 0) {
    report.brevity_penalty = 0.0;
  } else if (hyp_len > ref_len) {
    report.brevity_penalty = 1.0;
  } else {
    report.brevity_penalty =
        std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  }

  double log_sum = 0.0;
  for (double p : report.precisions) {
    if (p <= 0.0) {
      report.score = 0.0;
      return report;
    }
    log_sum += std::log(p);
  }
  report.score = 100.0 * report.brevity_penalty * std::exp(log_sum / kMaxOrder);
  return report;
}

}  // namespace

std::string BleuReport::formatted_score() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", score);
  return buf;
}

std::string BleuReport::to_json() const {
  nlohmann::json j;
  j["score"] = score;
  j["p1"] = precisions[0];
  j["p2"] = precisions[1];
  j["p3"] = precisions[2];
  j["p4"] = precisions[3];
  j["bp"] = brevity_penalty;
  j["hyp_len"] = hyp_len;
  j["ref_len"] = ref_len;
  return j.dump();
}

BleuReport bleu_corpus(const std::vector<TokenList> &hypotheses,
                       const std::vector<TokenList> &references) {
  if (hypotheses.empty()) throw Error("bleu: empty corpus");
  if (hypotheses.size() != references.size()) {
    throw Error("bleu: corpus size mismatch (" + std::to_string(hypotheses.size()) + ", " +
                std::to_string(references.size()) + ")");
  }

  // Clipped and total counts aggregate over the whole corpus before any
  // division; so do the lengths feeding the brevity penalty.
  MatchStats aggregate;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    MatchStats stats = match_pair(hypotheses[i], references[i]);
    for (int n = 0; n < kMaxOrder; ++n) {
      aggregate.clipped[n] += stats.clipped[n];
      aggregate.total[n] += stats.total[n];
    }
    hyp_len += hypotheses[i].size();
    ref_len += references[i].size();
  }
  return score_from_stats(aggregate, hyp_len, ref_len, false);
}

BleuReport bleu_sentence(const TokenList &hypothesis, const TokenList &reference) {
  if (hypothesis.empty() || reference.empty()) {
    throw Error("bleu: sentence hypothesis and reference must be non-empty");
  }
  MatchStats stats = match_pair(hypothesis, reference);
  // Add-one smoothing on n >= 2 only once the pair shares a unigram;
  // with no overlap at all the score stays an honest zero.
  bool smooth = stats.clipped[0] > 0;
  return score_from_stats(stats, hypothesis.size(), reference.size(), smooth);
}

}  // namespace kawing
