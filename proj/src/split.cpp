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

#include "kawing/split.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "kawing/error.hpp"
#include "kawing/text.hpp"

namespace kawing {

SplitResult split_corpus(const Corpus &pairs, const std::array<double, 3> &ratios,
                         std::uint64_t seed) {
  double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error("split: ratios must sum to 1, got " + std::to_string(sum));
  }
  for (double r : ratios) {
    if (r < 0.0) throw Error("split: ratios must be non-negative");
  }
  if (pairs.size() < 3) throw Error("split: need at least 3 pairs, got " + std::to_string(pairs.size()));

  // Fisher-Yates over indices. mt19937_64 output is specified by the
  // standard and the modulo draw avoids std::uniform_int_distribution,
  // whose mapping differs between library implementations.
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }

  auto n = static_cast<double>(pairs.size());
  auto cut1 = static_cast<std::size_t>(std::llround(ratios[0] * n));
  auto cut2 = static_cast<std::size_t>(std::llround((ratios[0] + ratios[1]) * n));
  if (cut1 == 0) throw Error("split: train split empty (ratio " + std::to_string(ratios[0]) + ")");
  if (cut2 <= cut1) throw Error("split: valid split empty (ratio " + std::to_string(ratios[1]) + ")");
  if (cut2 >= pairs.size()) {
    throw Error("split: test split empty (ratio " + std::to_string(ratios[2]) + ")");
  }

  SplitResult result;
  result.seed = seed;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const SentencePair &pair = pairs[order[i]];
    if (i < cut1) {
      result.train.push_back(pair);
    } else if (i < cut2) {
      result.valid.push_back(pair);
    } else {
      result.test.push_back(pair);
    }
  }
  return result;
}

std::pair<std::string, std::string> export_parallel(const Corpus &pairs,
                                                    const std::string &path_prefix) {
  std::string source_path = path_prefix + ".src";
  std::string target_path = path_prefix + ".tgt";
  std::ofstream src(source_path, std::ios::binary);
  if (!src) throw Error("cannot open for writing: " + source_path);
  std::ofstream tgt(target_path, std::ios::binary);
  if (!tgt) throw Error("cannot open for writing: " + target_path);
  for (const auto &pair : pairs) {
    src << detokenize(pair.source.tokens) << '\n';
    tgt << detokenize(pair.target.tokens) << '\n';
  }
  src.flush();
  tgt.flush();
  if (!src) throw Error("write failed: " + source_path);
  if (!tgt) throw Error("write failed: " + target_path);
  return {source_path, target_path};
}

namespace {

std::vector<std::string> read_lines(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open bitext file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

Corpus import_parallel(const std::string &source_path, const std::string &target_path,
                       const PipelineConfig &config) {
  std::vector<std::string> source_lines = read_lines(source_path);
  std::vector<std::string> target_lines = read_lines(target_path);
  if (source_lines.size() != target_lines.size()) {
    throw Error("import: line count mismatch (" + std::to_string(source_lines.size()) + ", " +
                std::to_string(target_lines.size()) + ")");
  }
  Corpus pairs;
  pairs.reserve(source_lines.size());
  for (std::size_t i = 0; i < source_lines.size(); ++i) {
    SentencePair pair;
    pair.pair_id = static_cast<std::int64_t>(i);
    pair.origin = ImportedOrigin{i + 1};
    pair.source = make_sentence(source_lines[i], config);
    pair.target = make_sentence(target_lines[i], config);
    if (pair.source.tokens.empty() || pair.target.tokens.empty()) {
      throw Error("import: empty sentence at line " + std::to_string(i + 1));
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace kawing
