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

#ifndef KAWING_SPLIT_HPP_
#define KAWING_SPLIT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "kawing/config.hpp"
#include "kawing/corpus.hpp"

namespace kawing {

struct SplitResult {
  Corpus train;
  Corpus valid;
  Corpus test;
  std::uint64_t seed = 0;
};

// Deterministic shuffled partition. The shuffle is Fisher-Yates driven by
// std::mt19937_64 with index draws `next() % (i + 1)`, which is stable
// across platforms and versions. Cuts fall at round(r_train * N) and
// round((r_train + r_valid) * N), rounding half away from zero. Throws
// when any split ends up empty, naming the offending ratio.
SplitResult split_corpus(const Corpus &pairs, const std::array<double, 3> &ratios,
                         std::uint64_t seed);

// Writes <prefix>.src and <prefix>.tgt: UTF-8, LF line endings, no BOM,
// one space-joined sentence per line, line i of both files forming one
// pair. Returns the two paths.
std::pair<std::string, std::string> export_parallel(const Corpus &pairs,
                                                    const std::string &path_prefix);

// Inverse of export_parallel. Lines are cleaned and tokenized; origins
// record the 1-based line number. Throws on unequal line counts,
// reporting both.
Corpus import_parallel(const std::string &source_path, const std::string &target_path,
                       const PipelineConfig &config);

}  // namespace kawing

#endif  // KAWING_SPLIT_HPP_
