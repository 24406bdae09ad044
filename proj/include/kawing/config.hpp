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

#ifndef KAWING_CONFIG_HPP_
#define KAWING_CONFIG_HPP_

#include <array>
#include <cstdint>
#include <string>

namespace kawing {

// Knobs shared across the pipeline. Every subcommand snapshots the
// effective config into its run manifest.
struct PipelineConfig {
  bool lowercase = true;
  double dice_threshold = 0.1;   // tau; candidate cutoff, in (0, 1]
  int max_candidates = 12;       // K; per-word candidate cap
  int ngram_min = 3;
  int ngram_max = 6;
  int min_support = 5;
  std::array<double, 3> split_ratios{0.8, 0.1, 0.1};  // train/valid/test
  std::uint64_t rng_seed = 42;
  int jobs = 0;  // worker cap; 0 means hardware concurrency

  // Throws kawing::Error on out-of-range values.
  void validate() const;
};

// Reads a `key = value` config file ('#' starts a comment, blank lines
// ignored, unknown keys rejected). Values layer on top of the defaults.
PipelineConfig load_config_file(const std::string &path);

}  // namespace kawing

#endif  // KAWING_CONFIG_HPP_
