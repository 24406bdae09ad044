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

#include "kawing/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kawing/error.hpp"

namespace kawing {

void PipelineConfig::validate() const {
  if (!(dice_threshold > 0.0 && dice_threshold <= 1.0)) {
    throw Error("dice_threshold must be in (0, 1], got " + std::to_string(dice_threshold));
  }
  if (max_candidates < 1) throw Error("max_candidates must be positive");
  if (ngram_min < 1 || ngram_min > ngram_max) {
    throw Error("ngram range invalid: [" + std::to_string(ngram_min) + ", " +
                std::to_string(ngram_max) + "]");
  }
  if (min_support < 1) throw Error("min_support must be positive");
  double sum = 0.0;
  for (double r : split_ratios) {
    if (r < 0.0) throw Error("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error("split ratios must sum to 1, got " + std::to_string(sum));
  }
  if (jobs < 0) throw Error("jobs must be >= 0");
}

namespace {

std::string trim(const std::string &s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string &value, const std::string &key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error("config: bad boolean for " + key + ": " + value);
}

double parse_double(const std::string &value, const std::string &key) {
  char *end = nullptr;
  double d = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') throw Error("config: bad number for " + key + ": " + value);
  return d;
}

long long parse_int(const std::string &value, const std::string &key) {
  char *end = nullptr;
  long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') throw Error("config: bad integer for " + key + ": " + value);
  return v;
}

}  // namespace

PipelineConfig load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);

  PipelineConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw Error("config: missing '=' at line " + std::to_string(line_no));
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));

    if (key == "lowercase") {
      config.lowercase = parse_bool(value, key);
    } else if (key == "dice_threshold") {
      config.dice_threshold = parse_double(value, key);
    } else if (key == "max_candidates") {
      config.max_candidates = static_cast<int>(parse_int(value, key));
    } else if (key == "ngram_min") {
      config.ngram_min = static_cast<int>(parse_int(value, key));
    } else if (key == "ngram_max") {
      config.ngram_max = static_cast<int>(parse_int(value, key));
    } else if (key == "min_support") {
      config.min_support = static_cast<int>(parse_int(value, key));
    } else if (key == "split_ratios") {
      std::stringstream ss(value);
      std::string part;
      for (double &slot : config.split_ratios) {
        if (!std::getline(ss, part, ',')) throw Error("config: split_ratios needs three values");
        slot = parse_double(trim(part), key);
      }
      if (std::getline(ss, part, ',')) throw Error("config: split_ratios needs three values");
    } else if (key == "rng_seed") {
      config.rng_seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "jobs") {
      config.jobs = static_cast<int>(parse_int(value, key));
    } else {
      throw Error("config: unknown key '" + key + "' at line " + std::to_string(line_no));
    }
  }
  config.validate();
  return config;
}

}  // namespace kawing
