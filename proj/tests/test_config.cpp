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

#include "kawing/config.hpp"
#include "kawing/error.hpp"
#include "test_util.hpp"

using namespace kawing;

TEST_CASE("default config validates") { CHECK_NOTHROW(PipelineConfig{}.validate()); }

TEST_CASE("config validation catches bad values") {
  PipelineConfig config;
  config.dice_threshold = 0.0;
  CHECK_THROWS_AS(config.validate(), Error);
  config.dice_threshold = 1.5;
  CHECK_THROWS_AS(config.validate(), Error);

  config = PipelineConfig{};
  config.ngram_min = 5;
  config.ngram_max = 3;
  CHECK_THROWS_AS(config.validate(), Error);

  config = PipelineConfig{};
  config.split_ratios = {0.5, 0.4, 0.2};
  CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("sum to 1"), Error);

  config = PipelineConfig{};
  config.split_ratios = {1.2, -0.1, -0.1};
  CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("config files layer over the defaults") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("kawing.conf"),
                       "# comment line\n"
                       "lowercase = false\n"
                       "dice_threshold = 0.25\n"
                       "split_ratios = 0.7, 0.2, 0.1\n"
                       "rng_seed = 123\n"
                       "\n"
                       "jobs = 2  # trailing comment\n");
  PipelineConfig config = load_config_file(dir.file("kawing.conf"));
  CHECK(config.lowercase == false);
  CHECK(config.dice_threshold == doctest::Approx(0.25));
  CHECK(config.split_ratios[0] == doctest::Approx(0.7));
  CHECK(config.rng_seed == 123);
  CHECK(config.jobs == 2);
  CHECK(config.max_candidates == 12);  // untouched default
}

TEST_CASE("config file errors name the offender") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("bad1.conf"), "no_such_key = 1\n");
  CHECK_THROWS_WITH_AS(load_config_file(dir.file("bad1.conf")), doctest::Contains("no_such_key"),
                       Error);
  testutil::write_file(dir.file("bad2.conf"), "dice_threshold\n");
  CHECK_THROWS_WITH_AS(load_config_file(dir.file("bad2.conf")), doctest::Contains("line 1"),
                       Error);
  testutil::write_file(dir.file("bad3.conf"), "split_ratios = 0.5,0.5\n");
  CHECK_THROWS_AS(load_config_file(dir.file("bad3.conf")), Error);
  CHECK_THROWS_AS(load_config_file(dir.file("missing.conf")), Error);
}
