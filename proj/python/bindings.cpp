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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kawing/bible.hpp"
#include "kawing/bleu.hpp"
#include "kawing/config.hpp"
#include "kawing/consistency.hpp"
#include "kawing/corpus.hpp"
#include "kawing/error.hpp"
#include "kawing/split.hpp"
#include "kawing/text.hpp"
#include "kawing/wiki.hpp"

namespace py = pybind11;

namespace {

using RawPair = std::pair<std::string, std::string>;

kawing::PipelineConfig make_config(bool lowercase, double tau, int max_candidates, int n_min,
                                   int n_max, int min_support) {
  kawing::PipelineConfig config;
  config.lowercase = lowercase;
  config.dice_threshold = tau;
  config.max_candidates = max_candidates;
  config.ngram_min = n_min;
  config.ngram_max = n_max;
  config.min_support = min_support;
  config.validate();
  return config;
}

kawing::Corpus corpus_from_pairs(const std::vector<RawPair> &raw_pairs,
                                 const kawing::PipelineConfig &config) {
  kawing::Corpus corpus;
  corpus.reserve(raw_pairs.size());
  for (std::size_t i = 0; i < raw_pairs.size(); ++i) {
    kawing::SentencePair pair;
    pair.pair_id = static_cast<std::int64_t>(i);
    pair.origin = kawing::ImportedOrigin{i + 1};
    pair.source = kawing::make_sentence(raw_pairs[i].first, config);
    pair.target = kawing::make_sentence(raw_pairs[i].second, config);
    corpus.push_back(std::move(pair));
  }
  return corpus;
}

std::vector<RawPair> pairs_to_raw(const kawing::Corpus &corpus) {
  std::vector<RawPair> out;
  out.reserve(corpus.size());
  for (const auto &pair : corpus) out.emplace_back(pair.source.raw, pair.target.raw);
  return out;
}

py::dict report_to_dict(const kawing::BleuReport &report) {
  py::dict d;
  d["score"] = report.score;
  d["p1"] = report.precisions[0];
  d["p2"] = report.precisions[1];
  d["p3"] = report.precisions[2];
  d["p4"] = report.precisions[3];
  d["bp"] = report.brevity_penalty;
  d["hyp_len"] = report.hyp_len;
  d["ref_len"] = report.ref_len;
  return d;
}

py::dict table_to_dict(const kawing::TranslationTable &table) {
  py::dict d;
  for (const auto &entry : table.entries) {
    py::list candidates;
    for (const auto &candidate : entry.candidates) {
      py::dict c;
      c["target_word"] = candidate.target_word;
      c["cooccurrence"] = candidate.cooccurrence;
      c["source_count"] = candidate.source_count;
      c["target_count"] = candidate.target_count;
      c["dice"] = candidate.dice;
      c["attributed"] = candidate.attributed;
      candidates.append(std::move(c));
    }
    py::dict e;
    e["candidates"] = std::move(candidates);
    e["none_count"] = entry.none_count;
    e["total_occurrences"] = entry.total_occurrences;
    d[py::str(entry.source_word)] = std::move(e);
  }
  return d;
}

kawing::CanonicalizationRule make_rule(const std::string &source_word, const std::string &canonical,
                                       const std::vector<std::string> &variants,
                                       const std::string &mode) {
  kawing::CanonicalizationRule rule;
  rule.source_word = source_word;
  rule.canonical = canonical;
  rule.variants = variants;
  if (mode == "insert_if_absent") {
    rule.mode = kawing::CanonicalizationRule::Mode::kInsertIfAbsent;
  } else if (mode == "replace_only") {
    rule.mode = kawing::CanonicalizationRule::Mode::kReplaceOnly;
  } else {
    throw kawing::Error("mode must be 'insert_if_absent' or 'replace_only'");
  }
  rule.validate();
  return rule;
}

}  // namespace

PYBIND11_MODULE(kawing, m) {
  m.doc() = "Parallel corpus construction toolkit: cleaning, verse alignment, "
            "translation-consistency correction, topic segment mining and BLEU.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<kawing::Error>(m, "KawingError");

  m.def("clean", [](const std::string &text) { return kawing::clean(text); },
        py::arg("text"),
        "Normalize raw text: strip tags and control characters, collapse whitespace.");

  m.def(
      "tokenize",
      [](const std::string &text, bool lowercase) {
        auto config = make_config(lowercase, 0.1, 12, 3, 6, 5);
        return kawing::tokenize(text, config);
      },
      py::arg("text"), py::arg("lowercase") = true,
      "Split cleaned text into tokens; punctuation becomes standalone tokens.");

  m.def("detokenize", &kawing::detokenize, py::arg("tokens"), "Join tokens with single spaces.");

  m.def(
      "bleu_corpus",
      [](const std::vector<kawing::TokenList> &hyp, const std::vector<kawing::TokenList> &ref) {
        return report_to_dict(kawing::bleu_corpus(hyp, ref));
      },
      py::arg("hypotheses"), py::arg("references"),
      "Corpus BLEU over token lists; returns score, p1..p4, bp and lengths.");

  m.def(
      "bleu_sentence",
      [](const kawing::TokenList &hyp, const kawing::TokenList &ref) {
        return report_to_dict(kawing::bleu_sentence(hyp, ref));
      },
      py::arg("hypothesis"), py::arg("reference"),
      "Smoothed single-sentence BLEU over token lists.");

  m.def(
      "build_translation_table",
      [](const std::vector<RawPair> &pairs, const std::vector<std::string> &watchlist, double tau,
         int max_candidates, bool lowercase) {
        auto config = make_config(lowercase, tau, max_candidates, 3, 6, 5);
        auto corpus = corpus_from_pairs(pairs, config);
        return table_to_dict(kawing::build_translation_table(corpus, watchlist, config));
      },
      py::arg("pairs"), py::arg("watchlist"), py::arg("tau") = 0.1,
      py::arg("max_candidates") = 12, py::arg("lowercase") = true,
      "Co-occurrence translation table for watched source words over (source, target) pairs.");

  m.def(
      "select_canonical",
      [](const std::vector<RawPair> &pairs, const std::string &source_word, double tau,
         int max_candidates, bool lowercase) {
        auto config = make_config(lowercase, tau, max_candidates, 3, 6, 5);
        auto corpus = corpus_from_pairs(pairs, config);
        auto table = kawing::build_translation_table(corpus, {source_word}, config);
        return kawing::select_canonical(table, source_word);
      },
      py::arg("pairs"), py::arg("source_word"), py::arg("tau") = 0.1,
      py::arg("max_candidates") = 12, py::arg("lowercase") = true,
      "Most frequently attributed translation of a watched word.");

  m.def(
      "canonicalize",
      [](const std::vector<RawPair> &pairs, const std::string &source_word,
         const std::string &canonical, const std::vector<std::string> &variants,
         const std::string &mode, bool lowercase) {
        auto config = make_config(lowercase, 0.1, 12, 3, 6, 5);
        auto corpus = corpus_from_pairs(pairs, config);
        auto rule = make_rule(source_word, canonical, variants, mode);
        auto [rewritten, records] = kawing::canonicalize(corpus, rule);
        py::list changes;
        for (const auto &record : records) {
          py::dict c;
          c["pair_id"] = record.pair_id;
          c["action"] =
              record.action == kawing::ChangeRecord::Action::kReplace ? "replace" : "insert";
          c["position"] = record.position;
          c["old"] = record.old_token;
          c["new"] = record.new_token;
          changes.append(std::move(c));
        }
        return py::make_tuple(pairs_to_raw(rewritten), changes);
      },
      py::arg("pairs"), py::arg("source_word"), py::arg("canonical"), py::arg("variants"),
      py::arg("mode") = "insert_if_absent", py::arg("lowercase") = true,
      "Apply one canonicalization rule; returns (pairs, change_log).");

  m.def(
      "dedupe",
      [](const std::vector<RawPair> &pairs, bool lowercase) {
        auto config = make_config(lowercase, 0.1, 12, 3, 6, 5);
        auto [kept, dropped] = kawing::dedupe_repetitive(corpus_from_pairs(pairs, config));
        return py::make_tuple(pairs_to_raw(kept), dropped);
      },
      py::arg("pairs"), py::arg("lowercase") = true,
      "Keep the first pair per distinct source token sequence; returns (pairs, dropped).");

  m.def(
      "split_corpus",
      [](const std::vector<RawPair> &pairs, const std::array<double, 3> &ratios,
         std::uint64_t seed, bool lowercase) {
        auto config = make_config(lowercase, 0.1, 12, 3, 6, 5);
        auto result = kawing::split_corpus(corpus_from_pairs(pairs, config), ratios, seed);
        py::dict d;
        d["train"] = pairs_to_raw(result.train);
        d["valid"] = pairs_to_raw(result.valid);
        d["test"] = pairs_to_raw(result.test);
        return d;
      },
      py::arg("pairs"), py::arg("ratios") = std::array<double, 3>{0.8, 0.1, 0.1},
      py::arg("seed") = 42, py::arg("lowercase") = true,
      "Deterministic shuffled train/valid/test partition.");

  m.def(
      "mine_topic_segments",
      [](const std::vector<std::string> &sentences, int n_min, int n_max, int min_support,
         bool lowercase) {
        auto config = make_config(lowercase, 0.1, 12, n_min, n_max, min_support);
        kawing::ArticlePair article;
        article.category = "default";
        article.title = "default";
        for (const auto &raw : sentences) {
          article.source_sentences.push_back(kawing::make_sentence(raw, config));
        }
        article.target_sentences = article.source_sentences;
        auto segments = kawing::mine_topic_segments({article}, "default", kawing::Side::kSource,
                                                    config);
        py::list out;
        for (const auto &segment : segments) {
          py::dict s;
          s["ngram"] = segment.ngram;
          s["count"] = segment.occurrence_count;
          s["coverage"] = segment.coverage();
          out.append(std::move(s));
        }
        return out;
      },
      py::arg("sentences"), py::arg("n_min") = 3, py::arg("n_max") = 6,
      py::arg("min_support") = 5, py::arg("lowercase") = true,
      "Frequent contiguous n-grams over a sentence list (presence counts).");

  m.def(
      "split_sentences",
      [](const std::string &text, bool lowercase) {
        auto config = make_config(lowercase, 0.1, 12, 3, 6, 5);
        std::vector<std::string> out;
        for (const auto &sentence : kawing::split_sentences(kawing::clean(text), config)) {
          out.push_back(sentence.raw);
        }
        return out;
      },
      py::arg("text"), py::arg("lowercase") = true,
      "Sentence boundary split with abbreviation handling.");

  m.def("extract_article_text",
        [](const std::string &html) { return kawing::extract_article_text(html); },
        py::arg("html"), "Paragraph text of an HTML page, cleaned.");

  m.def("build_article_url", &kawing::build_article_url, py::arg("language_code"),
        py::arg("article_title"),
        py::arg("allowed_langs") = std::vector<std::string>{"ceb", "tl"},
        "Wikipedia article URL with percent-encoded title.");
}
