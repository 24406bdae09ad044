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
//
// kawing: build, correct, mine and evaluate a sentence-aligned parallel
// corpus. Subcommands compose through a JSON-lines corpus interchange
// format; every run drops a manifest beside its primary output.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kawing/bible.hpp"
#include "kawing/bleu.hpp"
#include "kawing/config.hpp"
#include "kawing/consistency.hpp"
#include "kawing/corpus.hpp"
#include "kawing/error.hpp"
#include "kawing/split.hpp"
#include "kawing/text.hpp"
#include "kawing/wiki.hpp"

namespace {

using json = nlohmann::json;
using namespace kawing;

constexpr const char *kVersion = "0.1.0";

json config_to_json(const PipelineConfig &config) {
  json j;
  j["lowercase"] = config.lowercase;
  j["dice_threshold"] = config.dice_threshold;
  j["max_candidates"] = config.max_candidates;
  j["ngram_min"] = config.ngram_min;
  j["ngram_max"] = config.ngram_max;
  j["min_support"] = config.min_support;
  j["split_ratios"] = config.split_ratios;
  j["rng_seed"] = config.rng_seed;
  j["jobs"] = config.jobs;
  return j;
}

// One manifest per run, written next to the primary output (or into the
// working directory for print-only subcommands).
class Manifest {
 public:
  Manifest(std::string subcommand, const PipelineConfig &config)
      : subcommand_(std::move(subcommand)),
        config_(config),
        started_(std::chrono::steady_clock::now()) {}

  void input(const std::string &name, const std::string &path) { inputs_[name] = path; }
  void output(const std::string &name, const std::string &path) { outputs_[name] = path; }
  void count(const std::string &name, std::int64_t value) { counts_[name] = value; }
  void count(const std::string &name, double value) { counts_[name] = value; }

  void write(const std::string &primary_output) const {
    std::string path = primary_output.empty() ? subcommand_ + ".manifest.json"
                                              : primary_output + ".manifest.json";
    auto elapsed = std::chrono::steady_clock::now() - started_;
    json j;
    j["subcommand"] = subcommand_;
    j["config"] = config_to_json(config_);
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["counts"] = counts_;
    j["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
  }

 private:
  std::string subcommand_;
  PipelineConfig config_;
  json inputs_ = json::object();
  json outputs_ = json::object();
  json counts_ = json::object();
  std::chrono::steady_clock::time_point started_;
};

std::vector<std::string> read_word_list(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    std::size_t e = line.find_last_not_of(" \t");
    words.push_back(line.substr(b, e - b + 1));
  }
  return words;
}

std::vector<std::string> split_csv(const std::string &value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::vector<TokenList> tokenize_lines(const std::string &path, const PipelineConfig &config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::vector<TokenList> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(tokenize(clean(line), config));
  }
  return lines;
}

// Config file (lowest priority), then KAWING_CONFIG, then --config, then
// individual flag overrides applied by each subcommand.
struct ConfigStack {
  std::string config_path;  // --config
  std::optional<bool> lowercase;
  std::optional<double> dice_threshold;
  std::optional<int> max_candidates;
  std::optional<int> ngram_min;
  std::optional<int> ngram_max;
  std::optional<int> min_support;
  std::optional<std::string> ratios;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;

  PipelineConfig resolve() const {
    PipelineConfig config;
    std::string path = config_path;
    if (path.empty()) {
      if (const char *env = std::getenv("KAWING_CONFIG")) path = env;
    }
    if (!path.empty()) config = load_config_file(path);
    if (lowercase) config.lowercase = *lowercase;
    if (dice_threshold) config.dice_threshold = *dice_threshold;
    if (max_candidates) config.max_candidates = *max_candidates;
    if (ngram_min) config.ngram_min = *ngram_min;
    if (ngram_max) config.ngram_max = *ngram_max;
    if (min_support) config.min_support = *min_support;
    if (ratios) {
      auto parts = split_csv(*ratios);
      if (parts.size() != 3) throw Error("--ratios needs three comma-separated values");
      for (std::size_t i = 0; i < 3; ++i) config.split_ratios[i] = std::stod(parts[i]);
    }
    if (seed) config.rng_seed = *seed;
    if (jobs) config.jobs = *jobs;
    config.validate();
    return config;
  }
};

void add_config_flags(CLI::App *cmd, ConfigStack &stack) {
  cmd->add_option("--config", stack.config_path, "Config file (key = value lines)");
  cmd->add_option("--jobs", stack.jobs, "Worker cap (0 = all cores)");
  cmd->add_flag(
      "--no-lowercase", [&stack](std::int64_t) { stack.lowercase = false; },
      "Keep original casing when tokenizing");
}

int run_cli(int argc, char **argv) {
  CLI::App app{"kawing - parallel corpus construction toolkit"};
  app.set_version_flag("--version", std::string("kawing ") + kVersion);
  app.require_subcommand(1);

  ConfigStack stack;

  // ---- ingest-bible ----
  auto *ingest = app.add_subcommand("ingest-bible", "Parse verse-indexed Bible XML");
  struct {
    std::string xml, lang, books, out;
    std::string seg_element = "seg", id_prefix = "b", id_separator = ".";
  } ingest_opt;
  ingest->add_option("--xml", ingest_opt.xml, "Bible XML file")->required();
  ingest->add_option("--lang", ingest_opt.lang, "Language code for this file")->required();
  ingest->add_option("--books", ingest_opt.books, "Comma-separated book codes to keep");
  ingest->add_option("--seg-element", ingest_opt.seg_element, "Segment element name");
  ingest->add_option("--id-prefix", ingest_opt.id_prefix, "Verse id prefix");
  ingest->add_option("--id-separator", ingest_opt.id_separator, "Verse id separator character");
  ingest->add_option("--out", ingest_opt.out, "Output document (JSON lines)")->required();
  add_config_flags(ingest, stack);
  ingest->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("ingest-bible", config);
    manifest.input("xml", ingest_opt.xml);

    std::ifstream in(ingest_opt.xml, std::ios::binary);
    if (!in) throw Error("cannot open XML file: " + ingest_opt.xml);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    BibleParseOptions options;
    options.language_code = ingest_opt.lang;
    options.segment_element = ingest_opt.seg_element;
    options.id_prefix = ingest_opt.id_prefix;
    if (ingest_opt.id_separator.size() != 1) throw Error("--id-separator must be one character");
    options.id_separator = ingest_opt.id_separator[0];
    if (!ingest_opt.books.empty()) {
      auto books = split_csv(ingest_opt.books);
      options.book_filter = std::set<std::string>(books.begin(), books.end());
    }
    auto [doc, stats] = parse_bible_xml(buffer.str(), options);

    std::ofstream out(ingest_opt.out, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + ingest_opt.out);
    for (const auto &[verse, text] : doc.segments) {
      json j;
      j["language"] = doc.language_code;
      j["book"] = verse.book;
      j["chapter"] = verse.chapter;
      j["verse"] = verse.verse;
      j["text"] = text;
      out << j.dump() << '\n';
    }
    if (!out) throw Error("write failed: " + ingest_opt.out);

    manifest.output("document", ingest_opt.out);
    manifest.count("segments_seen", static_cast<std::int64_t>(stats.segments_seen));
    manifest.count("skipped_ids", static_cast<std::int64_t>(stats.skipped_ids));
    manifest.count("filtered_out", static_cast<std::int64_t>(stats.filtered_out));
    manifest.count("duplicate_ids", static_cast<std::int64_t>(stats.duplicate_ids));
    manifest.count("empty_segments", static_cast<std::int64_t>(stats.empty_segments));
    manifest.count("verses_out", static_cast<std::int64_t>(doc.segments.size()));
    manifest.write(ingest_opt.out);
    std::cout << "ingest-bible: " << doc.segments.size() << " verses -> " << ingest_opt.out << "\n";
  });

  // ---- align ----
  auto *align = app.add_subcommand("align", "Align two documents by verse id");
  struct {
    std::string src, tgt, out, report;
  } align_opt;
  align->add_option("--src", align_opt.src, "Source document (JSON lines)")->required();
  align->add_option("--tgt", align_opt.tgt, "Target document (JSON lines)")->required();
  align->add_option("--out", align_opt.out, "Output corpus (JSON lines)")->required();
  align->add_option("--report", align_opt.report, "Alignment report path (default <out>.report.json)");
  add_config_flags(align, stack);
  align->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("align", config);
    manifest.input("source", align_opt.src);
    manifest.input("target", align_opt.tgt);

    auto load_document = [](const std::string &path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw Error("cannot open document: " + path);
      MonolingualDocument doc;
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
          j = json::parse(line);
        } catch (const json::parse_error &e) {
          throw Error("document: bad JSON at " + path + ":" + std::to_string(line_no) + ": " +
                      e.what());
        }
        if (doc.language_code.empty()) doc.language_code = j.value("language", "");
        VerseId verse{j.at("book").get<std::string>(), j.at("chapter").get<int>(),
                      j.at("verse").get<int>()};
        doc.segments.emplace_back(verse, j.at("text").get<std::string>());
      }
      return doc;
    };
    MonolingualDocument source = load_document(align_opt.src);
    MonolingualDocument target = load_document(align_opt.tgt);
    auto [pairs, report] = align_by_verse(source, target, config);
    save_corpus_jsonl(align_opt.out, pairs);

    std::string report_path =
        align_opt.report.empty() ? align_opt.out + ".report.json" : align_opt.report;
    json rj;
    rj["pairs_emitted"] = report.pairs_emitted;
    rj["source_only"] = json::array();
    for (const auto &verse : report.source_only) rj["source_only"].push_back(verse.str());
    rj["target_only"] = json::array();
    for (const auto &verse : report.target_only) rj["target_only"].push_back(verse.str());
    rj["duplicates_dropped"] = report.duplicates_dropped;
    std::ofstream rout(report_path, std::ios::binary);
    if (!rout) throw Error("cannot open for writing: " + report_path);
    rout << rj.dump(2) << '\n';

    manifest.output("corpus", align_opt.out);
    manifest.output("report", report_path);
    manifest.count("pairs_emitted", static_cast<std::int64_t>(report.pairs_emitted));
    manifest.count("source_only", static_cast<std::int64_t>(report.source_only.size()));
    manifest.count("target_only", static_cast<std::int64_t>(report.target_only.size()));
    manifest.write(align_opt.out);
    std::cout << "align: " << report.pairs_emitted << " pairs -> " << align_opt.out << "\n";
  });

  // ---- dedupe ----
  auto *dedupe = app.add_subcommand("dedupe", "Drop repeated source sentences");
  struct {
    std::string in, out;
  } dedupe_opt;
  dedupe->add_option("--in", dedupe_opt.in, "Input corpus (JSON lines)")->required();
  dedupe->add_option("--out", dedupe_opt.out, "Output corpus (JSON lines)")->required();
  add_config_flags(dedupe, stack);
  dedupe->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("dedupe", config);
    manifest.input("corpus", dedupe_opt.in);
    Corpus pairs = load_corpus_jsonl(dedupe_opt.in, config);
    auto [kept, dropped] = dedupe_repetitive(pairs);
    save_corpus_jsonl(dedupe_opt.out, kept);
    manifest.output("corpus", dedupe_opt.out);
    manifest.count("pairs_in", static_cast<std::int64_t>(pairs.size()));
    manifest.count("pairs_out", static_cast<std::int64_t>(kept.size()));
    manifest.count("duplicates_dropped", static_cast<std::int64_t>(dropped));
    manifest.write(dedupe_opt.out);
    std::cout << "dedupe: dropped " << dropped << " of " << pairs.size() << " pairs\n";
  });

  // ---- table ----
  auto *table_cmd = app.add_subcommand("table", "Build the translation co-occurrence table");
  struct {
    std::string in, watchlist, out;
  } table_opt;
  table_cmd->add_option("--in", table_opt.in, "Input corpus (JSON lines)")->required();
  table_cmd->add_option("--watchlist", table_opt.watchlist, "Watched source words, one per line")
      ->required();
  table_cmd->add_option("--out", table_opt.out, "Output table (TSV)")->required();
  table_cmd->add_option("--tau", stack.dice_threshold, "Dice threshold in (0, 1]");
  table_cmd->add_option("--max-candidates", stack.max_candidates, "Candidate cap per word");
  add_config_flags(table_cmd, stack);
  table_cmd->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("table", config);
    manifest.input("corpus", table_opt.in);
    manifest.input("watchlist", table_opt.watchlist);
    Corpus pairs = load_corpus_jsonl(table_opt.in, config);
    auto watchlist = read_word_list(table_opt.watchlist);
    TranslationTable table = build_translation_table(pairs, watchlist, config);
    export_table_tsv(table, table_opt.out);
    std::size_t missing = 0;
    for (const auto &entry : table.entries) {
      if (entry.total_occurrences == 0) {
        ++missing;
        std::cerr << "warning: watched word '" << entry.source_word
                  << "' occurs in no source sentence\n";
      }
    }
    manifest.output("table", table_opt.out);
    manifest.count("pairs", static_cast<std::int64_t>(pairs.size()));
    manifest.count("watched", static_cast<std::int64_t>(table.entries.size()));
    manifest.count("watched_missing", static_cast<std::int64_t>(missing));
    manifest.write(table_opt.out);
    std::cout << "table: " << table.entries.size() << " watched words -> " << table_opt.out << "\n";
  });

  // ---- detect ----
  auto *detect = app.add_subcommand("detect", "List inconsistently translated words");
  struct {
    std::string in, watchlist, out;
    std::size_t min_total = 2;
  } detect_opt;
  detect->add_option("--in", detect_opt.in, "Input corpus (JSON lines)")->required();
  detect->add_option("--watchlist", detect_opt.watchlist, "Watched source words, one per line")
      ->required();
  detect->add_option("--min-total", detect_opt.min_total, "Minimum occurrences to report");
  detect->add_option("--out", detect_opt.out, "Output JSON (default: stdout)");
  detect->add_option("--tau", stack.dice_threshold, "Dice threshold in (0, 1]");
  add_config_flags(detect, stack);
  detect->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("detect", config);
    manifest.input("corpus", detect_opt.in);
    manifest.input("watchlist", detect_opt.watchlist);
    Corpus pairs = load_corpus_jsonl(detect_opt.in, config);
    auto watchlist = read_word_list(detect_opt.watchlist);
    TranslationTable table = build_translation_table(pairs, watchlist, config);
    auto flagged = detect_inconsistencies(table, detect_opt.min_total);

    json doc = json::array();
    for (const auto &entry : flagged) {
      json j;
      j["source_word"] = entry.source_word;
      j["total_occurrences"] = entry.total_occurrences;
      j["none_count"] = entry.none_count;
      json candidates = json::array();
      for (const auto &candidate : entry.candidates) {
        candidates.push_back({{"target_word", candidate.target_word},
                              {"cooccurrence", candidate.cooccurrence},
                              {"dice", candidate.dice},
                              {"attributed", candidate.attributed}});
      }
      j["candidates"] = std::move(candidates);
      doc.push_back(std::move(j));
    }
    if (detect_opt.out.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      std::ofstream out(detect_opt.out, std::ios::binary);
      if (!out) throw Error("cannot open for writing: " + detect_opt.out);
      out << doc.dump(2) << '\n';
      manifest.output("inconsistencies", detect_opt.out);
    }
    manifest.count("flagged", static_cast<std::int64_t>(flagged.size()));
    manifest.write(detect_opt.out);
    std::cerr << "detect: " << flagged.size() << " inconsistent words\n";
  });

  // ---- canonicalize ----
  auto *canon = app.add_subcommand("canonicalize", "Apply canonicalization rules to the target side");
  struct {
    std::string in, rules, out, log;
  } canon_opt;
  canon->add_option("--in", canon_opt.in, "Input corpus (JSON lines)")->required();
  canon->add_option("--rules", canon_opt.rules, "Rules file (JSON array)")->required();
  canon->add_option("--out", canon_opt.out, "Output corpus (JSON lines)")->required();
  canon->add_option("--log", canon_opt.log, "Change log path (default <out>.changes.jsonl)");
  add_config_flags(canon, stack);
  canon->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("canonicalize", config);
    manifest.input("corpus", canon_opt.in);
    manifest.input("rules", canon_opt.rules);
    Corpus pairs = load_corpus_jsonl(canon_opt.in, config);
    auto rules = load_rules(canon_opt.rules);

    std::vector<ChangeRecord> all_records;
    std::size_t replacements = 0;
    std::size_t insertions = 0;
    for (const auto &rule : rules) {
      auto [rewritten, records] = canonicalize(pairs, rule, config.jobs);
      pairs = std::move(rewritten);
      for (const auto &record : records) {
        if (record.action == ChangeRecord::Action::kReplace) {
          ++replacements;
        } else {
          ++insertions;
        }
      }
      all_records.insert(all_records.end(), records.begin(), records.end());
    }
    save_corpus_jsonl(canon_opt.out, pairs);
    std::string log_path = canon_opt.log.empty() ? canon_opt.out + ".changes.jsonl" : canon_opt.log;
    write_change_log(log_path, all_records);

    manifest.output("corpus", canon_opt.out);
    manifest.output("change_log", log_path);
    manifest.count("pairs", static_cast<std::int64_t>(pairs.size()));
    manifest.count("rules", static_cast<std::int64_t>(rules.size()));
    manifest.count("replacements", static_cast<std::int64_t>(replacements));
    manifest.count("insertions", static_cast<std::int64_t>(insertions));
    manifest.write(canon_opt.out);
    std::cout << "canonicalize: " << replacements << " replacements, " << insertions
              << " insertions across " << rules.size() << " rules\n";
  });

  // ---- wiki-fetch ----
  auto *fetch = app.add_subcommand("wiki-fetch", "Download Wikipedia article pairs");
  struct {
    std::string lang_codes = "ceb,tl";
    std::string category_file, out_dir;
    int delay_ms = 1000;
    int max_requests = 100;
  } fetch_opt;
  fetch->add_option("--lang-codes", fetch_opt.lang_codes, "Comma-separated language codes");
  fetch->add_option("--category-file", fetch_opt.category_file,
                    "JSON object: category -> [titles]")
      ->required();
  fetch->add_option("--delay-ms", fetch_opt.delay_ms, "Politeness delay between requests");
  fetch->add_option("--max-requests", fetch_opt.max_requests, "Total request cap");
  fetch->add_option("--out-dir", fetch_opt.out_dir, "Directory for downloaded pages")->required();
  add_config_flags(fetch, stack);
  fetch->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("wiki-fetch", config);
    manifest.input("category_file", fetch_opt.category_file);

    std::ifstream in(fetch_opt.category_file, std::ios::binary);
    if (!in) throw Error("cannot open category file: " + fetch_opt.category_file);
    json doc;
    try {
      in >> doc;
    } catch (const json::parse_error &e) {
      throw Error("category file: bad JSON: " + std::string(e.what()));
    }

    FetchOptions options;
    options.lang_codes = split_csv(fetch_opt.lang_codes);
    options.delay_ms = fetch_opt.delay_ms;
    options.max_requests = fetch_opt.max_requests;
    options.out_dir = fetch_opt.out_dir;
    for (const auto &[category, titles] : doc.items()) {
      for (const auto &title : titles) {
        options.categories[category].push_back(title.get<std::string>());
      }
    }
    FetchReport report = fetch_articles(options);
    for (const auto &failure : report.failures) std::cerr << "warning: " << failure << "\n";

    manifest.output("pages", fetch_opt.out_dir);
    manifest.count("requests", static_cast<std::int64_t>(report.requests_made));
    manifest.count("pages_saved", static_cast<std::int64_t>(report.pages_saved));
    manifest.count("failures", static_cast<std::int64_t>(report.failures.size()));
    manifest.write(fetch_opt.out_dir + "/wiki-fetch");
    std::cout << "wiki-fetch: saved " << report.pages_saved << " pages ("
              << report.requests_made << " requests)\n";
  });

  // ---- wiki-extract ----
  auto *extract = app.add_subcommand("wiki-extract", "Extract article sentences from saved pages");
  struct {
    std::string in_dir, src_lang = "ceb", tgt_lang = "tl", out;
  } extract_opt;
  extract->add_option("--in-dir", extract_opt.in_dir, "Directory of <category>/<title>.<lang>.html|txt")
      ->required();
  extract->add_option("--src-lang", extract_opt.src_lang, "Source language code");
  extract->add_option("--tgt-lang", extract_opt.tgt_lang, "Target language code");
  extract->add_option("--out", extract_opt.out, "Output article pairs (JSON lines)")->required();
  add_config_flags(extract, stack);
  extract->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("wiki-extract", config);
    manifest.input("pages", extract_opt.in_dir);
    auto articles = load_article_dir(extract_opt.in_dir, extract_opt.src_lang, extract_opt.tgt_lang,
                                     config);
    save_articles_jsonl(extract_opt.out, articles);
    std::size_t source_sentences = 0;
    std::size_t target_sentences = 0;
    for (const auto &article : articles) {
      source_sentences += article.source_sentences.size();
      target_sentences += article.target_sentences.size();
    }
    manifest.output("articles", extract_opt.out);
    manifest.count("articles", static_cast<std::int64_t>(articles.size()));
    manifest.count("source_sentences", static_cast<std::int64_t>(source_sentences));
    manifest.count("target_sentences", static_cast<std::int64_t>(target_sentences));
    manifest.write(extract_opt.out);
    std::cout << "wiki-extract: " << articles.size() << " article pairs -> " << extract_opt.out
              << "\n";
  });

  // ---- mine-segments ----
  auto *mine = app.add_subcommand("mine-segments", "Mine frequent topic segments for a category");
  struct {
    std::string in, category, side = "source", out;
  } mine_opt;
  mine->add_option("--in", mine_opt.in, "Article pairs (JSON lines)")->required();
  mine->add_option("--category", mine_opt.category, "Category to mine")->required();
  mine->add_option("--side", mine_opt.side, "source or target")
      ->check(CLI::IsMember({"source", "target"}));
  mine->add_option("--out", mine_opt.out, "Output segments (JSON)")->required();
  mine->add_option("--n-min", stack.ngram_min, "Minimum n-gram length");
  mine->add_option("--n-max", stack.ngram_max, "Maximum n-gram length");
  mine->add_option("--min-support", stack.min_support, "Minimum sentence count");
  add_config_flags(mine, stack);
  mine->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("mine-segments", config);
    manifest.input("articles", mine_opt.in);
    auto articles = load_articles_jsonl(mine_opt.in, config);
    Side side = mine_opt.side == "source" ? Side::kSource : Side::kTarget;
    auto segments = mine_topic_segments(articles, mine_opt.category, side, config);
    save_segments_json(mine_opt.out, segments);
    manifest.output("segments", mine_opt.out);
    manifest.count("segments", static_cast<std::int64_t>(segments.size()));
    manifest.count("sentences",
                   static_cast<std::int64_t>(segments.empty() ? 0 : segments[0].category_sentence_count));
    manifest.write(mine_opt.out);
    std::cout << "mine-segments: " << segments.size() << " segments -> " << mine_opt.out << "\n";
  });

  // ---- extract-template ----
  auto *tmpl = app.add_subcommand("extract-template", "Extract parallel sentences by template match");
  struct {
    std::string in, segments, out;
  } tmpl_opt;
  tmpl->add_option("--in", tmpl_opt.in, "Article pairs (JSON lines)")->required();
  tmpl->add_option("--segments", tmpl_opt.segments,
                   "Segment pair JSON {category, source_ngram[], target_ngram[]}")
      ->required();
  tmpl->add_option("--out", tmpl_opt.out, "Output corpus (JSON lines)")->required();
  add_config_flags(tmpl, stack);
  tmpl->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("extract-template", config);
    manifest.input("articles", tmpl_opt.in);
    manifest.input("segments", tmpl_opt.segments);
    auto articles = load_articles_jsonl(tmpl_opt.in, config);
    SegmentPair segment_pair = load_segment_pair_json(tmpl_opt.segments);

    Corpus corpus;
    std::size_t unpaired_source = 0;
    std::size_t unpaired_target = 0;
    std::size_t scanned = 0;
    for (const auto &article : articles) {
      if (article.category != segment_pair.category) continue;
      ++scanned;
      TemplateExtraction extraction = extract_parallel_by_template(article, segment_pair);
      unpaired_source += extraction.unpaired_source;
      unpaired_target += extraction.unpaired_target;
      for (auto &pair : extraction.pairs) corpus.push_back(std::move(pair));
    }
    renumber(corpus);
    save_corpus_jsonl(tmpl_opt.out, corpus);

    manifest.output("corpus", tmpl_opt.out);
    manifest.count("articles_scanned", static_cast<std::int64_t>(scanned));
    manifest.count("pairs", static_cast<std::int64_t>(corpus.size()));
    manifest.count("unpaired_source", static_cast<std::int64_t>(unpaired_source));
    manifest.count("unpaired_target", static_cast<std::int64_t>(unpaired_target));
    manifest.write(tmpl_opt.out);
    std::cout << "extract-template: " << corpus.size() << " pairs -> " << tmpl_opt.out << "\n";
  });

  // ---- split ----
  auto *split_cmd = app.add_subcommand("split", "Deterministic train/valid/test split");
  struct {
    std::string in, out_prefix;
  } split_opt;
  split_cmd->add_option("--in", split_opt.in, "Input corpus (JSON lines)")->required();
  split_cmd->add_option("--out-prefix", split_opt.out_prefix, "Prefix for .train/.valid/.test files")
      ->required();
  split_cmd->add_option("--ratios", stack.ratios, "train,valid,test ratios (default 0.8,0.1,0.1)");
  split_cmd->add_option("--seed", stack.seed, "RNG seed");
  add_config_flags(split_cmd, stack);
  split_cmd->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("split", config);
    manifest.input("corpus", split_opt.in);
    Corpus pairs = load_corpus_jsonl(split_opt.in, config);
    SplitResult result = split_corpus(pairs, config.split_ratios, config.rng_seed);
    std::string train_path = split_opt.out_prefix + ".train.jsonl";
    std::string valid_path = split_opt.out_prefix + ".valid.jsonl";
    std::string test_path = split_opt.out_prefix + ".test.jsonl";
    save_corpus_jsonl(train_path, result.train);
    save_corpus_jsonl(valid_path, result.valid);
    save_corpus_jsonl(test_path, result.test);
    manifest.output("train", train_path);
    manifest.output("valid", valid_path);
    manifest.output("test", test_path);
    manifest.count("pairs", static_cast<std::int64_t>(pairs.size()));
    manifest.count("train", static_cast<std::int64_t>(result.train.size()));
    manifest.count("valid", static_cast<std::int64_t>(result.valid.size()));
    manifest.count("test", static_cast<std::int64_t>(result.test.size()));
    manifest.write(train_path);
    std::cout << "split: " << result.train.size() << "/" << result.valid.size() << "/"
              << result.test.size() << " (seed " << config.rng_seed << ")\n";
  });

  // ---- export ----
  auto *export_cmd = app.add_subcommand("export", "Write line-aligned bitext files");
  struct {
    std::string in, out_prefix;
  } export_opt;
  export_cmd->add_option("--in", export_opt.in, "Input corpus (JSON lines)")->required();
  export_cmd->add_option("--out-prefix", export_opt.out_prefix, "Prefix for .src/.tgt files")
      ->required();
  add_config_flags(export_cmd, stack);
  export_cmd->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("export", config);
    manifest.input("corpus", export_opt.in);
    Corpus pairs = load_corpus_jsonl(export_opt.in, config);
    auto [src_path, tgt_path] = export_parallel(pairs, export_opt.out_prefix);
    manifest.output("source", src_path);
    manifest.output("target", tgt_path);
    manifest.count("lines", static_cast<std::int64_t>(pairs.size()));
    manifest.write(src_path);
    std::cout << "export: " << pairs.size() << " lines -> " << src_path << ", " << tgt_path << "\n";
  });

  // ---- import ----
  auto *import_cmd = app.add_subcommand("import", "Read line-aligned bitext files");
  struct {
    std::string src, tgt, out;
  } import_opt;
  import_cmd->add_option("--src", import_opt.src, "Source bitext file")->required();
  import_cmd->add_option("--tgt", import_opt.tgt, "Target bitext file")->required();
  import_cmd->add_option("--out", import_opt.out, "Output corpus (JSON lines)")->required();
  add_config_flags(import_cmd, stack);
  import_cmd->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("import", config);
    manifest.input("source", import_opt.src);
    manifest.input("target", import_opt.tgt);
    Corpus pairs = import_parallel(import_opt.src, import_opt.tgt, config);
    save_corpus_jsonl(import_opt.out, pairs);
    manifest.output("corpus", import_opt.out);
    manifest.count("pairs", static_cast<std::int64_t>(pairs.size()));
    manifest.write(import_opt.out);
    std::cout << "import: " << pairs.size() << " pairs -> " << import_opt.out << "\n";
  });

  // ---- bleu ----
  auto *bleu_cmd = app.add_subcommand("bleu", "Score a hypothesis file against a reference file");
  struct {
    std::string hyp, ref, json_out;
    bool sentence = false;
  } bleu_opt;
  bleu_cmd->add_option("--hyp", bleu_opt.hyp, "Hypothesis file, one sentence per line")->required();
  bleu_cmd->add_option("--ref", bleu_opt.ref, "Reference file, one sentence per line")->required();
  bleu_cmd->add_option("--json", bleu_opt.json_out, "Write the full report as JSON");
  bleu_cmd->add_flag("--sentence", bleu_opt.sentence, "Also print smoothed per-sentence scores");
  add_config_flags(bleu_cmd, stack);
  bleu_cmd->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("bleu", config);
    manifest.input("hypothesis", bleu_opt.hyp);
    manifest.input("reference", bleu_opt.ref);
    auto hyp = tokenize_lines(bleu_opt.hyp, config);
    auto ref = tokenize_lines(bleu_opt.ref, config);
    if (hyp.size() != ref.size()) {
      throw Error("bleu: line count mismatch (" + std::to_string(hyp.size()) + ", " +
                  std::to_string(ref.size()) + ")");
    }
    if (bleu_opt.sentence) {
      for (std::size_t i = 0; i < hyp.size(); ++i) {
        BleuReport line_report = bleu_sentence(hyp[i], ref[i]);
        std::cout << i + 1 << "\t" << line_report.formatted_score() << "\n";
      }
    }
    BleuReport report = bleu_corpus(hyp, ref);
    char detail[160];
    std::snprintf(detail, sizeof(detail), " (p1 %.4f / p2 %.4f / p3 %.4f / p4 %.4f, BP %.4f, hyp %zu, ref %zu)",
                  report.precisions[0], report.precisions[1], report.precisions[2],
                  report.precisions[3], report.brevity_penalty, report.hyp_len, report.ref_len);
    std::cout << "BLEU = " << report.formatted_score() << detail << "\n";
    if (!bleu_opt.json_out.empty()) {
      std::ofstream out(bleu_opt.json_out, std::ios::binary);
      if (!out) throw Error("cannot open for writing: " + bleu_opt.json_out);
      out << report.to_json() << '\n';
      manifest.output("report", bleu_opt.json_out);
    }
    manifest.count("lines", static_cast<std::int64_t>(hyp.size()));
    manifest.count("score", report.score);
    manifest.write(bleu_opt.json_out);
  });

  // ---- stats ----
  auto *stats_cmd = app.add_subcommand("stats", "Corpus counts by origin and category");
  struct {
    std::string in, json_out;
  } stats_opt;
  stats_cmd->add_option("--in", stats_opt.in, "Input corpus (JSON lines)")->required();
  stats_cmd->add_option("--json", stats_opt.json_out, "Write counts as JSON");
  add_config_flags(stats_cmd, stack);
  stats_cmd->callback([&] {
    PipelineConfig config = stack.resolve();
    Manifest manifest("stats", config);
    manifest.input("corpus", stats_opt.in);
    Corpus pairs = load_corpus_jsonl(stats_opt.in, config);
    std::size_t bible = 0, wiki = 0, imported = 0;
    std::size_t source_tokens = 0, target_tokens = 0;
    std::map<std::string, std::size_t> categories;
    for (const auto &pair : pairs) {
      source_tokens += pair.source.tokens.size();
      target_tokens += pair.target.tokens.size();
      if (std::holds_alternative<BibleVerseOrigin>(pair.origin)) {
        ++bible;
      } else if (const auto *w = std::get_if<WikiSentenceOrigin>(&pair.origin)) {
        ++wiki;
        ++categories[w->category];
      } else {
        ++imported;
      }
    }
    std::cout << "pairs " << pairs.size() << "\n"
              << "bible " << bible << "\n"
              << "wiki " << wiki << "\n"
              << "imported " << imported << "\n"
              << "source_tokens " << source_tokens << "\n"
              << "target_tokens " << target_tokens << "\n";
    for (const auto &[category, count] : categories) {
      std::cout << "category " << category << " " << count << "\n";
    }
    manifest.count("pairs", static_cast<std::int64_t>(pairs.size()));
    manifest.count("bible", static_cast<std::int64_t>(bible));
    manifest.count("wiki", static_cast<std::int64_t>(wiki));
    manifest.count("imported", static_cast<std::int64_t>(imported));
    if (!stats_opt.json_out.empty()) {
      json j;
      j["pairs"] = pairs.size();
      j["bible"] = bible;
      j["wiki"] = wiki;
      j["imported"] = imported;
      j["source_tokens"] = source_tokens;
      j["target_tokens"] = target_tokens;
      j["categories"] = categories;
      std::ofstream out(stats_opt.json_out, std::ios::binary);
      if (!out) throw Error("cannot open for writing: " + stats_opt.json_out);
      out << j.dump(2) << '\n';
      manifest.output("stats", stats_opt.json_out);
    }
    manifest.write(stats_opt.json_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return run_cli(argc, argv);
  } catch (const kawing::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
