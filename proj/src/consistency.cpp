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

#include "kawing/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "kawing/error.hpp"
#include "kawing/parallel.hpp"
#include "kawing/text.hpp"

namespace kawing {

using nlohmann::json;

const TableEntry *TranslationTable::find(const std::string &source_word) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), source_word,
                             [](const TableEntry &e, const std::string &w) { return e.source_word < w; });
  if (it == entries.end() || it->source_word != source_word) return nullptr;
  return &*it;
}

namespace {

using CountMap = std::unordered_map<std::string, std::size_t>;

std::unordered_set<std::string> token_set(const std::vector<std::string> &tokens) {
  return {tokens.begin(), tokens.end()};
}

// Candidate order used everywhere: dice descending, then lexicographic.
bool candidate_before(const Candidate &a, const Candidate &b) {
  if (a.dice != b.dice) return a.dice > b.dice;
  return a.target_word < b.target_word;
}

}  // namespace

TranslationTable build_translation_table(const Corpus &pairs,
                                         const std::vector<std::string> &watchlist,
                                         const PipelineConfig &config) {
  config.validate();
  if (watchlist.empty()) throw Error("translation table: watchlist is empty");

  std::vector<std::string> watched(watchlist);
  std::sort(watched.begin(), watched.end());
  watched.erase(std::unique(watched.begin(), watched.end()), watched.end());
  std::unordered_set<std::string> watched_set(watched.begin(), watched.end());

  // Pass 1: document-frequency counts. Per-chunk partials merge in chunk
  // order, so the result is independent of the worker count.
  struct Partial {
    CountMap source_df;                              // watched word -> pairs containing it
    CountMap target_df;                              // target word -> pairs containing it
    std::unordered_map<std::string, CountMap> cooc;  // watched word -> co-occurring targets
  };
  std::size_t n_chunks = plan_chunks(pairs.size(), config.jobs);
  std::vector<Partial> partials(std::max<std::size_t>(n_chunks, 1));
  parallel_chunks(pairs.size(), config.jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Partial &p = partials[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      auto tgt = token_set(pairs[i].target.tokens);
      for (const auto &t : tgt) ++p.target_df[t];
      std::unordered_set<std::string> src_watched;
      for (const auto &s : pairs[i].source.tokens) {
        if (watched_set.count(s)) src_watched.insert(s);
      }
      for (const auto &s : src_watched) {
        ++p.source_df[s];
        CountMap &row = p.cooc[s];
        for (const auto &t : tgt) ++row[t];
      }
    }
  });
  CountMap source_df, target_df;
  std::unordered_map<std::string, CountMap> cooc;
  for (const auto &p : partials) {
    for (const auto &[k, v] : p.source_df) source_df[k] += v;
    for (const auto &[k, v] : p.target_df) target_df[k] += v;
    for (const auto &[s, row] : p.cooc) {
      CountMap &merged = cooc[s];
      for (const auto &[t, v] : row) merged[t] += v;
    }
  }

  // Candidate selection: dice >= tau, top-K.
  TranslationTable table;
  table.entries.reserve(watched.size());
  for (const auto &word : watched) {
    TableEntry entry;
    entry.source_word = word;
    entry.total_occurrences = source_df.count(word) ? source_df.at(word) : 0;
    if (entry.total_occurrences > 0) {
      std::size_t c_s = entry.total_occurrences;
      for (const auto &[t, c_st] : cooc.at(word)) {
        std::size_t c_t = target_df.at(t);
        double dice = 2.0 * static_cast<double>(c_st) / static_cast<double>(c_s + c_t);
        if (dice >= config.dice_threshold) {
          entry.candidates.push_back({t, c_st, c_s, c_t, dice, 0});
        }
      }
      std::sort(entry.candidates.begin(), entry.candidates.end(), candidate_before);
      if (entry.candidates.size() > static_cast<std::size_t>(config.max_candidates)) {
        entry.candidates.resize(static_cast<std::size_t>(config.max_candidates));
      }
    }
    table.entries.push_back(std::move(entry));
  }

  // Pass 2: attribution. For every pair containing the watched word, the
  // highest-dice candidate present in the target wins; otherwise NONE.
  std::unordered_map<std::string, std::size_t> entry_index;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    entry_index.emplace(table.entries[i].source_word, i);
  }
  struct Attribution {
    std::unordered_map<std::string, CountMap> attributed;  // word -> candidate -> count
    CountMap none;
  };
  std::vector<Attribution> attributions(std::max<std::size_t>(n_chunks, 1));
  parallel_chunks(pairs.size(), config.jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Attribution &a = attributions[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      std::unordered_set<std::string> src_watched;
      for (const auto &s : pairs[i].source.tokens) {
        if (watched_set.count(s)) src_watched.insert(s);
      }
      if (src_watched.empty()) continue;
      auto tgt = token_set(pairs[i].target.tokens);
      for (const auto &s : src_watched) {
        const TableEntry &entry = table.entries[entry_index.at(s)];
        const Candidate *chosen = nullptr;
        for (const auto &candidate : entry.candidates) {
          if (tgt.count(candidate.target_word)) {
            chosen = &candidate;
            break;
          }
        }
        if (chosen) {
          ++a.attributed[s][chosen->target_word];
        } else {
          ++a.none[s];
        }
      }
    }
  });
  for (const auto &a : attributions) {
    for (const auto &[s, counts] : a.attributed) {
      TableEntry &entry = table.entries[entry_index.at(s)];
      for (auto &candidate : entry.candidates) {
        auto hit = counts.find(candidate.target_word);
        if (hit != counts.end()) candidate.attributed += hit->second;
      }
    }
    for (const auto &[s, count] : a.none) {
      table.entries[entry_index.at(s)].none_count += count;
    }
  }
  return table;
}

std::vector<TableEntry> detect_inconsistencies(const TranslationTable &table,
                                               std::size_t min_total) {
  std::vector<TableEntry> result;
  for (const auto &entry : table.entries) {
    if (entry.total_occurrences < min_total) continue;
    std::size_t attributed_kinds = 0;
    for (const auto &candidate : entry.candidates) {
      if (candidate.attributed > 0) ++attributed_kinds;
    }
    if (attributed_kinds >= 2 || entry.none_count > 0) result.push_back(entry);
  }
  std::sort(result.begin(), result.end(), [](const TableEntry &a, const TableEntry &b) {
    if (a.total_occurrences != b.total_occurrences) return a.total_occurrences > b.total_occurrences;
    return a.source_word < b.source_word;
  });
  return result;
}

std::string select_canonical(const TranslationTable &table, const std::string &source_word) {
  const TableEntry *entry = table.find(source_word);
  if (!entry) throw Error("no table entry for '" + source_word + "'");
  const Candidate *best = nullptr;
  for (const auto &candidate : entry->candidates) {
    if (candidate.attributed == 0) continue;
    if (!best || candidate.attributed > best->attributed ||
        (candidate.attributed == best->attributed && candidate_before(candidate, *best))) {
      best = &candidate;
    }
  }
  if (!best) {
    throw Error("no canonical translation for '" + source_word +
                "': every occurrence attributed NONE");
  }
  return best->target_word;
}

void CanonicalizationRule::validate() const {
  if (source_word.empty()) throw Error("rule: source_word is empty");
  if (canonical.empty()) throw Error("rule: canonical is empty");
  for (const auto &variant : variants) {
    if (variant.empty()) throw Error("rule '" + source_word + "': empty variant");
    if (variant == canonical) {
      throw Error("rule '" + source_word + "': canonical listed among variants");
    }
  }
  if (variants.empty() && mode == Mode::kReplaceOnly) {
    throw Error("rule '" + source_word + "': replace_only needs at least one variant");
  }
}

namespace {

// Rewrites one pair; returns nullopt when nothing changes so untouched
// pairs stay byte-identical.
std::optional<std::pair<SentencePair, std::vector<ChangeRecord>>> rewrite_pair(
    const SentencePair &pair, const CanonicalizationRule &rule,
    const std::unordered_set<std::string> &variants, bool insert_if_absent) {
  std::size_t first_source_index = pair.source.tokens.size();
  for (std::size_t i = 0; i < pair.source.tokens.size(); ++i) {
    if (pair.source.tokens[i] == rule.source_word) {
      first_source_index = i;
      break;
    }
  }
  if (first_source_index == pair.source.tokens.size()) return std::nullopt;

  std::vector<ChangeRecord> records;
  std::vector<std::string> tokens = pair.target.tokens;
  bool has_canonical = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (variants.count(tokens[i])) {
      records.push_back({pair.pair_id, ChangeRecord::Action::kReplace, i, tokens[i], rule.canonical});
      tokens[i] = rule.canonical;
    }
    if (tokens[i] == rule.canonical) has_canonical = true;
  }

  if (insert_if_absent && !has_canonical) {
    double p = static_cast<double>(first_source_index) /
               static_cast<double>(pair.source.tokens.size());
    auto index = static_cast<std::size_t>(
        std::min<long long>(std::llround(p * static_cast<double>(tokens.size())),
                            static_cast<long long>(tokens.size())));
    tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(index), rule.canonical);
    records.push_back({pair.pair_id, ChangeRecord::Action::kInsert, index, "", rule.canonical});
  }

  if (records.empty()) return std::nullopt;
  SentencePair rewritten = pair;
  rewritten.target.tokens = std::move(tokens);
  rewritten.target.raw = detokenize(rewritten.target.tokens);
  return std::make_pair(std::move(rewritten), std::move(records));
}

std::pair<Corpus, std::vector<ChangeRecord>> apply_rule(const Corpus &pairs,
                                                        const CanonicalizationRule &rule,
                                                        bool insert_if_absent, int jobs) {
  rule.validate();
  std::unordered_set<std::string> variants(rule.variants.begin(), rule.variants.end());

  // Each pair rewrites independently; results are collected in pair order.
  std::vector<std::optional<std::pair<SentencePair, std::vector<ChangeRecord>>>> rewritten(
      pairs.size());
  parallel_chunks(pairs.size(), jobs, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      rewritten[i] = rewrite_pair(pairs[i], rule, variants, insert_if_absent);
    }
  });

  Corpus out;
  out.reserve(pairs.size());
  std::vector<ChangeRecord> log;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (rewritten[i]) {
      out.push_back(std::move(rewritten[i]->first));
      for (auto &record : rewritten[i]->second) log.push_back(std::move(record));
    } else {
      out.push_back(pairs[i]);
    }
  }
  return {std::move(out), std::move(log)};
}

}  // namespace

std::pair<Corpus, std::vector<ChangeRecord>> canonicalize_names(const Corpus &pairs,
                                                                const CanonicalizationRule &rule,
                                                                int jobs) {
  if (rule.mode != CanonicalizationRule::Mode::kInsertIfAbsent) {
    throw Error("canonicalize_names requires an insert_if_absent rule");
  }
  return apply_rule(pairs, rule, true, jobs);
}

std::pair<Corpus, std::vector<ChangeRecord>> canonicalize_verbs(const Corpus &pairs,
                                                                const CanonicalizationRule &rule,
                                                                int jobs) {
  if (rule.mode != CanonicalizationRule::Mode::kReplaceOnly) {
    throw Error("canonicalize_verbs requires a replace_only rule");
  }
  return apply_rule(pairs, rule, false, jobs);
}

std::pair<Corpus, std::vector<ChangeRecord>> canonicalize(const Corpus &pairs,
                                                          const CanonicalizationRule &rule,
                                                          int jobs) {
  return rule.mode == CanonicalizationRule::Mode::kInsertIfAbsent
             ? canonicalize_names(pairs, rule, jobs)
             : canonicalize_verbs(pairs, rule, jobs);
}

void export_table_tsv(const TranslationTable &table, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  char dice_buf[32];
  for (const auto &entry : table.entries) {
    for (const auto &candidate : entry.candidates) {
      std::snprintf(dice_buf, sizeof(dice_buf), "%.6f", candidate.dice);
      out << entry.source_word << '\t' << candidate.target_word << '\t' << candidate.cooccurrence
          << '\t' << dice_buf << '\t' << candidate.attributed << '\n';
    }
    out << entry.source_word << "\t__NONE__\t0\t0.000000\t" << entry.none_count << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

std::vector<CanonicalizationRule> load_rules(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open rules file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error &e) {
    throw Error("rules: bad JSON in " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw Error("rules: expected a JSON array");

  std::vector<CanonicalizationRule> rules;
  for (const auto &j : doc) {
    CanonicalizationRule rule;
    rule.source_word = j.at("source_word").get<std::string>();
    rule.canonical = j.at("canonical").get<std::string>();
    for (const auto &v : j.at("variants")) rule.variants.push_back(v.get<std::string>());
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "insert_if_absent") {
      rule.mode = CanonicalizationRule::Mode::kInsertIfAbsent;
    } else if (mode == "replace_only") {
      rule.mode = CanonicalizationRule::Mode::kReplaceOnly;
    } else {
      throw Error("rules: unknown mode '" + mode + "'");
    }
    rule.validate();
    rules.push_back(std::move(rule));
  }
  return rules;
}

void write_change_log(const std::string &path, const std::vector<ChangeRecord> &records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  for (const auto &record : records) {
    json j;
    j["pair_id"] = record.pair_id;
    j["action"] = record.action == ChangeRecord::Action::kReplace ? "replace" : "insert";
    j["position"] = record.position;
    j["old"] = record.old_token;
    j["new"] = record.new_token;
    out << j.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace kawing
