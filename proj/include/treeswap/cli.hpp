// Copyright 2026 The treeswap Authors
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

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "treeswap/augment.hpp"
#include "treeswap/conllu.hpp"
#include "treeswap/corpus.hpp"
#include "treeswap/preprocess.hpp"
#include "treeswap/subtree.hpp"

namespace treeswap {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error("config: " + what) {}
};

struct IoConfig {
  std::string source;  // source-side CoNLL-U input
  std::string target;  // target-side CoNLL-U input
  std::string out_dir = "out";
  std::string source_lang = "src";
  std::string target_lang = "tgt";
};

struct RunConfig {
  std::uint64_t seed = 0;
  IoConfig io;
  FilterConfig preprocess;
  AugmentConfig augment;
};

// Files each command writes into io.out_dir.
inline constexpr std::string_view kPreprocessedSource = "preprocessed.src.conllu";
inline constexpr std::string_view kPreprocessedTarget = "preprocessed.tgt.conllu";
inline constexpr std::string_view kPreprocessReport = "preprocess_report.json";
inline constexpr std::string_view kAnalysisReport = "analysis.txt";
inline constexpr std::string_view kAugmentedSource = "augmented.src.txt";
inline constexpr std::string_view kAugmentedTarget = "augmented.tgt.txt";
inline constexpr std::string_view kProvenance = "provenance.jsonl";
inline constexpr std::string_view kAugmentReport = "augment_report.json";
inline constexpr std::string_view kMergedSource = "merged.src.txt";
inline constexpr std::string_view kMergedTarget = "merged.tgt.txt";

inline SwapType parse_swap_type(std::string_view s) {
  if (s == "subj") return SwapType::subject;
  if (s == "obj") return SwapType::object;
  throw ConfigError("swap type must be \"subj\" or \"obj\", got \"" + std::string(s) + "\"");
}

inline Method parse_method(std::string_view s) {
  if (s == "ged") return Method::ged;
  if (s == "em") return Method::em;
  throw ConfigError("method must be \"ged\" or \"em\", got \"" + std::string(s) + "\"");
}

inline Scope parse_scope(std::string_view s) {
  if (s == "subtree") return Scope::subtree;
  if (s == "full_tree" || s == "full-tree") return Scope::full_tree;
  throw ConfigError("scope must be \"subtree\" or \"full-tree\", got \"" + std::string(s) + "\"");
}

inline LenFilterMode parse_len_filter_mode(std::string_view s) {
  if (s == "both") return LenFilterMode::both;
  if (s == "either") return LenFilterMode::either;
  throw ConfigError("len_filter_mode must be \"both\" or \"either\", got \"" + std::string(s) +
                    "\"");
}

namespace detail {

inline void expect_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view section) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError("unknown key \"" + it.key() + "\" in section \"" + std::string(section) +
                        "\"");
  }
}

}  // namespace detail

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    detail::expect_keys(j, {"seed", "io", "preprocess", "augment"}, "<top level>");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    bool augment_seed_set = false;
    if (j.contains("io")) {
      const auto& io = j.at("io");
      detail::expect_keys(io, {"source", "target", "out_dir", "source_lang", "target_lang"},
                          "io");
      if (io.contains("source")) c.io.source = io.at("source").get<std::string>();
      if (io.contains("target")) c.io.target = io.at("target").get<std::string>();
      if (io.contains("out_dir")) c.io.out_dir = io.at("out_dir").get<std::string>();
      if (io.contains("source_lang")) c.io.source_lang = io.at("source_lang").get<std::string>();
      if (io.contains("target_lang")) c.io.target_lang = io.at("target_lang").get<std::string>();
    }
    if (j.contains("preprocess")) {
      const auto& p = j.at("preprocess");
      detail::expect_keys(p,
                          {"max_tokens", "max_len_diff", "max_len_ratio", "len_filter_mode",
                           "strip_edges", "normalize_punct"},
                          "preprocess");
      if (p.contains("max_tokens")) c.preprocess.max_tokens = p.at("max_tokens").get<int>();
      if (p.contains("max_len_diff")) c.preprocess.max_len_diff = p.at("max_len_diff").get<int>();
      if (p.contains("max_len_ratio"))
        c.preprocess.max_len_ratio = p.at("max_len_ratio").get<double>();
      if (p.contains("len_filter_mode"))
        c.preprocess.len_filter_mode =
            parse_len_filter_mode(p.at("len_filter_mode").get<std::string>());
      if (p.contains("strip_edges")) c.preprocess.strip_edges = p.at("strip_edges").get<bool>();
      if (p.contains("normalize_punct"))
        c.preprocess.normalize_punct = p.at("normalize_punct").get<bool>();
    }
    if (j.contains("augment")) {
      const auto& a = j.at("augment");
      detail::expect_keys(a,
                          {"swap_type", "graph_sampling", "similarity_threshold", "ratio", "seed",
                           "similarity_scope", "dedup", "ged_node_cap"},
                          "augment");
      if (a.contains("swap_type"))
        c.augment.swap_type = parse_swap_type(a.at("swap_type").get<std::string>());
      if (a.contains("graph_sampling"))
        c.augment.graph_sampling = parse_method(a.at("graph_sampling").get<std::string>());
      if (a.contains("similarity_threshold"))
        c.augment.similarity_threshold = a.at("similarity_threshold").get<double>();
      if (a.contains("ratio")) c.augment.ratio = a.at("ratio").get<double>();
      if (a.contains("seed")) {
        c.augment.seed = a.at("seed").get<std::uint64_t>();
        augment_seed_set = true;
      }
      if (a.contains("similarity_scope"))
        c.augment.similarity_scope = parse_scope(a.at("similarity_scope").get<std::string>());
      if (a.contains("dedup")) c.augment.dedup = a.at("dedup").get<bool>();
      if (a.contains("ged_node_cap")) c.augment.ged_node_cap = a.at("ged_node_cap").get<int>();
    }
    if (!augment_seed_set) c.augment.seed = c.seed;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cannot parse \"") + path + "\": " + e.what());
  }
  return config_from_json(j);
}

// Command-line flag values; set fields win over config-file values.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> swap_type;
  std::optional<std::string> method;
  std::optional<double> threshold;
  std::optional<double> ratio;
  std::optional<std::string> scope;
  std::optional<std::string> out_dir;
  std::optional<std::string> source;
  std::optional<std::string> target;
};

inline void apply_overrides(const Overrides& o, RunConfig& c) {
  if (o.seed) {
    c.seed = *o.seed;
    c.augment.seed = *o.seed;
  }
  if (o.swap_type) c.augment.swap_type = parse_swap_type(*o.swap_type);
  if (o.method) c.augment.graph_sampling = parse_method(*o.method);
  if (o.threshold) c.augment.similarity_threshold = *o.threshold;
  if (o.ratio) c.augment.ratio = *o.ratio;
  if (o.scope) c.augment.similarity_scope = parse_scope(*o.scope);
  if (o.out_dir) c.io.out_dir = *o.out_dir;
  if (o.source) c.io.source = *o.source;
  if (o.target) c.io.target = *o.target;
}

namespace detail {

inline std::vector<DepTree> parse_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
  return parse_conllu(in);
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write \"" + path.string() + "\"");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("short write to \"" + path.string() + "\"");
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open \"" + path.string() + "\"");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline Corpus read_input_corpus(const RunConfig& config) {
  if (config.io.source.empty() || config.io.target.empty())
    throw ConfigError("io.source and io.target must be set");
  auto source = parse_conllu_file(config.io.source);
  auto target = parse_conllu_file(config.io.target);
  return align(std::move(source), std::move(target), config.io.source_lang,
               config.io.target_lang);
}

inline Corpus read_preprocessed_corpus(const RunConfig& config) {
  const std::filesystem::path dir(config.io.out_dir);
  const auto src_path = dir / kPreprocessedSource;
  const auto tgt_path = dir / kPreprocessedTarget;
  if (!std::filesystem::exists(src_path) || !std::filesystem::exists(tgt_path))
    throw std::runtime_error("preprocessed corpus not found in \"" + config.io.out_dir +
                             "\"; run the preprocess command first");
  auto source = parse_conllu_file(src_path.string());
  auto target = parse_conllu_file(tgt_path.string());
  return align(std::move(source), std::move(target), config.io.source_lang,
               config.io.target_lang);
}

inline nlohmann::json reasons_to_json(const std::map<Reason, std::size_t>& reasons) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [reason, count] : reasons) j[std::string(reason_name(reason))] = count;
  return j;
}

}  // namespace detail

// Renders the analyze report: eligibility per swap type plus the similarity
// threshold sweep for both methods.
inline std::string render_analysis(const Corpus& corpus, const AugmentConfig& config) {
  std::ostringstream out;
  for (SwapType type : {SwapType::subject, SwapType::object}) {
    const EligibilityReport report = eligibility_report(corpus, type);
    out << "== eligibility: swap type " << swap_type_name(type) << " ==\n";
    out << "total\t" << report.total << '\n';
    out << "eligible\t" << report.eligible << '\n';
    for (const auto& [reason, count] : report.reasons)
      out << reason_name(reason) << '\t' << count << '\n';
    out << '\n';
  }
  const std::vector<ThresholdTable> tables = threshold_tables(corpus, config);
  for (const ThresholdTable& table : tables) {
    out << "== similarity threshold counts: method " << method_name(table.method) << " (scope "
        << scope_name(config.similarity_scope) << ", swap type "
        << swap_type_name(config.swap_type) << ") ==\n";
    out << "threshold\tcount\n";
    for (std::size_t i = 0; i < table.counts.size(); ++i) {
      out << (i / 10) << '.' << (i % 10) << '\t' << table.counts[i] << '\n';
    }
    out << "pool\t" << table.pool_size << '\n';
    if (table.method == Method::ged) out << "over_cap\t" << table.over_cap << '\n';
    out << '\n';
  }
  return out.str();
}

// preprocess: read the two CoNLL-U inputs, align, filter, and write the
// surviving corpus plus a machine-readable report.
inline int cmd_preprocess(const RunConfig& config, std::ostream& log = std::cout) {
  try {
    const Corpus corpus = detail::read_input_corpus(config);
    const PreprocessResult result = run(corpus, config.preprocess);
    const FilterReport& r = result.report;

    const std::filesystem::path dir(config.io.out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream src, tgt;
    for (const Bisentence& b : result.corpus.bisentences) {
      write_conllu(src, b.source);
      write_conllu(tgt, b.target);
    }
    detail::write_file(dir / kPreprocessedSource, src.str());
    detail::write_file(dir / kPreprocessedTarget, tgt.str());

    nlohmann::json j;
    j["input"] = r.input;
    j["output"] = r.output;
    j["dropped"] = {{"length", r.dropped_length},
                    {"diff_ratio", r.dropped_diff_ratio},
                    {"language", r.dropped_language}};
    j["language_undetermined"] = r.language_undetermined;
    j["strip_flagged"] = r.strip_flagged;
    detail::write_file(dir / kPreprocessReport, j.dump(2) + "\n");

    log << "preprocess: " << r.input << " -> " << r.output << " pairs (dropped length "
        << r.dropped_length << ", diff/ratio " << r.dropped_diff_ratio << ", language "
        << r.dropped_language << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "preprocess: error: " << e.what() << '\n';
    return 1;
  }
}

// analyze: eligibility histograms per swap type and the threshold sweep for
// both similarity methods, as a tabular text report.
inline int cmd_analyze(const RunConfig& config, std::ostream& log = std::cout) {
  try {
    const Corpus corpus = detail::read_preprocessed_corpus(config);
    const std::string report = render_analysis(corpus, config.augment);
    const std::filesystem::path dir(config.io.out_dir);
    std::filesystem::create_directories(dir);
    detail::write_file(dir / kAnalysisReport, report);
    log << report;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "analyze: error: " << e.what() << '\n';
    return 1;
  }
}

// augment: build the pool, swap subtrees, and write the augmented parallel
// text, a provenance sidecar and a generation report. An empty pool is not a
// failure; it produces empty outputs and an explanatory report.
inline int cmd_augment(const RunConfig& config, std::ostream& log = std::cout) {
  try {
    validate(config.augment);
    const Corpus corpus = detail::read_preprocessed_corpus(config);
    const GenerationResult result = generate(corpus, config.augment);
    const GenReport& r = result.report;

    const std::filesystem::path dir(config.io.out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream src, tgt, prov;
    for (const AugmentedBisentence& a : result.outputs) {
      src << detokenize(a.source) << '\n';
      tgt << detokenize(a.target) << '\n';
      nlohmann::json p;
      p["recipient_id"] = a.provenance.recipient_id;
      p["donor_id"] = a.provenance.donor_id;
      p["swap_type"] = std::string(swap_type_name(a.provenance.swap_type));
      p["method"] = std::string(method_name(a.provenance.method));
      p["similarity_recipient"] = a.provenance.similarity_recipient;
      p["similarity_donor"] = a.provenance.similarity_donor;
      p["pair_index"] = a.provenance.pair_index;
      prov << p.dump() << '\n';
    }
    detail::write_file(dir / kAugmentedSource, src.str());
    detail::write_file(dir / kAugmentedTarget, tgt.str());
    detail::write_file(dir / kProvenance, prov.str());

    nlohmann::json j;
    j["corpus_size"] = r.corpus_size;
    j["target"] = r.target;
    j["achieved"] = r.achieved;
    j["pairs_requested"] = r.pairs_requested;
    j["pairs_emitted"] = r.pairs_emitted;
    j["dedup_dropped"] = r.dedup_dropped;
    j["shortfall"] = std::string(shortfall_name(r.shortfall));
    j["pool"] = {{"size", r.pool_size},
                 {"total", r.pool.total},
                 {"eligible", r.pool.eligible},
                 {"over_cap", r.pool.over_cap},
                 {"below_threshold", r.pool.below_threshold},
                 {"reasons", detail::reasons_to_json(r.pool.reasons)}};
    j["config"] = {{"swap_type", std::string(swap_type_name(config.augment.swap_type))},
                   {"method", std::string(method_name(config.augment.graph_sampling))},
                   {"threshold", config.augment.similarity_threshold},
                   {"ratio", config.augment.ratio},
                   {"scope", std::string(scope_name(config.augment.similarity_scope))},
                   {"seed", config.augment.seed}};
    detail::write_file(dir / kAugmentReport, j.dump(2) + "\n");

    log << "augment: target " << r.target << ", achieved " << r.achieved << " (pool "
        << r.pool_size << ", shortfall " << shortfall_name(r.shortfall) << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "augment: error: " << e.what() << '\n';
    return 1;
  }
}

// merge: shuffle originals and augmented samples together into line-aligned
// training files.
inline int cmd_merge(const RunConfig& config, std::ostream& log = std::cout) {
  try {
    const Corpus corpus = detail::read_preprocessed_corpus(config);
    const std::filesystem::path dir(config.io.out_dir);
    const auto aug_src = detail::read_lines(dir / kAugmentedSource);
    const auto aug_tgt = detail::read_lines(dir / kAugmentedTarget);
    if (aug_src.size() != aug_tgt.size())
      throw std::runtime_error("augmented sides are misaligned: " +
                               std::to_string(aug_src.size()) + " vs " +
                               std::to_string(aug_tgt.size()) + " lines");

    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(corpus.size() + aug_src.size());
    for (const Bisentence& b : corpus.bisentences)
      lines.emplace_back(detokenize(b.source), detokenize(b.target));
    for (std::size_t i = 0; i < aug_src.size(); ++i)
      lines.emplace_back(aug_src[i], aug_tgt[i]);
    std::mt19937_64 rng(config.seed);
    lines = merge_shuffle(std::move(lines), rng);

    std::ostringstream src, tgt;
    for (const auto& [s, t] : lines) {
      src << s << '\n';
      tgt << t << '\n';
    }
    detail::write_file(dir / kMergedSource, src.str());
    detail::write_file(dir / kMergedTarget, tgt.str());
    log << "merge: " << corpus.size() << " original + " << aug_src.size() << " augmented -> "
        << lines.size() << " pairs\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "merge: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace treeswap
