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

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeswap/corpus.hpp"
#include "treeswap/edge_map.hpp"
#include "treeswap/ged.hpp"
#include "treeswap/graph.hpp"
#include "treeswap/subtree.hpp"
#include "treeswap/text.hpp"

namespace treeswap {

enum class Method { ged, em };
enum class Scope { subtree, full_tree };

inline std::string_view method_name(Method m) { return m == Method::ged ? "ged" : "em"; }
inline std::string_view scope_name(Scope s) {
  return s == Scope::subtree ? "subtree" : "full_tree";
}

struct AugmentConfig {
  SwapType swap_type = SwapType::object;
  Method graph_sampling = Method::em;
  double similarity_threshold = 0.4;
  double ratio = 2.0;
  std::uint64_t seed = 0;
  Scope similarity_scope = Scope::subtree;
  bool dedup = true;
  int ged_node_cap = kGedNodeCapDefault;
};

inline void validate(const AugmentConfig& config) {
  if (!(config.ratio > 0)) throw std::invalid_argument("augment ratio must be positive");
  if (!(config.similarity_threshold >= 0 && config.similarity_threshold <= 1))
    throw std::invalid_argument("similarity threshold must be in [0, 1]");
  if (config.ged_node_cap < 2) throw std::invalid_argument("ged node cap must be at least 2");
}

// An eligible bisentence with its selected subtrees and similarity score.
// Subtrees point into the corpus the pool was built from.
struct SwapCandidate {
  int id = 0;
  Subtree source_sub;
  Subtree target_sub;
  double similarity = 0.0;
};

struct PoolStats {
  std::size_t total = 0;
  std::size_t eligible = 0;
  std::map<Reason, std::size_t> reasons;  // per-bisentence rejection reasons
  std::size_t over_cap = 0;               // GED instances beyond the node cap
  std::size_t below_threshold = 0;
};

struct Pool {
  std::vector<SwapCandidate> candidates;  // ordered by bisentence id
  PoolStats stats;
};

// Runs the eligibility heuristics and the configured similarity measure over
// the corpus and keeps candidates at or above the threshold. GED instances
// over the node cap count as rejections, not failures.
inline Pool build_pool(const Corpus& corpus, const AugmentConfig& config) {
  Pool pool;
  pool.stats.total = corpus.size();
  for (const Bisentence& b : corpus.bisentences) {
    EligibilityCheck check = check_eligibility(b, config.swap_type);
    if (!check.status.eligible) {
      for (Reason r : check.status.reasons) ++pool.stats.reasons[r];
      continue;
    }
    ++pool.stats.eligible;
    auto& [src_sub, tgt_sub] = *check.subtrees;
    const LabeledGraph src_graph = config.similarity_scope == Scope::subtree
                                       ? to_graph(src_sub)
                                       : to_graph(b.source);
    const LabeledGraph tgt_graph = config.similarity_scope == Scope::subtree
                                       ? to_graph(tgt_sub)
                                       : to_graph(b.target);
    double similarity = 0.0;
    if (config.graph_sampling == Method::ged) {
      if (src_graph.node_count() + tgt_graph.node_count() > config.ged_node_cap) {
        ++pool.stats.over_cap;
        continue;
      }
      similarity = ged_similarity(src_graph, tgt_graph, {}, config.ged_node_cap);
    } else {
      similarity = em_similarity(src_graph, tgt_graph);
    }
    if (similarity < config.similarity_threshold) {
      ++pool.stats.below_threshold;
      continue;
    }
    pool.candidates.push_back({b.id, std::move(src_sub), std::move(tgt_sub), similarity});
  }
  return pool;
}

// Fisher-Yates with a hand-rolled bounded draw; std::shuffle's permutation is
// implementation-defined, this one is reproducible everywhere.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

struct PairingResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // indices into the pool
  bool pool_too_small = false;
  bool exhausted = false;  // a full round produced nothing new
};

// Draws donor pairs by repeatedly shuffling the pool and pairing consecutive
// elements. Unordered id pairs are emitted at most once across rounds; the
// process stops at target_pairs or when a full round adds nothing.
inline PairingResult pair_candidates(const std::vector<SwapCandidate>& pool,
                                     std::size_t target_pairs, std::mt19937_64& rng) {
  PairingResult result;
  if (pool.size() < 2) {
    result.pool_too_small = true;
    return result;
  }
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::set<std::pair<int, int>> seen;
  while (result.pairs.size() < target_pairs) {
    deterministic_shuffle(idx, rng);
    std::size_t added = 0;
    for (std::size_t k = 0; k + 1 < idx.size() && result.pairs.size() < target_pairs; k += 2) {
      const std::size_t a = idx[k];
      const std::size_t b = idx[k + 1];
      const int ida = pool[a].id;
      const int idb = pool[b].id;
      if (ida == idb) continue;
      const std::pair<int, int> key = std::minmax(ida, idb);
      if (!seen.insert(key).second) continue;
      result.pairs.emplace_back(a, b);
      ++added;
    }
    if (added == 0) {
      result.exhausted = true;
      break;
    }
  }
  return result;
}

// Replaces the 1-based inclusive token span [lo, hi] of `recipient` with the
// donor tokens. Case repair at sentence boundaries: a segment moved to the
// sentence start is capitalized; a segment that started its original sentence
// and lands mid-sentence is lowercased unless it begins with a proper noun.
// Output tokens are renumbered and carry no tree structure.
inline std::vector<Token> splice_span(const std::vector<Token>& recipient, int lo, int hi,
                                      std::vector<Token> donor, bool donor_was_initial) {
  if (lo < 1 || hi > static_cast<int>(recipient.size()) || lo > hi)
    throw std::logic_error("splice span out of range");
  if (!donor.empty()) {
    if (lo == 1) {
      donor.front().form = capitalize_first(donor.front().form);
    } else if (donor_was_initial && donor.front().upos != "PROPN") {
      donor.front().form = lowercase_first(donor.front().form);
    }
  }
  std::vector<Token> out;
  out.reserve(recipient.size() - static_cast<std::size_t>(hi - lo + 1) + donor.size());
  for (int i = 0; i < lo - 1; ++i) out.push_back(recipient[static_cast<std::size_t>(i)]);
  for (Token& t : donor) out.push_back(std::move(t));
  for (std::size_t i = static_cast<std::size_t>(hi); i < recipient.size(); ++i)
    out.push_back(recipient[i]);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].index = static_cast<int>(i) + 1;
    out[i].head = 0;  // spliced sequences are token lists, not trees
  }
  return out;
}

struct Provenance {
  int recipient_id = 0;
  int donor_id = 0;
  SwapType swap_type = SwapType::object;
  Method method = Method::em;
  double similarity_recipient = 0.0;
  double similarity_donor = 0.0;
  std::size_t pair_index = 0;
};

struct AugmentedBisentence {
  std::vector<Token> source;
  std::vector<Token> target;
  Provenance provenance;
};

namespace detail {

inline std::vector<Token> subtree_tokens(const Subtree& sub) {
  std::vector<Token> tokens;
  tokens.reserve(sub.nodes.size());
  for (int i = sub.span_lo; i <= sub.span_hi; ++i) tokens.push_back(sub.tree->at(i));
  return tokens;
}

inline std::vector<Token> splice_sides(const Subtree& recipient, const Subtree& donor) {
  return splice_span(recipient.tree->tokens(), recipient.span_lo, recipient.span_hi,
                     subtree_tokens(donor), donor.span_lo == 1);
}

}  // namespace detail

// Swaps the selected subtrees of two candidates, simultaneously on the source
// and the target side, producing two augmented bisentences. Both candidates
// must hold contiguous subtrees.
inline std::pair<AugmentedBisentence, AugmentedBisentence> swap_subtrees(const SwapCandidate& a,
                                                                         const SwapCandidate& b,
                                                                         SwapType type) {
  for (const SwapCandidate* c : {&a, &b}) {
    if (!c->source_sub.contiguous || !c->target_sub.contiguous)
      throw std::logic_error("swap requires contiguous subtrees");
  }
  AugmentedBisentence first;
  first.source = detail::splice_sides(a.source_sub, b.source_sub);
  first.target = detail::splice_sides(a.target_sub, b.target_sub);
  first.provenance.recipient_id = a.id;
  first.provenance.donor_id = b.id;
  first.provenance.swap_type = type;
  first.provenance.similarity_recipient = a.similarity;
  first.provenance.similarity_donor = b.similarity;

  AugmentedBisentence second;
  second.source = detail::splice_sides(b.source_sub, a.source_sub);
  second.target = detail::splice_sides(b.target_sub, a.target_sub);
  second.provenance.recipient_id = b.id;
  second.provenance.donor_id = a.id;
  second.provenance.swap_type = type;
  second.provenance.similarity_recipient = b.similarity;
  second.provenance.similarity_donor = a.similarity;

  return {std::move(first), std::move(second)};
}

enum class Shortfall { none, pool_exhausted, dedup, both };

inline std::string_view shortfall_name(Shortfall s) {
  switch (s) {
    case Shortfall::none: return "none";
    case Shortfall::pool_exhausted: return "pool_exhausted";
    case Shortfall::dedup: return "dedup";
    case Shortfall::both: return "both";
  }
  return "?";
}

struct GenReport {
  std::size_t corpus_size = 0;
  std::size_t pool_size = 0;
  std::size_t target = 0;
  std::size_t pairs_requested = 0;
  std::size_t pairs_emitted = 0;
  std::size_t dedup_dropped = 0;
  std::size_t achieved = 0;
  Shortfall shortfall = Shortfall::none;
  bool pool_too_small = false;
  PoolStats pool;
};

struct GenerationResult {
  std::vector<AugmentedBisentence> outputs;
  GenReport report;
};

// The full augmentation pass: build the pool, draw donor pairs, swap, and
// drop exact duplicates (against other outputs and against the originals)
// when dedup is on. Target count is ceil(ratio * |corpus|); shortfalls are
// reported, never silently padded. Deterministic for a fixed seed.
inline GenerationResult generate(const Corpus& corpus, const AugmentConfig& config) {
  validate(config);
  GenerationResult result;
  GenReport& report = result.report;
  report.corpus_size = corpus.size();
  report.target =
      static_cast<std::size_t>(std::llround(std::ceil(config.ratio * static_cast<double>(corpus.size()))));
  report.pairs_requested = (report.target + 1) / 2;

  Pool pool = build_pool(corpus, config);
  report.pool = pool.stats;
  report.pool_size = pool.candidates.size();

  if (report.target == 0) return result;
  if (pool.candidates.size() < 2) {
    report.pool_too_small = true;
    report.shortfall = Shortfall::pool_exhausted;
    return result;
  }

  std::mt19937_64 rng(config.seed);
  const PairingResult pairing = pair_candidates(pool.candidates, report.pairs_requested, rng);
  report.pairs_emitted = pairing.pairs.size();

  std::set<std::pair<std::string, std::string>> seen;
  if (config.dedup) {
    for (const Bisentence& b : corpus.bisentences)
      seen.emplace(detokenize(b.source), detokenize(b.target));
  }

  for (std::size_t pi = 0; pi < pairing.pairs.size(); ++pi) {
    const auto [ia, ib] = pairing.pairs[pi];
    auto [first, second] = swap_subtrees(pool.candidates[ia], pool.candidates[ib],
                                         config.swap_type);
    first.provenance.method = config.graph_sampling;
    first.provenance.pair_index = pi;
    second.provenance.method = config.graph_sampling;
    second.provenance.pair_index = pi;
    for (AugmentedBisentence& out : {std::ref(first), std::ref(second)}) {
      if (result.outputs.size() >= report.target) break;
      if (config.dedup &&
          !seen.emplace(detokenize(out.source), detokenize(out.target)).second) {
        ++report.dedup_dropped;
        continue;
      }
      result.outputs.push_back(std::move(out));
    }
    if (result.outputs.size() >= report.target) break;
  }

  report.achieved = result.outputs.size();
  if (report.achieved < report.target) {
    const bool exhausted = report.pairs_emitted < report.pairs_requested;
    const bool dedup = report.dedup_dropped > 0;
    report.shortfall = exhausted && dedup ? Shortfall::both
                       : exhausted        ? Shortfall::pool_exhausted
                       : dedup            ? Shortfall::dedup
                                          : Shortfall::none;
  }
  return result;
}

// Concatenates original and augmented sentence pairs as detokenized text and
// shuffles them with the given generator; line alignment is preserved.
inline std::vector<std::pair<std::string, std::string>> merge_shuffle(
    const Corpus& original, const std::vector<AugmentedBisentence>& augmented,
    std::mt19937_64& rng) {
  std::vector<std::pair<std::string, std::string>> lines;
  lines.reserve(original.size() + augmented.size());
  for (const Bisentence& b : original.bisentences)
    lines.emplace_back(detokenize(b.source), detokenize(b.target));
  for (const AugmentedBisentence& a : augmented)
    lines.emplace_back(detokenize(a.source), detokenize(a.target));
  deterministic_shuffle(lines, rng);
  return lines;
}

// Same merge over already rendered text lines; used when the augmented side
// comes back from files.
inline std::vector<std::pair<std::string, std::string>> merge_shuffle(
    std::vector<std::pair<std::string, std::string>> lines, std::mt19937_64& rng) {
  deterministic_shuffle(lines, rng);
  return lines;
}

// The data behind the threshold sweep report: how many eligible bisentences
// score at or above each threshold in {0.0, 0.1, ..., 1.0}.
struct ThresholdTable {
  Method method = Method::em;
  std::array<std::size_t, 11> counts{};
  std::size_t pool_size = 0;  // eligible candidates the method could score
  std::size_t over_cap = 0;   // skipped GED instances
};

inline std::vector<ThresholdTable> threshold_tables(const Corpus& corpus,
                                                    const AugmentConfig& config) {
  std::vector<ThresholdTable> tables;
  for (Method method : {Method::ged, Method::em}) {
    AugmentConfig sweep = config;
    sweep.graph_sampling = method;
    sweep.similarity_threshold = 0.0;
    Pool pool = build_pool(corpus, sweep);
    ThresholdTable table;
    table.method = method;
    table.pool_size = pool.candidates.size();
    table.over_cap = pool.stats.over_cap;
    for (std::size_t i = 0; i < table.counts.size(); ++i) {
      const double t = static_cast<double>(i) / 10.0;
      for (const SwapCandidate& c : pool.candidates)
        if (c.similarity >= t) ++table.counts[i];
    }
    tables.push_back(table);
  }
  return tables;
}

}  // namespace treeswap
