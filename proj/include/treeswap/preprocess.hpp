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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treeswap/corpus.hpp"
#include "treeswap/text.hpp"

namespace treeswap {

enum class LenFilterMode {
  both,   // drop only when the difference AND the ratio conditions both hold
  either  // drop when either condition holds
};

struct FilterConfig {
  int max_tokens = 32;
  int max_len_diff = 7;
  double max_len_ratio = 1.2;
  bool strip_edges = true;
  bool normalize_punct = true;
  LenFilterMode len_filter_mode = LenFilterMode::both;
};

inline void validate(const FilterConfig& config) {
  if (config.max_tokens < 1) throw std::invalid_argument("max_tokens must be at least 1");
  if (config.max_len_diff < 0) throw std::invalid_argument("max_len_diff must be non-negative");
  if (config.max_len_ratio < 1) throw std::invalid_argument("max_len_ratio must be at least 1");
}

struct FilterReport {
  std::size_t input = 0;
  std::size_t output = 0;
  std::size_t dropped_length = 0;
  std::size_t dropped_diff_ratio = 0;
  std::size_t dropped_language = 0;
  std::size_t language_undetermined = 0;  // hook gave no verdict; pair kept
  std::size_t strip_flagged = 0;          // sides left unstripped to keep the tree rooted
};

// Returns a language code for the sentence, or nullopt when undetermined.
using LanguageHook = std::function<std::optional<std::string>(const DepTree&)>;

// True iff neither side is longer than max_tokens.
inline bool length_ok(const Bisentence& b, int max_tokens) {
  return b.source.size() <= max_tokens && b.target.size() <= max_tokens;
}

inline bool diff_ratio_ok(const Bisentence& b, int max_diff, double max_ratio,
                          LenFilterMode mode) {
  const int ns = b.source.size();
  const int nt = b.target.size();
  const int diff = ns > nt ? ns - nt : nt - ns;
  const double ratio =
      static_cast<double>(std::max(ns, nt)) / static_cast<double>(std::min(ns, nt));
  const bool diff_bad = diff > max_diff;
  const bool ratio_bad = ratio > max_ratio;
  if (mode == LenFilterMode::both) return !(diff_bad && ratio_bad);
  return !(diff_bad || ratio_bad);
}

// Maps typographic punctuation to canonical ASCII: curly quotes and
// guillemets to straight quotes, the ellipsis character to "...", no-break
// space to space, en/em dashes to "-" unless they sit between digits.
// Idempotent.
inline std::string normalize_punct(std::string_view form) {
  std::string out;
  out.reserve(form.size());
  std::size_t pos = 0;
  char32_t prev = 0;
  while (pos < form.size()) {
    std::size_t len = 0;
    const char32_t cp = decode_utf8(form, pos, &len);
    pos += len;
    switch (cp) {
      case 0x201C:
      case 0x201D:
      case 0x201E:
      case 0x201F:
      case 0x00AB:
      case 0x00BB:
        out.push_back('"');
        break;
      case 0x2018:
      case 0x2019:
      case 0x201A:
      case 0x201B:
        out.push_back('\'');
        break;
      case 0x2026:
        out += "...";
        break;
      case 0x00A0:
        out.push_back(' ');
        break;
      case 0x2013:
      case 0x2014: {
        char32_t next = 0;
        if (pos < form.size()) {
          std::size_t nlen = 0;
          next = decode_utf8(form, pos, &nlen);
        }
        const bool between_digits = prev >= U'0' && prev <= U'9' && next >= U'0' && next <= U'9';
        if (between_digits) {
          append_utf8(out, cp);
        } else {
          out.push_back('-');
        }
        break;
      }
      default:
        append_utf8(out, cp);
        break;
    }
    prev = cp;
  }
  return out;
}

struct StripResult {
  DepTree tree;
  // Set when stripping was skipped because it would have removed the root or
  // left a surviving token without its head; the tree is then unchanged.
  bool flagged = false;
};

// Repeatedly removes leading and trailing tokens made up entirely of
// quotation marks or dashes, re-basing head indices of the survivors.
inline StripResult strip_edges(const DepTree& tree) {
  const int n = tree.size();
  int lo = 1;
  int hi = n;
  while (lo <= hi && is_edge_strippable(tree.at(lo).form)) ++lo;
  while (hi >= lo && is_edge_strippable(tree.at(hi).form)) --hi;
  if (lo == 1 && hi == n) return {tree, false};
  if (lo > hi) return {tree, true};  // everything would go
  for (int i = lo; i <= hi; ++i) {
    const int h = tree.at(i).head;
    if (h != 0 && (h < lo || h > hi)) return {tree, true};
  }
  const int root = tree.root_index();
  if (root < lo || root > hi) return {tree, true};

  std::vector<Token> kept;
  kept.reserve(static_cast<std::size_t>(hi - lo + 1));
  const int shift = lo - 1;
  for (int i = lo; i <= hi; ++i) {
    Token t = tree.at(i);
    t.index -= shift;
    if (t.head != 0) t.head -= shift;
    kept.push_back(std::move(t));
  }
  return {DepTree(std::move(kept)), false};
}

struct PreprocessResult {
  Corpus corpus;
  FilterReport report;
};

namespace detail {

inline DepTree normalize_forms(const DepTree& tree) {
  std::vector<Token> tokens = tree.tokens();
  for (Token& t : tokens) t.form = normalize_punct(t.form);
  return DepTree(std::move(tokens));
}

}  // namespace detail

// The corpus cleaning pipeline: punctuation normalization, edge stripping,
// the length cap, the length difference/ratio filter and, when a hook is
// installed, language verification. Normalization runs before stripping so
// that quote variants outside the strip set (for example the low double
// quote) are stripped in the same pass; the pipeline stays idempotent.
// Survivors keep their relative order and their ids.
inline PreprocessResult run(const Corpus& corpus, const FilterConfig& config,
                            const LanguageHook& language_hook = {}) {
  validate(config);
  PreprocessResult result;
  result.corpus.source_lang = corpus.source_lang;
  result.corpus.target_lang = corpus.target_lang;
  FilterReport& report = result.report;
  report.input = corpus.size();

  for (const Bisentence& original : corpus.bisentences) {
    Bisentence b = original;
    if (config.normalize_punct) {
      b.source = detail::normalize_forms(b.source);
      b.target = detail::normalize_forms(b.target);
    }
    if (config.strip_edges) {
      StripResult src = strip_edges(b.source);
      StripResult tgt = strip_edges(b.target);
      report.strip_flagged += (src.flagged ? 1 : 0) + (tgt.flagged ? 1 : 0);
      b.source = std::move(src.tree);
      b.target = std::move(tgt.tree);
    }
    if (!length_ok(b, config.max_tokens)) {
      ++report.dropped_length;
      continue;
    }
    if (!diff_ratio_ok(b, config.max_len_diff, config.max_len_ratio, config.len_filter_mode)) {
      ++report.dropped_diff_ratio;
      continue;
    }
    if (language_hook) {
      bool mismatch = false;
      for (const auto& [tree, expected] :
           {std::pair<const DepTree&, const std::string&>{b.source, corpus.source_lang},
            std::pair<const DepTree&, const std::string&>{b.target, corpus.target_lang}}) {
        std::optional<std::string> detected;
        try {
          detected = language_hook(tree);
        } catch (...) {
          detected = std::nullopt;
        }
        if (!detected.has_value()) {
          ++report.language_undetermined;
        } else if (*detected != expected) {
          mismatch = true;
          break;
        }
      }
      if (mismatch) {
        ++report.dropped_language;
        continue;
      }
    }
    result.corpus.bisentences.push_back(std::move(b));
  }
  report.output = result.corpus.size();
  return result;
}

}  // namespace treeswap
