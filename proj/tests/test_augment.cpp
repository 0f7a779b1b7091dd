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

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>

#include "support/builders.hpp"
#include "support/synthetic.hpp"
#include "treeswap/augment.hpp"

using testutil::deptree;
using testutil::tok;
using treeswap::AugmentConfig;
using treeswap::Bisentence;
using treeswap::build_pool;
using treeswap::Corpus;
using treeswap::detokenize;
using treeswap::generate;
using treeswap::merge_shuffle;
using treeswap::Method;
using treeswap::pair_candidates;
using treeswap::Pool;
using treeswap::Scope;
using treeswap::Shortfall;
using treeswap::swap_subtrees;
using treeswap::SwapType;

namespace {

Corpus two_pair_corpus() {
  Corpus corpus;
  corpus.bisentences.push_back(testutil::scarf_bisentence(0));
  corpus.bisentences.push_back(testutil::book_bisentence(1));
  return corpus;
}

std::string text(const std::vector<treeswap::Token>& tokens) { return detokenize(tokens); }

}  // namespace

TEST_CASE("build_pool keeps the example bisentence with similarity 1") {
  Corpus corpus = two_pair_corpus();
  AugmentConfig config;
  config.swap_type = SwapType::object;
  config.graph_sampling = Method::em;
  config.similarity_threshold = 0.4;
  const Pool pool = build_pool(corpus, config);
  REQUIRE(pool.candidates.size() == 2);
  CHECK(pool.candidates[0].id == 0);
  CHECK(pool.candidates[0].similarity == 1.0);
  CHECK(pool.stats.eligible == 2);
}

TEST_CASE("ineligible bisentences never enter the pool") {
  Corpus corpus = two_pair_corpus();
  corpus.bisentences.push_back({2,
                                deptree({
                                    tok(1, "es", "PRON", 2, "nsubj"),
                                    tok(2, "regnet", "VERB", 0, "root"),
                                }),
                                deptree({
                                    tok(1, "it", "PRON", 2, "nsubj"),
                                    tok(2, "rains", "VERB", 0, "root"),
                                })});
  AugmentConfig config;
  config.similarity_threshold = 0.0;
  const Pool pool = build_pool(corpus, config);
  CHECK(pool.candidates.size() == 2);
  CHECK(pool.stats.reasons.at(treeswap::Reason::no_edge_src) == 1);
}

TEST_CASE("threshold 1 admits only label-isomorphic subtrees") {
  // Object subtrees: DET+ADJ+NOUN on the source, DET+NOUN on the target.
  Bisentence uneven{0, testutil::scarf_source(), testutil::book_target()};
  Corpus corpus;
  corpus.bisentences.push_back(uneven);
  AugmentConfig config;
  config.similarity_threshold = 1.0;
  for (Method m : {Method::ged, Method::em}) {
    config.graph_sampling = m;
    const Pool pool = build_pool(corpus, config);
    CHECK(pool.candidates.empty());
    CHECK(pool.stats.below_threshold == 1);
  }
}

TEST_CASE("pool members always clear the threshold") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 60, .seed = 3});
  for (Method m : {Method::ged, Method::em}) {
    AugmentConfig config;
    config.graph_sampling = m;
    config.similarity_threshold = 0.4;
    const Pool pool = build_pool(corpus, config);
    CHECK(!pool.candidates.empty());
    for (const auto& c : pool.candidates) CHECK(c.similarity >= 0.4);
  }
}

TEST_CASE("GED capacity overflows count as rejections") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 5, .seed = 8});
  AugmentConfig config;
  config.graph_sampling = Method::ged;
  config.similarity_scope = Scope::full_tree;
  config.ged_node_cap = 4;  // every full-tree pair exceeds this
  const Pool pool = build_pool(corpus, config);
  CHECK(pool.candidates.empty());
  CHECK(pool.stats.over_cap == pool.stats.eligible);
}

TEST_CASE("pairing yields disjoint pairs in one round") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 4, .seed = 4});
  AugmentConfig config;
  const Pool pool = build_pool(corpus, config);
  REQUIRE(pool.candidates.size() == 4);
  std::mt19937_64 rng(1);
  const auto result = pair_candidates(pool.candidates, 2, rng);
  REQUIRE(result.pairs.size() == 2);
  std::set<std::size_t> used;
  for (const auto& [a, b] : result.pairs) {
    used.insert(a);
    used.insert(b);
  }
  CHECK(used.size() == 4);
}

TEST_CASE("pairing exhausts a two-element pool after one pair") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 2, .seed = 5});
  AugmentConfig config;
  const Pool pool = build_pool(corpus, config);
  REQUIRE(pool.candidates.size() == 2);
  std::mt19937_64 rng(1);
  const auto result = pair_candidates(pool.candidates, 5, rng);
  CHECK(result.pairs.size() == 1);
  CHECK(result.exhausted);
}

TEST_CASE("pairing is deterministic for a fixed seed") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 50, .seed = 6});
  AugmentConfig config;
  const Pool pool = build_pool(corpus, config);
  std::mt19937_64 rng1(33), rng2(33), rng3(34);
  const auto a = pair_candidates(pool.candidates, 40, rng1);
  const auto b = pair_candidates(pool.candidates, 40, rng2);
  const auto c = pair_candidates(pool.candidates, 40, rng3);
  CHECK(a.pairs == b.pairs);
  CHECK(a.pairs != c.pairs);
}

TEST_CASE("a pool of one cannot be paired") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 1, .seed = 7});
  AugmentConfig config;
  const Pool pool = build_pool(corpus, config);
  std::mt19937_64 rng(1);
  const auto result = pair_candidates(pool.candidates, 3, rng);
  CHECK(result.pairs.empty());
  CHECK(result.pool_too_small);
}

TEST_CASE("object swap splices both sides simultaneously") {
  Corpus corpus = two_pair_corpus();
  AugmentConfig config;
  config.swap_type = SwapType::object;
  const Pool pool = build_pool(corpus, config);
  REQUIRE(pool.candidates.size() == 2);
  const auto [first, second] =
      swap_subtrees(pool.candidates[0], pool.candidates[1], SwapType::object);
  CHECK(text(first.source) == "John kaufte ein Buch .");
  CHECK(text(first.target) == "John bought a book .");
  CHECK(text(second.source) == "Mary las einen gelben Schal .");
  CHECK(text(second.target) == "Mary read a yellow scarf .");
  CHECK(first.provenance.recipient_id == 0);
  CHECK(first.provenance.donor_id == 1);
  CHECK(second.provenance.recipient_id == 1);
  CHECK(second.provenance.donor_id == 0);
}

TEST_CASE("subject swap moves the subjects instead") {
  Corpus corpus = two_pair_corpus();
  AugmentConfig config;
  config.swap_type = SwapType::subject;
  const Pool pool = build_pool(corpus, config);
  REQUIRE(pool.candidates.size() == 2);
  const auto [first, second] =
      swap_subtrees(pool.candidates[0], pool.candidates[1], SwapType::subject);
  CHECK(text(first.source) == "Mary kaufte einen gelben Schal .");
  CHECK(text(first.target) == "Mary bought a yellow scarf .");
  CHECK(text(second.source) == "John las ein Buch .");
  CHECK(text(second.target) == "John read a book .");
}

TEST_CASE("sentence-initial case is repaired on both directions") {
  // Common-noun subjects with determiners: "The cat chased a ball ." and
  // "Today birds sang a song ." with its subject mid-sentence... the subject
  // of the first sentence starts it, the second one's does not.
  const auto cat = [](const std::string& det, const std::string& noun, const std::string& verb,
                      const std::string& obj) {
    return deptree({
        tok(1, det, "DET", 2, "det"),
        tok(2, noun, "NOUN", 3, "nsubj"),
        tok(3, verb, "VERB", 0, "root"),
        tok(4, "a", "DET", 5, "det"),
        tok(5, obj, "NOUN", 3, "obj"),
        tok(6, ".", "PUNCT", 3, "punct"),
    });
  };
  const auto bird = [](const std::string& adv, const std::string& det, const std::string& noun,
                       const std::string& verb, const std::string& obj) {
    return deptree({
        tok(1, adv, "ADV", 4, "advmod"),
        tok(2, det, "DET", 3, "det"),
        tok(3, noun, "NOUN", 4, "nsubj"),
        tok(4, verb, "VERB", 0, "root"),
        tok(5, "a", "DET", 6, "det"),
        tok(6, obj, "NOUN", 4, "obj"),
        tok(7, ".", "PUNCT", 4, "punct"),
    });
  };
  Corpus corpus;
  corpus.bisentences.push_back({0, cat("The", "cat", "chased", "ball"),
                                cat("Die", "Katze", "jagte", "Ball")});
  corpus.bisentences.push_back({1, bird("Today", "the", "birds", "sang", "song"),
                                bird("Heute", "die", "Voegel", "sangen", "Lied")});
  AugmentConfig config;
  config.swap_type = SwapType::subject;
  config.similarity_threshold = 0.0;
  const Pool pool = build_pool(corpus, config);
  REQUIRE(pool.candidates.size() == 2);
  const auto [first, second] =
      swap_subtrees(pool.candidates[0], pool.candidates[1], SwapType::subject);
  // "the birds" moved to the sentence start: capitalized.
  CHECK(text(first.source) == "The birds chased a ball .");
  // "The cat" moved behind "Today": lowercased (not a proper noun).
  CHECK(text(second.source) == "Today the cat sang a song .");
}

TEST_CASE("proper nouns keep their capital when they move inward") {
  const Corpus corpus = [] {
    Corpus c;
    c.bisentences.push_back(testutil::scarf_bisentence(0));  // John ...
    const auto adv_side = [](const std::string& adv, const std::string& name,
                             const std::string& verb, const std::string& obj) {
      return deptree({
          tok(1, adv, "ADV", 3, "advmod"),
          tok(2, name, "PROPN", 3, "nsubj"),
          tok(3, verb, "VERB", 0, "root"),
          tok(4, obj, "NOUN", 3, "obj"),
      });
    };
    c.bisentences.push_back({1, adv_side("gestern", "Eva", "las", "Zeitung"),
                             adv_side("yesterday", "Eva", "read", "papers")});
    return c;
  }();
  AugmentConfig config;
  config.swap_type = SwapType::subject;
  config.similarity_threshold = 0.0;
  const Pool pool = build_pool(corpus, config);
  REQUIRE(pool.candidates.size() == 2);
  const auto [first, second] =
      swap_subtrees(pool.candidates[0], pool.candidates[1], SwapType::subject);
  CHECK(text(first.source) == "Eva kaufte einen gelben Schal .");
  // John lands after "gestern" but stays capitalized as a PROPN.
  CHECK(text(second.source) == "gestern John las Zeitung");
}

TEST_CASE("swapped outputs differ only inside the replaced spans") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 40, .seed = 12});
  AugmentConfig config;
  config.similarity_threshold = 0.0;
  const Pool pool = build_pool(corpus, config);
  std::mt19937_64 rng(9);
  const auto pairing = pair_candidates(pool.candidates, 20, rng);
  for (const auto& [ia, ib] : pairing.pairs) {
    const auto& a = pool.candidates[ia];
    const auto& b = pool.candidates[ib];
    const auto [first, second] = swap_subtrees(a, b, config.swap_type);

    const auto check_sides = [](const treeswap::SwapCandidate& recipient,
                                const treeswap::SwapCandidate& donor,
                                const treeswap::AugmentedBisentence& out) {
      const struct {
        const treeswap::Subtree& rec;
        const treeswap::Subtree& don;
        const std::vector<treeswap::Token>& out_tokens;
      } sides[2] = {{recipient.source_sub, donor.source_sub, out.source},
                    {recipient.target_sub, donor.target_sub, out.target}};
      for (const auto& side : sides) {
        const auto& original = side.rec.tree->tokens();
        const int donor_len = side.don.span_hi - side.don.span_lo + 1;
        const int expected =
            static_cast<int>(original.size()) - (side.rec.span_hi - side.rec.span_lo + 1) +
            donor_len;
        REQUIRE(static_cast<int>(side.out_tokens.size()) == expected);
        // Prefix and suffix are untouched.
        for (int i = 0; i < side.rec.span_lo - 1; ++i)
          CHECK(side.out_tokens[i].form == original[i].form);
        for (int i = side.rec.span_hi; i < static_cast<int>(original.size()); ++i)
          CHECK(side.out_tokens[i - (side.rec.span_hi - side.rec.span_lo + 1) + donor_len].form ==
                original[i].form);
      }
    };
    check_sides(a, b, first);
    check_sides(b, a, second);
  }
}

TEST_CASE("generate hits the requested ratios on a full pool") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 100, .seed = 21});
  AugmentConfig config;
  config.similarity_threshold = 0.4;
  struct Case {
    double ratio;
    std::size_t expect;
  } cases[] = {{0.5, 50}, {2, 200}, {3, 300}};
  for (const auto& c : cases) {
    config.ratio = c.ratio;
    const auto result = generate(corpus, config);
    CHECK(result.report.pool_size == 100);
    CHECK(result.report.target == c.expect);
    CHECK(result.outputs.size() == c.expect);
    CHECK(result.report.shortfall == Shortfall::none);
    std::set<std::pair<std::string, std::string>> unique;
    for (const auto& out : result.outputs) unique.emplace(text(out.source), text(out.target));
    CHECK(unique.size() == result.outputs.size());
  }
}

TEST_CASE("generate reports exhaustion honestly") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 2, .seed = 22});
  AugmentConfig config;
  config.ratio = 3;
  const auto result = generate(corpus, config);
  CHECK(result.report.target == 6);
  CHECK(result.outputs.size() == 2);
  CHECK(result.report.shortfall == Shortfall::pool_exhausted);
}

TEST_CASE("generate with an empty pool returns an explanatory report") {
  Corpus corpus;
  corpus.bisentences.push_back({0,
                                deptree({tok(1, "es", "PRON", 2, "nsubj"),
                                         tok(2, "regnet", "VERB", 0, "root")}),
                                deptree({tok(1, "it", "PRON", 2, "nsubj"),
                                         tok(2, "rains", "VERB", 0, "root")})});
  AugmentConfig config;
  const auto result = generate(corpus, config);
  CHECK(result.outputs.empty());
  CHECK(result.report.pool_too_small);
  CHECK(result.report.pool.reasons.at(treeswap::Reason::no_edge_src) == 1);
}

TEST_CASE("generate validates its config") {
  AugmentConfig config;
  config.ratio = 0;
  CHECK_THROWS_AS(generate(Corpus{}, config), std::invalid_argument);
  config.ratio = 1;
  config.similarity_threshold = 1.5;
  CHECK_THROWS_AS(generate(Corpus{}, config), std::invalid_argument);
}

TEST_CASE("dedup drops exact duplicates and reports them") {
  // Two bisentences with identical text produce colliding outputs.
  Corpus corpus;
  corpus.bisentences.push_back(testutil::scarf_bisentence(0));
  corpus.bisentences.push_back(testutil::scarf_bisentence(1));
  AugmentConfig config;
  config.ratio = 1;
  config.dedup = true;
  const auto result = generate(corpus, config);
  // Swapping identical subtrees reproduces the originals, which are all dedup
  // collisions.
  CHECK(result.outputs.empty());
  CHECK(result.report.dedup_dropped == 2);
  CHECK(result.report.shortfall == Shortfall::dedup);
  config.dedup = false;
  const auto kept = generate(corpus, config);
  CHECK(kept.outputs.size() == 2);
}

TEST_CASE("generate is reproducible and seed-sensitive") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 60, .seed = 23});
  AugmentConfig config;
  config.ratio = 2;
  config.seed = 77;
  const auto a = generate(corpus, config);
  const auto b = generate(corpus, config);
  REQUIRE(a.outputs.size() == b.outputs.size());
  for (std::size_t i = 0; i < a.outputs.size(); ++i) {
    CHECK(text(a.outputs[i].source) == text(b.outputs[i].source));
    CHECK(a.outputs[i].provenance.recipient_id == b.outputs[i].provenance.recipient_id);
  }
  config.seed = 78;
  const auto c = generate(corpus, config);
  bool any_difference = c.outputs.size() != a.outputs.size();
  for (std::size_t i = 0; !any_difference && i < a.outputs.size(); ++i)
    any_difference = a.outputs[i].provenance.recipient_id != c.outputs[i].provenance.recipient_id;
  CHECK(any_difference);
}

TEST_CASE("merge_shuffle keeps pairs aligned") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 10, .seed = 31});
  AugmentConfig config;
  config.ratio = 2;
  const auto generated = generate(corpus, config);
  std::mt19937_64 rng(5);
  const auto merged = merge_shuffle(corpus, generated.outputs, rng);
  CHECK(merged.size() == corpus.size() + generated.outputs.size());

  std::multiset<std::pair<std::string, std::string>> expected;
  for (const auto& b : corpus.bisentences)
    expected.emplace(detokenize(b.source), detokenize(b.target));
  for (const auto& out : generated.outputs) expected.emplace(text(out.source), text(out.target));
  std::multiset<std::pair<std::string, std::string>> actual(merged.begin(), merged.end());
  CHECK(actual == expected);

  std::mt19937_64 rng2(5);
  CHECK(merge_shuffle(corpus, generated.outputs, rng2) == merged);
}

TEST_CASE("merge_shuffle with no augmented data shuffles the originals") {
  const Corpus corpus = testutil::synthetic_corpus({.count = 7, .seed = 32});
  std::mt19937_64 rng(1);
  const auto merged = merge_shuffle(corpus, {}, rng);
  CHECK(merged.size() == 7);
}
