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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "treeswap/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "treeswap - parallel corpus augmentation by dependency subtree swapping.\n"
      "Reads pre-parsed CoNLL-U bitext, filters it, and generates new sentence\n"
      "pairs by swapping subject/object subtrees between similar bisentences."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  treeswap::Overrides overrides;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--seed", overrides.seed, "random seed (overrides the config file)");
  app.add_option("--swap-type", overrides.swap_type, "subtree type to swap: subj or obj")
      ->check(CLI::IsMember({"subj", "obj"}));
  app.add_option("--method", overrides.method, "similarity method: ged or em")
      ->check(CLI::IsMember({"ged", "em"}));
  app.add_option("--threshold", overrides.threshold, "similarity threshold in [0,1]");
  app.add_option("--ratio", overrides.ratio, "augmentation ratio (target / corpus size)");
  app.add_option("--scope", overrides.scope, "similarity scope: subtree or full-tree")
      ->check(CLI::IsMember({"subtree", "full-tree", "full_tree"}));
  app.add_option("--out", overrides.out_dir, "output directory");
  app.add_option("--source", overrides.source, "source-side CoNLL-U file");
  app.add_option("--target", overrides.target, "target-side CoNLL-U file");

  auto* preprocess = app.add_subcommand("preprocess", "filter and clean the aligned corpus");
  auto* analyze =
      app.add_subcommand("analyze", "report swap eligibility and similarity distributions");
  auto* augment = app.add_subcommand("augment", "generate augmented sentence pairs");
  auto* merge = app.add_subcommand("merge", "shuffle originals and augmented pairs together");

  CLI11_PARSE(app, argc, argv);

  treeswap::RunConfig config;
  try {
    if (!config_path.empty()) config = treeswap::load_config_file(config_path);
    treeswap::apply_overrides(overrides, config);
  } catch (const std::exception& e) {
    std::cerr << "treeswap: " << e.what() << '\n';
    return 1;
  }

  if (preprocess->parsed()) return treeswap::cmd_preprocess(config);
  if (analyze->parsed()) return treeswap::cmd_analyze(config);
  if (augment->parsed()) return treeswap::cmd_augment(config);
  if (merge->parsed()) return treeswap::cmd_merge(config);
  return 1;
}
