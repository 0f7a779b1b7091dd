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

#include "treeswap/augment.hpp"
#include "treeswap/conllu.hpp"
#include "treeswap/corpus.hpp"
#include "treeswap/edge_map.hpp"
#include "treeswap/ged.hpp"
#include "treeswap/graph.hpp"
#include "treeswap/model.hpp"
#include "treeswap/preprocess.hpp"
#include "treeswap/subtree.hpp"
#include "treeswap/text.hpp"
