/*
Copyright 2026 The isegen Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isegen/dfg.hpp"

namespace isegen {

/// Parameters of the deterministic random-block generator. The same
/// (seed, index) pair always yields the same block.
struct GenParams {
    std::uint64_t seed = 1;
    int count = 1;
    int min_nodes = 5;
    int max_nodes = 40;
    double mem_ratio = 0.15;
    double edge_factor = 2.0; // target edges per node
    double live_out_ratio = 0.1;
    std::uint64_t max_freq = 1000;
};

/// Opcode alphabet with MAC-normalized hardware delays, matching what
/// the generator emits.
LatencyTable default_latency_table();

RawDfg generate_random_block(const GenParams &params, std::uint64_t index);

/// `copies` disjoint copies of a small motif: two producer-less nodes
/// feeding a chain, last node live-out. motif_nodes >= 3.
RawDfg generate_regular_block(std::uint64_t seed, int copies, int motif_nodes = 4);

/// Random chain (every node feeds the next). Useful as a family whose
/// optimum is easy to reason about.
RawDfg generate_chain_block(std::uint64_t seed, int nodes);

/// Random expression tree: every value has exactly one consumer,
/// converging to a single live-out root; leaves read external operands.
RawDfg generate_tree_block(std::uint64_t seed, int nodes);

std::vector<RawDfg> generate_corpus(const GenParams &params);

} // namespace isegen
