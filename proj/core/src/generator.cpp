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

#include "isegen/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace isegen {

namespace {

// Thin wrapper so generated corpora do not depend on the standard
// library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t bound) { return bound ? eng_() % bound : 0; }
    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(double p) {
        return static_cast<double>(eng_()) / static_cast<double>(std::mt19937_64::max()) < p;
    }

  private:
    std::mt19937_64 eng_;
};

const char *const kOpcodes[] = {"add", "sub", "and", "or",  "xor", "shl",
                                "shr", "mul", "mac", "sel", "not", "neg"};

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step keeps per-index streams independent.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

LatencyTable default_latency_table() {
    LatencyTable lat;
    lat.set("add", {1, 0.30, 2});
    lat.set("sub", {1, 0.30, 2});
    lat.set("and", {1, 0.10, 2});
    lat.set("or", {1, 0.10, 2});
    lat.set("xor", {1, 0.12, 2});
    lat.set("shl", {1, 0.20, 2});
    lat.set("shr", {1, 0.20, 2});
    lat.set("mul", {3, 0.90, 2});
    lat.set("mac", {4, 1.00, 3});
    lat.set("sel", {1, 0.15, 3});
    lat.set("not", {1, 0.05, 1});
    lat.set("neg", {1, 0.15, 1});
    lat.set("ld", {2, 1.00, 1});
    lat.set("st", {2, 1.00, 2});
    return lat;
}

RawDfg generate_random_block(const GenParams &params, std::uint64_t index) {
    Rng rng(mix(params.seed, index));
    RawDfg b;
    b.name = "rnd" + std::to_string(index);
    b.exec_freq = 1 + rng.below(params.max_freq);

    const int n = rng.range(params.min_nodes, params.max_nodes);
    const int num_ops = static_cast<int>(sizeof(kOpcodes) / sizeof(kOpcodes[0]));

    for (int i = 1; i <= n; ++i) {
        RawNode node;
        node.id = static_cast<NodeId>(i);
        node.is_memory = rng.chance(params.mem_ratio);
        if (node.is_memory)
            node.opcode = rng.chance(0.5) ? "ld" : "st";
        else
            node.opcode = kOpcodes[rng.below(static_cast<std::uint64_t>(num_ops))];
        b.nodes.push_back(std::move(node));
    }

    // Edges flow from smaller to larger ids; a window keeps them local.
    if (n >= 2) {
        const int window = 12;
        const long target = std::lround(params.edge_factor * n);
        std::set<std::pair<int, int>> edges;
        long attempts = 0;
        while (static_cast<long>(edges.size()) < target && attempts < target * 20 + 100) {
            ++attempts;
            int dst = rng.range(2, n);
            int src = rng.range(std::max(1, dst - window), dst - 1);
            edges.insert({src, dst});
        }
        for (auto [src, dst] : edges)
            b.edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst), 0});
    }

    std::vector<std::uint8_t> has_child(static_cast<std::size_t>(n) + 1, 0);
    for (const RawEdge &e : b.edges)
        has_child[e.src] = 1;
    for (RawNode &node : b.nodes) {
        if (node.is_memory)
            continue;
        if (!has_child[node.id])
            node.is_live_out = rng.chance(0.9);
        else
            node.is_live_out = rng.chance(params.live_out_ratio);
    }
    return b;
}

RawDfg generate_regular_block(std::uint64_t seed, int copies, int motif_nodes) {
    if (motif_nodes < 3)
        motif_nodes = 3;
    Rng rng(mix(seed, 0x5e9));
    RawDfg b;
    b.name = "reg" + std::to_string(copies) + "x" + std::to_string(motif_nodes);
    b.exec_freq = 1 + rng.below(1000);

    // Two multiplier feeds (4 distinct inputs, so one copy saturates the
    // default input budget) into a cheap chain; chain opcodes are drawn
    // once and shared so all copies are isomorphic.
    std::vector<std::string> chain_ops;
    const char *const pool[] = {"xor", "and", "shl", "or", "add"};
    for (int i = 0; i < motif_nodes - 2; ++i)
        chain_ops.push_back(pool[rng.below(sizeof(pool) / sizeof(pool[0]))]);

    NodeId next = 1;
    for (int c = 0; c < copies; ++c) {
        NodeId a = next++;
        NodeId bsrc = next++;
        b.nodes.push_back({a, "mul", false, false, 0});
        b.nodes.push_back({bsrc, "mul", false, false, 0});
        NodeId prev = 0;
        for (int i = 0; i < motif_nodes - 2; ++i) {
            NodeId m = next++;
            bool last = i == motif_nodes - 3;
            b.nodes.push_back({m, chain_ops[static_cast<std::size_t>(i)], false, last, 0});
            if (i == 0) {
                b.edges.push_back({a, m, 0});
                b.edges.push_back({bsrc, m, 0});
            } else {
                b.edges.push_back({prev, m, 0});
            }
            prev = m;
        }
    }
    return b;
}

RawDfg generate_chain_block(std::uint64_t seed, int nodes) {
    Rng rng(mix(seed, 0xc4a1));
    RawDfg b;
    b.name = "chain" + std::to_string(nodes);
    b.exec_freq = 1 + rng.below(1000);
    const char *const pool[] = {"add", "xor", "mul", "shl", "and", "not"};
    for (int i = 1; i <= nodes; ++i) {
        RawNode node;
        node.id = static_cast<NodeId>(i);
        node.opcode = pool[rng.below(sizeof(pool) / sizeof(pool[0]))];
        node.is_live_out = i == nodes;
        b.nodes.push_back(std::move(node));
        if (i > 1)
            b.edges.push_back({static_cast<NodeId>(i - 1), static_cast<NodeId>(i), 0});
    }
    return b;
}

RawDfg generate_tree_block(std::uint64_t seed, int nodes) {
    // Expression tree: every value has exactly one consumer, converging
    // to a single live-out root; leaves read external operands.
    Rng rng(mix(seed, 0x72ee));
    RawDfg b;
    b.name = "tree" + std::to_string(nodes);
    b.exec_freq = 1 + rng.below(1000);

    const char *const binary[] = {"add", "xor", "mul", "shl", "and", "or"};
    const char *const unary[] = {"not", "neg"};

    // Grow from the root: each new node fills a random open operand slot.
    struct TreeNode {
        std::string opcode;
        int parent = -1; // consumer
        int depth_order = 0;
    };
    std::vector<TreeNode> tree;
    std::vector<std::pair<int, int>> open_slots; // (node, slot #)
    auto add_node = [&](int parent) {
        TreeNode t;
        bool is_unary = rng.chance(0.15);
        t.opcode = is_unary ? unary[rng.below(2)] : binary[rng.below(6)];
        t.parent = parent;
        int idx = static_cast<int>(tree.size());
        tree.push_back(t);
        for (int s = 0; s < (is_unary ? 1 : 2); ++s)
            open_slots.push_back({idx, s});
        return idx;
    };
    add_node(-1);
    while (static_cast<int>(tree.size()) < nodes && !open_slots.empty()) {
        std::size_t pick = rng.below(open_slots.size());
        std::swap(open_slots[pick], open_slots.back());
        int consumer = open_slots.back().first;
        open_slots.pop_back();
        add_node(consumer);
    }

    // Ids in reverse creation order give every edge src < dst.
    const int n = static_cast<int>(tree.size());
    auto id_of = [&](int idx) { return static_cast<NodeId>(n - idx); };
    for (int i = n - 1; i >= 0; --i) {
        RawNode node;
        node.id = id_of(i);
        node.opcode = tree[static_cast<std::size_t>(i)].opcode;
        node.is_live_out = i == 0; // root
        b.nodes.push_back(std::move(node));
    }
    for (int i = 1; i < n; ++i)
        b.edges.push_back({id_of(i), id_of(tree[static_cast<std::size_t>(i)].parent), 0});
    return b;
}

std::vector<RawDfg> generate_corpus(const GenParams &params) {
    std::vector<RawDfg> blocks;
    blocks.reserve(static_cast<std::size_t>(params.count));
    for (int i = 0; i < params.count; ++i)
        blocks.push_back(generate_random_block(params, static_cast<std::uint64_t>(i)));
    return blocks;
}

} // namespace isegen
