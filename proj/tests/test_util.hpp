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

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "isegen/cut.hpp"
#include "isegen/dfg.hpp"
#include "isegen/generator.hpp"

namespace test_util {

using namespace isegen;

/// op: generic binary; op1: unary; plus a few spreads and memory ops.
inline LatencyTable test_lat() {
    LatencyTable lat;
    lat.set("op", {1, 0.3, 2});
    lat.set("op1", {1, 0.3, 1});
    lat.set("cheap", {1, 0.1, 2});
    lat.set("mul", {3, 0.9, 2});
    lat.set("ld", {2, 1.0, 1});
    lat.set("st", {2, 1.0, 2});
    return lat;
}

class BlockBuilder {
  public:
    explicit BlockBuilder(std::string name = "b", std::uint64_t freq = 1) {
        raw_.name = std::move(name);
        raw_.exec_freq = freq;
    }

    BlockBuilder &node(NodeId id, std::string opcode = "op", bool mem = false, bool live = false) {
        raw_.nodes.push_back({id, std::move(opcode), mem, live, 0});
        return *this;
    }
    BlockBuilder &edge(NodeId a, NodeId b) {
        raw_.edges.push_back({a, b, 0});
        return *this;
    }
    const RawDfg &raw() const { return raw_; }
    Dfg build() const { return validate_dfg(raw_, test_lat()); }
    Dfg build(const LatencyTable &lat) const { return validate_dfg(raw_, lat); }

  private:
    RawDfg raw_;
};

/// chain 1 -> 2 -> ... -> n; the head is unary so a full chain has one input.
inline Dfg chain3_liveout() {
    return BlockBuilder("chain", 1)
        .node(1, "op1")
        .node(2, "op")
        .node(3, "op", false, true)
        .edge(1, 2)
        .edge(2, 3)
        .build();
}

/// 1 -> {2,3} -> 4, node 4 live-out.
inline Dfg diamond(const std::string &src_op = "op") {
    return BlockBuilder("diamond", 1)
        .node(1, src_op)
        .node(2, "op")
        .node(3, "op")
        .node(4, "op", false, true)
        .edge(1, 2)
        .edge(1, 3)
        .edge(2, 4)
        .edge(3, 4)
        .build();
}

/// All directed paths of the induced subgraph, as id sequences.
inline void all_paths_rec(const Dfg &g, const std::vector<std::uint8_t> &in, std::size_t u,
                          std::vector<NodeId> &cur, std::vector<std::vector<NodeId>> &out) {
    cur.push_back(g.node(u).id);
    out.push_back(cur);
    for (std::uint32_t c : g.children(u))
        if (in[c])
            all_paths_rec(g, in, c, cur, out);
    cur.pop_back();
}

inline std::vector<std::vector<NodeId>> all_paths(const Cut &cut) {
    const Dfg &g = cut.dfg();
    std::vector<std::uint8_t> in(g.node_count(), 0);
    for (NodeId id : cut.members())
        in[g.index_of(id)] = 1;
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> cur;
    for (NodeId id : cut.members())
        all_paths_rec(g, in, g.index_of(id), cur, out);
    return out;
}

/// Critical path by brute-force path enumeration.
inline double cp_by_paths(const Cut &cut) {
    double best = 0.0;
    for (const auto &path : all_paths(cut)) {
        double s = 0.0;
        for (NodeId id : path)
            s += cut.dfg().node(cut.dfg().index_of(id)).hw_latency;
        best = std::max(best, s);
    }
    return best;
}

/// Convexity by enumerating every member-to-member path in the full
/// graph and checking its interior.
inline bool violating_path_rec(const Dfg &g, const std::vector<std::uint8_t> &in, std::size_t u,
                               bool seen_outside) {
    if (in[u] && seen_outside)
        return true;
    for (std::uint32_t c : g.children(u))
        if (violating_path_rec(g, in, c, seen_outside || !in[u]))
            return true;
    return false;
}

inline bool convex_by_paths(const Cut &cut) {
    const Dfg &g = cut.dfg();
    std::vector<std::uint8_t> in(g.node_count(), 0);
    for (NodeId id : cut.members())
        in[g.index_of(id)] = 1;
    for (NodeId id : cut.members()) {
        std::size_t u = g.index_of(id);
        for (std::uint32_t c : g.children(u))
            if (violating_path_rec(g, in, c, false))
                return false;
    }
    return true;
}

/// Best cut by unpruned sweep over every subset of non-memory nodes.
struct SweepBest {
    std::vector<NodeId> members;
    double merit_value = 0.0;
};

inline SweepBest naive_best_cut(const Dfg &g, const Constraints &k) {
    std::vector<NodeId> eligible;
    for (const OpNode &n : g.nodes())
        if (!n.is_memory)
            eligible.push_back(n.id);
    SweepBest best; // empty cut, merit 0
    const std::size_t n = eligible.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<NodeId> members;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i))
                members.push_back(eligible[i]);
        Cut cut(g, members);
        IoCounts io = io_counts(cut);
        if (io.inputs > k.n_in || io.outputs > k.n_out || !is_convex(cut))
            continue;
        double m = merit(cut);
        if (m > best.merit_value ||
            (m == best.merit_value && (members.size() < best.members.size() ||
                                       (members.size() == best.members.size() &&
                                        members < best.members))))
            best = {std::move(members), m};
    }
    return best;
}

/// Deterministic random validated block for fuzzing.
inline Dfg random_block(std::uint64_t seed, int min_nodes, int max_nodes, double mem_ratio = 0.15) {
    GenParams p;
    p.seed = seed;
    p.min_nodes = min_nodes;
    p.max_nodes = max_nodes;
    p.mem_ratio = mem_ratio;
    return validate_dfg(generate_random_block(p, 0), default_latency_table());
}

} // namespace test_util
