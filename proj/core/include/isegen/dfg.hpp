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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isegen/bitset.hpp"
#include "isegen/errors.hpp"

namespace isegen {

using NodeId = std::uint32_t;

/// Per-opcode costs. Software latency is in integer processor cycles;
/// hardware latency is a real delay normalized to a 32-bit
/// multiply-accumulate. `arity` is the operand count charged to a node
/// with no in-block producers (its operands all come from outside).
struct LatencyEntry {
    int sw_latency = 1;
    double hw_latency = 1.0;
    int arity = 2;
};

class LatencyTable {
  public:
    void set(const std::string &opcode, LatencyEntry entry);
    const LatencyEntry *find(std::string_view opcode) const;
    bool empty() const { return entries_.empty(); }

    /// Sorted by opcode; used for canonical printing.
    const std::map<std::string, LatencyEntry, std::less<>> &entries() const { return entries_; }

  private:
    std::map<std::string, LatencyEntry, std::less<>> entries_;
};

/// Unvalidated graph description, as read from a file or built by hand.
/// `line` fields are 0 when the description did not come from a file.
struct RawNode {
    NodeId id = 0;
    std::string opcode;
    bool is_memory = false;
    bool is_live_out = false;
    int line = 0;
};

struct RawEdge {
    NodeId src = 0;
    NodeId dst = 0;
    int line = 0;
};

struct RawDfg {
    std::string name;
    std::uint64_t exec_freq = 0;
    std::vector<RawNode> nodes;
    std::vector<RawEdge> edges;
    std::string source_file;
    int line = 0;
};

/// One instruction inside a basic block. Latency and arity fields are
/// resolved from the LatencyTable during validation.
struct OpNode {
    NodeId id = 0;
    std::string opcode;
    bool is_memory = false;
    bool is_live_out = false;
    int sw_latency = 1;
    double hw_latency = 1.0;
    int arity = 2;
};

/// Validated, immutable data-flow graph of one basic block.
///
/// Nodes are stored sorted by id; most internal APIs address nodes by
/// their dense index into that order. The structure is safe to share
/// read-only between concurrent searches.
class Dfg {
  public:
    const std::string &name() const { return name_; }
    std::uint64_t exec_freq() const { return exec_freq_; }

    std::size_t node_count() const { return nodes_.size(); }
    const OpNode &node(std::size_t idx) const { return nodes_[idx]; }
    const std::vector<OpNode> &nodes() const { return nodes_; }

    bool has_node(NodeId id) const;
    std::size_t index_of(NodeId id) const; // throws DfgError(UnknownNodeRef)

    const std::vector<std::uint32_t> &parents(std::size_t idx) const { return parents_[idx]; }
    const std::vector<std::uint32_t> &children(std::size_t idx) const { return children_[idx]; }

    /// Edges as (src, dst) id pairs, sorted.
    const std::vector<std::pair<NodeId, NodeId>> &edges() const { return edges_; }

    /// Node ids in topological order; equal ranks break ties by ascending id.
    const std::vector<NodeId> &topo_order() const { return topo_order_; }
    /// Position of each node (by index) in topo_order().
    const std::vector<std::uint32_t> &topo_position() const { return topo_pos_; }

    /// Strict ancestor/descendant sets over node indexes.
    const Bitset &ancestors(std::size_t idx) const { return anc_[idx]; }
    const Bitset &descendants(std::size_t idx) const { return desc_[idx]; }

    std::size_t memory_node_count() const { return memory_count_; }

    bool operator==(const Dfg &other) const;

    friend Dfg validate_dfg(const RawDfg &raw, const LatencyTable &lat);

  private:
    Dfg() = default;

    std::string name_;
    std::uint64_t exec_freq_ = 0;
    std::vector<OpNode> nodes_;
    std::vector<std::vector<std::uint32_t>> parents_;
    std::vector<std::vector<std::uint32_t>> children_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<NodeId> topo_order_;
    std::vector<std::uint32_t> topo_pos_;
    std::vector<Bitset> anc_;
    std::vector<Bitset> desc_;
    std::size_t memory_count_ = 0;
};

/// Checks acyclicity, edge endpoint existence, duplicate edges and
/// latency coverage; resolves per-node latencies. Throws DfgError.
Dfg validate_dfg(const RawDfg &raw, const LatencyTable &lat);

/// Deterministic topological order (ids).
std::vector<NodeId> topological_order(const Dfg &dfg);

/// Minimum edge-count distance from each node to the nearest barrier
/// above (d_up) and below (d_down). Barriers are memory operations
/// (distance 0 at themselves), the external-input frontier one step
/// above producer-less nodes, and the external-output frontier one step
/// below consumer-less or live-out nodes.
struct BarrierDistances {
    std::vector<int> d_up;
    std::vector<int> d_down;
};

BarrierDistances barrier_distances(const Dfg &dfg);

} // namespace isegen
