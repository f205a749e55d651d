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

#include "isegen/dfg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace isegen {

void LatencyTable::set(const std::string &opcode, LatencyEntry entry) {
    if (entry.sw_latency < 1)
        throw std::invalid_argument("sw latency must be >= 1 for op " + opcode);
    if (!(entry.hw_latency > 0.0))
        throw std::invalid_argument("hw latency must be > 0 for op " + opcode);
    if (entry.arity < 0)
        throw std::invalid_argument("arity must be >= 0 for op " + opcode);
    entries_[opcode] = entry;
}

const LatencyEntry *LatencyTable::find(std::string_view opcode) const {
    auto it = entries_.find(opcode);
    return it == entries_.end() ? nullptr : &it->second;
}

bool Dfg::has_node(NodeId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const OpNode &n, NodeId v) { return n.id < v; });
    return it != nodes_.end() && it->id == id;
}

std::size_t Dfg::index_of(NodeId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const OpNode &n, NodeId v) { return n.id < v; });
    if (it == nodes_.end() || it->id != id)
        throw DfgError(DfgErrorKind::UnknownNodeRef, "", 0,
                       "unknown node id " + std::to_string(id) + " in block '" + name_ + "'");
    return static_cast<std::size_t>(it - nodes_.begin());
}

bool Dfg::operator==(const Dfg &other) const {
    if (name_ != other.name_ || exec_freq_ != other.exec_freq_ || edges_ != other.edges_)
        return false;
    if (nodes_.size() != other.nodes_.size())
        return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const OpNode &a = nodes_[i];
        const OpNode &b = other.nodes_[i];
        if (a.id != b.id || a.opcode != b.opcode || a.is_memory != b.is_memory ||
            a.is_live_out != b.is_live_out)
            return false;
    }
    return true;
}

namespace {

// Reports one concrete edge on a cycle, for the diagnostic.
std::pair<NodeId, NodeId> find_cycle_edge(const Dfg &, const std::vector<OpNode> &nodes,
                                          const std::vector<std::vector<std::uint32_t>> &children) {
    const std::size_t n = nodes.size();
    std::vector<int> color(n, 0); // 0 white, 1 gray, 2 black
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack; // (node, next child slot)
    for (std::size_t start = 0; start < n; ++start) {
        if (color[start] != 0)
            continue;
        stack.push_back({static_cast<std::uint32_t>(start), 0});
        color[start] = 1;
        while (!stack.empty()) {
            auto &[u, slot] = stack.back();
            if (slot < children[u].size()) {
                std::uint32_t v = children[u][slot++];
                if (color[v] == 1)
                    return {nodes[u].id, nodes[v].id};
                if (color[v] == 0) {
                    color[v] = 1;
                    stack.push_back({v, 0});
                }
            } else {
                color[u] = 2;
                stack.pop_back();
            }
        }
    }
    return {0, 0}; // unreachable when a cycle exists
}

} // namespace

Dfg validate_dfg(const RawDfg &raw, const LatencyTable &lat) {
    Dfg g;
    g.name_ = raw.name;
    g.exec_freq_ = raw.exec_freq;

    const std::string &file = raw.source_file;

    // Nodes, sorted by id; duplicate ids rejected.
    std::vector<RawNode> sorted = raw.nodes;
    std::sort(sorted.begin(), sorted.end(),
              [](const RawNode &a, const RawNode &b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i].id == sorted[i + 1].id)
            throw DfgError(DfgErrorKind::DuplicateNode, file, sorted[i + 1].line,
                           "duplicate node id " + std::to_string(sorted[i].id) + " in block '" +
                               raw.name + "'");
    }

    g.nodes_.reserve(sorted.size());
    for (const RawNode &rn : sorted) {
        const LatencyEntry *e = lat.find(rn.opcode);
        if (!e)
            throw DfgError(DfgErrorKind::MissingLatency, file, rn.line,
                           "no latency entry for opcode '" + rn.opcode + "'");
        OpNode n;
        n.id = rn.id;
        n.opcode = rn.opcode;
        n.is_memory = rn.is_memory;
        n.is_live_out = rn.is_live_out;
        n.sw_latency = e->sw_latency;
        n.hw_latency = e->hw_latency;
        n.arity = e->arity;
        g.nodes_.push_back(std::move(n));
        if (rn.is_memory)
            ++g.memory_count_;
    }

    const std::size_t n = g.nodes_.size();
    g.parents_.assign(n, {});
    g.children_.assign(n, {});

    // Edges: endpoints must exist, one edge per (src, dst) pair.
    std::vector<RawEdge> edges = raw.edges;
    std::sort(edges.begin(), edges.end(), [](const RawEdge &a, const RawEdge &b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i].src == edges[i + 1].src && edges[i].dst == edges[i + 1].dst)
            throw DfgError(DfgErrorKind::DuplicateEdge, file, edges[i + 1].line,
                           "duplicate edge " + std::to_string(edges[i].src) + " -> " +
                               std::to_string(edges[i].dst));
    }
    g.edges_.reserve(edges.size());
    for (const RawEdge &e : edges) {
        std::size_t si, di;
        try {
            si = g.index_of(e.src);
            di = g.index_of(e.dst);
        } catch (const DfgError &err) {
            throw DfgError(DfgErrorKind::UnknownNodeRef, file, e.line,
                           "edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                               " references a missing node");
        }
        if (si == di)
            throw DfgError(DfgErrorKind::CycleDetected, file, e.line,
                           "self edge " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                               " forms a cycle");
        g.edges_.push_back({e.src, e.dst});
        g.children_[si].push_back(static_cast<std::uint32_t>(di));
        g.parents_[di].push_back(static_cast<std::uint32_t>(si));
    }
    for (auto &v : g.parents_)
        std::sort(v.begin(), v.end());
    for (auto &v : g.children_)
        std::sort(v.begin(), v.end());

    // Kahn's algorithm with an id-ordered ready heap: deterministic order,
    // and a leftover node means a cycle.
    std::vector<std::uint32_t> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        indeg[i] = static_cast<std::uint32_t>(g.parents_[i].size());
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0)
            ready.push(static_cast<std::uint32_t>(i));
    g.topo_order_.reserve(n);
    g.topo_pos_.assign(n, 0);
    while (!ready.empty()) {
        std::uint32_t u = ready.top();
        ready.pop();
        g.topo_pos_[u] = static_cast<std::uint32_t>(g.topo_order_.size());
        g.topo_order_.push_back(g.nodes_[u].id);
        for (std::uint32_t c : g.children_[u])
            if (--indeg[c] == 0)
                ready.push(c);
    }
    if (g.topo_order_.size() != n) {
        auto [a, b] = find_cycle_edge(g, g.nodes_, g.children_);
        int line = 0;
        for (const RawEdge &e : raw.edges)
            if (e.src == a && e.dst == b)
                line = e.line;
        throw DfgError(DfgErrorKind::CycleDetected, file, line,
                       "cycle detected through edge " + std::to_string(a) + " -> " +
                           std::to_string(b));
    }

    // Strict reachability sets, by one sweep in each direction.
    g.anc_.assign(n, Bitset(n));
    g.desc_.assign(n, Bitset(n));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t u = g.index_of(g.topo_order_[k]);
        for (std::uint32_t p : g.parents_[u]) {
            g.anc_[u].set(p);
            g.anc_[u] |= g.anc_[p];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        std::size_t u = g.index_of(g.topo_order_[k]);
        for (std::uint32_t c : g.children_[u]) {
            g.desc_[u].set(c);
            g.desc_[u] |= g.desc_[c];
        }
    }

    return g;
}

std::vector<NodeId> topological_order(const Dfg &dfg) {
    return dfg.topo_order();
}

BarrierDistances barrier_distances(const Dfg &dfg) {
    const std::size_t n = dfg.node_count();
    BarrierDistances d;
    d.d_up.assign(n, 0);
    d.d_down.assign(n, 0);
    constexpr int kInf = 1 << 28;

    // d_up in topo order: memory ops are barriers at themselves; the
    // external-input frontier sits one step above producer-less nodes.
    for (NodeId id : dfg.topo_order()) {
        std::size_t u = dfg.index_of(id);
        if (dfg.node(u).is_memory) {
            d.d_up[u] = 0;
            continue;
        }
        int best = dfg.parents(u).empty() ? 1 : kInf;
        for (std::uint32_t p : dfg.parents(u))
            best = std::min(best, 1 + d.d_up[p]);
        d.d_up[u] = best;
    }

    // d_down in reverse topo order; live-out values reach the external
    // output frontier directly.
    const auto &order = dfg.topo_order();
    for (std::size_t k = order.size(); k-- > 0;) {
        std::size_t u = dfg.index_of(order[k]);
        if (dfg.node(u).is_memory) {
            d.d_down[u] = 0;
            continue;
        }
        int best = (dfg.children(u).empty() || dfg.node(u).is_live_out) ? 1 : kInf;
        for (std::uint32_t c : dfg.children(u))
            best = std::min(best, 1 + d.d_down[c]);
        d.d_down[u] = best;
    }

    return d;
}

} // namespace isegen
