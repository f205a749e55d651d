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

#include "isegen/cut.hpp"

#include <algorithm>
#include <numeric>

namespace isegen {

Cut::Cut(const Dfg &dfg, std::vector<NodeId> members) : dfg_(&dfg), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    if (dup != members_.end())
        throw DfgError(DfgErrorKind::BadStructure, "", 0,
                       "duplicate member id " + std::to_string(*dup) + " in cut");
    for (NodeId id : members_) {
        std::size_t idx = dfg.index_of(id); // throws on unknown id
        if (dfg.node(idx).is_memory)
            throw DfgError(DfgErrorKind::BadStructure, "", 0,
                           "memory operation " + std::to_string(id) + " cannot join a cut");
    }
}

bool Cut::contains(NodeId id) const {
    return std::binary_search(members_.begin(), members_.end(), id);
}

namespace {

std::vector<std::uint8_t> member_mask(const Cut &cut) {
    std::vector<std::uint8_t> in(cut.dfg().node_count(), 0);
    for (NodeId id : cut.members())
        in[cut.dfg().index_of(id)] = 1;
    return in;
}

} // namespace

IoCounts io_counts(const Cut &cut) {
    const Dfg &g = cut.dfg();
    auto in = member_mask(cut);
    IoCounts io;

    std::vector<std::uint8_t> counted_producer(g.node_count(), 0);
    for (NodeId id : cut.members()) {
        std::size_t u = g.index_of(id);
        if (g.parents(u).empty()) {
            io.inputs += g.node(u).arity;
        } else {
            for (std::uint32_t p : g.parents(u)) {
                if (!in[p] && !counted_producer[p]) {
                    counted_producer[p] = 1;
                    ++io.inputs;
                }
            }
        }
        bool external = g.node(u).is_live_out;
        for (std::uint32_t c : g.children(u))
            if (!in[c])
                external = true;
        if (external)
            ++io.outputs;
    }
    return io;
}

bool is_convex(const Cut &cut) {
    const Dfg &g = cut.dfg();
    const std::size_t n = g.node_count();
    if (cut.size() <= 1)
        return true;
    auto in = member_mask(cut);

    // reach_from[u]: some member reaches u; reach_to[u]: u reaches some member.
    std::vector<std::uint8_t> reach_from(n, 0), reach_to(n, 0);
    const auto &order = g.topo_order();
    for (NodeId id : order) {
        std::size_t u = g.index_of(id);
        for (std::uint32_t p : g.parents(u))
            if (in[p] || reach_from[p])
                reach_from[u] = 1;
    }
    for (std::size_t k = order.size(); k-- > 0;) {
        std::size_t u = g.index_of(order[k]);
        for (std::uint32_t c : g.children(u))
            if (in[c] || reach_to[c])
                reach_to[u] = 1;
    }
    for (std::size_t u = 0; u < n; ++u)
        if (!in[u] && reach_from[u] && reach_to[u])
            return false;
    return true;
}

double critical_path_hw_latency(const Cut &cut) {
    const Dfg &g = cut.dfg();
    if (cut.empty_set())
        return 0.0;
    auto in = member_mask(cut);
    std::vector<double> lp(g.node_count(), 0.0);
    double best = 0.0;
    for (NodeId id : g.topo_order()) {
        std::size_t u = g.index_of(id);
        if (!in[u])
            continue;
        double up = 0.0;
        for (std::uint32_t p : g.parents(u))
            if (in[p])
                up = std::max(up, lp[p]);
        lp[u] = up + g.node(u).hw_latency;
        best = std::max(best, lp[u]);
    }
    return best;
}

double merit(const Cut &cut) {
    const Dfg &g = cut.dfg();
    double sw = 0.0;
    for (NodeId id : cut.members())
        sw += g.node(g.index_of(id)).sw_latency;
    return sw - critical_path_hw_latency(cut);
}

std::vector<std::vector<NodeId>> connected_components(const Cut &cut) {
    const Dfg &g = cut.dfg();
    auto in = member_mask(cut);

    std::vector<std::uint32_t> dsu(g.node_count());
    std::iota(dsu.begin(), dsu.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (dsu[x] != x) {
            dsu[x] = dsu[dsu[x]];
            x = dsu[x];
        }
        return x;
    };

    for (NodeId id : cut.members()) {
        std::uint32_t u = static_cast<std::uint32_t>(g.index_of(id));
        for (std::uint32_t c : g.children(u))
            if (in[c])
                dsu[find(u)] = find(c);
    }

    std::vector<std::vector<NodeId>> by_root(g.node_count());
    for (NodeId id : cut.members())
        by_root[find(static_cast<std::uint32_t>(g.index_of(id)))].push_back(id);

    std::vector<std::vector<NodeId>> comps;
    for (auto &group : by_root) {
        if (group.empty())
            continue;
        std::sort(group.begin(), group.end());
        comps.push_back(std::move(group));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto &a, const auto &b) { return a.front() < b.front(); });
    return comps;
}

} // namespace isegen
