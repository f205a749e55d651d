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

#include "isegen/oracle.hpp"

#include <algorithm>

namespace isegen {

namespace {

class Enumerator {
  public:
    Enumerator(const Dfg &dfg, const Constraints &constraints, const OracleBudget &budget,
               std::span<const NodeId> frozen)
        : g_(dfg), constraints_(constraints), budget_(budget) {
        const std::size_t n = g_.node_count();
        excluded_.assign(n, 0);
        for (NodeId id : frozen)
            excluded_[g_.index_of(id)] = 1;

        for (NodeId id : g_.topo_order()) {
            std::size_t u = g_.index_of(id);
            if (!g_.node(u).is_memory && !excluded_[u])
                eligible_.push_back(static_cast<std::uint32_t>(u));
        }
        if (static_cast<int>(eligible_.size()) > budget_.max_nodes)
            throw BudgetExceeded("block '" + g_.name() + "' has " +
                                 std::to_string(eligible_.size()) +
                                 " selectable nodes, over the exhaustive limit of " +
                                 std::to_string(budget_.max_nodes));

        suffix_sw_.assign(eligible_.size() + 1, 0.0);
        for (std::size_t i = eligible_.size(); i-- > 0;)
            suffix_sw_[i] = suffix_sw_[i + 1] + g_.node(eligible_[i]).sw_latency;

        in_cut_.assign(n, 0);
        forbidden_.assign(n, 0);
        lpup_.assign(n, 0.0);
    }

    OracleResult run() {
        best_.members.clear();
        best_.merit_value = 0.0; // the empty cut is always admissible
        descend(0, 0.0, 0.0);
        return best_;
    }

  private:
    void consider_leaf() {
        std::vector<NodeId> members;
        members.reserve(chosen_.size());
        for (std::uint32_t u : chosen_)
            members.push_back(g_.node(u).id);
        std::sort(members.begin(), members.end());
        Cut cut(g_, members);
        IoCounts io = io_counts(cut);
        if (io.inputs > constraints_.n_in || io.outputs > constraints_.n_out)
            return;
        if (!is_convex(cut))
            return;
        const double m = merit(cut);
        if (better(m, members))
            best_ = {std::move(members), m};
    }

    bool better(double m, const std::vector<NodeId> &members) const {
        if (m != best_.merit_value)
            return m > best_.merit_value;
        if (members.size() != best_.members.size())
            return members.size() < best_.members.size();
        return members < best_.members;
    }

    void descend(std::size_t i, double sw_sum, double cp) {
        if (++visited_ > budget_.max_enumerated)
            throw BudgetExceeded("exhaustive enumeration exceeded " +
                                 std::to_string(budget_.max_enumerated) + " visited states");
        if (i == eligible_.size()) {
            consider_leaf();
            return;
        }
        // Nothing below can beat the incumbent: software savings are
        // capped by the remaining nodes and the critical path only grows.
        if (sw_sum + suffix_sw_[i] - cp < best_.merit_value)
            return;

        const std::uint32_t u = eligible_[i];

        if (!forbidden_[u]) {
            double up = 0.0;
            for (std::uint32_t p : g_.parents(u))
                if (in_cut_[p])
                    up = std::max(up, lpup_[p]);
            lpup_[u] = up + g_.node(u).hw_latency;
            in_cut_[u] = 1;
            chosen_.push_back(u);
            descend(i + 1, sw_sum + g_.node(u).sw_latency, std::max(cp, lpup_[u]));
            chosen_.pop_back();
            in_cut_[u] = 0;
        }

        // Skip u. If a direct parent is a member, any later member below
        // u would wrap a path around it, so u's descendants are pinned
        // out. (Deeper member-ancestors were handled when the first
        // skipped node under them pinned this whole region.)
        bool parent_in_cut = false;
        for (std::uint32_t p : g_.parents(u))
            if (in_cut_[p]) {
                parent_in_cut = true;
                break;
            }
        std::vector<std::uint32_t> newly_forbidden;
        if (parent_in_cut) {
            g_.descendants(u).for_each([&](std::size_t w) {
                if (!forbidden_[w]) {
                    forbidden_[w] = 1;
                    newly_forbidden.push_back(static_cast<std::uint32_t>(w));
                }
            });
        }
        descend(i + 1, sw_sum, cp);
        for (std::uint32_t w : newly_forbidden)
            forbidden_[w] = 0;
    }

    const Dfg &g_;
    Constraints constraints_;
    OracleBudget budget_;
    std::vector<std::uint32_t> eligible_;
    std::vector<double> suffix_sw_;
    std::vector<std::uint8_t> in_cut_, forbidden_, excluded_;
    std::vector<double> lpup_;
    std::vector<std::uint32_t> chosen_;
    long long visited_ = 0;
    OracleResult best_;
};

} // namespace

OracleResult enumerate_optimal_cut(const Dfg &dfg, const Constraints &constraints,
                                   const OracleBudget &budget, std::span<const NodeId> frozen) {
    Enumerator e(dfg, constraints, budget, frozen);
    return e.run();
}

} // namespace isegen
