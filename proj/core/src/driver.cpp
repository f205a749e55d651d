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

#include "isegen/driver.hpp"

#include <algorithm>

#include "isegen/dfg_io.hpp"

namespace isegen {

Application load_application(const std::string &app_path, const std::string &lat_path) {
    Application app;
    app.lat = parse_latency_file(lat_path);
    for (const RawDfg &raw : parse_app_file(app_path))
        app.blocks.push_back(validate_dfg(raw, app.lat));
    return app;
}

double block_potential(const Dfg &block, std::span<const NodeId> frozen) {
    std::vector<NodeId> selectable;
    for (const OpNode &n : block.nodes()) {
        if (n.is_memory)
            continue;
        if (std::find(frozen.begin(), frozen.end(), n.id) != frozen.end())
            continue;
        selectable.push_back(n.id);
    }
    return static_cast<double>(block.exec_freq()) * merit(Cut(block, selectable));
}

namespace {

// Backtracking matcher for one more unclaimed occurrence of the
// template pattern. Template slots are processed in ascending id order;
// block candidates likewise, so the first match found is the
// lexicographically smallest mapping.
class InstanceMatcher {
  public:
    InstanceMatcher(const Dfg &block, const Cut &tmpl)
        : g_(block), tmpl_ids_(tmpl.members()), tmpl_io_(io_counts(tmpl)) {
        slots_.reserve(tmpl_ids_.size());
        for (NodeId id : tmpl_ids_)
            slots_.push_back(g_.index_of(id));
        // Induced adjacency between slots.
        const std::size_t k = slots_.size();
        edge_.assign(k * k, 0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (a != b)
                    edge_[a * k + b] = has_edge(slots_[a], slots_[b]) ? 1 : 0;
    }

    /// Finds the smallest unclaimed occurrence, or empty.
    std::vector<NodeId> next(const std::vector<std::uint8_t> &claimed) {
        claimed_ = &claimed;
        mapping_.assign(slots_.size(), 0);
        used_.assign(g_.node_count(), 0);
        std::vector<NodeId> out;
        if (extend(0)) {
            out.reserve(mapping_.size());
            for (std::size_t u : mapping_)
                out.push_back(g_.node(u).id);
            std::sort(out.begin(), out.end());
        }
        return out;
    }

  private:
    bool has_edge(std::size_t src, std::size_t dst) const {
        const auto &ch = g_.children(src);
        return std::binary_search(ch.begin(), ch.end(), static_cast<std::uint32_t>(dst));
    }

    bool compatible(std::size_t slot, std::size_t u) const {
        const OpNode &want = g_.node(slots_[slot]);
        const OpNode &have = g_.node(u);
        if (have.is_memory || have.opcode != want.opcode)
            return false;
        if ((*claimed_)[u] || used_[u])
            return false;
        for (std::size_t j = 0; j < slot; ++j) {
            if (edge_[j * slots_.size() + slot] != (has_edge(mapping_[j], u) ? 1 : 0))
                return false;
            if (edge_[slot * slots_.size() + j] != (has_edge(u, mapping_[j]) ? 1 : 0))
                return false;
        }
        return true;
    }

    bool extend(std::size_t slot) {
        if (slot == slots_.size())
            return accept();
        for (std::size_t u = 0; u < g_.node_count(); ++u) {
            if (!compatible(slot, u))
                continue;
            mapping_[slot] = u;
            used_[u] = 1;
            if (extend(slot + 1))
                return true;
            used_[u] = 0;
        }
        return false;
    }

    bool accept() const {
        std::vector<NodeId> ids;
        ids.reserve(mapping_.size());
        for (std::size_t u : mapping_)
            ids.push_back(g_.node(u).id);
        std::sort(ids.begin(), ids.end());
        Cut cut(g_, ids);
        if (!is_convex(cut))
            return false;
        IoCounts io = io_counts(cut);
        return io.inputs <= tmpl_io_.inputs && io.outputs <= tmpl_io_.outputs;
    }

    const Dfg &g_;
    std::vector<NodeId> tmpl_ids_;
    IoCounts tmpl_io_;
    std::vector<std::size_t> slots_;
    std::vector<std::uint8_t> edge_;
    std::vector<std::size_t> mapping_;
    std::vector<std::uint8_t> used_;
    const std::vector<std::uint8_t> *claimed_ = nullptr;
};

} // namespace

std::vector<std::vector<NodeId>> count_instances(const Dfg &block, const Cut &tmpl,
                                                 std::span<const NodeId> claimed) {
    std::vector<std::vector<NodeId>> instances;
    if (tmpl.empty_set())
        return instances;

    std::vector<std::uint8_t> claimed_mask(block.node_count(), 0);
    for (NodeId id : claimed)
        claimed_mask[block.index_of(id)] = 1;

    instances.push_back(tmpl.members());
    for (NodeId id : tmpl.members())
        claimed_mask[block.index_of(id)] = 1;

    InstanceMatcher matcher(block, tmpl);
    for (;;) {
        std::vector<NodeId> found = matcher.next(claimed_mask);
        if (found.empty())
            break;
        for (NodeId id : found)
            claimed_mask[block.index_of(id)] = 1;
        instances.push_back(std::move(found));
    }
    return instances;
}

double overall_speedup(double lambda_overall,
                       std::span<const std::pair<double, double>> ise_terms) {
    if (ise_terms.empty())
        return 1.0;
    double saved = 0.0;
    for (auto [n_c, m] : ise_terms)
        saved += n_c * m;
    if (lambda_overall == 0.0 && saved == 0.0)
        return 1.0;
    if (saved >= lambda_overall)
        throw SpeedupDivergence("claimed savings " + std::to_string(saved) +
                                " reach the total latency " + std::to_string(lambda_overall));
    return lambda_overall / (lambda_overall - saved);
}

IseReport select_ises(const Application &app, const SearchConfig &config, Engine engine,
                      const OracleBudget &budget) {
    IseReport report;
    report.constraints = config.constraints;

    const std::size_t nblocks = app.blocks.size();
    std::vector<std::vector<NodeId>> claimed(nblocks);
    std::vector<double> potential(nblocks);
    std::vector<std::uint8_t> active(nblocks, 1);
    for (std::size_t b = 0; b < nblocks; ++b)
        potential[b] = block_potential(app.blocks[b], claimed[b]);

    report.lambda_overall = 0.0;
    for (const Dfg &blk : app.blocks) {
        double sw = 0.0;
        for (const OpNode &n : blk.nodes())
            sw += n.sw_latency;
        report.lambda_overall += static_cast<double>(blk.exec_freq()) * sw;
    }

    int committed = 0;
    int round = 0;
    while (committed < config.constraints.n_ise) {
        std::size_t pick = nblocks;
        for (std::size_t b = 0; b < nblocks; ++b) {
            if (!active[b])
                continue;
            if (pick == nblocks || potential[b] > potential[pick])
                pick = b;
        }
        if (pick == nblocks)
            break;
        ++round;

        const Dfg &blk = app.blocks[pick];
        Cut found = Cut::empty(blk);
        if (engine == Engine::Isegen) {
            found = bipartition(blk, config, Cut::empty(blk), claimed[pick]);
        } else {
            OracleResult r = enumerate_optimal_cut(blk, config.constraints, budget, claimed[pick]);
            if (r.merit_value > 0.0)
                found = Cut(blk, r.members);
        }

        if (found.empty_set() || merit(found) <= 0.0) {
            active[pick] = 0;
            report.trace.push_back({round, blk.name(), potential[pick], false, -1});
            continue;
        }

        IseEntry entry;
        entry.index = committed;
        entry.block = blk.name();
        entry.members = found.members();
        entry.io = io_counts(found);
        entry.merit_value = merit(found);
        entry.instances = count_instances(blk, found, claimed[pick]);
        entry.n_c = blk.exec_freq() * entry.instances.size();

        for (const auto &inst : entry.instances)
            claimed[pick].insert(claimed[pick].end(), inst.begin(), inst.end());
        std::sort(claimed[pick].begin(), claimed[pick].end());

        report.trace.push_back({round, blk.name(), potential[pick], true, entry.index});
        report.ises.push_back(std::move(entry));
        ++committed;

        potential[pick] = block_potential(blk, claimed[pick]);
    }

    std::vector<std::pair<double, double>> terms;
    terms.reserve(report.ises.size());
    for (const IseEntry &e : report.ises)
        terms.push_back({static_cast<double>(e.n_c), e.merit_value});
    report.speedup = overall_speedup(report.lambda_overall, terms);
    return report;
}

IseReport iterative_exact(const Application &app, const SearchConfig &config,
                          const OracleBudget &budget) {
    return select_ises(app, config, Engine::ExactIterative, budget);
}

} // namespace isegen
