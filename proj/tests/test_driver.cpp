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

#include <doctest.h>

#include <algorithm>

#include "isegen/driver.hpp"
#include "isegen/generator.hpp"
#include "test_util.hpp"

using namespace isegen;
using test_util::BlockBuilder;

namespace {

Application make_app(std::vector<Dfg> blocks) {
    Application app;
    app.blocks = std::move(blocks);
    app.lat = test_util::test_lat();
    return app;
}

// Brute-force occurrence finder: tries every |T|-subset of block nodes
// and every slot assignment; checks opcode labels, both edge directions,
// convexity and the template's I/O envelope.
bool subset_matches(const Dfg &g, const std::vector<std::size_t> &tmpl,
                    std::vector<std::size_t> subset) {
    std::sort(subset.begin(), subset.end());
    std::vector<std::size_t> perm = subset;
    auto has_edge = [&](std::size_t a, std::size_t b) {
        const auto &ch = g.children(a);
        return std::binary_search(ch.begin(), ch.end(), static_cast<std::uint32_t>(b));
    };
    do {
        bool ok = true;
        for (std::size_t i = 0; ok && i < tmpl.size(); ++i) {
            if (g.node(tmpl[i]).opcode != g.node(perm[i]).opcode || g.node(perm[i]).is_memory)
                ok = false;
            for (std::size_t j = 0; ok && j < tmpl.size(); ++j) {
                if (i == j)
                    continue;
                if (has_edge(tmpl[i], tmpl[j]) != has_edge(perm[i], perm[j]))
                    ok = false;
            }
        }
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<std::vector<NodeId>> brute_force_occurrences(const Dfg &g, const Cut &tmpl) {
    std::vector<std::size_t> tmpl_idx;
    for (NodeId id : tmpl.members())
        tmpl_idx.push_back(g.index_of(id));
    IoCounts tio = io_counts(tmpl);

    std::vector<std::vector<NodeId>> found;
    const std::size_t n = g.node_count();
    const std::size_t k = tmpl_idx.size();
    if (k == 0 || k > n)
        return found;
    std::vector<std::uint8_t> select(n, 0);
    std::fill(select.begin(), select.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
        std::vector<std::size_t> subset;
        bool mem = false;
        for (std::size_t u = 0; u < n; ++u) {
            if (!select[u])
                continue;
            subset.push_back(u);
            mem |= g.node(u).is_memory;
        }
        if (mem)
            continue;
        std::vector<NodeId> ids;
        for (std::size_t u : subset)
            ids.push_back(g.node(u).id);
        Cut cut(g, ids);
        IoCounts io = io_counts(cut);
        if (io.inputs <= tio.inputs && io.outputs <= tio.outputs && is_convex(cut) &&
            subset_matches(g, tmpl_idx, subset))
            found.push_back(ids);
    } while (std::prev_permutation(select.begin(), select.end()));
    return found;
}

} // namespace

TEST_CASE("block potential weighs full hardware mapping by frequency") {
    SUBCASE("zero frequency yields zero potential") {
        Dfg g = BlockBuilder("b", 0).node(1).build();
        CHECK(block_potential(g) == 0.0);
    }
    SUBCASE("three-node chain at frequency 100") {
        RawDfg raw = test_util::BlockBuilder("b", 100)
                         .node(1, "op1")
                         .node(2)
                         .node(3, "op", false, true)
                         .edge(1, 2)
                         .edge(2, 3)
                         .raw();
        Dfg g = validate_dfg(raw, test_util::test_lat());
        CHECK(block_potential(g) == doctest::Approx(210.0));
    }
    SUBCASE("memory-only blocks have nothing to map") {
        Dfg g = BlockBuilder("b", 50).node(1, "ld", true).node(2, "st", true).edge(1, 2).build();
        CHECK(block_potential(g) == 0.0);
    }
    SUBCASE("frozen nodes drop out of the hypothetical cut") {
        Dfg g = test_util::chain3_liveout();
        std::vector<NodeId> frozen{1, 2, 3};
        CHECK(block_potential(g, frozen) == 0.0);
    }
}

TEST_CASE("count_instances on the template itself") {
    Dfg g = test_util::chain3_liveout();
    Cut tmpl(g, {1, 2, 3});
    auto instances = count_instances(g, tmpl);
    REQUIRE(instances.size() == 1);
    CHECK(instances[0] == std::vector<NodeId>{1, 2, 3});
}

TEST_CASE("count_instances finds all eight disjoint motif copies") {
    RawDfg raw = generate_regular_block(5, 8, 4);
    Dfg g = validate_dfg(raw, default_latency_table());
    REQUIRE(g.node_count() == 32);
    Cut tmpl(g, {1, 2, 3, 4});
    auto instances = count_instances(g, tmpl);
    CHECK(instances.size() == 8);

    auto brute = brute_force_occurrences(g, tmpl);
    CHECK(brute.size() == 8); // copies are node-disjoint, so all occurrences survive
    for (const auto &inst : instances)
        CHECK(std::find(brute.begin(), brute.end(), inst) != brute.end());
}

TEST_CASE("an opcode mismatch breaks the match") {
    // Copy A: 1->3, 2->3, 3->4. Copy B mirrors it but swaps an opcode.
    Dfg g = BlockBuilder()
                .node(1, "mul").node(2, "mul").node(3, "op").node(4, "cheap", false, true)
                .node(5, "mul").node(6, "mul").node(7, "op").node(8, "op", false, true)
                .edge(1, 3).edge(2, 3).edge(3, 4)
                .edge(5, 7).edge(6, 7).edge(7, 8)
                .build();
    Cut tmpl(g, {1, 2, 3, 4});
    auto instances = count_instances(g, tmpl);
    CHECK(instances.size() == 1);
    auto brute = brute_force_occurrences(g, tmpl);
    CHECK(brute.size() == 1);
}

TEST_CASE("overall speedup formula") {
    SUBCASE("no ISEs means exactly 1.0") {
        CHECK(overall_speedup(1000.0, {}) == 1.0);
    }
    SUBCASE("pinned substitution 1000 over 790") {
        std::vector<std::pair<double, double>> terms{{100.0, 2.1}};
        CHECK(overall_speedup(1000.0, terms) == doctest::Approx(1000.0 / 790.0).epsilon(1e-12));
    }
    SUBCASE("zero-merit cuts contribute nothing") {
        std::vector<std::pair<double, double>> terms{{100.0, 0.0}};
        CHECK(overall_speedup(1000.0, terms) == 1.0);
    }
    SUBCASE("claimed savings beyond the total latency are rejected") {
        std::vector<std::pair<double, double>> terms{{100.0, 20.0}};
        CHECK_THROWS_AS(overall_speedup(1000.0, terms), SpeedupDivergence);
    }
}

TEST_CASE("select_ises commits one chain then retires the block") {
    RawDfg raw = test_util::BlockBuilder("only", 10)
                     .node(1, "op1")
                     .node(2)
                     .node(3, "op", false, true)
                     .edge(1, 2)
                     .edge(2, 3)
                     .raw();
    Application app = make_app({validate_dfg(raw, test_util::test_lat())});
    SearchConfig cfg;
    IseReport report = select_ises(app, cfg);
    REQUIRE(report.ises.size() == 1);
    CHECK(report.ises[0].members == std::vector<NodeId>{1, 2, 3});
    CHECK(report.ises[0].n_c == 10);
    REQUIRE(report.trace.size() == 2);
    CHECK(report.trace[0].committed);
    CHECK_FALSE(report.trace[1].committed);
    CHECK(report.speedup > 1.0);
}

TEST_CASE("the hotter of two identical blocks is mined first") {
    RawDfg raw_cold = test_util::BlockBuilder("cold", 10)
                          .node(1, "op1").node(2).node(3, "op", false, true)
                          .edge(1, 2).edge(2, 3).raw();
    RawDfg raw_hot = raw_cold;
    raw_hot.name = "hot";
    raw_hot.exec_freq = 20;
    LatencyTable lat = test_util::test_lat();
    Application app = make_app({validate_dfg(raw_cold, lat), validate_dfg(raw_hot, lat)});
    SearchConfig cfg;
    IseReport report = select_ises(app, cfg);
    REQUIRE_FALSE(report.ises.empty());
    CHECK(report.ises[0].block == "hot");
}

TEST_CASE("memory-only applications yield no ISEs and speedup 1.0") {
    Dfg g = BlockBuilder("m", 5).node(1, "ld", true).node(2, "st", true).edge(1, 2).build();
    Application app = make_app({g});
    SearchConfig cfg;
    IseReport report = select_ises(app, cfg);
    CHECK(report.ises.empty());
    CHECK(report.speedup == 1.0);
}

TEST_CASE("committed members and instances stay pairwise disjoint") {
    for (std::uint64_t seed = 2400; seed < 2440; ++seed) {
        GenParams p;
        p.seed = seed;
        p.count = 2;
        p.min_nodes = 8;
        p.max_nodes = 30;
        Application app;
        app.lat = default_latency_table();
        for (const RawDfg &raw : generate_corpus(p))
            app.blocks.push_back(validate_dfg(raw, app.lat));

        SearchConfig cfg;
        IseReport report = select_ises(app, cfg);
        REQUIRE(static_cast<int>(report.ises.size()) <= cfg.constraints.n_ise);

        for (const Dfg &blk : app.blocks) {
            std::vector<NodeId> used;
            for (const IseEntry &e : report.ises) {
                if (e.block != blk.name())
                    continue;
                for (const auto &inst : e.instances) {
                    Cut cut(blk, inst);
                    REQUIRE(is_convex(cut));
                    IoCounts io = io_counts(cut);
                    REQUIRE(io.inputs <= cfg.constraints.n_in);
                    REQUIRE(io.outputs <= cfg.constraints.n_out);
                    used.insert(used.end(), inst.begin(), inst.end());
                }
            }
            std::size_t before = used.size();
            std::sort(used.begin(), used.end());
            used.erase(std::unique(used.begin(), used.end()), used.end());
            REQUIRE(used.size() == before);
        }
    }
}

TEST_CASE("an extra profitable reused ISE strictly increases the speedup") {
    std::vector<std::pair<double, double>> terms{{100.0, 2.0}};
    double base = overall_speedup(1000.0, terms);
    terms.push_back({50.0, 1.0});
    CHECK(overall_speedup(1000.0, terms) > base);
}

TEST_CASE("instance reuse multiplies the cut's contribution exactly k times") {
    RawDfg raw = generate_regular_block(9, 6, 4);
    Dfg g = validate_dfg(raw, default_latency_table());
    Application app;
    app.lat = default_latency_table();
    app.blocks.push_back(std::move(g));
    SearchConfig cfg;
    cfg.constraints.n_ise = 1;
    IseReport report = select_ises(app, cfg);
    REQUIRE(report.ises.size() == 1);
    const IseEntry &e = report.ises[0];
    REQUIRE(e.instances.size() == 6);

    const double freq = static_cast<double>(app.blocks[0].exec_freq());
    std::vector<std::pair<double, double>> with{{freq * 6.0, e.merit_value}};
    std::vector<std::pair<double, double>> alone{{freq, e.merit_value}};
    CHECK(report.speedup == doctest::Approx(overall_speedup(report.lambda_overall, with))
                                .epsilon(1e-12));
    CHECK(overall_speedup(report.lambda_overall, with) >
          overall_speedup(report.lambda_overall, alone));
}
