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
#include <deque>

#include "isegen/dfg.hpp"
#include "test_util.hpp"

using namespace isegen;
using test_util::BlockBuilder;

TEST_CASE("validate accepts the smallest nonempty DAG") {
    Dfg g = BlockBuilder().node(1).node(2).edge(1, 2).build();
    CHECK(g.node_count() == 2);
    CHECK(g.edges().size() == 1);
}

TEST_CASE("validate rejects a 2-cycle and names an edge on it") {
    BlockBuilder b;
    b.node(1).node(2).edge(1, 2).edge(2, 1);
    try {
        b.build();
        FAIL("expected CycleDetected");
    } catch (const DfgError &e) {
        CHECK(e.kind() == DfgErrorKind::CycleDetected);
        CHECK(std::string(e.what()).find("->") != std::string::npos);
    }
}

TEST_CASE("validate rejects dangling edge endpoints") {
    BlockBuilder b;
    b.node(1).edge(1, 2);
    try {
        b.build();
        FAIL("expected UnknownNodeRef");
    } catch (const DfgError &e) {
        CHECK(e.kind() == DfgErrorKind::UnknownNodeRef);
    }
}

TEST_CASE("validate rejects duplicate edges, duplicate ids, self edges, unknown opcodes") {
    CHECK_THROWS_AS(BlockBuilder().node(1).node(2).edge(1, 2).edge(1, 2).build(), DfgError);
    CHECK_THROWS_AS(BlockBuilder().node(1).node(1).build(), DfgError);
    CHECK_THROWS_AS(BlockBuilder().node(1).edge(1, 1).build(), DfgError);
    try {
        BlockBuilder().node(1, "nosuch").build();
        FAIL("expected MissingLatency");
    } catch (const DfgError &e) {
        CHECK(e.kind() == DfgErrorKind::MissingLatency);
    }
}

TEST_CASE("topological order of a chain is the chain") {
    Dfg g = test_util::chain3_liveout();
    CHECK(topological_order(g) == std::vector<NodeId>{1, 2, 3});
}

TEST_CASE("topological order of the diamond is the id-lexicographic minimum valid order") {
    Dfg g = test_util::diamond();
    // Oracle: enumerate all permutations, keep the edge-respecting ones,
    // take the smallest.
    std::vector<NodeId> ids{1, 2, 3, 4};
    std::vector<NodeId> best;
    do {
        bool ok = true;
        for (auto [s, d] : g.edges()) {
            auto ps = std::find(ids.begin(), ids.end(), s);
            auto pd = std::find(ids.begin(), ids.end(), d);
            if (ps > pd)
                ok = false;
        }
        if (ok && (best.empty() || ids < best))
            best = ids;
    } while (std::next_permutation(ids.begin(), ids.end()));
    CHECK(topological_order(g) == best);
    CHECK(best == std::vector<NodeId>{1, 2, 3, 4});
}

TEST_CASE("topological order breaks ties by ascending id") {
    Dfg g = BlockBuilder().node(5).node(9).build();
    CHECK(topological_order(g) == std::vector<NodeId>{5, 9});
}

namespace {

// BFS from the barrier frontier, as an independent distance oracle.
BarrierDistances bfs_distances(const Dfg &g) {
    const std::size_t n = g.node_count();
    BarrierDistances d;
    const int inf = 1 << 20;
    d.d_up.assign(n, inf);
    d.d_down.assign(n, inf);
    std::deque<std::size_t> q;
    for (std::size_t u = 0; u < n; ++u) {
        if (g.node(u).is_memory)
            d.d_up[u] = 0;
        else if (g.parents(u).empty())
            d.d_up[u] = 1;
        if (d.d_up[u] < inf)
            q.push_back(u);
    }
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop_front();
        for (std::uint32_t c : g.children(u)) {
            if (!g.node(c).is_memory && d.d_up[u] + 1 < d.d_up[c]) {
                d.d_up[c] = d.d_up[u] + 1;
                q.push_back(c);
            }
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        if (g.node(u).is_memory)
            d.d_down[u] = 0;
        else if (g.children(u).empty() || g.node(u).is_live_out)
            d.d_down[u] = 1;
        if (d.d_down[u] < inf)
            q.push_back(u);
    }
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop_front();
        for (std::uint32_t p : g.parents(u)) {
            if (!g.node(p).is_memory && d.d_down[u] + 1 < d.d_down[p]) {
                d.d_down[p] = d.d_down[u] + 1;
                q.push_back(p);
            }
        }
    }
    return d;
}

} // namespace

TEST_CASE("barrier distances on a plain chain") {
    Dfg g = test_util::chain3_liveout();
    BarrierDistances d = barrier_distances(g);
    BarrierDistances ref = bfs_distances(g);
    CHECK(d.d_up == ref.d_up);
    CHECK(d.d_down == ref.d_down);
    CHECK(d.d_up == std::vector<int>{1, 2, 3});
    CHECK(d.d_down == std::vector<int>{3, 2, 1});
}

TEST_CASE("barrier distances on a single node") {
    Dfg g = BlockBuilder().node(7).build();
    BarrierDistances d = barrier_distances(g);
    CHECK(d.d_up == std::vector<int>{1});
    CHECK(d.d_down == std::vector<int>{1});
}

TEST_CASE("a load in the middle of a chain is a barrier at distance zero") {
    Dfg g = BlockBuilder()
                .node(1, "op1")
                .node(2, "ld", true)
                .node(3, "op", false, true)
                .edge(1, 2)
                .edge(2, 3)
                .build();
    BarrierDistances d = barrier_distances(g);
    BarrierDistances ref = bfs_distances(g);
    CHECK(d.d_up == ref.d_up);
    CHECK(d.d_down == ref.d_down);
    CHECK(d.d_up[1] == 0);
    CHECK(d.d_down[1] == 0);
    CHECK(d.d_down[0] == 1);
    CHECK(d.d_up[2] == 1);
}

TEST_CASE("barrier distances match the BFS oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Dfg g = test_util::random_block(seed, 5, 50);
        BarrierDistances d = barrier_distances(g);
        BarrierDistances ref = bfs_distances(g);
        REQUIRE(d.d_up == ref.d_up);
        REQUIRE(d.d_down == ref.d_down);
    }
}

TEST_CASE("every validated random graph has an edge-respecting topological order") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        Dfg g = test_util::random_block(seed, 5, 50);
        const auto &order = topological_order(g);
        REQUIRE(order.size() == g.node_count());
        for (auto [s, d] : g.edges()) {
            auto ps = std::find(order.begin(), order.end(), s);
            auto pd = std::find(order.begin(), order.end(), d);
            REQUIRE(ps < pd);
        }
    }
}

TEST_CASE("clearing a memory barrier never shrinks any barrier distance") {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        GenParams p;
        p.seed = seed;
        p.min_nodes = 5;
        p.max_nodes = 50;
        p.mem_ratio = 0.3;
        RawDfg raw = generate_random_block(p, 0);
        Dfg g = validate_dfg(raw, default_latency_table());
        BarrierDistances before = barrier_distances(g);
        for (std::size_t i = 0; i < raw.nodes.size(); ++i) {
            if (!raw.nodes[i].is_memory)
                continue;
            RawDfg altered = raw;
            altered.nodes[i].is_memory = false;
            altered.nodes[i].opcode = "add";
            Dfg g2 = validate_dfg(altered, default_latency_table());
            BarrierDistances after = barrier_distances(g2);
            for (std::size_t u = 0; u < g.node_count(); ++u) {
                REQUIRE(after.d_up[u] >= before.d_up[u]);
                REQUIRE(after.d_down[u] >= before.d_down[u]);
            }
        }
    }
}

TEST_CASE("validation is deterministic") {
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        GenParams p;
        p.seed = seed;
        RawDfg raw = generate_random_block(p, 0);
        Dfg a = validate_dfg(raw, default_latency_table());
        Dfg b = validate_dfg(raw, default_latency_table());
        CHECK(a == b);
        CHECK(topological_order(a) == topological_order(b));
    }
}
