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

#include "isegen/oracle.hpp"
#include "test_util.hpp"

using namespace isegen;
using test_util::BlockBuilder;

TEST_CASE("the whole profitable chain is optimal at (4,2)") {
    Dfg g = test_util::chain3_liveout();
    OracleResult r = enumerate_optimal_cut(g, {4, 2, 4});
    CHECK(r.members == std::vector<NodeId>{1, 2, 3});
    CHECK(r.merit_value == doctest::Approx(2.1));
    auto naive = test_util::naive_best_cut(g, {4, 2, 4});
    CHECK(naive.members == r.members);
    CHECK(naive.merit_value == doctest::Approx(r.merit_value));
}

TEST_CASE("a lone memory operation leaves only the empty cut") {
    Dfg g = BlockBuilder().node(1, "ld", true).build();
    OracleResult r = enumerate_optimal_cut(g, {4, 2, 4});
    CHECK(r.members.empty());
    CHECK(r.merit_value == 0.0);
}

TEST_CASE("tight ports on the diamond agree with the unpruned sweep") {
    Dfg g = test_util::diamond("op1");
    OracleResult r = enumerate_optimal_cut(g, {1, 1, 4});
    auto naive = test_util::naive_best_cut(g, {1, 1, 4});
    CHECK(r.members == naive.members);
    CHECK(r.merit_value == doctest::Approx(naive.merit_value));
}

TEST_CASE("pruned enumeration equals the unpruned sweep on random instances") {
    int checked = 0;
    for (std::uint64_t seed = 2000; seed < 2200; ++seed) {
        Dfg g = test_util::random_block(seed, 4, 12);
        if (g.node_count() - g.memory_node_count() > 12)
            continue;
        OracleResult r = enumerate_optimal_cut(g, {4, 2, 4});
        auto naive = test_util::naive_best_cut(g, {4, 2, 4});
        REQUIRE(r.merit_value == naive.merit_value);
        REQUIRE(r.members == naive.members);
        ++checked;
    }
    CHECK(checked >= 150);
}

TEST_CASE("optimal merit is monotone in the port limits") {
    for (std::uint64_t seed = 2300; seed < 2360; ++seed) {
        Dfg g = test_util::random_block(seed, 4, 12);
        double prev = -1.0;
        for (int n_in = 1; n_in <= 5; ++n_in) {
            double m = enumerate_optimal_cut(g, {n_in, 2, 4}).merit_value;
            REQUIRE(m >= prev);
            prev = m;
        }
        prev = -1.0;
        for (int n_out = 1; n_out <= 4; ++n_out) {
            double m = enumerate_optimal_cut(g, {4, n_out, 4}).merit_value;
            REQUIRE(m >= prev);
            prev = m;
        }
    }
}

TEST_CASE("equal-merit ties go to the smaller then lexicographically smaller set") {
    // Two identical isolated live-out nodes; only one output allowed.
    Dfg g = BlockBuilder()
                .node(1, "op", false, true)
                .node(2, "op", false, true)
                .build();
    OracleResult r = enumerate_optimal_cut(g, {4, 1, 4});
    CHECK(r.members == std::vector<NodeId>{1});
}

TEST_CASE("budgets are enforced") {
    SUBCASE("node budget") {
        Dfg g = test_util::random_block(42, 30, 30, 0.0);
        CHECK_THROWS_AS(enumerate_optimal_cut(g, {4, 2, 4}, {18, 1000000}), BudgetExceeded);
    }
    SUBCASE("state budget") {
        Dfg g = test_util::random_block(43, 14, 14, 0.0);
        CHECK_THROWS_AS(enumerate_optimal_cut(g, {4, 2, 4}, {18, 50}), BudgetExceeded);
    }
}

TEST_CASE("frozen nodes are excluded from enumeration") {
    Dfg g = test_util::chain3_liveout();
    std::vector<NodeId> frozen{3};
    OracleResult r = enumerate_optimal_cut(g, {4, 2, 4}, {}, frozen);
    CHECK(r.members == std::vector<NodeId>{1, 2});
}
