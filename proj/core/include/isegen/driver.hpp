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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isegen/cut.hpp"
#include "isegen/dfg.hpp"
#include "isegen/oracle.hpp"
#include "isegen/search.hpp"

namespace isegen {

/// All basic blocks of one program, with the latency table they were
/// validated against.
struct Application {
    std::vector<Dfg> blocks;
    LatencyTable lat;
};

Application load_application(const std::string &app_path, const std::string &lat_path);

struct IseEntry {
    int index = 0;
    std::string block;
    std::vector<NodeId> members;
    IoCounts io;
    double merit_value = 0.0;
    /// Node-disjoint occurrences inside the block, template first.
    std::vector<std::vector<NodeId>> instances;
    /// Executions per program run: block frequency times instance count.
    std::uint64_t n_c = 0;
};

struct TraceEntry {
    int round = 0;
    std::string block;
    double potential = 0.0;
    bool committed = false;
    int ise_index = -1; // -1 when the block was retired this round
};

struct IseReport {
    std::vector<IseEntry> ises;
    std::vector<TraceEntry> trace;
    double lambda_overall = 0.0;
    double speedup = 1.0;
    Constraints constraints;
};

enum class Engine {
    Isegen,        // iterative-improvement search
    ExactIterative // exhaustive single-cut engine per round
};

/// Execution frequency times the merit of hypothetically moving every
/// selectable (non-memory, non-frozen) node to hardware, ignoring port
/// and convexity limits. Used to rank blocks between rounds.
double block_potential(const Dfg &block, std::span<const NodeId> frozen = {});

/// Node-disjoint occurrences of `tmpl` in `block`: opcode-preserving,
/// edge-preserving isomorphisms onto convex sets whose I/O counts do
/// not exceed the template's. Greedy, candidates in ascending id order,
/// the template itself always first. `claimed` nodes are off limits.
std::vector<std::vector<NodeId>> count_instances(const Dfg &block, const Cut &tmpl,
                                                 std::span<const NodeId> claimed = {});

/// Whole-application speedup: lambda / (lambda - sum(n_c * merit)).
/// `ise_terms` pairs are (n_c, merit). Returns exactly 1.0 with no
/// ISEs. Throws SpeedupDivergence when the claimed savings reach or
/// exceed lambda.
double overall_speedup(double lambda_overall,
                       std::span<const std::pair<double, double>> ise_terms);

/// Up to n_ise rounds: pick the highest-potential block, extract one
/// cut from its remaining nodes, commit it together with its instances
/// (or retire the block without consuming a slot when nothing
/// profitable is left), and re-rank.
IseReport select_ises(const Application &app, const SearchConfig &config,
                      Engine engine = Engine::Isegen, const OracleBudget &budget = {});

/// The exhaustive-engine flavor of select_ises.
IseReport iterative_exact(const Application &app, const SearchConfig &config,
                          const OracleBudget &budget = {});

} // namespace isegen
