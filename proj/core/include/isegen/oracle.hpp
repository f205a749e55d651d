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

#include <span>
#include <vector>

#include "isegen/cut.hpp"
#include "isegen/dfg.hpp"

namespace isegen {

struct OracleBudget {
    int max_nodes = 18;
    long long max_enumerated = 10'000'000;
};

struct OracleResult {
    std::vector<NodeId> members;
    double merit_value = 0.0;
};

/// Maximum-merit convex cut within the I/O limits, by exhaustive
/// enumeration in topological order with subtree pruning (merit upper
/// bound and forced exclusions below skipped nodes). Ties prefer the
/// smaller member set, then lexicographically smaller ids. Throws
/// BudgetExceeded when the instance is larger than the budget allows;
/// callers are expected to skip the comparison then.
OracleResult enumerate_optimal_cut(const Dfg &dfg, const Constraints &constraints,
                                   const OracleBudget &budget = {},
                                   std::span<const NodeId> frozen = {});

} // namespace isegen
