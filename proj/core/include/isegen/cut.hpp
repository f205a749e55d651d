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

#include "isegen/dfg.hpp"

namespace isegen {

/// Register-file port limits for one custom instruction plus the
/// application-wide budget of custom instructions.
struct Constraints {
    int n_in = 4;
    int n_out = 2;
    int n_ise = 4;
};

/// A candidate custom instruction: a set of nodes of one block.
/// Memory operations are rejected at construction; they always stay on
/// the processor side.
class Cut {
  public:
    Cut(const Dfg &dfg, std::vector<NodeId> members);
    static Cut empty(const Dfg &dfg) { return Cut(dfg, {}); }

    const Dfg &dfg() const { return *dfg_; }
    const std::vector<NodeId> &members() const { return members_; }
    bool empty_set() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    bool contains(NodeId id) const;

  private:
    const Dfg *dfg_;
    std::vector<NodeId> members_; // sorted, unique
};

struct IoCounts {
    int inputs = 0;
    int outputs = 0;
};

/// Distinct values crossing the cut boundary. Each outside producer
/// counts once no matter how many members read it; a member with no
/// in-block producers is charged its opcode arity; a member counts as
/// an output if any consumer lies outside the cut or its value is live
/// past the block.
IoCounts io_counts(const Cut &cut);

/// True iff no directed path leaves the cut and re-enters it.
bool is_convex(const Cut &cut);

/// Longest node-weighted path (hardware latencies) within the induced
/// subgraph; 0 for the empty cut.
double critical_path_hw_latency(const Cut &cut);

/// Estimated cycles saved per execution: software latency sum minus the
/// hardware critical path.
double merit(const Cut &cut);

/// Weakly connected components of the induced subgraph, ordered by
/// smallest member id; members sorted within each component.
std::vector<std::vector<NodeId>> connected_components(const Cut &cut);

} // namespace isegen
