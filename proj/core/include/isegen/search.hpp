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

#include <limits>
#include <span>
#include <vector>

#include "isegen/cut.hpp"
#include "isegen/dfg.hpp"
#include "isegen/toggle.hpp"

namespace isegen {

/// Weights of the five gain components: merit, I/O violation penalty,
/// neighbor affinity, barrier-gap growth bias, independent-subgraph
/// bonus. The violation penalty weight dominates the others so illegal
/// configurations are entered only when nothing better exists.
struct GainWeights {
    double a1 = 1.0;
    double a2 = 20.0;
    double a3 = 0.5;
    double a4 = 0.25;
    double a5 = 0.5;
};

/// Weights tuned by grid search against the exhaustive engine on a
/// corpus of random 12-node blocks (see tools: `isegen calibrate`).
GainWeights calibrated_weights();
/// Seed of the corpus the weights were tuned on. Evaluation corpora
/// must use different seeds.
std::uint64_t calibration_corpus_seed();

struct SearchConfig {
    GainWeights weights = calibrated_weights();
    Constraints constraints;
    int max_passes = 5;
    /// Rank toggles by merit change instead of absolute merit
    /// (experimental alternative reading of the gain's first term).
    bool delta_mrt = false;
    /// Re-derive every fast-path gain with the reference component
    /// functions and fail loudly on divergence. Test use only.
    bool self_check = false;
};

struct SearchStats {
    int passes = 0;
    long long toggles = 0;
    /// Best known merit after each pass; non-decreasing.
    std::vector<double> pass_merits;
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Reference gain components, each evaluated denotationally on the
// would-be cut. The search loop computes the same values incrementally;
// SearchConfig::self_check cross-checks the two.

/// Merit of the cut after toggling n; -inf if that cut is non-convex.
double compute_mrt(const ToggleState &state, NodeId n);
/// Port-constraint violation amount of the cut after toggling n.
double compute_iop(const ToggleState &state, NodeId n, const Constraints &constraints);
/// Hardware neighbors of n: positive when n is software, negative when
/// n is hardware.
int compute_cnv(const ToggleState &state, NodeId n);
/// Barrier-gap bias |d_up - d_down|, signed like compute_cnv.
int compute_cgp(const ToggleState &state, NodeId n, const BarrierDistances &dists);
/// Critical-path latency of the largest hardware component other than
/// n's own; 0 for software nodes.
double compute_idc(const ToggleState &state, NodeId n);

/// a1*mrt - a2*iop + a3*cnv + a4*cgp + a5*idc; -inf propagates from mrt.
double gain(const ToggleState &state, NodeId n, const SearchConfig &config,
            const BarrierDistances &dists);

/// Iterative-improvement bi-partition of one block. Starts from
/// `initial` (must be legal, or empty), toggles the best-gain unmarked
/// node until all are marked, bookmarks every legal configuration, and
/// repeats for up to max_passes passes while the best merit improves.
/// The partition itself drifts across passes (a full sweep inverts it,
/// so growth and shrink sweeps alternate); from the third pass on, every
/// other sweep restarts at the best cut found so far.
/// Returns the best legal cut with positive merit, or the empty cut.
/// `frozen` nodes are pinned to software and never toggled.
Cut bipartition(const Dfg &dfg, const SearchConfig &config, const Cut &initial,
                std::span<const NodeId> frozen = {}, SearchStats *stats = nullptr);
Cut bipartition(const Dfg &dfg, const SearchConfig &config, SearchStats *stats = nullptr);

} // namespace isegen
