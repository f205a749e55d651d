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

struct TogglePreview {
    int inputs = 0;
    int outputs = 0;
    bool convex = true;
};

/// Mutable hardware/software partition of one block with per-node
/// addendums: toggling node n adds (i_toggle(n), o_toggle(n)) to the
/// running input/output counts of the hardware set, and only n, its
/// parents, children and siblings need their addendums refreshed.
///
/// Convexity of the would-be set is answered from incrementally
/// maintained ancestor/descendant membership counts, so previews cost a
/// few word-parallel bit scans instead of a graph traversal.
///
/// Single-owner object: one search mutates one state. Distinct states
/// over the same Dfg may run concurrently.
class ToggleState {
  public:
    explicit ToggleState(const Dfg &dfg, std::span<const NodeId> frozen = {});

    const Dfg &dfg() const { return *dfg_; }

    int i_ise() const { return i_ise_; }
    int o_ise() const { return o_ise_; }

    bool in_hw(NodeId id) const { return in_h_[dfg_->index_of(id)] != 0; }
    bool in_hw_idx(std::size_t idx) const { return in_h_[idx] != 0; }
    std::size_t hw_count() const { return hw_count_; }
    std::vector<NodeId> hw_members() const; // sorted ids

    int i_toggle(NodeId id) const { return i_tog_[dfg_->index_of(id)]; }
    int o_toggle(NodeId id) const { return o_tog_[dfg_->index_of(id)]; }
    int i_toggle_idx(std::size_t idx) const { return i_tog_[idx]; }
    int o_toggle_idx(std::size_t idx) const { return o_tog_[idx]; }

    bool marked(NodeId id) const { return marked_[dfg_->index_of(id)] != 0; }
    bool marked_idx(std::size_t idx) const { return marked_[idx] != 0; }
    void mark(NodeId id) { marked_[dfg_->index_of(id)] = 1; }
    void mark_idx(std::size_t idx) { marked_[idx] = 1; }
    /// Clears marks except on permanently frozen nodes (memory ops and
    /// nodes frozen at construction).
    void unmark_all();

    bool toggleable_idx(std::size_t idx) const { return frozen_[idx] == 0; }
    std::size_t toggleable_count() const { return toggleable_count_; }

    /// Moves a node across the partition. Throws MemoryNodeToggle for
    /// memory operations and frozen nodes.
    void apply_toggle(NodeId id);
    void apply_toggle_idx(std::size_t idx);

    /// I/O counts and convexity of the would-be hardware set, without
    /// committing. Identical to the values observed after apply_toggle.
    TogglePreview preview_toggle(NodeId id) const;
    TogglePreview preview_toggle_idx(std::size_t idx) const;
    bool preview_convex_idx(std::size_t idx) const;

    /// Convexity of the current hardware set (O(1)).
    bool current_convex() const { return violators_ == 0; }

    /// Neighbors (parents + children) of idx currently in hardware.
    int neighbors_in_hw_idx(std::size_t idx) const { return nbrs_h_[idx]; }

    bool operator==(const ToggleState &other) const;

  private:
    void recompute_addendum(std::size_t m);
    void refresh_preview_masks() const;
    void update_violator_flag(std::size_t w);

    const Dfg *dfg_;
    std::vector<std::uint8_t> in_h_;
    std::vector<std::uint8_t> marked_;
    std::vector<std::uint8_t> frozen_;
    std::vector<int> i_tog_, o_tog_;
    std::vector<int> nbrs_h_;   // parents+children in H
    std::vector<int> anc_h_;    // ancestors in H
    std::vector<int> desc_h_;   // descendants in H
    std::vector<std::uint8_t> violator_flag_;
    long long violators_ = 0;
    int i_ise_ = 0;
    int o_ise_ = 0;
    std::size_t hw_count_ = 0;
    std::size_t toggleable_count_ = 0;

    // Preview masks over the current partition, rebuilt lazily.
    mutable bool masks_valid_ = false;
    mutable Bitset add_desc_mask_, add_anc_mask_, rem_desc_mask_, rem_anc_mask_;
};

} // namespace isegen
