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

#include "isegen/toggle.hpp"

#include <algorithm>

namespace isegen {

ToggleState::ToggleState(const Dfg &dfg, std::span<const NodeId> frozen) : dfg_(&dfg) {
    const std::size_t n = dfg.node_count();
    in_h_.assign(n, 0);
    marked_.assign(n, 0);
    frozen_.assign(n, 0);
    i_tog_.assign(n, 0);
    o_tog_.assign(n, 0);
    nbrs_h_.assign(n, 0);
    anc_h_.assign(n, 0);
    desc_h_.assign(n, 0);
    violator_flag_.assign(n, 0);
    add_desc_mask_ = Bitset(n);
    add_anc_mask_ = Bitset(n);
    rem_desc_mask_ = Bitset(n);
    rem_anc_mask_ = Bitset(n);

    for (std::size_t i = 0; i < n; ++i)
        if (dfg.node(i).is_memory)
            frozen_[i] = 1;
    for (NodeId id : frozen)
        frozen_[dfg.index_of(id)] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        marked_[i] = frozen_[i];
        if (!frozen_[i])
            ++toggleable_count_;
    }

    for (std::size_t i = 0; i < n; ++i)
        recompute_addendum(i);
}

std::vector<NodeId> ToggleState::hw_members() const {
    std::vector<NodeId> out;
    out.reserve(hw_count_);
    for (std::size_t i = 0; i < in_h_.size(); ++i)
        if (in_h_[i])
            out.push_back(dfg_->node(i).id);
    return out;
}

void ToggleState::unmark_all() {
    for (std::size_t i = 0; i < marked_.size(); ++i)
        marked_[i] = frozen_[i];
}

// Addendum of m against the current partition. The same predicates
// serve both directions: only the sign flips with m's own side, which
// is also why a toggle of m exactly reverses its own addendums.
void ToggleState::recompute_addendum(std::size_t m) {
    const Dfg &g = *dfg_;
    const OpNode &node = g.node(m);

    const int src_arity = g.parents(m).empty() ? node.arity : 0;

    int ext_parents = 0;     // parents that would start (stop) counting as inputs
    int absorbed_parents = 0; // hardware parents whose last outside consumer is m
    for (std::uint32_t p : g.parents(m)) {
        bool other_child_in_h = false;
        bool other_child_out = false;
        for (std::uint32_t s : g.children(p)) {
            if (s == m)
                continue;
            if (in_h_[s])
                other_child_in_h = true;
            else
                other_child_out = true;
        }
        if (!in_h_[p] && !other_child_in_h)
            ++ext_parents;
        if (in_h_[p] && !g.node(p).is_live_out && !other_child_out)
            ++absorbed_parents;
    }

    bool child_in_h = false;
    bool child_outside = false;
    for (std::uint32_t c : g.children(m)) {
        if (in_h_[c])
            child_in_h = true;
        else
            child_outside = true;
    }
    const bool ext_out = node.is_live_out || child_outside;

    const int di = src_arity + ext_parents - (child_in_h ? 1 : 0);
    const int dout = (ext_out ? 1 : 0) - absorbed_parents;
    if (in_h_[m]) {
        i_tog_[m] = -di;
        o_tog_[m] = -dout;
    } else {
        i_tog_[m] = di;
        o_tog_[m] = dout;
    }
}

void ToggleState::update_violator_flag(std::size_t w) {
    const std::uint8_t now = (!in_h_[w] && anc_h_[w] > 0 && desc_h_[w] > 0) ? 1 : 0;
    if (now != violator_flag_[w]) {
        violators_ += now ? 1 : -1;
        violator_flag_[w] = now;
    }
}

void ToggleState::apply_toggle_idx(std::size_t idx) {
    const Dfg &g = *dfg_;
    if (frozen_[idx])
        throw MemoryNodeToggle("node " + std::to_string(g.node(idx).id) +
                               " is pinned to software and cannot be toggled");

    i_ise_ += i_tog_[idx];
    o_ise_ += o_tog_[idx];

    const bool entering = !in_h_[idx];
    in_h_[idx] = entering ? 1 : 0;
    hw_count_ += entering ? 1 : std::size_t(-1);

    const int delta = entering ? 1 : -1;
    g.descendants(idx).for_each([&](std::size_t w) {
        anc_h_[w] += delta;
        update_violator_flag(w);
    });
    g.ancestors(idx).for_each([&](std::size_t w) {
        desc_h_[w] += delta;
        update_violator_flag(w);
    });
    update_violator_flag(idx);

    for (std::uint32_t p : g.parents(idx))
        nbrs_h_[p] += delta;
    for (std::uint32_t c : g.children(idx))
        nbrs_h_[c] += delta;

    // Refresh addendums of the affected neighborhood: the node itself,
    // parents, children, and siblings (co-consumers of a parent value).
    recompute_addendum(idx);
    for (std::uint32_t c : g.children(idx))
        recompute_addendum(c);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t p : g.parents(idx)) {
        recompute_addendum(p);
        for (std::uint32_t s : g.children(p))
            if (s != idx)
                touched.push_back(s);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::uint32_t s : touched)
        recompute_addendum(s);

    masks_valid_ = false;
}

void ToggleState::apply_toggle(NodeId id) {
    apply_toggle_idx(dfg_->index_of(id));
}

void ToggleState::refresh_preview_masks() const {
    const std::size_t n = in_h_.size();
    add_desc_mask_.clear();
    add_anc_mask_.clear();
    rem_desc_mask_.clear();
    rem_anc_mask_.clear();
    for (std::size_t w = 0; w < n; ++w) {
        if (in_h_[w])
            continue;
        if (anc_h_[w] == 0 && desc_h_[w] >= 1)
            add_desc_mask_.set(w);
        if (desc_h_[w] == 0 && anc_h_[w] >= 1)
            add_anc_mask_.set(w);
        if (anc_h_[w] == 1 && desc_h_[w] >= 1)
            rem_desc_mask_.set(w);
        if (desc_h_[w] == 1 && anc_h_[w] >= 1)
            rem_anc_mask_.set(w);
    }
    masks_valid_ = true;
}

bool ToggleState::preview_convex_idx(std::size_t idx) const {
    if (!masks_valid_)
        refresh_preview_masks();
    const Dfg &g = *dfg_;
    long long nv = violators_;
    if (!in_h_[idx]) {
        if (violator_flag_[idx])
            --nv;
        nv += static_cast<long long>(Bitset::and_count(g.descendants(idx), add_desc_mask_));
        nv += static_cast<long long>(Bitset::and_count(g.ancestors(idx), add_anc_mask_));
    } else {
        if (anc_h_[idx] > 0 && desc_h_[idx] > 0)
            ++nv;
        nv -= static_cast<long long>(Bitset::and_count(g.descendants(idx), rem_desc_mask_));
        nv -= static_cast<long long>(Bitset::and_count(g.ancestors(idx), rem_anc_mask_));
    }
    return nv == 0;
}

TogglePreview ToggleState::preview_toggle_idx(std::size_t idx) const {
    if (frozen_[idx])
        throw MemoryNodeToggle("node " + std::to_string(dfg_->node(idx).id) +
                               " is pinned to software and cannot be toggled");
    TogglePreview p;
    p.inputs = i_ise_ + i_tog_[idx];
    p.outputs = o_ise_ + o_tog_[idx];
    p.convex = preview_convex_idx(idx);
    return p;
}

TogglePreview ToggleState::preview_toggle(NodeId id) const {
    return preview_toggle_idx(dfg_->index_of(id));
}

bool ToggleState::operator==(const ToggleState &other) const {
    return dfg_ == other.dfg_ && in_h_ == other.in_h_ && marked_ == other.marked_ &&
           i_tog_ == other.i_tog_ && o_tog_ == other.o_tog_ && i_ise_ == other.i_ise_ &&
           o_ise_ == other.o_ise_;
}

} // namespace isegen
