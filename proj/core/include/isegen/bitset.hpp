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

#include <bit>
#include <cassert>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace isegen {

/// Fixed-capacity bitset sized at runtime. Used for per-node
/// ancestor/descendant sets and word-parallel intersection counts.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() {
        for (auto &w : words_)
            w = 0;
    }

    void operator|=(const Bitset &other) {
        assert(n_ == other.n_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] |= other.words_[k];
    }

    bool any() const {
        for (auto w : words_)
            if (w)
                return true;
        return false;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// popcount(a & b) without materializing the intersection.
    static std::size_t and_count(const Bitset &a, const Bitset &b) {
        assert(a.n_ == b.n_);
        std::size_t c = 0;
        for (std::size_t k = 0; k < a.words_.size(); ++k)
            c += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k]));
        return c;
    }

    /// Calls fn(i) for every set bit, ascending.
    template <typename Fn>
    void for_each(Fn &&fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                unsigned b = static_cast<unsigned>(std::countr_zero(w));
                fn(k * 64 + b);
                w &= w - 1;
            }
        }
    }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace isegen
