// Copyright 2026 The rwq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace rwq {

/// A set of node indices into a universe of at most 32 nodes.
class NodeSet {
 public:
  static constexpr int kMaxNodes = 32;

  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint32_t bits) : bits_(bits) {}

  /// The set {0, 1, ..., n - 1}.
  static constexpr NodeSet Full(int n) {
    return NodeSet(n >= 32 ? ~std::uint32_t{0}
                           : (std::uint32_t{1} << n) - 1);
  }
  static constexpr NodeSet Single(int index) {
    return NodeSet(std::uint32_t{1} << index);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int index) const { return (bits_ >> index) & 1U; }
  constexpr bool intersects(NodeSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  constexpr bool is_subset_of(NodeSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  constexpr NodeSet with(int index) const {
    return NodeSet(bits_ | (std::uint32_t{1} << index));
  }
  constexpr NodeSet without(int index) const {
    return NodeSet(bits_ & ~(std::uint32_t{1} << index));
  }

  constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
  constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
  constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }

  /// Member indices in increasing order.
  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  constexpr bool operator==(const NodeSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Canonical order on sets: by size, then lexicographically on the sorted
/// member indices.
inline bool CanonicalLess(NodeSet a, NodeSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  std::uint32_t x = a.bits(), y = b.bits();
  while (x != 0 && y != 0) {
    int i = std::countr_zero(x), j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return false;
}

/// Calls `visit(NodeSet)` for every k-subset of {0..n-1} in increasing bit
/// order (Gosper's hack). Stops early when `visit` returns false.
template <typename Visit>
bool ForEachSubsetOfSize(int n, int k, Visit&& visit) {
  if (k < 0 || k > n) return true;
  if (k == 0) return visit(NodeSet());
  std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t set = (std::uint64_t{1} << k) - 1;
  while (set < limit) {
    if (!visit(NodeSet(static_cast<std::uint32_t>(set)))) return false;
    std::uint64_t c = set & (~set + 1);
    std::uint64_t r = set + c;
    set = (((r ^ set) >> 2) / c) | r;
  }
  return true;
}

}  // namespace rwq
