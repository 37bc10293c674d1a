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

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rwq/errors.hpp"
#include "rwq/expr.hpp"
#include "rwq/node_set.hpp"
#include "rwq/rational.hpp"

namespace rwq {

/// A replica. Capacities are operations per second; latency is the time in
/// seconds to hear back from the node.
struct Node {
  std::string name;
  Rational read_cap{1};
  Rational write_cap{1};
  Rational latency{1};
};

inline Node MakeNode(std::string name, Rational read_cap = 1,
                     Rational write_cap = 1, Rational latency = 1) {
  if (name.empty()) throw DomainError("node name must be nonempty");
  if (read_cap <= 0 || write_cap <= 0 || latency <= 0) {
    throw DomainError("node '" + name +
                      "' needs positive capacities and latency");
  }
  return Node{std::move(name), std::move(read_cap), std::move(write_cap),
              std::move(latency)};
}

/// A discrete distribution over read fractions.
class Workload {
 public:
  struct Point {
    Rational read_fraction;
    Rational probability;
  };

  /// A single read fraction with probability one.
  static Workload Fixed(Rational read_fraction) {
    return Workload({{std::move(read_fraction), Rational(1)}}, Rational(0));
  }

  /// Points must have read fractions in [0, 1], nonnegative probabilities
  /// summing to one within `tolerance`. Probabilities are renormalized to
  /// sum exactly to one; duplicate read fractions are merged.
  static Workload Distribution(std::vector<Point> points,
                               double tolerance = 1e-9) {
    return Workload(std::move(points), Rational(tolerance));
  }

  const std::vector<Point>& points() const { return points_; }

  /// Expected read fraction.
  Rational MeanReadFraction() const {
    Rational mean = 0;
    for (const auto& p : points_) mean += p.probability * p.read_fraction;
    return mean;
  }

 private:
  Workload(std::vector<Point> points, const Rational& tolerance) {
    if (points.empty()) throw DomainError("workload needs at least one point");
    std::map<Rational, Rational> merged;
    Rational total = 0;
    for (auto& p : points) {
      if (p.read_fraction < 0 || p.read_fraction > 1) {
        throw DomainError("read fraction outside [0, 1]");
      }
      if (p.probability < 0 || p.probability > 1) {
        throw DomainError("workload probability outside [0, 1]");
      }
      total += p.probability;
      merged[p.read_fraction] += p.probability;
    }
    Rational gap = total - 1;
    if (gap < 0) gap = -gap;
    if (gap > tolerance) {
      throw DomainError("workload probabilities sum to " +
                        std::to_string(ToDouble(total)) + ", not 1");
    }
    for (auto& [fraction, probability] : merged) {
      if (probability == 0) continue;
      points_.push_back({fraction, probability / total});
    }
    if (points_.empty()) throw DomainError("workload has no mass");
  }

  std::vector<Point> points_;
};

enum class Side { kRead, kWrite };

inline const char* SideName(Side side) {
  return side == Side::kRead ? "read" : "write";
}

/// A read-write quorum system: read and write expressions over a universe
/// of nodes such that every read quorum intersects every write quorum.
///
/// Minimal quorums are enumerated once at construction, so the universe is
/// limited to kMaxEnumerationNodes nodes.
class QuorumSystem {
 public:
  /// A missing side is the dual of the supplied one. When both are
  /// supplied, intersection is checked over the minimal quorums.
  QuorumSystem(std::vector<Node> universe, std::optional<Expr> reads,
               std::optional<Expr> writes = std::nullopt)
      : nodes_(std::move(universe)) {
    if (!reads && !writes) {
      throw DomainError("a quorum system needs read or write quorums");
    }
    if (nodes_.empty()) throw DomainError("empty universe");
    int n = static_cast<int>(nodes_.size());
    if (n > kMaxEnumerationNodes) throw UniverseTooLarge(n, kMaxEnumerationNodes);
    for (const Node& node : nodes_) {
      if (node.read_cap <= 0 || node.write_cap <= 0 || node.latency <= 0) {
        throw DomainError("node '" + node.name +
                          "' needs positive capacities and latency");
      }
      if (std::count(names_.begin(), names_.end(), node.name) > 0) {
        throw DomainError("duplicate node name '" + node.name + "'");
      }
      names_.push_back(node.name);
    }
    bool derived = !(reads && writes);
    if (!reads) reads = Dual(*writes);
    if (!writes) writes = Dual(*reads);
    reads_ = std::move(*reads);
    writes_ = std::move(*writes);

    read_table_ = QuorumTable(CompiledExpr(reads_, names_), n);
    write_table_ = QuorumTable(CompiledExpr(writes_, names_), n);
    read_minimal_ = read_table_.MinimalQuorums();
    write_minimal_ = write_table_.MinimalQuorums();

    if (!derived) {
      for (NodeSet r : read_minimal_) {
        for (NodeSet w : write_minimal_) {
          if (!r.intersects(w)) throw IntersectionViolation(Names(r), Names(w));
        }
      }
    }
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Expr& reads() const { return reads_; }
  const Expr& writes() const { return writes_; }
  const Expr& expression(Side side) const {
    return side == Side::kRead ? reads_ : writes_;
  }

  /// Index of `name` in the universe; throws UnknownNode.
  int IndexOf(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw UnknownNode(name);
    return static_cast<int>(it - names_.begin());
  }

  NodeSet SetOf(const std::vector<std::string>& names) const {
    NodeSet s;
    for (const auto& name : names) s = s.with(IndexOf(name));
    return s;
  }

  std::vector<std::string> Names(NodeSet s) const {
    std::vector<std::string> out;
    for (int i : s.indices()) out.push_back(names_[i]);
    return out;
  }

  bool IsQuorum(Side side, NodeSet s) const {
    return side == Side::kRead ? read_table_(s) : write_table_(s);
  }
  bool IsReadQuorum(NodeSet s) const { return read_table_(s); }
  bool IsWriteQuorum(NodeSet s) const { return write_table_(s); }
  bool IsReadQuorum(const std::vector<std::string>& s) const {
    return IsReadQuorum(SetOf(s));
  }
  bool IsWriteQuorum(const std::vector<std::string>& s) const {
    return IsWriteQuorum(SetOf(s));
  }

  /// Minimal quorums in canonical order.
  const std::vector<NodeSet>& MinimalQuorums(Side side) const {
    return side == Side::kRead ? read_minimal_ : write_minimal_;
  }

  /// Largest f such that any f failed nodes leave some quorum of `side`
  /// alive: one less than a minimum hitting set of the minimal quorums.
  int FaultTolerance(Side side) const {
    const auto& quorums = MinimalQuorums(side);
    int n = size();
    for (int k = 1; k <= n; ++k) {
      bool found = false;
      ForEachSubsetOfSize(n, k, [&](NodeSet kill) {
        found = std::all_of(quorums.begin(), quorums.end(),
                            [&](NodeSet q) { return q.intersects(kill); });
        return !found;
      });
      if (found) return k - 1;
    }
    return n - 1;
  }
  int ReadFaultTolerance() const { return FaultTolerance(Side::kRead); }
  int WriteFaultTolerance() const { return FaultTolerance(Side::kWrite); }
  int FaultTolerance() const {
    return std::min(ReadFaultTolerance(), WriteFaultTolerance());
  }

  /// Inclusion-minimal quorums of `side` that stay quorums after removing
  /// any min(f, |S|) of their nodes, in canonical order. Subsets are
  /// visited by increasing size and supersets of accepted sets are pruned.
  ///
  /// Throws NoResilientQuorum when no such set exists.
  std::vector<NodeSet> ResilientQuorums(Side side, int f) const {
    if (f < 0) throw DomainError("resilience must be nonnegative");
    if (f == 0) return MinimalQuorums(side);
    std::vector<NodeSet> found;
    int n = size();
    for (int size = f + 1; size <= n; ++size) {
      ForEachSubsetOfSize(n, size, [&](NodeSet s) {
        for (NodeSet kept : found) {
          if (kept.is_subset_of(s)) return true;
        }
        if (IsResilient(side, s, f)) found.push_back(s);
        return true;
      });
    }
    if (found.empty()) {
      throw NoResilientQuorum(std::string("no ") + std::to_string(f) +
                              "-resilient " + SideName(side) + " quorum exists");
    }
    std::sort(found.begin(), found.end(), CanonicalLess);
    return found;
  }

 private:
  // Requires |s| > f; by monotonicity removing exactly f nodes suffices.
  bool IsResilient(Side side, NodeSet s, int f) const {
    std::vector<int> members = s.indices();
    int m = static_cast<int>(members.size());
    bool ok = true;
    ForEachSubsetOfSize(m, f, [&](NodeSet removed_local) {
      NodeSet remaining = s;
      for (int i : removed_local.indices()) remaining = remaining.without(members[i]);
      ok = IsQuorum(side, remaining);
      return ok;
    });
    return ok;
  }

  std::vector<Node> nodes_;
  std::vector<std::string> names_;
  Expr reads_ = Expr::Var("_");
  Expr writes_ = Expr::Var("_");
  QuorumTable read_table_;
  QuorumTable write_table_;
  std::vector<NodeSet> read_minimal_;
  std::vector<NodeSet> write_minimal_;
};

}  // namespace rwq
