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
#include <concepts>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rwq/errors.hpp"
#include "rwq/node_set.hpp"

namespace rwq {

/// Largest universe for which quorum families are enumerated exhaustively.
inline constexpr int kMaxEnumerationNodes = 20;

/// An immutable monotone boolean expression over node names.
///
/// Four node kinds: a variable, a disjunction, a conjunction, and the
/// threshold combinator choose(k, [e1..en]) which is true when at least k
/// children are. Or and And are the thresholds 1 and n. The Or and And
/// factories flatten directly nested nodes of the same kind, so `a*b*c` is a
/// single conjunction of three variables.
///
/// Copies share structure; values are safe to share across threads.
class Expr {
 public:
  enum class Kind { kVar, kOr, kAnd, kChoose };

  static Expr Var(std::string name) {
    if (name.empty()) throw DomainError("empty node name");
    return Expr(Rep{Kind::kVar, std::move(name), 1, {}});
  }

  static Expr Or(std::vector<Expr> children) {
    return Expr(Rep{Kind::kOr, {}, 1, Flatten(Kind::kOr, std::move(children))});
  }

  static Expr And(std::vector<Expr> children) {
    auto flat = Flatten(Kind::kAnd, std::move(children));
    int n = static_cast<int>(flat.size());
    return Expr(Rep{Kind::kAnd, {}, n, std::move(flat)});
  }

  /// Throws DomainError unless n >= 2 and 1 <= k <= n.
  static Expr Choose(int k, std::vector<Expr> children) {
    int n = static_cast<int>(children.size());
    if (n < 2) {
      throw DomainError("choose needs at least two operands, got " +
                        std::to_string(n));
    }
    if (k < 1 || k > n) {
      throw DomainError("choose threshold " + std::to_string(k) +
                        " outside [1, " + std::to_string(n) + "]");
    }
    return Expr(Rep{Kind::kChoose, {}, k, std::move(children)});
  }

  Kind kind() const { return rep_->kind; }
  bool is_var() const { return rep_->kind == Kind::kVar; }
  /// Node name of a variable; empty for internal nodes.
  const std::string& name() const { return rep_->name; }
  /// Number of children that must hold: 1 for Or, n for And, k for Choose.
  int threshold() const { return rep_->threshold; }
  const std::vector<Expr>& children() const { return rep_->children; }

  /// Structural equality (same shape, same child order).
  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.rep_ == b.rep_) return true;
    return a.kind() == b.kind() && a.name() == b.name() &&
           a.threshold() == b.threshold() && a.children() == b.children();
  }

  friend Expr operator+(const Expr& a, const Expr& b) { return Or({a, b}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return And({a, b}); }

 private:
  struct Rep {
    Kind kind;
    std::string name;
    int threshold;
    std::vector<Expr> children;
  };

  explicit Expr(Rep rep) : rep_(std::make_shared<const Rep>(std::move(rep))) {}

  static std::vector<Expr> Flatten(Kind kind, std::vector<Expr> children) {
    std::vector<Expr> flat;
    for (auto& child : children) {
      if (child.kind() == kind) {
        flat.insert(flat.end(), child.children().begin(),
                    child.children().end());
      } else {
        flat.push_back(std::move(child));
      }
    }
    if (flat.size() < 2) {
      throw DomainError(std::string(kind == Kind::kOr ? "or" : "and") +
                        " needs at least two operands");
    }
    return flat;
  }

  std::shared_ptr<const Rep> rep_;
};

/// Renders `e` with `+`, `*`, parentheses and `choose(k, [...])`, keeping
/// the stored child order.
inline std::string ToString(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kVar:
      return e.name();
    case Expr::Kind::kOr: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) out += " + ";
        out += ToString(e.children()[i]);
      }
      return out;
    }
    case Expr::Kind::kAnd: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        const Expr& child = e.children()[i];
        if (i > 0) out += "*";
        if (child.kind() == Expr::Kind::kOr) {
          out += "(" + ToString(child) + ")";
        } else {
          out += ToString(child);
        }
      }
      return out;
    }
    case Expr::Kind::kChoose: {
      std::string out = "choose(" + std::to_string(e.threshold()) + ", [";
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) out += ", ";
        out += ToString(e.children()[i]);
      }
      return out + "])";
    }
  }
  return {};
}

/// S is a quorum of `e` iff this returns true for the predicate "x in S".
template <typename IsAlive>
  requires std::predicate<IsAlive&, const std::string&>
bool Evaluate(const Expr& e, IsAlive&& is_alive) {
  if (e.is_var()) return is_alive(e.name());
  int needed = e.threshold();
  int remaining = static_cast<int>(e.children().size());
  for (const Expr& child : e.children()) {
    if (Evaluate(child, is_alive)) {
      if (--needed == 0) return true;
    }
    if (--remaining < needed) return false;
  }
  return needed <= 0;
}

inline bool Evaluate(const Expr& e, const std::set<std::string>& alive) {
  return Evaluate(e, [&](const std::string& x) { return alive.count(x) > 0; });
}

/// Swaps and/or; choose(k, n children) becomes choose(n - k + 1, ...).
inline Expr Dual(const Expr& e) {
  if (e.is_var()) return e;
  std::vector<Expr> children;
  children.reserve(e.children().size());
  for (const Expr& child : e.children()) children.push_back(Dual(child));
  switch (e.kind()) {
    case Expr::Kind::kOr:
      return Expr::And(std::move(children));
    case Expr::Kind::kAnd:
      return Expr::Or(std::move(children));
    default: {
      int n = static_cast<int>(children.size());
      return Expr::Choose(n - e.threshold() + 1, std::move(children));
    }
  }
}

inline int Depth(const Expr& e) {
  int deepest = -1;
  for (const Expr& child : e.children()) deepest = std::max(deepest, Depth(child));
  return deepest + 1;
}

namespace internal {
inline void CollectLeaves(const Expr& e, std::vector<std::string>& out) {
  if (e.is_var()) {
    out.push_back(e.name());
    return;
  }
  for (const Expr& child : e.children()) CollectLeaves(child, out);
}
}  // namespace internal

/// Distinct leaf names, sorted.
inline std::vector<std::string> Leaves(const Expr& e) {
  std::vector<std::string> names;
  internal::CollectLeaves(e, names);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

/// True iff no node name labels two leaves. A sufficient, syntactic witness
/// of duplicate-freedom: `a*b + a*c` is rejected although `a*(b + c)` is not.
inline bool UsesEachVariableOnce(const Expr& e) {
  std::vector<std::string> names;
  internal::CollectLeaves(e, names);
  std::sort(names.begin(), names.end());
  return std::adjacent_find(names.begin(), names.end()) == names.end();
}

/// Normal form used for printing and search ordering: choose(1, ...) becomes
/// an Or, choose(n, ...) an And, same-kind nesting is flattened and children
/// are sorted by their rendering.
inline Expr Canonicalize(const Expr& e) {
  if (e.is_var()) return e;
  std::vector<Expr> children;
  children.reserve(e.children().size());
  for (const Expr& child : e.children()) children.push_back(Canonicalize(child));
  int n = static_cast<int>(children.size());
  int k = e.threshold();
  auto sorted = [](std::vector<Expr> v) {
    std::vector<std::pair<std::string, Expr>> keyed;
    keyed.reserve(v.size());
    for (auto& x : v) keyed.emplace_back(ToString(x), std::move(x));
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Expr> out;
    out.reserve(keyed.size());
    for (auto& [key, x] : keyed) out.push_back(std::move(x));
    return out;
  };
  // Flatten before sorting so nested operands are ordered together.
  if (k == 1) return Expr::Or(sorted(Expr::Or(std::move(children)).children()));
  if (k == n) return Expr::And(sorted(Expr::And(std::move(children)).children()));
  return Expr::Choose(k, sorted(std::move(children)));
}

/// `e` lowered onto node indices of a fixed universe for fast evaluation on
/// NodeSets.
class CompiledExpr {
 public:
  /// Throws UnknownNode if a leaf is missing from `universe`.
  CompiledExpr(const Expr& e, const std::vector<std::string>& universe) {
    root_ = Lower(e, universe);
  }

  bool operator()(NodeSet alive) const { return Eval(root_, alive); }

 private:
  struct Op {
    int var;  // -1 for internal nodes
    int threshold;
    int first_child;
    int num_children;
  };

  int Lower(const Expr& e, const std::vector<std::string>& universe) {
    if (e.is_var()) {
      auto it = std::find(universe.begin(), universe.end(), e.name());
      if (it == universe.end()) throw UnknownNode(e.name());
      ops_.push_back({static_cast<int>(it - universe.begin()), 1, 0, 0});
      return static_cast<int>(ops_.size()) - 1;
    }
    std::vector<int> lowered;
    for (const Expr& child : e.children()) lowered.push_back(Lower(child, universe));
    int first = static_cast<int>(kids_.size());
    kids_.insert(kids_.end(), lowered.begin(), lowered.end());
    ops_.push_back({-1, e.threshold(), first, static_cast<int>(lowered.size())});
    return static_cast<int>(ops_.size()) - 1;
  }

  bool Eval(int index, NodeSet alive) const {
    const Op& op = ops_[index];
    if (op.var >= 0) return alive.contains(op.var);
    int needed = op.threshold;
    int remaining = op.num_children;
    for (int i = 0; i < op.num_children; ++i) {
      if (Eval(kids_[op.first_child + i], alive) && --needed == 0) return true;
      if (--remaining < needed) return false;
    }
    return false;
  }

  std::vector<Op> ops_;
  std::vector<int> kids_;
  int root_ = 0;
};

/// Quorum predicate tabulated over all 2^n subsets of an n-node universe.
class QuorumTable {
 public:
  QuorumTable() = default;

  /// Throws UniverseTooLarge when n exceeds kMaxEnumerationNodes.
  QuorumTable(const CompiledExpr& expr, int n) : n_(n) {
    if (n > kMaxEnumerationNodes) throw UniverseTooLarge(n, kMaxEnumerationNodes);
    table_.resize(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < table_.size(); ++mask) {
      table_[mask] = expr(NodeSet(mask));
    }
  }

  int universe_size() const { return n_; }
  bool operator()(NodeSet s) const { return table_[s.bits()]; }

  /// Inclusion-minimal quorums in canonical order. By monotonicity S is
  /// minimal iff S is a quorum and no S minus one element is.
  std::vector<NodeSet> MinimalQuorums() const {
    std::vector<NodeSet> out;
    for (std::uint32_t mask = 0; mask < table_.size(); ++mask) {
      if (!table_[mask]) continue;
      bool minimal = true;
      for (std::uint32_t b = mask; b != 0 && minimal; b &= b - 1) {
        minimal = !table_[mask & ~(b & (~b + 1))];
      }
      if (minimal) out.push_back(NodeSet(mask));
    }
    std::sort(out.begin(), out.end(), CanonicalLess);
    return out;
  }

 private:
  int n_ = 0;
  std::vector<bool> table_;
};

/// Inclusion-minimal subsets of `universe` satisfying `e`, each listed in
/// universe order, sorted by size and then lexicographically.
inline std::vector<std::vector<std::string>> MinimalSets(
    const Expr& e, const std::vector<std::string>& universe) {
  int n = static_cast<int>(universe.size());
  if (n > kMaxEnumerationNodes) throw UniverseTooLarge(n, kMaxEnumerationNodes);
  QuorumTable table(CompiledExpr(e, universe), n);
  std::vector<std::vector<std::string>> out;
  for (NodeSet s : table.MinimalQuorums()) {
    std::vector<std::string> names;
    for (int i : s.indices()) names.push_back(universe[i]);
    out.push_back(std::move(names));
  }
  return out;
}

/// Same, over the sorted leaves of `e`.
inline std::vector<std::vector<std::string>> MinimalSets(const Expr& e) {
  return MinimalSets(e, Leaves(e));
}

}  // namespace rwq
