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
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rwq/errors.hpp"
#include "rwq/expr.hpp"
#include "rwq/model.hpp"
#include "rwq/node_set.hpp"
#include "rwq/optimize.hpp"

namespace rwq {

/// Largest node count the candidate generator accepts.
inline constexpr int kMaxSearchNodes = 8;

/// Streams duplicate-free read expressions over a node list in
/// nondecreasing depth.
///
/// Depth 1 holds choose(k, nodes) for every k. A depth-d candidate is
/// choose(k, [e_1..e_m]) over a partition of the nodes into m >= 2 blocks,
/// with e_i a previously generated expression over block i and at least one
/// e_i of depth d - 1. Candidates are put into canonical form, sorted by
/// rendering within a depth, and dropped when their boolean function was
/// already emitted.
class CandidateGenerator {
 public:
  explicit CandidateGenerator(std::vector<std::string> nodes) : nodes_(std::move(nodes)) {
    n_ = static_cast<int>(nodes_.size());
    if (n_ < 1 || n_ > kMaxSearchNodes) {
      throw DomainError("search needs between 1 and " + std::to_string(kMaxSearchNodes) +
                        " nodes, got " + std::to_string(n_));
    }
    std::set<std::string> distinct(nodes_.begin(), nodes_.end());
    if (static_cast<int>(distinct.size()) != n_) throw DomainError("duplicate node names");
    full_ = NodeSet::Full(n_).bits();
  }

  /// Next candidate, or nullopt once the space is exhausted.
  std::optional<Expr> Next() {
    while (true) {
      const auto& level = Level(full_, depth_);
      if (cursor_ < level.size()) return level[cursor_++].expr;
      if (depth_ >= std::max(1, n_ - 1)) return std::nullopt;
      ++depth_;
      cursor_ = 0;
    }
  }

 private:
  using Table = std::array<std::uint64_t, 4>;  // 2^8 subsets

  struct Entry {
    Expr expr;
    Table table;
    int depth;
  };

  struct SubsetState {
    std::vector<std::vector<Entry>> levels;
    std::set<Table> seen;
  };

  static bool Bit(const Table& t, std::uint32_t mask) { return (t[mask >> 6] >> (mask & 63)) & 1U; }
  static void SetBit(Table& t, std::uint32_t mask) { t[mask >> 6] |= std::uint64_t{1} << (mask & 63); }

  Table VarTable(int index) const {
    Table t{};
    for (std::uint32_t mask = 0; mask < (1U << n_); ++mask) {
      if ((mask >> index) & 1U) SetBit(t, mask);
    }
    return t;
  }

  Table ThresholdTable(int k, const std::vector<const Table*>& kids) const {
    Table t{};
    for (std::uint32_t mask = 0; mask < (1U << n_); ++mask) {
      int count = 0;
      for (const Table* kid : kids) count += Bit(*kid, mask);
      if (count >= k) SetBit(t, mask);
    }
    return t;
  }

  static Expr Combine(int k, std::vector<Expr> kids) {
    int m = static_cast<int>(kids.size());
    if (k == 1) return Canonicalize(Expr::Or(std::move(kids)));
    if (k == m) return Canonicalize(Expr::And(std::move(kids)));
    return Canonicalize(Expr::Choose(k, std::move(kids)));
  }

  // Set partitions of `mask` into at least two blocks.
  static std::vector<std::vector<std::uint32_t>> Partitions(std::uint32_t mask) {
    std::vector<int> members = NodeSet(mask).indices();
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> blocks;
    auto recurse = [&](auto&& self, std::size_t i) -> void {
      if (i == members.size()) {
        if (blocks.size() >= 2) out.push_back(blocks);
        return;
      }
      std::uint32_t bit = 1U << members[i];
      // Index loop: the recursion appends to `blocks`.
      for (std::size_t b = 0, count = blocks.size(); b < count; ++b) {
        blocks[b] |= bit;
        self(self, i + 1);
        blocks[b] &= ~bit;
      }
      blocks.push_back(bit);
      self(self, i + 1);
      blocks.pop_back();
    };
    recurse(recurse, 0);
    return out;
  }

  const std::vector<Entry>& Level(std::uint32_t mask, int depth) {
    SubsetState& state = states_[mask];
    while (static_cast<int>(state.levels.size()) <= depth) {
      int d = static_cast<int>(state.levels.size());
      auto built = Build(mask, d);
      SubsetState& s = states_[mask];  // Build may rehash the map
      s.levels.push_back(std::move(built));
    }
    return states_[mask].levels[depth];
  }

  std::vector<Entry> Build(std::uint32_t mask, int d) {
    std::vector<int> members = NodeSet(mask).indices();
    std::vector<Entry> raw;
    if (members.size() == 1) {
      if (d == 0) raw.push_back({Expr::Var(nodes_[members[0]]), VarTable(members[0]), 0});
    } else if (d == 1) {
      std::vector<Expr> vars;
      std::vector<Table> tables;
      for (int i : members) {
        vars.push_back(Expr::Var(nodes_[i]));
        tables.push_back(VarTable(i));
      }
      std::vector<const Table*> kids;
      for (const auto& t : tables) kids.push_back(&t);
      for (int k = 1; k <= static_cast<int>(members.size()); ++k) {
        raw.push_back({Combine(k, vars), ThresholdTable(k, kids), 1});
      }
    } else if (d >= 2) {
      for (const auto& blocks : Partitions(mask)) {
        std::vector<std::vector<const Entry*>> options(blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
          for (int e = 0; e < d; ++e) {
            for (const Entry& entry : Level(blocks[b], e)) options[b].push_back(&entry);
          }
        }
        std::vector<std::size_t> choice(blocks.size(), 0);
        if (std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); })) continue;
        while (true) {
          bool reaches = false;
          std::vector<Expr> kids;
          std::vector<const Table*> tables;
          for (std::size_t b = 0; b < blocks.size(); ++b) {
            const Entry* entry = options[b][choice[b]];
            reaches = reaches || entry->depth == d - 1;
            kids.push_back(entry->expr);
            tables.push_back(&entry->table);
          }
          if (reaches) {
            int m = static_cast<int>(kids.size());
            for (int k = 1; k <= m; ++k) {
              raw.push_back({Combine(k, kids), ThresholdTable(k, tables), d});
            }
          }
          std::size_t b = 0;
          while (b < blocks.size() && ++choice[b] == options[b].size()) choice[b++] = 0;
          if (b == blocks.size()) break;
        }
      }
    }

    std::vector<std::pair<std::string, Entry>> keyed;
    keyed.reserve(raw.size());
    for (auto& entry : raw) keyed.emplace_back(ToString(entry.expr), std::move(entry));
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Entry> level;
    SubsetState& state = states_[mask];
    for (auto& [key, entry] : keyed) {
      if (Depth(entry.expr) != d) continue;
      if (!state.seen.insert(entry.table).second) continue;
      level.push_back(std::move(entry));
    }
    return level;
  }

  std::vector<std::string> nodes_;
  int n_ = 0;
  std::uint32_t full_ = 0;
  std::map<std::uint32_t, SubsetState> states_;
  int depth_ = 0;
  std::size_t cursor_ = 0;
};

/// Every candidate over `nodes`, in emission order.
inline std::vector<Expr> EnumerateCandidates(const std::vector<std::string>& nodes) {
  CandidateGenerator generator(nodes);
  std::vector<Expr> out;
  while (auto e = generator.Next()) out.push_back(std::move(*e));
  return out;
}

struct SearchOptions {
  Objective objective = Objective::kLoad;
  Constraints constraints;
  int min_fault_tolerance = 0;
  /// Resilience of the strategies considered.
  int f = 0;
  std::optional<double> timeout_seconds;
  /// Stop after this many candidates; reproducible, unlike the timeout.
  std::optional<std::size_t> candidate_budget;
};

struct SearchResult {
  QuorumSystem qs;
  Strategy strategy;
  /// Objective value of `strategy` (expected load, latency or network load).
  Rational metric_value;
  std::size_t candidates_examined = 0;
};

/// Finds the read expression (writes are its dual) whose optimal strategy
/// minimizes the objective subject to the constraints and fault tolerance.
/// Ties go to the earliest candidate. Returns the best found so far when the
/// budget or timeout runs out; throws NoFeasibleCandidate if none was.
inline SearchResult Search(const std::vector<Node>& universe, const Workload& workload,
                           const SearchOptions& options) {
  if (options.timeout_seconds && *options.timeout_seconds <= 0) {
    throw DomainError("timeout must be positive");
  }
  std::vector<std::string> names;
  for (const Node& node : universe) names.push_back(node.name);
  CandidateGenerator generator(names);

  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (!options.timeout_seconds) return false;
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count() >= *options.timeout_seconds;
  };

  std::optional<SearchResult> best;
  double best_value = 0;
  std::size_t examined = 0;
  while (true) {
    if (options.candidate_budget && examined >= *options.candidate_budget) break;
    if (out_of_time()) break;
    std::optional<Expr> reads = generator.Next();
    if (!reads) break;
    ++examined;

    QuorumSystem qs(universe, *reads);
    if (qs.FaultTolerance() < options.min_fault_tolerance) continue;
    Strategy sigma;
    try {
      sigma = FindStrategy(qs, workload, options.objective, options.constraints, options.f);
    } catch (const Infeasible&) {
      continue;
    } catch (const NoResilientQuorum&) {
      continue;
    }
    if (!Satisfies(sigma, qs, workload, options.constraints, 1e-9)) continue;
    Rational value = ObjectiveValue(sigma, qs, workload, options.objective);
    double approx = ToDouble(value);
    if (!best || approx < best_value - 1e-9 * std::max(1.0, std::abs(best_value))) {
      best = SearchResult{std::move(qs), std::move(sigma), std::move(value), 0};
      best_value = approx;
    }
  }
  if (!best) {
    throw NoFeasibleCandidate("no candidate among " + std::to_string(examined) +
                              " satisfies the constraints");
  }
  best->candidates_examined = examined;
  return std::move(*best);
}

}  // namespace rwq
