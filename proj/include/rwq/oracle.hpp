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
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rwq/errors.hpp"
#include "rwq/expr.hpp"
#include "rwq/model.hpp"
#include "rwq/optimize.hpp"
#include "rwq/rational.hpp"

// Brute-force reference implementations. They evaluate expressions on
// name sets and enumerate subsets directly, sharing no code with the fast
// paths in model.hpp and optimize.hpp beyond the Expr type itself.
namespace rwq::oracle {

namespace internal {

inline std::set<std::string> Members(const std::vector<std::string>& universe,
                                     std::size_t mask) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if ((mask >> i) & 1U) out.insert(universe[i]);
  }
  return out;
}

inline int Popcount(std::size_t mask) {
  int count = 0;
  for (; mask != 0; mask >>= 1) count += static_cast<int>(mask & 1U);
  return count;
}

}  // namespace internal

/// Bit i is set iff `e` holds on the i-th subset of `universe` (bit j of i
/// selects universe[j]).
inline std::vector<bool> TruthTable(const Expr& e, const std::vector<std::string>& universe) {
  if (universe.size() > static_cast<std::size_t>(kMaxEnumerationNodes)) {
    throw UniverseTooLarge(universe.size(), kMaxEnumerationNodes);
  }
  std::vector<bool> table(std::size_t{1} << universe.size());
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = Evaluate(e, internal::Members(universe, mask));
  }
  return table;
}

/// Smallest number of failures that leaves no quorum of `side`, minus one.
inline int ExhaustiveFaultTolerance(const QuorumSystem& qs, Side side) {
  const auto& universe = qs.names();
  const Expr& e = qs.expression(side);
  std::size_t subsets = std::size_t{1} << universe.size();
  int best = static_cast<int>(universe.size());
  for (std::size_t killed = 0; killed < subsets; ++killed) {
    int size = internal::Popcount(killed);
    if (size >= best) continue;
    if (!Evaluate(e, internal::Members(universe, (subsets - 1) & ~killed))) best = size;
  }
  return best - 1;
}

/// Minimal sets S such that S minus any min(f, |S|) nodes is a quorum,
/// checking every removal and every subset with no pruning. Each set is a
/// sorted list of names; the list is sorted by size then lexicographically.
inline std::vector<std::vector<std::string>> ExhaustiveResilient(const QuorumSystem& qs,
                                                                 Side side, int f) {
  const auto& universe = qs.names();
  const Expr& e = qs.expression(side);
  std::size_t subsets = std::size_t{1} << universe.size();
  std::vector<bool> resilient(subsets, false);
  for (std::size_t s = 0; s < subsets; ++s) {
    int remove = std::min(f, internal::Popcount(s));
    bool ok = true;
    for (std::size_t t = s;; t = (t - 1) & s) {
      if (internal::Popcount(t) == remove &&
          !Evaluate(e, internal::Members(universe, s & ~t))) {
        ok = false;
        break;
      }
      if (t == 0) break;
    }
    resilient[s] = ok;
  }
  std::vector<std::vector<std::string>> out;
  for (std::size_t s = 0; s < subsets; ++s) {
    if (!resilient[s]) continue;
    bool minimal = true;
    for (std::size_t t = (s - 1) & s; minimal; t = (t - 1) & s) {
      if (resilient[t]) minimal = false;
      if (t == 0) break;
    }
    if (!minimal) continue;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if ((s >> i) & 1U) names.push_back(universe[i]);
    }
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

struct Metrics {
  Rational load;      // expected load
  Rational capacity;  // expected capacity
  Rational latency;
  Rational network;
};

/// Exact metrics of a strategy straight from the definitions: per-quorum
/// latency is the minimum over every sub-quorum of its slowest node.
inline Metrics StrategyMetricRecompute(const Strategy& sigma, const QuorumSystem& qs,
                                       const Workload& workload) {
  const auto& nodes = qs.nodes();
  auto node_in = [](const WeightedQuorum& wq, std::size_t i) {
    return (wq.quorum.bits() >> i) & 1U;
  };
  auto quorum_latency = [&](Side side, const WeightedQuorum& wq) {
    const Expr& e = qs.expression(side);
    std::size_t q = wq.quorum.bits();
    std::optional<Rational> best;
    for (std::size_t sub = q;; sub = (sub - 1) & q) {
      if (sub != 0 && Evaluate(e, internal::Members(qs.names(), sub))) {
        Rational slowest = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          if ((sub >> i) & 1U) slowest = std::max(slowest, nodes[i].latency);
        }
        if (!best || slowest < *best) best = slowest;
      }
      if (sub == 0) break;
    }
    return *best;
  };

  Metrics m;
  for (const auto& point : workload.points()) {
    const Rational& fr = point.read_fraction;
    Rational busiest = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Rational reads = 0, writes = 0;
      for (const auto& wq : sigma.reads) {
        if (node_in(wq, i)) reads += wq.probability;
      }
      for (const auto& wq : sigma.writes) {
        if (node_in(wq, i)) writes += wq.probability;
      }
      Rational load = fr * reads / nodes[i].read_cap + (1 - fr) * writes / nodes[i].write_cap;
      busiest = std::max(busiest, load);
    }
    m.load += point.probability * busiest;
    m.capacity += point.probability / busiest;

    Rational read_latency = 0, write_latency = 0, read_size = 0, write_size = 0;
    for (const auto& wq : sigma.reads) {
      read_latency += wq.probability * quorum_latency(Side::kRead, wq);
      read_size += wq.probability * wq.quorum.size();
    }
    for (const auto& wq : sigma.writes) {
      write_latency += wq.probability * quorum_latency(Side::kWrite, wq);
      write_size += wq.probability * wq.quorum.size();
    }
    m.latency += point.probability * (fr * read_latency + (1 - fr) * write_latency);
    m.network += point.probability * (fr * read_size + (1 - fr) * write_size);
  }
  return m;
}

}  // namespace rwq::oracle
