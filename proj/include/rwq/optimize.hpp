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
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwq/errors.hpp"
#include "rwq/lp.hpp"
#include "rwq/model.hpp"
#include "rwq/node_set.hpp"
#include "rwq/rational.hpp"

namespace rwq {

enum class Objective { kLoad, kLatency, kNetwork };

inline const char* ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kLoad: return "load";
    case Objective::kLatency: return "latency";
    case Objective::kNetwork: return "network";
  }
  return "";
}

inline Objective ParseObjective(std::string_view name) {
  if (name == "load") return Objective::kLoad;
  if (name == "latency") return Objective::kLatency;
  if (name == "network") return Objective::kNetwork;
  throw DomainError("unknown objective '" + std::string(name) + "'");
}

/// Optional bounds imposed while optimizing. The capacity limit bounds the
/// expected load by its reciprocal.
struct Constraints {
  std::optional<Rational> capacity_limit;
  std::optional<Rational> latency_limit;
  std::optional<Rational> network_limit;
};

struct WeightedQuorum {
  NodeSet quorum;
  Rational probability;
};

/// Probability distributions over read quorums and over write quorums.
/// Quorums with zero probability are omitted.
struct Strategy {
  std::vector<WeightedQuorum> reads;
  std::vector<WeightedQuorum> writes;
  int f = 0;

  const std::vector<WeightedQuorum>& side(Side s) const {
    return s == Side::kRead ? reads : writes;
  }
};

/// Time to assemble a quorum of `side` after contacting the nodes of `q`:
/// nodes are taken fastest first until the prefix is itself a quorum.
inline Rational QuorumLatency(const QuorumSystem& qs, Side side, NodeSet q) {
  std::vector<int> members = q.indices();
  std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
    return qs.nodes()[a].latency < qs.nodes()[b].latency;
  });
  NodeSet prefix;
  for (int i : members) {
    prefix = prefix.with(i);
    if (qs.IsQuorum(side, prefix)) return qs.nodes()[i].latency;
  }
  throw DomainError("set is not a " + std::string(SideName(side)) + " quorum");
}

namespace internal {

inline Rational SideProbability(const std::vector<WeightedQuorum>& dist, int node) {
  Rational total = 0;
  for (const auto& wq : dist) {
    if (wq.quorum.contains(node)) total += wq.probability;
  }
  return total;
}

// Best rational approximation of x with denominator at most `max_den`, if
// one lies within `tolerance`; otherwise the exact value of x.
inline Rational Snap(double x, std::int64_t max_den = 1'000'000, double tolerance = 1e-12) {
  if (x <= 0) return Rational(0);
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int step = 0; step < 64; ++step) {
    double whole = std::floor(rest);
    if (whole > 1e15) break;
    auto a = static_cast<std::int64_t>(whole);
    std::int64_t h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tolerance) {
      return Rational(h1) / Rational(k1);
    }
    double frac = rest - whole;
    if (frac < 1e-18) break;
    rest = 1.0 / frac;
  }
  return FromDouble(x);
}

inline std::vector<WeightedQuorum> Normalize(std::vector<WeightedQuorum> dist) {
  Rational total = 0;
  for (const auto& wq : dist) total += wq.probability;
  if (total != 1) {
    for (auto& wq : dist) wq.probability /= total;
  }
  return dist;
}

}  // namespace internal

/// Normalized load on node `index` for one read fraction.
inline Rational NodeLoadAt(const Strategy& sigma, const QuorumSystem& qs,
                           const Rational& read_fraction, int index) {
  const Node& node = qs.nodes()[index];
  Rational load = 0;
  if (read_fraction != 0) {
    load += read_fraction * internal::SideProbability(sigma.reads, index) / node.read_cap;
  }
  if (read_fraction != 1) {
    load += (1 - read_fraction) * internal::SideProbability(sigma.writes, index) /
            node.write_cap;
  }
  return load;
}

/// Workload-weighted normalized load on node `name`.
inline Rational NodeLoad(const Strategy& sigma, const QuorumSystem& qs,
                         const Workload& workload, const std::string& name) {
  int index = qs.IndexOf(name);
  Rational load = 0;
  for (const auto& point : workload.points()) {
    load += point.probability * NodeLoadAt(sigma, qs, point.read_fraction, index);
  }
  return load;
}

/// Load of the busiest node at a single read fraction.
inline Rational LoadAt(const Strategy& sigma, const QuorumSystem& qs,
                       const Rational& read_fraction) {
  Rational worst = 0;
  for (int i = 0; i < qs.size(); ++i) {
    Rational load = NodeLoadAt(sigma, qs, read_fraction, i);
    if (load > worst) worst = load;
  }
  return worst;
}

/// Expected load over the workload: sum of p(f_r) * load_{f_r}.
inline Rational Load(const Strategy& sigma, const QuorumSystem& qs,
                     const Workload& workload) {
  Rational total = 0;
  for (const auto& point : workload.points()) {
    total += point.probability * LoadAt(sigma, qs, point.read_fraction);
  }
  return total;
}

/// Expected capacity over the workload: sum of p(f_r) / load_{f_r}. For a
/// single read fraction this is 1 / Load.
inline Rational Capacity(const Strategy& sigma, const QuorumSystem& qs,
                         const Workload& workload) {
  Rational total = 0;
  for (const auto& point : workload.points()) {
    total += point.probability / LoadAt(sigma, qs, point.read_fraction);
  }
  return total;
}

/// Expected time to assemble the chosen quorum.
inline Rational Latency(const Strategy& sigma, const QuorumSystem& qs,
                        const Workload& workload) {
  Rational reads = 0, writes = 0;
  for (const auto& wq : sigma.reads) {
    reads += wq.probability * QuorumLatency(qs, Side::kRead, wq.quorum);
  }
  for (const auto& wq : sigma.writes) {
    writes += wq.probability * QuorumLatency(qs, Side::kWrite, wq.quorum);
  }
  Rational fr = workload.MeanReadFraction();
  return fr * reads + (1 - fr) * writes;
}

/// Expected number of nodes contacted per operation.
inline Rational NetworkLoad(const Strategy& sigma, const QuorumSystem& qs,
                            const Workload& workload) {
  (void)qs;
  Rational reads = 0, writes = 0;
  for (const auto& wq : sigma.reads) reads += wq.probability * wq.quorum.size();
  for (const auto& wq : sigma.writes) writes += wq.probability * wq.quorum.size();
  Rational fr = workload.MeanReadFraction();
  return fr * reads + (1 - fr) * writes;
}

/// The quantity an objective minimizes.
inline Rational ObjectiveValue(const Strategy& sigma, const QuorumSystem& qs,
                               const Workload& workload, Objective objective) {
  switch (objective) {
    case Objective::kLoad: return Load(sigma, qs, workload);
    case Objective::kLatency: return Latency(sigma, qs, workload);
    case Objective::kNetwork: return NetworkLoad(sigma, qs, workload);
  }
  return 0;
}

/// Checks `constraints` against a strategy in exact arithmetic, allowing a
/// relative slack of `tolerance` (zero for an exact check).
inline bool Satisfies(const Strategy& sigma, const QuorumSystem& qs,
                      const Workload& workload, const Constraints& constraints,
                      double tolerance = 0) {
  const Rational slack = 1 + FromDouble(tolerance);
  if (constraints.capacity_limit &&
      Load(sigma, qs, workload) * *constraints.capacity_limit > slack) {
    return false;
  }
  if (constraints.latency_limit &&
      Latency(sigma, qs, workload) > *constraints.latency_limit * slack) {
    return false;
  }
  if (constraints.network_limit &&
      NetworkLoad(sigma, qs, workload) > *constraints.network_limit * slack) {
    return false;
  }
  return true;
}

/// Each minimal f-resilient quorum of each side with equal probability.
inline Strategy UniformStrategy(const QuorumSystem& qs, int f = 0) {
  Strategy sigma;
  sigma.f = f;
  for (Side side : {Side::kRead, Side::kWrite}) {
    auto quorums = qs.ResilientQuorums(side, f);
    Rational p(1, static_cast<long>(quorums.size()));
    auto& dist = side == Side::kRead ? sigma.reads : sigma.writes;
    for (NodeSet q : quorums) dist.push_back({q, p});
  }
  return sigma;
}

/// Optimal strategy over the minimal f-resilient quorums.
///
/// The linear program has one probability per quorum and one load variable
/// L_j per workload point. For every node x and point (f_j, p_j):
///
///   f_j / cap_R(x) * sum_{r ni x} p_r + (1 - f_j) / cap_W(x) * sum_{w ni x} p_w <= L_j
///
/// and the objective is sum_j p_j L_j, the expected latency, or the
/// expected network load. Load variables are scaled by the largest node
/// capacity to keep coefficients near one.
///
/// Throws Infeasible, NoResilientQuorum or SolverFailure.
inline Strategy FindStrategy(const QuorumSystem& qs, const Workload& workload,
                             Objective objective = Objective::kLoad,
                             const Constraints& constraints = {}, int f = 0) {
  auto read_quorums = qs.ResilientQuorums(Side::kRead, f);
  auto write_quorums = qs.ResilientQuorums(Side::kWrite, f);
  const int num_reads = static_cast<int>(read_quorums.size());
  const int num_writes = static_cast<int>(write_quorums.size());

  Rational scale_exact = 0;
  for (const Node& node : qs.nodes()) {
    scale_exact = std::max({scale_exact, node.read_cap, node.write_cap});
  }
  const double scale = ToDouble(scale_exact);
  const double mean_fr = ToDouble(workload.MeanReadFraction());

  lp::LinearProgram program;
  for (int i = 0; i < num_reads + num_writes; ++i) program.AddVariable();
  std::vector<int> load_vars;
  for (std::size_t j = 0; j < workload.points().size(); ++j) {
    load_vars.push_back(program.AddVariable());
  }

  for (std::size_t j = 0; j < workload.points().size(); ++j) {
    const double fr = ToDouble(workload.points()[j].read_fraction);
    for (int x = 0; x < qs.size(); ++x) {
      const Node& node = qs.nodes()[x];
      const double read_coeff = fr * scale / ToDouble(node.read_cap);
      const double write_coeff = (1 - fr) * scale / ToDouble(node.write_cap);
      std::vector<std::pair<int, double>> terms;
      if (read_coeff != 0) {
        for (int r = 0; r < num_reads; ++r) {
          if (read_quorums[r].contains(x)) terms.emplace_back(r, read_coeff);
        }
      }
      if (write_coeff != 0) {
        for (int w = 0; w < num_writes; ++w) {
          if (write_quorums[w].contains(x)) terms.emplace_back(num_reads + w, write_coeff);
        }
      }
      if (terms.empty()) continue;
      terms.emplace_back(load_vars[j], -1.0);
      program.AddConstraint(std::move(terms), lp::Sense::kLessEqual, 0.0);
    }
  }

  std::vector<std::pair<int, double>> read_sum, write_sum;
  for (int r = 0; r < num_reads; ++r) read_sum.emplace_back(r, 1.0);
  for (int w = 0; w < num_writes; ++w) write_sum.emplace_back(num_reads + w, 1.0);
  program.AddConstraint(std::move(read_sum), lp::Sense::kEqual, 1.0);
  program.AddConstraint(std::move(write_sum), lp::Sense::kEqual, 1.0);

  std::vector<std::pair<int, double>> load_expr, latency_expr, network_expr;
  for (std::size_t j = 0; j < workload.points().size(); ++j) {
    load_expr.emplace_back(load_vars[j], ToDouble(workload.points()[j].probability));
  }
  for (int r = 0; r < num_reads; ++r) {
    latency_expr.emplace_back(
        r, mean_fr * ToDouble(QuorumLatency(qs, Side::kRead, read_quorums[r])));
    network_expr.emplace_back(r, mean_fr * read_quorums[r].size());
  }
  for (int w = 0; w < num_writes; ++w) {
    latency_expr.emplace_back(
        num_reads + w,
        (1 - mean_fr) * ToDouble(QuorumLatency(qs, Side::kWrite, write_quorums[w])));
    network_expr.emplace_back(num_reads + w, (1 - mean_fr) * write_quorums[w].size());
  }

  if (constraints.capacity_limit) {
    if (*constraints.capacity_limit <= 0) throw DomainError("capacity limit must be positive");
    program.AddConstraint(load_expr, lp::Sense::kLessEqual,
                          scale / ToDouble(*constraints.capacity_limit));
  }
  if (constraints.latency_limit) {
    program.AddConstraint(latency_expr, lp::Sense::kLessEqual,
                          ToDouble(*constraints.latency_limit));
  }
  if (constraints.network_limit) {
    program.AddConstraint(network_expr, lp::Sense::kLessEqual,
                          ToDouble(*constraints.network_limit));
  }

  const auto& objective_terms = objective == Objective::kLoad      ? load_expr
                                : objective == Objective::kLatency ? latency_expr
                                                                   : network_expr;
  for (auto [var, coeff] : objective_terms) program.SetObjective(var, coeff);

  lp::Solution solution = lp::Solve(program);
  switch (solution.status) {
    case lp::Status::kOptimal: break;
    case lp::Status::kInfeasible:
      throw Infeasible("no strategy satisfies the constraints");
    case lp::Status::kUnbounded:
      throw SolverFailure("linear program reported unbounded");
    case lp::Status::kIterationLimit:
      throw SolverFailure("simplex iteration limit reached");
  }
  if (program.MaxViolation(solution.values) > 1e-9) {
    throw SolverFailure("solution violates constraints by " +
                        std::to_string(program.MaxViolation(solution.values)));
  }

  auto extract = [&](const std::vector<NodeSet>& quorums, int offset, bool snap) {
    std::vector<WeightedQuorum> dist;
    for (std::size_t i = 0; i < quorums.size(); ++i) {
      double p = solution.values[offset + i];
      if (p <= 1e-12) continue;
      dist.push_back({quorums[i], snap ? internal::Snap(p) : FromDouble(p)});
    }
    return internal::Normalize(std::move(dist));
  };

  // Prefer short rational probabilities (the optimum of these programs is
  // usually a simple fraction); keep the raw values if rounding would break
  // a constraint.
  Strategy sigma{extract(read_quorums, 0, true), extract(write_quorums, num_reads, true), f};
  if (!Satisfies(sigma, qs, workload, constraints)) {
    sigma = Strategy{extract(read_quorums, 0, false),
                     extract(write_quorums, num_reads, false), f};
  }
  return sigma;
}

struct CurvePoint {
  Rational read_fraction;
  Rational capacity;
};

/// Capacity of a fixed strategy at each read fraction.
inline std::vector<CurvePoint> CapacityCurve(const Strategy& sigma, const QuorumSystem& qs,
                                             const std::vector<Rational>& grid) {
  std::vector<CurvePoint> out;
  for (const Rational& fr : grid) out.push_back({fr, 1 / LoadAt(sigma, qs, fr)});
  return out;
}

/// Capacity of the quorum system re-optimized at each read fraction.
inline std::vector<CurvePoint> CapacityCurve(const QuorumSystem& qs,
                                             const std::vector<Rational>& grid, int f = 0) {
  std::vector<CurvePoint> out;
  for (const Rational& fr : grid) {
    Strategy sigma = FindStrategy(qs, Workload::Fixed(fr), Objective::kLoad, {}, f);
    out.push_back({fr, 1 / LoadAt(sigma, qs, fr)});
  }
  return out;
}

struct ThroughputEntry {
  int node;
  Side side;
  NodeSet quorum;
  Rational throughput;  // operations per second
};

/// Per-node throughput contributed by each quorum when the strategy runs at
/// its peak rate. At read fraction f_j the system sustains 1 / load_{f_j}
/// operations per second, and read quorum r receives f_j * sigma_R(r) of
/// them; contributions are averaged over the workload. Ordered by node, then
/// reads before writes, then strategy order. Zero entries are omitted.
inline std::vector<ThroughputEntry> ThroughputBreakdown(const Strategy& sigma,
                                                        const QuorumSystem& qs,
                                                        const Workload& workload) {
  Rational read_rate = 0, write_rate = 0;
  for (const auto& point : workload.points()) {
    Rational peak = 1 / LoadAt(sigma, qs, point.read_fraction);
    read_rate += point.probability * peak * point.read_fraction;
    write_rate += point.probability * peak * (1 - point.read_fraction);
  }
  std::vector<ThroughputEntry> out;
  for (int x = 0; x < qs.size(); ++x) {
    for (Side side : {Side::kRead, Side::kWrite}) {
      const Rational& rate = side == Side::kRead ? read_rate : write_rate;
      if (rate == 0) continue;
      for (const auto& wq : sigma.side(side)) {
        if (!wq.quorum.contains(x)) continue;
        out.push_back({x, side, wq.quorum, rate * wq.probability});
      }
    }
  }
  return out;
}

}  // namespace rwq
