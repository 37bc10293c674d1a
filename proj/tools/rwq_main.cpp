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

// rwq: analyze, optimize and search read-write quorum systems.
//
// Exit codes: 0 success, 2 configuration or parse error, 3 infeasible,
// 4 search exhausted without a feasible candidate, 1 anything else.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rwq/rwq.hpp"

namespace {

using nlohmann::ordered_json;
using rwq::Rational;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitExhausted = 4;

// Rounded to 9 decimals; integral values are emitted as JSON integers.
ordered_json Number(const Rational& value) {
  std::string text = rwq::FormatDecimal(value);
  if (text.find('.') == std::string::npos) return std::stoll(text);
  return std::stod(text);
}

ordered_json QuorumJson(const rwq::QuorumSystem& qs, rwq::NodeSet q) {
  auto names = qs.Names(q);
  std::sort(names.begin(), names.end());
  return names;
}

ordered_json DistributionJson(const rwq::QuorumSystem& qs,
                              const std::vector<rwq::WeightedQuorum>& dist) {
  ordered_json out = ordered_json::array();
  for (const auto& wq : dist) {
    out.push_back({{"quorum", QuorumJson(qs, wq.quorum)}, {"prob", Number(wq.probability)}});
  }
  return out;
}

void AddMetrics(ordered_json& doc, const rwq::Strategy& sigma, const rwq::QuorumSystem& qs,
                const rwq::Workload& workload) {
  doc["load"] = Number(rwq::Load(sigma, qs, workload));
  doc["capacity"] = Number(rwq::Capacity(sigma, qs, workload));
  doc["latency"] = Number(rwq::Latency(sigma, qs, workload));
  doc["network_load"] = Number(rwq::NetworkLoad(sigma, qs, workload));
}

std::string Canonical(const rwq::Expr& e) { return rwq::ToString(rwq::Canonicalize(e)); }

rwq::QuorumSystem Build(const rwq::Config& config) {
  return rwq::QuorumSystem(config.nodes, config.reads, config.writes);
}

void PrintTable(const ordered_json& doc, const std::string& prefix = "") {
  for (const auto& [key, value] : doc.items()) {
    std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      PrintTable(value, name);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        PrintTable(value[i], name + "[" + std::to_string(i) + "]");
      }
    } else if (value.is_string()) {
      std::cout << name << "  " << value.get<std::string>() << "\n";
    } else {
      std::cout << name << "  " << value.dump() << "\n";
    }
  }
}

void Emit(const ordered_json& doc, bool table) {
  if (table) {
    PrintTable(doc);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

std::string SideLabel(rwq::Side side) { return rwq::SideName(side); }

struct LimitFlags {
  std::string optimize = "load";
  std::optional<std::string> capacity_limit, latency_limit, network_limit;

  void Register(CLI::App* app) {
    app->add_option("--optimize", optimize, "Objective: load, latency or network")
        ->check(CLI::IsMember({"load", "latency", "network"}));
    app->add_option("--capacity-limit", capacity_limit, "Minimum capacity (ops/s)");
    app->add_option("--latency-limit", latency_limit, "Maximum expected latency (s)");
    app->add_option("--network-limit", network_limit, "Maximum expected quorum size");
  }

  rwq::Constraints Constraints() const {
    rwq::Constraints c;
    if (capacity_limit) c.capacity_limit = rwq::ParseRational(*capacity_limit);
    if (latency_limit) c.latency_limit = rwq::ParseRational(*latency_limit);
    if (network_limit) c.network_limit = rwq::ParseRational(*network_limit);
    for (const auto* limit : {&c.capacity_limit, &c.latency_limit, &c.network_limit}) {
      if (*limit && **limit <= 0) throw rwq::ConfigError("limits must be positive");
    }
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model, optimize and search read-write quorum systems"};
  app.require_subcommand(1);
  bool table = false;
  app.add_flag("--table", table, "Human-readable output instead of JSON");

  std::string config_path;
  int f = 0;

  auto* analyze = app.add_subcommand("analyze", "Fault tolerance and load-optimal metrics");
  analyze->add_option("config", config_path, "Configuration file")->required();
  analyze->add_option("--f", f, "Strategy resilience")->check(CLI::NonNegativeNumber);

  LimitFlags strategy_flags;
  auto* strategy = app.add_subcommand("strategy", "Optimal strategy under constraints");
  strategy->add_option("config", config_path, "Configuration file")->required();
  strategy->add_option("--f", f, "Strategy resilience")->check(CLI::NonNegativeNumber);
  strategy_flags.Register(strategy);

  LimitFlags search_flags;
  int fault_tolerance = 0;
  std::optional<double> timeout;
  std::optional<std::size_t> budget;
  auto* search = app.add_subcommand("search", "Search duplicate-free quorum systems");
  search->add_option("config", config_path, "Configuration file (nodes and workload)")
      ->required();
  search->add_option("--f", f, "Strategy resilience")->check(CLI::NonNegativeNumber);
  search->add_option("--fault-tolerance", fault_tolerance, "Minimum fault tolerance")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--timeout", timeout, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  search->add_option("--budget", budget, "Maximum number of candidates");
  search_flags.Register(search);

  int points = 10;
  bool fixed = false;
  auto* curve = app.add_subcommand("curve", "CSV of capacity against read fraction");
  curve->add_option("config", config_path, "Configuration file")->required();
  curve->add_option("--points", points, "Number of intervals on [0, 1]")
      ->check(CLI::PositiveNumber);
  curve->add_flag("--fixed", fixed,
                  "Evaluate the strategy optimized for the configured workload "
                  "instead of re-optimizing at every point");
  curve->add_option("--f", f, "Strategy resilience")->check(CLI::NonNegativeNumber);

  bool uniform = false;
  auto* breakdown = app.add_subcommand("breakdown", "CSV of per-node throughput by quorum");
  breakdown->add_option("config", config_path, "Configuration file")->required();
  breakdown->add_flag("--uniform", uniform, "Use the uniform strategy");
  breakdown->add_option("--f", f, "Strategy resilience")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*analyze) {
      rwq::Config config = rwq::LoadConfig(config_path);
      rwq::QuorumSystem qs = Build(config);
      rwq::Strategy sigma = rwq::FindStrategy(qs, config.workload, rwq::Objective::kLoad, {}, f);
      ordered_json doc;
      doc["reads"] = Canonical(qs.reads());
      doc["writes"] = Canonical(qs.writes());
      doc["fault_tolerance"] = qs.FaultTolerance();
      doc["read_ft"] = qs.ReadFaultTolerance();
      doc["write_ft"] = qs.WriteFaultTolerance();
      doc["capacity"] = Number(rwq::Capacity(sigma, qs, config.workload));
      doc["load"] = Number(rwq::Load(sigma, qs, config.workload));
      doc["latency"] = Number(rwq::Latency(sigma, qs, config.workload));
      doc["network_load"] = Number(rwq::NetworkLoad(sigma, qs, config.workload));
      Emit(doc, table);
    } else if (*strategy) {
      rwq::Config config = rwq::LoadConfig(config_path);
      rwq::QuorumSystem qs = Build(config);
      rwq::Strategy sigma =
          rwq::FindStrategy(qs, config.workload, rwq::ParseObjective(strategy_flags.optimize),
                            strategy_flags.Constraints(), f);
      ordered_json doc;
      doc["read_dist"] = DistributionJson(qs, sigma.reads);
      doc["write_dist"] = DistributionJson(qs, sigma.writes);
      AddMetrics(doc, sigma, qs, config.workload);
      Emit(doc, table);
    } else if (*search) {
      rwq::Config config = rwq::LoadConfig(config_path, /*require_quorums=*/false);
      rwq::SearchOptions options;
      options.objective = rwq::ParseObjective(search_flags.optimize);
      options.constraints = search_flags.Constraints();
      options.min_fault_tolerance = fault_tolerance;
      options.f = f;
      options.timeout_seconds = timeout;
      options.candidate_budget = budget;
      rwq::SearchResult result = rwq::Search(config.nodes, config.workload, options);
      ordered_json doc;
      doc["reads"] = Canonical(result.qs.reads());
      doc["writes"] = Canonical(result.qs.writes());
      doc["strategy"] = {{"read_dist", DistributionJson(result.qs, result.strategy.reads)},
                         {"write_dist", DistributionJson(result.qs, result.strategy.writes)}};
      doc["metric"] = {{"objective", search_flags.optimize},
                       {"value", Number(result.metric_value)}};
      doc["fault_tolerance"] = result.qs.FaultTolerance();
      AddMetrics(doc, result.strategy, result.qs, config.workload);
      doc["candidates_examined"] = result.candidates_examined;
      Emit(doc, table);
    } else if (*curve) {
      rwq::Config config = rwq::LoadConfig(config_path);
      rwq::QuorumSystem qs = Build(config);
      std::vector<Rational> grid;
      for (int i = 0; i <= points; ++i) grid.push_back(Rational(i, points));
      std::vector<rwq::CurvePoint> rows;
      if (fixed) {
        rwq::Strategy sigma =
            rwq::FindStrategy(qs, config.workload, rwq::Objective::kLoad, {}, f);
        rows = rwq::CapacityCurve(sigma, qs, grid);
      } else {
        rows = rwq::CapacityCurve(qs, grid, f);
      }
      std::cout << "read_fraction,capacity\n";
      for (const auto& row : rows) {
        std::cout << rwq::FormatDecimal(row.read_fraction) << ","
                  << rwq::FormatDecimal(row.capacity) << "\n";
      }
    } else if (*breakdown) {
      rwq::Config config = rwq::LoadConfig(config_path);
      rwq::QuorumSystem qs = Build(config);
      rwq::Strategy sigma =
          uniform ? rwq::UniformStrategy(qs, f)
                  : rwq::FindStrategy(qs, config.workload, rwq::Objective::kLoad, {}, f);
      std::cout << "node,side,quorum,throughput\n";
      for (const auto& entry : rwq::ThroughputBreakdown(sigma, qs, config.workload)) {
        auto names = qs.Names(entry.quorum);
        std::string quorum;
        for (const auto& name : names) quorum += (quorum.empty() ? "" : " ") + name;
        std::cout << qs.names()[entry.node] << "," << SideLabel(entry.side) << ","
                  << quorum << "," << rwq::FormatDecimal(entry.throughput) << "\n";
      }
    }
  } catch (const rwq::NoFeasibleCandidate& err) {
    std::cerr << "rwq: search exhausted: " << err.what() << "\n";
    return kExitExhausted;
  } catch (const rwq::Infeasible& err) {
    std::cerr << "rwq: infeasible: " << err.what() << "\n";
    return kExitInfeasible;
  } catch (const rwq::NoResilientQuorum& err) {
    std::cerr << "rwq: infeasible: " << err.what() << "\n";
    return kExitInfeasible;
  } catch (const rwq::SolverFailure& err) {
    std::cerr << "rwq: solver failure: " << err.what() << "\n";
    return 1;
  } catch (const rwq::Error& err) {
    std::cerr << "rwq: " << err.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
