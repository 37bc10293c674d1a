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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "rwq/rwq.hpp"
#include "test_util.hpp"

namespace rwq {
namespace {

using namespace ::rwq::testing;

constexpr double kRoundedTolerance = 0.01;
constexpr double kExactTolerance = 1e-6;

/// Collects the sub-checks of one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    ++count_;
  }
  void Near(double actual, double expected, double tolerance, const std::string& what) {
    std::ostringstream text;
    text << what << " = " << actual << " (expected " << expected << ")";
    Expect(RelativeError(actual, expected) <= tolerance, text.str());
    notes_.push_back(text.str());
  }
  void Equal(const Rational& actual, const Rational& expected, const std::string& what) {
    std::ostringstream text;
    text << what << " = " << actual << " (expected " << expected << ")";
    Expect(actual == expected, text.str());
    notes_.push_back(text.str());
  }
  void Note(const std::string& note) { notes_.push_back(note); }

  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }
  int count() const { return count_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  int count_ = 0;
};

int failed_criteria = 0;

void Criterion(int id, const char* title, const std::function<void(Check&)>& body) {
  Check check;
  auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& err) {
    check.Expect(false, std::string("exception: ") + err.what());
  }
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  bool ok = check.failures().empty();
  if (!ok) ++failed_criteria;
  std::printf("%s %2d %s (%d checks, %.2fs)\n", ok ? "PASS" : "FAIL", id, title, check.count(),
              elapsed.count());
  for (const auto& note : check.notes()) std::printf("       %s\n", note.c_str());
  for (const auto& failure : check.failures()) std::printf("       failed: %s\n", failure.c_str());
  std::fflush(stdout);
}

Rational OptimalCapacity(const QuorumSystem& qs, const Workload& w, int f = 0) {
  return Capacity(FindStrategy(qs, w, Objective::kLoad, {}, f), qs, w);
}

double Seconds(const Rational& r) { return ToDouble(r); }

Strategy RandomStrategy(std::mt19937& rng, const QuorumSystem& qs) {
  Strategy sigma;
  std::uniform_int_distribution<int> weight(0, 20);
  for (Side side : {Side::kRead, Side::kWrite}) {
    auto& dist = side == Side::kRead ? sigma.reads : sigma.writes;
    Rational total = 0;
    for (NodeSet q : qs.MinimalQuorums(side)) {
      Rational p = weight(rng);
      if (p == 0) continue;
      dist.push_back({q, p});
      total += p;
    }
    if (dist.empty()) {
      dist.push_back({qs.MinimalQuorums(side)[0], 1});
      total = 1;
    }
    for (auto& wq : dist) wq.probability /= total;
  }
  return sigma;
}

std::vector<Node> RandomNodes(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> cap(1, 8), latency(1, 5);
  std::vector<Node> nodes;
  for (const auto& name : NodeNames(n)) nodes.push_back(MakeNode(name, cap(rng), cap(rng), latency(rng)));
  return nodes;
}

void MajorityOfThree(Check& c) {
  QuorumSystem qs(UnitNodes(3), Parse("a*b + b*c + a*c"));
  auto w = Workload::Fixed(1);
  Strategy sigma = FindStrategy(qs, w);
  c.Equal(qs.FaultTolerance(), 1, "fault tolerance");
  c.Equal(Load(sigma, qs, w), Rational(2, 3), "load");
  c.Equal(Capacity(sigma, qs, w), Rational(3, 2), "capacity");
}

void TwoByThreeGrid(Check& c) {
  QuorumSystem qs(UnitNodes(6), Parse("a*b*c + d*e*f"));
  c.Equal(qs.ReadFaultTolerance(), 1, "read fault tolerance");
  c.Equal(qs.WriteFaultTolerance(), 2, "write fault tolerance");
  c.Equal(qs.FaultTolerance(), 1, "fault tolerance");
  c.Equal(OptimalCapacity(qs, Workload::Fixed(1)), 2, "capacity at fr=1");
  c.Equal(OptimalCapacity(qs, Workload::Fixed(0)), 3, "capacity at fr=0");
  c.Equal(OptimalCapacity(qs, Workload::Fixed(Rational(1, 2))), Rational(12, 5),
          "capacity at fr=1/2");
}

void HeterogeneousGrid(Check& c) {
  QuorumSystem qs(HeterogeneousGridNodes(), Parse("a*b + c*d"));
  c.Near(Seconds(OptimalCapacity(qs, Workload::Fixed(1))), 300, kExactTolerance, "capacity at fr=1");
  c.Near(Seconds(OptimalCapacity(qs, Workload::Fixed(Rational(1, 2)))), 200, kExactTolerance,
         "capacity at fr=0.5");
  c.Near(Seconds(OptimalCapacity(qs, Workload::Fixed(0))), 100, kExactTolerance, "capacity at fr=0");
}

void SkewedDistribution(Check& c) {
  QuorumSystem qs(HeterogeneousGridNodes(), Parse("a*c + b*d"));
  c.Near(Seconds(OptimalCapacity(qs, SkewedWorkload())), 159, kRoundedTolerance, "capacity");
}

void Resilience(Check& c) {
  auto w = Workload::Fixed(1);
  QuorumSystem grid(HeterogeneousGridNodes(), Parse("a*b + c*d"));
  QuorumSystem read2(HeterogeneousGridNodes(), Parse("choose(2, [a, b, c, d])"));
  c.Near(Seconds(OptimalCapacity(grid, w, 0)), 300, kExactTolerance, "grid f=0");
  c.Near(Seconds(OptimalCapacity(grid, w, 1)), 100, kExactTolerance, "grid f=1");
  c.Near(Seconds(OptimalCapacity(read2, w, 0)), 300, kExactTolerance, "choose(2 of 4) f=0");
  c.Near(Seconds(OptimalCapacity(read2, w, 1)), 200, kExactTolerance, "choose(2 of 4) f=1");
}

const char* const kMajority = "majority([a, b, c, d, e])";
const char* const kGrid = "a*b + c*d*e";
const char* const kPaths = "a*b + a*c*e + d*e + d*c*b";

void CaseStudyCapacities(Check& c) {
  auto w = CaseStudyWorkload();
  const std::pair<const char*, double> cases[] = {{kMajority, 3667}, {kGrid, 4200}, {kPaths, 4125}};
  for (auto [text, expected] : cases) {
    QuorumSystem qs(CaseStudyNodes(), Parse(text));
    c.Near(Seconds(OptimalCapacity(qs, w)), expected, kRoundedTolerance, text);
  }
}

void UniformBaseline(Check& c) {
  QuorumSystem qs(CaseStudyNodes(), Parse(kMajority));
  auto w = CaseStudyWorkload();
  c.Near(Seconds(Capacity(UniformStrategy(qs), qs, w)), 2292, kRoundedTolerance,
         "uniform majority capacity");
}

void LoadSearch(Check& c) {
  auto w = CaseStudyWorkload();
  QuorumSystem direct(CaseStudyNodes(), Parse("(c + b*d)*(a + e)"));
  c.Near(Seconds(OptimalCapacity(direct, w)), 5005, kRoundedTolerance, "(c + b*d)*(a + e) capacity");
  c.Equal(direct.FaultTolerance(), 1, "(c + b*d)*(a + e) fault tolerance");

  SearchOptions options;
  options.min_fault_tolerance = 1;
  options.timeout_seconds = 60;
  SearchResult result = Search(CaseStudyNodes(), w, options);
  double capacity = Seconds(Capacity(result.strategy, result.qs, w));
  c.Note("search returned " + ToString(result.qs.reads()) + " after " +
         std::to_string(result.candidates_examined) + " candidates");
  c.Expect(capacity >= 5005 * 0.99, "search capacity " + std::to_string(capacity) + " >= 4954.95");
  c.Expect(result.qs.FaultTolerance() >= 1, "search result fault tolerance >= 1");
}

void LatencySearch(Check& c) {
  auto w = CaseStudyWorkload();
  Constraints limit{Rational(2000), std::nullopt, std::nullopt};
  const std::pair<const char*, double> cases[] = {{kMajority, 3.24},
                                                  {kGrid, 1.95},
                                                  {kPaths, 2.43},
                                                  {"choose(2, [a, b, c*d*e])", 1.48}};
  for (auto [text, expected] : cases) {
    QuorumSystem qs(CaseStudyNodes(), Parse(text));
    Strategy sigma = FindStrategy(qs, w, Objective::kLatency, limit);
    c.Expect(Satisfies(sigma, qs, w, limit), std::string(text) + " meets capacity 2000");
    c.Near(Seconds(Latency(sigma, qs, w)), expected, kRoundedTolerance, text);
  }

  SearchOptions options;
  options.objective = Objective::kLatency;
  options.constraints = limit;
  options.min_fault_tolerance = 1;
  options.timeout_seconds = 60;
  SearchResult result = Search(CaseStudyNodes(), w, options);
  double latency = Seconds(result.metric_value);
  c.Note("search returned " + ToString(result.qs.reads()) + " with latency " +
         std::to_string(latency));
  c.Expect(latency <= 1.49, "search latency " + std::to_string(latency) + " <= 1.49");
  c.Expect(Satisfies(result.strategy, result.qs, w, limit), "search result meets capacity 2000");
}

void ConstrainedLatency(Check& c) {
  QuorumSystem qs(HeterogeneousGridNodes(4, 4, 1, 1), Parse("a*b + c*d"));
  auto w = Workload::Fixed(1);
  Constraints limits{Rational(150), std::nullopt, Rational(2)};
  Strategy sigma = FindStrategy(qs, w, Objective::kLatency, limits);
  c.Near(Seconds(Latency(sigma, qs, w)), 2.0, kExactTolerance, "latency");
  c.Expect(Capacity(sigma, qs, w) >= 150, "capacity >= 150 exactly");
  c.Expect(NetworkLoad(sigma, qs, w) <= 2, "network load <= 2 exactly");
}

void PropertySuites(Check& c) {
  std::mt19937 rng(20261019);

  auto six = NodeNames(6);
  int dual_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Expr e = RandomExpr(rng, six, 4);
    auto table = oracle::TruthTable(e, six);
    auto dual = oracle::TruthTable(Dual(e), six);
    if (oracle::TruthTable(Dual(Dual(e)), six) != table) ++dual_failures;
    // Transversal property: S satisfies the dual iff it meets every quorum,
    // i.e. iff its complement is not a quorum.
    for (std::size_t s = 0; s < table.size(); ++s) {
      if (dual[s] != !table[(table.size() - 1) & ~s]) {
        ++dual_failures;
        break;
      }
    }
  }
  c.Expect(dual_failures == 0, "dual involution and transversal property (200 expressions)");
  c.Note("dual checks: 200 expressions, " + std::to_string(dual_failures) + " failures");

  int ft_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 6;
    QuorumSystem qs(UnitNodes(n), RandomExpr(rng, NodeNames(n), 3));
    for (Side side : {Side::kRead, Side::kWrite}) {
      if (qs.FaultTolerance(side) != oracle::ExhaustiveFaultTolerance(qs, side)) ++ft_failures;
    }
  }
  c.Expect(ft_failures == 0, "fault tolerance matches oracle (200 systems)");

  int resilient_failures = 0;
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + trial % 5;
    QuorumSystem qs(UnitNodes(n), RandomExpr(rng, NodeNames(n), 3));
    for (Side side : {Side::kRead, Side::kWrite}) {
      for (int f = 0; f <= 2; ++f) {
        auto expected = oracle::ExhaustiveResilient(qs, side, f);
        std::vector<std::vector<std::string>> actual;
        try {
          for (NodeSet s : qs.ResilientQuorums(side, f)) actual.push_back(qs.Names(s));
        } catch (const NoResilientQuorum&) {
        }
        if (actual != expected) ++resilient_failures;
      }
    }
  }
  c.Expect(resilient_failures == 0, "resilient quorums match oracle (150 systems, f <= 2)");

  int lp_failures = 0;
  const int systems = 10;
  for (int system = 0; system < systems; ++system) {
    int n = 2 + system % 4;
    QuorumSystem qs(RandomNodes(rng, n), RandomExpr(rng, NodeNames(n), 3));
    auto w = system % 2 == 0 ? Workload::Fixed(Rational(system % 5, 4)) : SkewedWorkload();
    double optimum = ToDouble(Load(FindStrategy(qs, w), qs, w));
    for (int k = 0; k < 1000; ++k) {
      if (ToDouble(Load(RandomStrategy(rng, qs), qs, w)) < optimum * (1 - 1e-6)) ++lp_failures;
    }
  }
  c.Expect(lp_failures == 0, "LP optimum unbeaten by 1000 random strategies on each of 10 systems");

  int scale_failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 4;
    auto nodes = RandomNodes(rng, n);
    Expr reads = RandomExpr(rng, NodeNames(n), 3);
    auto scaled = nodes;
    for (Node& node : scaled) {
      node.read_cap *= 7;
      node.write_cap *= 7;
    }
    auto w = trial % 2 == 0 ? SkewedWorkload() : Workload::Fixed(Rational(trial % 4, 3));
    double base = ToDouble(OptimalCapacity(QuorumSystem(nodes, reads), w));
    double big = ToDouble(OptimalCapacity(QuorumSystem(scaled, reads), w));
    if (RelativeError(big, 7 * base) > 1e-6) ++scale_failures;
  }
  c.Expect(scale_failures == 0, "capacity scales with node capacities (20 systems)");

  QuorumSystem qs(HeterogeneousGridNodes(), Parse("a*c + b*d"));
  Strategy sigma = FindStrategy(qs, SkewedWorkload());
  std::vector<Rational> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(Rational(i, 10));
  auto fixed = CapacityCurve(sigma, qs, grid);
  auto optimized = CapacityCurve(qs, grid);
  bool dominated = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (ToDouble(fixed[i].capacity) > ToDouble(optimized[i].capacity) * (1 + 1e-9)) dominated = false;
  }
  c.Expect(dominated, "fixed-strategy curve lies under the optimized curve (11 points)");
}

void CliGolden(Check& c) {
  auto cases = LoadGoldenCases(RWQ_GOLDEN_DIR, RWQ_CONFIG_DIR);
  int exit_checks = 0;
  for (const auto& golden : cases) {
    CliResult result = RunCli(RWQ_CLI, golden.args);
    c.Expect(result.exit_code == golden.exit_code,
             golden.name + " exit " + std::to_string(result.exit_code) + ", expected " +
                 std::to_string(golden.exit_code));
    c.Expect(result.out == ReadFile(std::string(RWQ_GOLDEN_DIR) + "/" + golden.name + ".out"),
             golden.name + " output differs from golden file");
    if (golden.exit_code != 0) ++exit_checks;
  }
  c.Note(std::to_string(cases.size()) + " golden cases, " + std::to_string(exit_checks) +
         " of them failure exits");
}

}  // namespace
}  // namespace rwq

int main() {
  using namespace rwq;
  Criterion(1, "majority of three: fault tolerance, load, capacity", MajorityOfThree);
  Criterion(2, "2x3 grid: fault tolerance and capacities", TwoByThreeGrid);
  Criterion(3, "heterogeneous 2x2 grid capacities", HeterogeneousGrid);
  Criterion(4, "skewed workload distribution capacity", SkewedDistribution);
  Criterion(5, "f-resilient capacities", Resilience);
  Criterion(6, "case study capacities", CaseStudyCapacities);
  Criterion(7, "uniform majority baseline", UniformBaseline);
  Criterion(8, "load-optimal construction and search", LoadSearch);
  Criterion(9, "latency under a capacity limit and latency search", LatencySearch);
  Criterion(10, "latency with capacity and network limits", ConstrainedLatency);
  Criterion(11, "property suites", PropertySuites);
  Criterion(12, "CLI golden outputs and exit codes", CliGolden);
  std::printf("%d of 12 criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
