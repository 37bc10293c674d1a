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

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rwq/rwq.hpp"
#include "test_util.hpp"

namespace rwq {
namespace {

using ::rwq::testing::CaseStudyNodes;
using ::rwq::testing::CaseStudyWorkload;
using ::rwq::testing::HeterogeneousGridNodes;
using ::rwq::testing::NodeNames;

using Table = std::uint64_t;  // one bit per subset of at most six nodes

Table TableOf(const Expr& e, const std::vector<std::string>& universe) {
  auto bits = oracle::TruthTable(e, universe);
  Table t = 0;
  for (std::size_t s = 0; s < bits.size(); ++s) {
    if (bits[s]) t |= Table{1} << s;
  }
  return t;
}

// Every boolean function of a duplicate-free expression over exactly the
// nodes in `mask`, built by unrestricted recursion over set partitions.
std::set<Table> AllDuplicateFree(unsigned mask, int n, std::map<unsigned, std::set<Table>>& memo) {
  if (auto it = memo.find(mask); it != memo.end()) return it->second;
  std::set<Table> out;
  if (std::popcount(mask) == 1) {
    Table t = 0;
    for (unsigned s = 0; s < (1u << n); ++s) {
      if (s & mask) t |= Table{1} << s;
    }
    out.insert(t);
    return memo[mask] = out;
  }
  // Partitions of mask into blocks; the block holding the lowest node is
  // chosen first to avoid repeats.
  std::function<void(unsigned, std::vector<unsigned>&)> partitions =
      [&](unsigned rest, std::vector<unsigned>& blocks) {
        if (rest == 0) {
          if (blocks.size() < 2) return;
          std::vector<std::vector<Table>> options;
          for (unsigned b : blocks) {
            auto f = AllDuplicateFree(b, n, memo);
            options.emplace_back(f.begin(), f.end());
          }
          std::vector<std::size_t> pick(blocks.size(), 0);
          while (true) {
            for (std::size_t k = 1; k <= blocks.size(); ++k) {
              Table t = 0;
              for (unsigned s = 0; s < (1u << n); ++s) {
                std::size_t alive = 0;
                for (std::size_t i = 0; i < blocks.size(); ++i) alive += options[i][pick[i]] >> s & 1;
                if (alive >= k) t |= Table{1} << s;
              }
              out.insert(t);
            }
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
            if (i == pick.size()) break;
          }
          return;
        }
        unsigned low = rest & -rest;
        unsigned others = rest & ~low;
        for (unsigned sub = others;; sub = (sub - 1) & others) {
          blocks.push_back(low | sub);
          partitions(others & ~sub, blocks);
          blocks.pop_back();
          if (sub == 0) break;
        }
      };
  std::vector<unsigned> blocks;
  partitions(mask, blocks);
  return memo[mask] = out;
}

TEST(CandidateGeneratorTest, SmallCounts) {
  EXPECT_EQ(EnumerateCandidates({"a"}).size(), 1u);
  EXPECT_EQ(EnumerateCandidates({"a", "b"}).size(), 2u);
  // choose(k, [a, b, c]) for k = 1..3, x + y*z and x*(y + z).
  EXPECT_EQ(EnumerateCandidates({"a", "b", "c"}).size(), 9u);
}

TEST(CandidateGeneratorTest, CoversEveryDuplicateFreeFunctionOnce) {
  for (int n = 1; n <= 5; ++n) {
    auto names = NodeNames(n);
    std::map<unsigned, std::set<Table>> memo;
    std::set<Table> expected = AllDuplicateFree((1u << n) - 1, n, memo);
    std::set<Table> seen;
    for (const Expr& e : EnumerateCandidates(names)) {
      ASSERT_TRUE(seen.insert(TableOf(e, names)).second) << "repeat " << ToString(e);
    }
    EXPECT_EQ(seen, expected) << "n=" << n;
  }
}

TEST(CandidateGeneratorTest, CandidatesAreDuplicateFreeOverAllNodes) {
  auto names = NodeNames(5);
  for (const Expr& e : EnumerateCandidates(names)) {
    ASSERT_TRUE(UsesEachVariableOnce(e)) << ToString(e);
    ASSERT_EQ(Leaves(e), names) << ToString(e);
    ASSERT_EQ(Canonicalize(e), e) << ToString(e);
  }
}

TEST(CandidateGeneratorTest, DepthIsNondecreasing) {
  int previous = 0;
  for (const Expr& e : EnumerateCandidates(NodeNames(5))) {
    ASSERT_GE(Depth(e), previous) << ToString(e);
    previous = Depth(e);
  }
}

TEST(CandidateGeneratorTest, ContainsCaseStudyDesigns) {
  auto names = NodeNames(5);
  std::set<Table> tables;
  for (const Expr& e : EnumerateCandidates(names)) tables.insert(TableOf(e, names));
  EXPECT_TRUE(tables.count(TableOf(Parse("(c + b*d)*(a + e)"), names)));
  EXPECT_TRUE(tables.count(TableOf(Parse("choose(2, [a, b, c*d*e])"), names)));
  EXPECT_TRUE(tables.count(TableOf(Parse("a*b + c*d*e"), names)));
  EXPECT_FALSE(tables.count(TableOf(Parse("a*b + a*c*e + d*e + d*c*b"), names)));
}

TEST(CandidateGeneratorTest, RejectsBadNodeLists) {
  EXPECT_THROW(CandidateGenerator({}), DomainError);
  EXPECT_THROW(CandidateGenerator(NodeNames(9)), DomainError);
  EXPECT_THROW(CandidateGenerator({"a", "a"}), DomainError);
}

TEST(SearchTest, LatencyWithCapacityAndNetworkLimits) {
  SearchOptions options;
  options.objective = Objective::kLatency;
  options.constraints = {Rational(150), std::nullopt, Rational(2)};
  auto w = Workload::Fixed(1);
  SearchResult result = Search(HeterogeneousGridNodes(4, 4, 1, 1), w, options);
  EXPECT_EQ(result.metric_value, 1);
  EXPECT_GE(Capacity(result.strategy, result.qs, w), 150);
  EXPECT_LE(NetworkLoad(result.strategy, result.qs, w), 2);
}

TEST(SearchTest, LoadWithFaultTolerance) {
  SearchOptions options;
  options.min_fault_tolerance = 1;
  auto w = CaseStudyWorkload();
  SearchResult result = Search(CaseStudyNodes(), w, options);
  EXPECT_GE(result.qs.FaultTolerance(), 1);
  EXPECT_GE(ToDouble(Capacity(result.strategy, result.qs, w)), 5005 * 0.99);
  EXPECT_EQ(result.metric_value, Load(result.strategy, result.qs, w));
}

TEST(SearchTest, NoFeasibleCandidate) {
  SearchOptions options;
  options.min_fault_tolerance = 5;
  EXPECT_THROW(Search(CaseStudyNodes(), CaseStudyWorkload(), options), NoFeasibleCandidate);
  options.min_fault_tolerance = 0;
  options.constraints.capacity_limit = Rational(1000000);
  EXPECT_THROW(Search(CaseStudyNodes(), CaseStudyWorkload(), options), NoFeasibleCandidate);
}

TEST(SearchTest, BudgetIsDeterministic) {
  SearchOptions options;
  options.candidate_budget = 60;
  auto w = CaseStudyWorkload();
  SearchResult first = Search(CaseStudyNodes(), w, options);
  SearchResult second = Search(CaseStudyNodes(), w, options);
  EXPECT_EQ(first.candidates_examined, 60u);
  EXPECT_EQ(first.qs.reads(), second.qs.reads());
  EXPECT_EQ(first.metric_value, second.metric_value);
}

TEST(SearchTest, BestOfBudgetIsBestOfPrefix) {
  // The result under a budget equals a manual scan of the same prefix.
  auto w = Workload::Fixed(Rational(1, 2));
  auto nodes = HeterogeneousGridNodes();
  SearchOptions options;
  options.candidate_budget = 25;
  SearchResult result = Search(nodes, w, options);
  CandidateGenerator generator({"a", "b", "c", "d"});
  double best = 1e300;
  for (int i = 0; i < 25; ++i) {
    auto e = generator.Next();
    if (!e) break;
    QuorumSystem qs(nodes, *e);
    best = std::min(best, ToDouble(Load(FindStrategy(qs, w), qs, w)));
  }
  EXPECT_NEAR(ToDouble(result.metric_value), best, 1e-9 * best);
}

TEST(SearchTest, RejectsNonPositiveTimeout) {
  SearchOptions options;
  options.timeout_seconds = 0;
  EXPECT_THROW(Search(CaseStudyNodes(), CaseStudyWorkload(), options), DomainError);
}

}  // namespace
}  // namespace rwq
