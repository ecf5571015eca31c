// Copyright 2026 The flsss Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "flsss/knapsack.hpp"
#include "flsss/oracle.hpp"
#include "test_util.hpp"

using namespace flsss;

namespace {

KnapsackInstance one_column(const std::vector<double>& cost,
                            const std::vector<double>& profit, double budget,
                            int n) {
  KnapsackInstance k;
  k.costs = RealMatrix(static_cast<int>(cost.size()), 1);
  for (std::size_t i = 0; i < cost.size(); ++i) k.costs(static_cast<int>(i), 0) = cost[i];
  k.profits = profit;
  k.budgets = {budget};
  k.n = n;
  return k;
}

KnapsackInstance random_instance(std::mt19937_64& rng, int N, int d) {
  KnapsackInstance k;
  k.costs = RealMatrix(N, d);
  k.profits.resize(N);
  k.budgets.resize(d);
  const bool integral = testutil::uniform_int(rng, 0, 1) == 0;
  for (int i = 0; i < N; ++i) {
    for (int t = 0; t < d; ++t) {
      k.costs(i, t) = integral ? testutil::uniform_int(rng, 0, 20)
                               : testutil::uniform(rng, 0, 100);
    }
    k.profits[i] = integral ? testutil::uniform_int(rng, -5, 30)
                            : testutil::uniform(rng, -10, 100);
  }
  for (int t = 0; t < d; ++t) {
    double total = 0;
    for (int i = 0; i < N; ++i) total += k.costs(i, t);
    k.budgets[t] = total * testutil::uniform(rng, 0.1, 0.6);
  }
  k.n = testutil::uniform_int(rng, 1, N);
  return k;
}

void check_fits(const KnapsackInstance& k, const KnapsackResult& r) {
  for (int t = 0; t < k.costs.cols(); ++t) {
    double s = 0;
    for (int i : r.indexes) s += k.costs(i, t);
    CHECK(s <= k.budgets[t]);
  }
}

}  // namespace

TEST_CASE("small fixed-size instance") {
  auto k = one_column({1, 2, 3, 4}, {1, 2, 3, 4}, 5, 2);
  auto r = solve_mf01k(k, MiningConfig{});
  REQUIRE(r.feasible);
  CHECK(r.profit == 5);
  CHECK(r.status == Status::kExhausted);
  check_fits(k, r);
}

TEST_CASE("whole set when budgets cover everything") {
  auto k = one_column({3, 1, 4, 1, 5}, {2, 7, 1, 8, 2}, 14, 5);
  auto r = solve_mf01k(k, MiningConfig{});
  REQUIRE(r.feasible);
  CHECK(r.indexes == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("classic variable-size instance") {
  auto k = one_column({2, 3, 4, 5}, {3, 4, 5, 6}, 5, 0);
  auto r = solve_01(k, MiningConfig{});
  REQUIRE(r.feasible);
  CHECK(r.profit == 7);
  CHECK(r.indexes == std::vector<int>{0, 1});
}

TEST_CASE("infeasible budgets") {
  auto k = one_column({2, 3, 4, 5}, {3, 4, 5, 6}, 0, 2);
  CHECK_FALSE(solve_mf01k(k, MiningConfig{}).feasible);
  CHECK_FALSE(solve_01(k, MiningConfig{}).feasible);
}

TEST_CASE("bad input") {
  auto k = one_column({1, 2}, {1}, 3, 1);
  CHECK_THROWS_AS(solve_mf01k(k, MiningConfig{}), InvalidInput);
  k = one_column({1, 2}, {1, 2}, 3, 3);
  CHECK_THROWS_AS(solve_mf01k(k, MiningConfig{}), InfeasibleSize);
  k.n = 1;
  KnapsackOptions o;
  o.phi = 0;
  CHECK_THROWS_AS(solve_mf01k(k, MiningConfig{}, o), ConfigError);
}

TEST_CASE("fixed-size optimum matches exhaustive search") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    const int N = testutil::uniform_int(rng, 1, 16);
    const int d = testutil::uniform_int(rng, 1, 3);
    auto k = random_instance(rng, N, d);
    auto best = oracle::brute_knapsack(k.costs, k.profits, k.budgets, k.n);
    for (int threads : {1, 3}) {
      for (int phi : {1, 4, 16}) {
        for (bool prune : {true, false}) {
          MiningConfig cfg;
          cfg.threads = threads;
          cfg.use_binary_search = it % 2 == 1;
          KnapsackOptions o{phi, prune};
          auto r = solve_mf01k(k, cfg, o);
          REQUIRE(r.feasible == best.feasible);
          if (best.feasible) {
            CHECK(r.profit == best.profit);
            CHECK(static_cast<int>(r.indexes.size()) == k.n);
            check_fits(k, r);
          }
        }
      }
    }
  }
}

TEST_CASE("any-size optimum matches exhaustive search") {
  std::mt19937_64 rng(6);
  for (int it = 0; it < 100; ++it) {
    const int N = testutil::uniform_int(rng, 1, 14);
    const int d = testutil::uniform_int(rng, 1, 3);
    auto k = random_instance(rng, N, d);
    auto best = oracle::brute_knapsack(k.costs, k.profits, k.budgets, -1);
    for (bool prune : {true, false}) {
      KnapsackOptions o;
      o.prune = prune;
      auto r = solve_01(k, MiningConfig{}, o);
      REQUIRE(r.feasible == best.feasible);
      if (best.feasible) {
        CHECK(r.profit == best.profit);
        check_fits(k, r);
      }
    }
    // Same optimum as the best fixed-size run.
    double top = -1e300;
    bool any = false;
    for (int n = 1; n <= N; ++n) {
      k.n = n;
      auto r = solve_mf01k(k, MiningConfig{});
      if (r.feasible && (!any || r.profit > top)) top = r.profit;
      any = any || r.feasible;
    }
    CHECK(any == best.feasible);
    if (any) CHECK(top == best.profit);
  }
}

TEST_CASE("pruning only saves work") {
  std::mt19937_64 rng(8);
  std::uint64_t with = 0, without = 0;
  for (int it = 0; it < 30; ++it) {
    auto k = random_instance(rng, 16, 2);
    k.n = 6;
    KnapsackOptions on, off;
    off.prune = false;
    auto a = solve_mf01k(k, MiningConfig{}, on);
    auto b = solve_mf01k(k, MiningConfig{}, off);
    CHECK(a.feasible == b.feasible);
    if (a.feasible) CHECK(a.profit == b.profit);
    with += a.nodes;
    without += b.nodes;
  }
  CHECK(with < without);
}
