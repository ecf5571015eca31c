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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "flsss/contraction.hpp"
#include "flsss/oracle.hpp"
#include "flsss/solver1d.hpp"
#include "flsss/subspacing.hpp"
#include "test_util.hpp"

using namespace flsss;

namespace {

std::vector<std::vector<int>> index_sets(const MineResult& r) {
  std::vector<std::vector<int>> out;
  for (const auto& s : r.solutions) out.push_back(s.indexes);
  return out;
}

MiningConfig config(SubspacingVariant v, bool bisearch, int threads = 1) {
  MiningConfig c;
  c.variant = v;
  c.use_binary_search = bisearch;
  c.threads = threads;
  return c;
}

}  // namespace

TEST_CASE("make_superset sorts stably and keeps the permutation") {
  const std::vector<double> v = {3, 1, 2};
  auto sv = make_superset(v);
  CHECK(std::vector<double>(sv.superset.elems().begin(),
                            sv.superset.elems().end()) ==
        std::vector<double>{1, 2, 3});
  CHECK(sv.permutation == std::vector<int>{1, 2, 0});

  std::mt19937_64 rng(3);
  auto big = testutil::random_reals(rng, 1000, 0, 1e6);
  auto sb = make_superset(big);
  auto ref = big;
  std::sort(ref.begin(), ref.end());
  for (int k = 0; k < 1000; ++k) {
    CHECK(sb.superset[k] == ref[k]);
    CHECK(big[sb.permutation[k]] == sb.superset[k]);
  }

  const std::vector<double> bad = {1.0, std::nan(""), 2.0};
  try {
    Superset1D s(bad);
    FAIL("expected rejection");
  } catch (const InvalidInput& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("initial bounds") {
  auto b = initial_bounds(10, 5);
  CHECK(b.lower == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(b.upper == std::vector<int>{5, 6, 7, 8, 9});
  CHECK(initial_bounds(3, 3).upper == std::vector<int>{0, 1, 2});
  CHECK(initial_bounds(6, 1).upper == std::vector<int>{5});
  CHECK_THROWS_AS(initial_bounds(3, 4), InfeasibleSize);
}

TEST_CASE("hand-sized instances") {
  const std::vector<double> v = {1, 2, 3, 4};
  Superset1D s(v);
  for (auto var : {SubspacingVariant::kBinary, SubspacingVariant::kVariable}) {
    auto r = mine(s, 2, {5, 5}, config(var, false));
    CHECK(index_sets(r) == std::vector<std::vector<int>>{{0, 3}, {1, 2}});
    CHECK(r.status == Status::kExhausted);
  }
}

TEST_CASE("worked instance is solved") {
  const std::vector<double> v = {14, 60, 134, 135, 141, 192, 199, 203, 207, 234};
  Superset1D s(v);
  auto r = solve_fixed(s, 5, 817, 4, MiningConfig{});
  REQUIRE_FALSE(r.solutions.empty());
  for (const auto& sol : r.solutions) {
    double sum = 0;
    for (int i : sol.indexes) sum += v[i];
    CHECK(sum >= 813);
    CHECK(sum <= 821);
  }
  CHECK(index_sets(r) == oracle::brute_1d(v, 5, {813, 821}));
}

TEST_CASE("whole-set subset") {
  const std::vector<double> v = {2.5, -1, 7};
  Superset1D s(v);
  CHECK(mine(s, 3, {8.5, 8.5}, MiningConfig{}).solutions.size() == 1);
  CHECK(mine(s, 3, {9, 10}, MiningConfig{}).solutions.empty());
}

TEST_CASE("planted target in a large superset meets the quota") {
  std::mt19937_64 rng(101);
  auto v = testutil::random_reals(rng, 1000, 0, 1);
  auto pick = testutil::random_subset(rng, 1000, 100);
  double t = 0;
  for (int i : pick) t += v[i];
  Superset1D s(v);
  MiningConfig cfg;
  cfg.max_solutions = 10;
  cfg.time_limit = std::chrono::seconds(30);
  auto r = solve_fixed(s, 100, t, 1e-4, cfg);
  CHECK(r.solutions.size() == 10);
  CHECK(r.status == Status::kQuota);
  for (const auto& sol : r.solutions) {
    CHECK(sol.indexes.size() == 100);
    CHECK(std::fabs(sol.achieved[0] - t) <= 1e-4);
  }
}

TEST_CASE("mining equals exhaustive enumeration") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 150; ++it) {
    const int N = testutil::uniform_int(rng, 1, 14);
    const int n = testutil::uniform_int(rng, 1, std::min(N, 6));
    auto v = testutil::random_reals(rng, N, -10, 10);
    if (it % 5 == 0) {
      for (double& e : v) e = std::round(e);  // exercise duplicates
    }
    Superset1D s(v);
    auto pick = testutil::random_subset(rng, N, n);
    double t = 0;
    for (int i : pick) t += v[i];
    const double me = it % 2 ? 0.0 : testutil::uniform(rng, 0, 3);
    const TargetRange range = TargetRange::around(t, me);
    const auto expected = oracle::brute_1d(v, n, range);
    for (auto var : {SubspacingVariant::kBinary, SubspacingVariant::kVariable}) {
      for (bool bis : {false, true}) {
        for (int threads : {1, 3}) {
          auto r = mine(s, n, range, config(var, bis, threads));
          CHECK(index_sets(r) == expected);
        }
      }
    }
  }
}

TEST_CASE("leaves are never reported twice and respect the fixed buffer") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 100; ++it) {
    const int N = testutil::uniform_int(rng, 4, 20);
    const int n = testutil::uniform_int(rng, 1, std::min(N, 5));
    auto v = testutil::random_reals(rng, N, 0, 10);
    for (double& e : v) e = std::round(e);
    Superset1D s(v);
    const double t = std::round(testutil::uniform(rng, 0, 10.0 * n));
    ElementTable<double> x = scalar_table(s);
    QuasiTriangleMatrix<ScalarAlgebra> m(ScalarAlgebra{}, x, n);
    ElementTable<double> lo(1, 1), hi(1, 1);
    lo.row(0)[0] = t - 1;
    hi.row(0)[0] = t + 1;
    MiningConfig cfg;
    SearchControl ctl(cfg);
    std::vector<std::vector<int>> raw;
    auto accept = [&](int, std::span<const int> b) {
      CHECK(static_cast<int>(b.size()) == n);
      std::vector<int> idx(b.begin(), b.end());
      std::sort(idx.begin(), idx.end());
      raw.push_back(idx);
    };
    mine_rows(ScalarAlgebra{}, x, m, lo, hi, {0}, initial_bounds(N, n), cfg, ctl,
              accept);
    std::set<std::vector<int>> uniq(raw.begin(), raw.end());
    CHECK(uniq.size() == raw.size());
    std::vector<double> sorted(s.elems().begin(), s.elems().end());
    CHECK(raw.size() == oracle::brute_1d(sorted, n, {t - 1, t + 1}).size());
  }
}

TEST_CASE("variable size strategies agree") {
  const std::vector<double> v = {1, 2, 3};
  Superset1D s(v);
  for (auto strat : {VariableStrategy::kPadZeros, VariableStrategy::kLoopSizes}) {
    auto r = solve_variable(s, 3, 0, MiningConfig{}, strat);
    CHECK(index_sets(r) == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(solve_variable(s, 7, 0.5, MiningConfig{}, strat).solutions.empty());
  }

  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    const int N = testutil::uniform_int(rng, 1, 10);
    auto w = testutil::random_reals(rng, N, -5, 5);
    for (double& e : w) e = std::round(e);
    Superset1D sw(w);
    const double t = std::round(testutil::uniform(rng, -8, 8));
    auto a = solve_variable(sw, t, 0.5, MiningConfig{}, VariableStrategy::kPadZeros);
    auto b = solve_variable(sw, t, 0.5, MiningConfig{}, VariableStrategy::kLoopSizes);
    CHECK(index_sets(a) == index_sets(b));
    std::vector<std::vector<int>> expected;
    for (int n = 1; n <= N; ++n) {
      for (auto& e : oracle::brute_1d(w, n, {t - 0.5, t + 0.5})) expected.push_back(e);
    }
    std::sort(expected.begin(), expected.end());
    CHECK(index_sets(b) == expected);
  }
}

TEST_CASE("bounded mining") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 60; ++it) {
    const int N = testutil::uniform_int(rng, 3, 12);
    const int n = testutil::uniform_int(rng, 1, std::min(N, 4));
    auto v = testutil::random_reals(rng, N, 0, 20);
    Superset1D s(v);
    const double t = testutil::uniform(rng, 0, 20.0 * n);
    const TargetRange range{t - 4, t + 4};
    auto full = mine(s, n, range, MiningConfig{});
    auto same = solve_bounded(s, range, initial_bounds(N, n), MiningConfig{});
    CHECK(index_sets(full) == index_sets(same));
    if (full.solutions.size() != 1) continue;
    // Exclude the unique solution by capping its first sorted position.
    std::vector<int> sorted_pos;
    for (int p : full.solutions[0].indexes) {
      sorted_pos.push_back(static_cast<int>(
          std::find(s.perm().begin(), s.perm().end(), p) - s.perm().begin()));
    }
    std::sort(sorted_pos.begin(), sorted_pos.end());
    if (sorted_pos[0] == 0) continue;
    auto b = initial_bounds(N, n);
    for (int k = 0; k < n; ++k) b.upper[k] = std::min(b.upper[k], sorted_pos[0] - 1 + k);
    if (b.upper[0] < 0) continue;
    bool valid = true;
    for (int k = 0; k < n; ++k) valid = valid && b.lower[k] <= b.upper[k];
    if (!valid) continue;
    CHECK(solve_bounded(s, range, b, MiningConfig{}).solutions.empty());
  }
  Superset1D s(std::vector<double>{1, 2, 3});
  IndexBounds bad{{1, 0}, {2, 2}};
  CHECK_THROWS_AS(solve_bounded(s, {0, 10}, bad, MiningConfig{}), InvalidInput);
}

TEST_CASE("time limit yields a partial result") {
  std::mt19937_64 rng(5);
  auto v = testutil::random_reals(rng, 200, 0, 1);
  Superset1D s(v);
  MiningConfig cfg;
  cfg.time_limit = std::chrono::milliseconds(50);
  auto r = mine(s, 60, {20, 40}, cfg);
  CHECK(r.status == Status::kTimeout);
}
