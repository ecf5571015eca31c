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
#include <cmath>
#include <random>
#include <vector>

#include "flsss/multiset.hpp"
#include "flsss/solver1d.hpp"
#include "test_util.hpp"

using namespace flsss;

namespace {

using Pick = std::vector<std::vector<int>>;

// Cartesian product of per-superset combinations, joint sum summed block by
// block in ascending position.
std::vector<Pick> product_oracle(const MultiInstance& mi) {
  const int K = static_cast<int>(mi.supersets.size());
  std::vector<std::vector<std::vector<int>>> choices(K);
  for (int h = 0; h < K; ++h) {
    testutil::for_each_combination(
        static_cast<int>(mi.supersets[h].size()), mi.sizes[h],
        [&](const std::vector<int>& c) { choices[h].push_back(c); });
  }
  std::vector<Pick> out;
  std::vector<int> at(K, 0);
  for (;;) {
    double sum = 0;
    for (int h = 0; h < K; ++h) {
      for (int i : choices[h][at[h]]) sum += mi.supersets[h][i];
    }
    if (mi.range.contains(sum)) {
      Pick p;
      for (int h = 0; h < K; ++h) p.push_back(choices[h][at[h]]);
      out.push_back(p);
    }
    int h = K - 1;
    while (h >= 0 && at[h] + 1 == static_cast<int>(choices[h].size())) at[h--] = 0;
    if (h < 0) break;
    ++at[h];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pick> picks(const MultiResult& r) {
  std::vector<Pick> out;
  for (const auto& s : r.solutions) out.push_back(s.indexes);
  return out;
}

}  // namespace

TEST_CASE("single superset pools to itself") {
  MultiInstance mi{{{5, 1, 3, 2}}, {2}, {4, 5}};
  auto p = pool(mi);
  CHECK(p.pooled == std::vector<double>{1, 2, 3, 5});
  CHECK(p.adjusted.min == 4);
  CHECK(p.adjusted.max == 5);
  CHECK(p.offsets == std::vector<double>{0});
  auto r = solve_multi(mi, MiningConfig{});
  Superset1D s(mi.supersets[0]);
  auto direct = mine(s, 2, {4, 5}, MiningConfig{});
  REQUIRE(r.solutions.size() == direct.solutions.size());
  for (std::size_t i = 0; i < r.solutions.size(); ++i) {
    CHECK(r.solutions[i].indexes[0] == direct.solutions[i].indexes);
  }
}

TEST_CASE("two supersets shift onto each other") {
  MultiInstance mi{{{1, 2}, {10, 20}}, {1, 1}, {21, 21}};
  auto p = pool(mi);
  CHECK(p.pooled == std::vector<double>{1, 2, 2, 12});
  CHECK(p.adjusted.min == 13);
  CHECK(p.adjusted.max == 13);
  CHECK(p.block_bounds.lower == std::vector<int>{0, 2});
  CHECK(p.block_bounds.upper == std::vector<int>{1, 3});
  auto r = solve_multi(mi, MiningConfig{});
  CHECK(picks(r) == product_oracle(mi));
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].indexes == Pick{{0}, {1}});
}

TEST_CASE("pooled supersets are nondecreasing and shifts are exact") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 100; ++it) {
    const int K = testutil::uniform_int(rng, 1, 4);
    MultiInstance mi;
    for (int h = 0; h < K; ++h) {
      const int N = testutil::uniform_int(rng, 1, 8);
      mi.supersets.push_back(testutil::random_reals(rng, N, -100, 100));
      mi.sizes.push_back(testutil::uniform_int(rng, 1, N));
    }
    mi.range = {-5, 5};
    auto p = pool(mi);
    CHECK(std::is_sorted(p.pooled.begin(), p.pooled.end()));
    CHECK(p.adjusted.width() == doctest::Approx(mi.range.width()));
    // Any block-respecting pick: pooled sum minus shifts equals the original.
    double pooled_sum = 0, orig = 0, shift = 0;
    for (int h = 0; h < K; ++h) {
      Superset1D s(mi.supersets[h]);
      auto sub = testutil::random_subset(rng, s.size(), mi.sizes[h]);
      for (int t : sub) {
        pooled_sum += p.pooled[p.block_start[h] + t];
        orig += s[t];
        shift += p.offsets[h];
      }
    }
    CHECK(pooled_sum - shift == doctest::Approx(orig).epsilon(1e-9));
  }
}

TEST_CASE("joint mining equals the product-space enumeration") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 80; ++it) {
    const int K = testutil::uniform_int(rng, 1, 3);
    MultiInstance mi;
    double t = 0;
    for (int h = 0; h < K; ++h) {
      const int N = testutil::uniform_int(rng, 1, 8);
      auto v = testutil::random_reals(rng, N, -20, 20);
      if (it % 3 == 0) {
        for (double& e : v) e = std::round(e);
      }
      const int n = testutil::uniform_int(rng, 1, std::min(N, 3));
      for (int i : testutil::random_subset(rng, N, n)) t += v[i];
      mi.supersets.push_back(v);
      mi.sizes.push_back(n);
    }
    mi.range = TargetRange::around(t, testutil::uniform(rng, 0, 4));
    for (int threads : {1, 2}) {
      MiningConfig cfg;
      cfg.threads = threads;
      auto r = solve_multi(mi, cfg);
      CHECK(picks(r) == product_oracle(mi));
      for (const auto& s : r.solutions) {
        for (int h = 0; h < K; ++h) {
          CHECK(static_cast<int>(s.indexes[h].size()) == mi.sizes[h]);
        }
      }
    }
  }
}

TEST_CASE("infeasible joint range terminates empty") {
  MultiInstance mi{{{1, 2, 3}, {4, 5}}, {2, 1}, {100, 200}};
  auto r = solve_multi(mi, MiningConfig{});
  CHECK(r.solutions.empty());
  CHECK(r.status == Status::kExhausted);
  MultiInstance bad{{{1, 2}}, {3}, {0, 1}};
  CHECK_THROWS_AS(pool(bad), InfeasibleSize);
}
