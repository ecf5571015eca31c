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
#include <cstdint>
#include <random>
#include <vector>

#include "flsss/contraction.hpp"
#include "test_util.hpp"

using namespace flsss;

namespace {

const std::vector<double> kFindBound = {14,  60,  134, 135, 141,
                                        192, 199, 203, 207, 234};

}  // namespace

TEST_CASE("consecutive sums match direct summation") {
  SUBCASE("small hand case") {
    const std::vector<double> v = {1, 2, 3};
    Superset1D s(v);
    auto x = scalar_table(s);
    QuasiTriangleMatrix<ScalarAlgebra> m(ScalarAlgebra{}, x, 2);
    CHECK(*m.at(0, 0) == 1);
    CHECK(*m.at(2, 0) == 3);
    CHECK(*m.at(0, 1) == 3);
    CHECK(*m.at(1, 1) == 5);
  }
  SUBCASE("random superset") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-100, 100);
    std::vector<double> v(50);
    for (double& e : v) e = d(rng);
    Superset1D s(v);
    auto x = scalar_table(s);
    QuasiTriangleMatrix<ScalarAlgebra> m(ScalarAlgebra{}, x, 10);
    for (int c = 0; c < 10; ++c) {
      for (int r = 0; r + c < 50; ++r) {
        double acc = s[r];
        for (int j = 1; j <= c; ++j) acc += s[r + j];
        CHECK(*m.at(r, c) == acc);
      }
    }
  }
}

TEST_CASE("worked instance contracts to the published rectangle") {
  Superset1D s(kFindBound);
  for (auto order : {SweepOrder::kLowerFirst, SweepOrder::kUpperFirst}) {
    for (auto mode : {SearchMode::kLinear, SearchMode::kBinary}) {
      auto r = contract_1d(s, initial_bounds(10, 5), {813, 821}, mode, order);
      REQUIRE(r.feasible);
      CHECK(r.bounds.lower == std::vector<int>{0, 2, 4, 5, 7});
      CHECK(r.bounds.upper == std::vector<int>{2, 5, 7, 8, 9});
    }
  }
}

TEST_CASE("degenerate ranges") {
  const std::vector<double> v = {1, 3, 4, 9, 12, 20};
  Superset1D s(v);
  SUBCASE("minimum sum collapses to the first n") {
    auto r = contract_1d(s, initial_bounds(6, 3), {8, 8}, SearchMode::kLinear);
    REQUIRE(r.feasible);
    CHECK(r.bounds.lower == std::vector<int>{0, 1, 2});
    CHECK(r.bounds.upper == std::vector<int>{0, 1, 2});
  }
  SUBCASE("whole set") {
    auto r = contract_1d(s, initial_bounds(6, 6), {49, 49}, SearchMode::kLinear);
    CHECK(r.feasible);
    auto bad = contract_1d(s, initial_bounds(6, 6), {50, 60}, SearchMode::kLinear);
    CHECK_FALSE(bad.feasible);
  }
  SUBCASE("single position upper bound") {
    auto r = contract_1d(s, initial_bounds(6, 1), {-100, 10}, SearchMode::kLinear);
    REQUIRE(r.feasible);
    CHECK(r.bounds.upper[0] == 3);
  }
}

TEST_CASE("one sweep gives the exact extreme index per position") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    const int N = 12, n = 4;
    auto v = testutil::random_reals(rng, N, -50, 50);
    Superset1D s(v);
    auto x = scalar_table(s);
    QuasiTriangleMatrix<ScalarAlgebra> m(ScalarAlgebra{}, x, n);
    Contractor<ScalarAlgebra> c(ScalarAlgebra{}, x, m, SearchMode::kLinear);
    const double lo = testutil::uniform(rng, -80, 80);
    const double hi = lo + testutil::uniform(rng, 0, 30);

    // Brute-force extremes over increasing arrays within the hypercube.
    std::vector<int> best_lo(n, N), best_hi(n, -1);
    bool any_lo = false, any_hi = false;
    testutil::for_each_combination(N, n, [&](const std::vector<int>& idx) {
      double sum = 0;
      for (int i : idx) sum += s[i];
      if (sum >= lo) {
        any_lo = true;
        for (int k = 0; k < n; ++k) best_lo[k] = std::min(best_lo[k], idx[k]);
      }
      if (sum <= hi) {
        any_hi = true;
        for (int k = 0; k < n; ++k) best_hi[k] = std::max(best_hi[k], idx[k]);
      }
    });

    auto b = initial_bounds(N, n);
    double sl = 0, su = 0, fixed = 0;
    for (int k = 0; k < n; ++k) {
      sl += s[b.lower[k]];
      su += s[b.upper[k]];
    }
    bool changed = false;
    BoxRef<double> box{n, b.lower.data(), b.upper.data(), &sl, &su, &fixed};
    const bool ok_lo = c.lower_sweep(box, &lo, &changed);
    CHECK(ok_lo == any_lo);
    if (ok_lo) CHECK(b.lower == best_lo);

    auto b2 = initial_bounds(N, n);
    sl = su = 0;
    for (int k = 0; k < n; ++k) {
      sl += s[b2.lower[k]];
      su += s[b2.upper[k]];
    }
    BoxRef<double> box2{n, b2.lower.data(), b2.upper.data(), &sl, &su, &fixed};
    const bool ok_hi = c.upper_sweep(box2, &hi, &changed);
    CHECK(ok_hi == any_hi);
    if (ok_hi) CHECK(b2.upper == best_hi);
  }
}

TEST_CASE("linear and binary search agree exactly") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; ++it) {
    const int N = 8 + static_cast<int>(rng() % 40);
    const int n = 1 + static_cast<int>(rng() % std::min(N, 12));
    auto v = testutil::random_reals(rng, N, -1000, 1000);
    Superset1D s(v);
    std::vector<int> pick = testutil::random_subset(rng, N, n);
    double t = 0;
    for (int i : pick) t += s[i];
    const TargetRange range{t - testutil::uniform(rng, 0, 50),
                            t + testutil::uniform(rng, 0, 50)};
    auto a = contract_1d(s, initial_bounds(N, n), range, SearchMode::kLinear);
    auto b = contract_1d(s, initial_bounds(N, n), range, SearchMode::kBinary);
    CHECK(a.feasible == b.feasible);
    CHECK(a.bounds == b.bounds);
  }
}

TEST_CASE("contraction never drops a qualified subset") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 300; ++it) {
    const int N = 6 + static_cast<int>(rng() % 9);
    const int n = 1 + static_cast<int>(rng() % std::min(N, 6));
    auto v = testutil::random_reals(rng, N, -20, 20);
    Superset1D s(v);
    auto pick = testutil::random_subset(rng, N, n);
    double t = 0;
    for (int i : pick) t += s[i];
    const TargetRange range{t - testutil::uniform(rng, 0, 5), t + 1e-9};
    auto start = initial_bounds(N, n);
    auto r = contract_1d(s, start, range, SearchMode::kBinary);
    testutil::for_each_combination(N, n, [&](const std::vector<int>& idx) {
      double sum = 0;
      for (int i : idx) sum += s[i];
      if (!range.contains(sum)) return;
      REQUIRE(r.feasible);
      for (int k = 0; k < n; ++k) {
        CHECK(idx[k] >= r.bounds.lower[k]);
        CHECK(idx[k] <= r.bounds.upper[k]);
      }
    });
    for (int k = 0; k < n && r.feasible; ++k) {
      CHECK(r.bounds.lower[k] >= start.lower[k]);
      CHECK(r.bounds.upper[k] <= start.upper[k]);
    }
  }
}

namespace {

// Exact algebra: no refresh, so running sums must be maintained precisely.
struct IntAlgebra {
  using word = std::int64_t;
  static constexpr bool kExact = true;
  static constexpr int width() { return 1; }
  static void add(word* a, const word* b) { a[0] += b[0]; }
  static void sub(word* a, const word* b) { a[0] -= b[0]; }
  static void copy(word* a, const word* b) { a[0] = b[0]; }
  static void zero(word* a) { a[0] = 0; }
  static void sum_into(word* dst, const word* a, const word* b) { dst[0] = a[0] + b[0]; }
  static bool geq(const word* a, const word* b) { return a[0] >= b[0]; }
  static bool leq(const word* a, const word* b) { return a[0] <= b[0]; }
};

}  // namespace

TEST_CASE("running sums stay exact under contraction") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 2000; ++it) {
    const int N = testutil::uniform_int(rng, 2, 16);
    const int n = testutil::uniform_int(rng, 1, N);
    std::vector<std::int64_t> v(N);
    for (auto& e : v) e = testutil::uniform_int(rng, 0, 40);
    std::sort(v.begin(), v.end());
    ElementTable<std::int64_t> x(N, 1);
    for (int i = 0; i < N; ++i) x.row(i)[0] = v[i];
    QuasiTriangleMatrix<IntAlgebra> m(IntAlgebra{}, x, n);
    Contractor<IntAlgebra> c(IntAlgebra{}, x, m,
                             it % 2 ? SearchMode::kBinary : SearchMode::kLinear);
    auto b = initial_bounds(N, n);
    std::int64_t sl = 0, su = 0, fixed = 0;
    for (int k = 0; k < n; ++k) {
      sl += v[b.lower[k]];
      su += v[b.upper[k]];
    }
    const std::int64_t lo = testutil::uniform_int(rng, 0, 40 * n);
    const std::int64_t hi = lo + testutil::uniform_int(rng, 0, 20);
    BoxRef<std::int64_t> box{n, b.lower.data(), b.upper.data(), &sl, &su, &fixed};
    if (!c.contract(box, &lo, &hi)) continue;
    std::int64_t el = 0, eu = 0;
    for (int k = 0; k < n; ++k) {
      el += v[b.lower[k]];
      eu += v[b.upper[k]];
    }
    REQUIRE(sl == el);
    REQUIRE(su == eu);
  }
}
