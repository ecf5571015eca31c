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

#include "flsss/mdim.hpp"
#include "flsss/packedint.hpp"
#include "test_util.hpp"

using namespace flsss;

namespace {

RealMatrix column(const std::vector<double>& v) {
  RealMatrix m(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

std::vector<std::int64_t> zcol(const IntegerizedInstance& z) {
  std::vector<std::int64_t> out;
  for (int r = 0; r < z.xz.rows(); ++r) out.push_back(z.xz(r, 0));
  return out;
}

std::vector<std::vector<int>> sets(const MineResult& r) {
  std::vector<std::vector<int>> out;
  for (const auto& s : r.solutions) out.push_back(s.indexes);
  return out;
}

}  // namespace

TEST_CASE("integerization follows the affine map") {
  const std::vector<double> lo = {0}, hi = {10};
  {
    const std::vector<std::int64_t> lam = {10};
    auto z = integerize(column({0, 5, 10}), lo, hi, 1, lam);
    CHECK(zcol(z) == std::vector<std::int64_t>{0, 5, 10});
  }
  {
    const std::vector<std::int64_t> lam = {4};
    auto z = integerize(column({1, 2, 4}), lo, hi, 1, lam);
    CHECK(zcol(z) == std::vector<std::int64_t>{0, 1, 3});
  }
  {
    // Ties round away from zero: (1.5 - 0) / 2 * 1 = 0.75 -> 1; 1/2 -> 1.
    const std::vector<std::int64_t> lam = {1};
    auto z = integerize(column({0, 1, 2}), lo, hi, 1, lam);
    CHECK(zcol(z) == std::vector<std::int64_t>{0, 1, 1});
  }
  {
    const std::vector<std::int64_t> lam = {8};
    auto z = integerize(column({3, 3, 3}), lo, hi, 2, lam);
    CHECK(zcol(z) == std::vector<std::int64_t>{0, 0, 0});
    CHECK(z.lambda[0] == 0);
    CHECK(z.zlo[0] == 0);
    CHECK(z.zhi[0] == 0);
  }
  {
    const std::vector<std::int64_t> lam = {100};
    auto z = integerize(column({-4, -2, 0}), std::vector<double>{-6},
                        std::vector<double>{-2}, 2, lam);
    CHECK(zcol(z) == std::vector<std::int64_t>{0, 50, 100});
    CHECK(z.zlo[0] == 50);
    CHECK(z.zhi[0] == 150);
  }
}

TEST_CASE("layout arithmetic") {
  {
    const std::vector<std::uint64_t> psi = {255, 255};
    auto L = layout_from_psi(psi);
    CHECK(L.bits == std::vector<int>{9, 9});
    CHECK(L.words == 1);
    CHECK(L.place[0].shift == 55);
    CHECK(L.place[1].shift == 46);
    CHECK(L.mask[0] == ((std::uint64_t{1} << 63) | (std::uint64_t{1} << 54)));
  }
  {
    const std::vector<std::uint64_t> psi(8, 255);
    auto L = layout_from_psi(psi);
    CHECK(L.words == 2);
    CHECK(L.place[6].word == 0);
    CHECK(L.place[7].word == 1);
  }
  {
    // Powers of two need one more bit than ceil(log2).
    const std::vector<std::uint64_t> psi = {256, 0, 1};
    auto L = layout_from_psi(psi);
    CHECK(L.bits == std::vector<int>{10, 1, 2});
  }
  const std::vector<std::uint64_t> huge = {std::uint64_t{1} << 62};
  CHECK_THROWS_AS(layout_from_psi(huge), ConfigError);

  std::mt19937_64 rng(1);
  for (int it = 0; it < 500; ++it) {
    const int d = testutil::uniform_int(rng, 1, 20);
    std::vector<std::uint64_t> psi(d);
    for (auto& p : psi) p = rng() >> testutil::uniform_int(rng, 2, 63);
    auto L = layout_from_psi(psi);
    std::vector<std::uint64_t> occupied(L.words, 0);
    for (int t = 0; t < d; ++t) {
      CHECK(L.place[t].shift >= 0);
      CHECK(L.place[t].shift + L.bits[t] <= 64);
      const std::uint64_t field =
          (L.bits[t] == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << L.bits[t]) - 1))
          << L.place[t].shift;
      CHECK((occupied[L.place[t].word] & field) == 0);
      occupied[L.place[t].word] |= field;
      CHECK(psi[t] < (std::uint64_t{1} << (L.bits[t] - 1)));
    }
    for (int w = 0; w < L.words; ++w) CHECK(std::popcount(L.mask[w]) >= 1);
  }
}

TEST_CASE("pack and unpack round trip") {
  const std::vector<std::uint64_t> psi = {1000, 7, 1u << 20, 3, 90000, 1};
  auto L = layout_from_psi(psi);
  const std::vector<std::int64_t> zero(6, 0);
  for (auto w : pack_row(L, zero)) CHECK(w == 0);
  std::vector<std::int64_t> top, bottom;
  for (int t = 0; t < 6; ++t) {
    const std::int64_t lim = (std::int64_t{1} << (L.bits[t] - 1)) - 1;
    top.push_back(lim);
    bottom.push_back(-lim);
  }
  CHECK(unpack_row(L, pack_row(L, top)) == top);
  CHECK(unpack_row(L, pack_row(L, bottom)) == bottom);
  std::vector<std::int64_t> psis(psi.begin(), psi.end());
  CHECK(unpack_row(L, pack_row(L, psis)) == psis);

  std::mt19937_64 rng(2);
  for (int it = 0; it < 100000; ++it) {
    std::vector<std::int64_t> v(6);
    for (int t = 0; t < 6; ++t) {
      const std::int64_t lim = (std::int64_t{1} << (L.bits[t] - 1)) - 1;
      v[t] = std::uniform_int_distribution<std::int64_t>(-lim, lim)(rng);
    }
    REQUIRE(unpack_row(L, pack_row(L, v)) == v);
  }
  std::vector<std::int64_t> bad = zero;
  bad[1] = 8;
  CHECK_THROWS_AS(pack_row(L, bad), PackOverflow);
}

TEST_CASE("packed operations equal unpacked operations") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200000; ++it) {
    const int d = testutil::uniform_int(rng, 1, 9);
    std::vector<std::uint64_t> psi(d);
    for (auto& p : psi) p = rng() >> testutil::uniform_int(rng, 34, 63);
    auto L = layout_from_psi(psi);
    PackedAlgebra alg(L);
    std::vector<std::int64_t> a(d), b(d);
    for (int t = 0; t < d; ++t) {
      const std::int64_t lim = ((std::int64_t{1} << (L.bits[t] - 1)) - 1) / 2;
      std::uniform_int_distribution<std::int64_t> dist(-lim, lim);
      a[t] = dist(rng);
      b[t] = rng() % 4 == 0 ? a[t] : dist(rng);
    }
    auto pa = pack_row(L, a), pb = pack_row(L, b);
    auto s = pa;
    alg.add(s.data(), pb.data());
    auto diff = pa;
    alg.sub(diff.data(), pb.data());
    auto us = unpack_row(L, s), ud = unpack_row(L, diff);
    bool le = true, ge = true;
    for (int t = 0; t < d; ++t) {
      REQUIRE(us[t] == a[t] + b[t]);
      REQUIRE(ud[t] == a[t] - b[t]);
      le = le && a[t] <= b[t];
      ge = ge && a[t] >= b[t];
    }
    REQUIRE(alg.leq(pa.data(), pb.data()) == le);
    REQUIRE(alg.geq(pa.data(), pb.data()) == ge);
    REQUIRE(alg.leq(pa.data(), pa.data()));
  }
}

TEST_CASE("fine integerization reproduces real-valued mining") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 20; ++it) {
    const int N = 30, d = 4, n = 5;
    RealMatrix x(N, d);
    for (int s = 0; s < N; ++s)
      for (int t = 0; t < d; ++t) x(s, t) = testutil::uniform(rng, 0, 100);
    auto pick = testutil::random_subset(rng, N, n);
    std::vector<double> target(d, 0), me(d);
    for (int t = 0; t < d; ++t) {
      for (int s : pick) target[t] += x(s, t);
      me[t] = testutil::uniform(rng, 5, 30);
    }
    const std::vector<std::int64_t> lam(d, std::int64_t{1} << 20);
    auto real = solve_md(x, n, target, me, MiningConfig{});
    auto packed = solve_md_integerized(x, n, target, me, lam, MiningConfig{});
    CHECK(packed.integerized);
    CHECK(sets(packed) == sets(real));
  }
}

TEST_CASE("coarse integerization is internally consistent") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 30; ++it) {
    const int N = 14, d = 3, n = 4;
    RealMatrix x(N, d);
    for (int s = 0; s < N; ++s)
      for (int t = 0; t < d; ++t) x(s, t) = testutil::uniform(rng, -10, 10);
    std::vector<double> target(d), me(d, 6);
    for (int t = 0; t < d; ++t) target[t] = testutil::uniform(rng, -8, 8);
    const std::vector<std::int64_t> lam(d, 1 + it % 3);
    auto r = solve_md_integerized(x, n, target, me, lam, MiningConfig{});
    std::vector<double> lo(d), hi(d);
    for (int t = 0; t < d; ++t) {
      lo[t] = target[t] - me[t];
      hi[t] = target[t] + me[t];
    }
    auto z = integerize(x, lo, hi, n, lam);
    // Exhaustive check in the integer domain.
    std::vector<std::vector<int>> expected;
    testutil::for_each_combination(N, n, [&](const std::vector<int>& idx) {
      for (int t = 0; t < d; ++t) {
        std::int64_t s = 0;
        for (int i : idx) s += z.xz(i, t);
        if (s < z.zlo[t] || s > z.zhi[t]) return;
      }
      expected.push_back(idx);
    });
    CHECK(sets(r) == expected);
  }
}
