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

#include "flsss/packedint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "flsss/algebra.hpp"
#include "flsss/contraction.hpp"
#include "flsss/parallel.hpp"
#include "flsss/subspacing.hpp"

namespace flsss {
namespace {

constexpr double kExactDoubleLimit = 9007199254740992.0;  // 2^53

std::int64_t top_sum(const IntMatrix& m, int col, int n) {
  std::vector<std::int64_t> v(m.rows());
  for (int r = 0; r < m.rows(); ++r) v[r] = m(r, col);
  std::sort(v.begin(), v.end(), std::greater<>());
  std::int64_t s = 0;
  for (int k = 0; k < n; ++k) s += v[k];
  return s;
}

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v)
               : static_cast<std::uint64_t>(v);
}

}  // namespace

IntegerizedInstance integerize(const RealMatrix& x, std::span<const double> lo,
                               std::span<const double> hi, int n,
                               std::span<const std::int64_t> lambda) {
  const int N = x.rows();
  const int d = x.cols();
  if (static_cast<int>(lambda.size()) != d) {
    throw InvalidInput("need one lambda per column");
  }
  IntegerizedInstance z;
  z.lambda.assign(lambda.begin(), lambda.end());
  z.xz = IntMatrix(N, d);
  z.zlo.resize(d);
  z.zhi.resize(d);
  for (int t = 0; t < d; ++t) {
    if (lambda[t] < 1) {
      throw InvalidInput("lambda must be >= 1 in column " + std::to_string(t), t);
    }
    double mn = x(0, t), mx = x(0, t);
    for (int s = 1; s < N; ++s) {
      mn = std::min(mn, x(s, t));
      mx = std::max(mx, x(s, t));
    }
    const double shifted_min = n * mn;
    if (mn == mx) {
      z.lambda[t] = 0;
      z.zlo[t] = lo[t] <= shifted_min ? 0 : 1;
      z.zhi[t] = hi[t] >= shifted_min ? 0 : -1;
      continue;
    }
    const double denom = mx > 0.0 ? mx : mx - mn;
    const double scale = static_cast<double>(lambda[t]) / denom;
    for (int s = 0; s < N; ++s) {
      z.xz(s, t) = std::llround((x(s, t) - mn) * scale);
    }
    const double zl = std::round((lo[t] - shifted_min) * scale);
    const double zh = std::round((hi[t] - shifted_min) * scale);
    if (std::fabs(zl) >= kExactDoubleLimit || std::fabs(zh) >= kExactDoubleLimit) {
      throw ConfigError("integerized range of column " + std::to_string(t) +
                        " exceeds the exact integer range");
    }
    z.zlo[t] = static_cast<std::int64_t>(zl);
    z.zhi[t] = static_cast<std::int64_t>(zh);
  }
  return z;
}

PackLayout layout_from_psi(std::span<const std::uint64_t> psi) {
  PackLayout L;
  L.psi.assign(psi.begin(), psi.end());
  int used = kWordBits;  // forces a first word
  for (std::size_t t = 0; t < psi.size(); ++t) {
    const int bits = std::bit_width(psi[t]) + 1;
    if (bits > kMaxFieldBits) {
      throw ConfigError("column " + std::to_string(t) + " needs " +
                        std::to_string(bits) + " bits, above the limit of " +
                        std::to_string(kMaxFieldBits));
    }
    if (used + bits > kWordBits) {
      L.mask.push_back(0);
      ++L.words;
      used = 0;
    }
    const int shift = kWordBits - used - bits;
    L.bits.push_back(bits);
    L.place.push_back({L.words - 1, shift});
    L.mask.back() |= std::uint64_t{1} << (shift + bits - 1);
    used += bits;
  }
  return L;
}

PackLayout plan_layout(const IntMatrix& star, int n, const IntMatrix& lo,
                       const IntMatrix& hi) {
  const int w = star.cols();
  std::vector<std::uint64_t> psi(w, 0);
  for (int t = 0; t < w; ++t) {
    psi[t] = magnitude(top_sum(star, t, n));
    for (int r = 0; r < lo.rows(); ++r) {
      psi[t] = std::max({psi[t], magnitude(lo(r, t)), magnitude(hi(r, t))});
    }
  }
  return layout_from_psi(psi);
}

void pack_row(const PackLayout& L, std::span<const std::int64_t> v,
              std::uint64_t* out) {
  std::fill_n(out, L.words, 0);
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::uint64_t limit = std::uint64_t{1} << (L.bits[t] - 1);
    if (magnitude(v[t]) >= limit) {
      throw PackOverflow("value " + std::to_string(v[t]) + " does not fit the " +
                         std::to_string(L.bits[t]) + "-bit field of column " +
                         std::to_string(t));
    }
    out[L.place[t].word] += static_cast<std::uint64_t>(v[t]) << L.place[t].shift;
  }
}

std::vector<std::uint64_t> pack_row(const PackLayout& L,
                                    std::span<const std::int64_t> v) {
  std::vector<std::uint64_t> out(L.words);
  pack_row(L, v, out.data());
  return out;
}

std::vector<std::int64_t> unpack_row(const PackLayout& L,
                                     std::span<const std::uint64_t> w) {
  std::vector<std::uint64_t> rest(w.begin(), w.end());
  std::vector<std::int64_t> v(L.bits.size());
  // Fields were placed top-down, so walking columns backwards visits each
  // word's lowest field first; removing it clears any borrow it caused.
  for (int t = static_cast<int>(L.bits.size()) - 1; t >= 0; --t) {
    const int bits = L.bits[t];
    const int shift = L.place[t].shift;
    std::uint64_t& word = rest[L.place[t].word];
    const std::uint64_t field = (word >> shift) & ((std::uint64_t{1} << bits) - 1);
    std::int64_t val = static_cast<std::int64_t>(field);
    if (field >> (bits - 1)) val -= static_cast<std::int64_t>(std::uint64_t{1} << bits);
    v[t] = val;
    word -= static_cast<std::uint64_t>(val) << shift;
  }
  return v;
}

MineResult solve_md_integerized(const RealMatrix& x, int n,
                                std::span<const double> target,
                                std::span<const double> me,
                                std::span<const std::int64_t> lambda,
                                const MiningConfig& cfg,
                                const MdOptions& opts) {
  cfg.validate();
  x.check_finite("superset");
  std::vector<double> lo, hi;
  detail::md_bounds(x, n, target, me, lo, hi);
  const int N = x.rows();
  const int d = x.cols();
  const IndexBounds start = initial_bounds(N, n);

  SearchControl ctl(cfg);
  auto finish = [&] {
    MineResult r = ctl.finish();
    r.integerized = true;
    return r;
  };
  const IntegerizedInstance z = integerize(x, lo, hi, n, lambda);
  for (int t = 0; t < d; ++t) {
    if (z.zlo[t] > z.zhi[t]) return finish();
  }

  RealMatrix xr(N, d);
  for (int s = 0; s < N; ++s) {
    for (int t = 0; t < d; ++t) xr(s, t) = static_cast<double>(z.xz(s, t));
  }
  std::vector<double> zlo(z.zlo.begin(), z.zlo.end()), zhi(z.zhi.begin(), z.zhi.end());
  const Comonotonized c = comonotonize(xr, opts.sort_by_leader);
  const TargetTable tt = build_targets(c, n, zlo, zhi, opts.max_target_rows);
  const std::vector<int> order =
      opts.order_rows ? order_targets(tt, c, n, zlo, zhi) : tt.order;

  const int w = d + 1;
  IntMatrix star(N, w);
  for (int s = 0; s < N; ++s) {
    for (int t = 0; t < w; ++t) {
      if (std::fabs(c.star(s, t)) >= kExactDoubleLimit) {
        throw ConfigError("comonotonized integers exceed the exact range");
      }
      star(s, t) = static_cast<std::int64_t>(c.star(s, t));
    }
  }

  // Every reachable sum lies in [0, top-n sum], so target rows are clamped
  // to it; rows left empty cannot hold a solution.
  std::vector<std::int64_t> top(w);
  for (int t = 0; t < w; ++t) top[t] = top_sum(star, t, n);
  std::vector<int> kept;
  for (int r : order) {
    bool ok = true;
    for (int t = 0; t < w && ok; ++t) {
      const auto l = static_cast<std::int64_t>(tt.lower(r, t));
      const auto h = static_cast<std::int64_t>(tt.upper(r, t));
      ok = std::max<std::int64_t>(l, 0) <= std::min(h, top[t]);
    }
    if (ok) kept.push_back(r);
  }
  if (kept.empty()) return finish();
  const int rows = static_cast<int>(kept.size());
  IntMatrix klo(rows, w), khi(rows, w);
  for (int i = 0; i < rows; ++i) {
    for (int t = 0; t < w; ++t) {
      klo(i, t) = std::max<std::int64_t>(static_cast<std::int64_t>(tt.lower(kept[i], t)), 0);
      khi(i, t) = std::min(static_cast<std::int64_t>(tt.upper(kept[i], t)), top[t]);
    }
  }

  const PackLayout layout = plan_layout(star, n, klo, khi);
  const PackedAlgebra alg(layout);
  ElementTable<std::uint64_t> xe(N, layout.words);
  for (int s = 0; s < N; ++s) pack_row(layout, star.row(s), xe.row(s));
  ElementTable<std::uint64_t> elo(rows, layout.words), ehi(rows, layout.words);
  for (int i = 0; i < rows; ++i) {
    pack_row(layout, klo.row(i), elo.row(i));
    pack_row(layout, khi.row(i), ehi.row(i));
  }
  const QuasiTriangleMatrix<PackedAlgebra> m(alg, xe, n);
  std::vector<int> row_order(rows);
  for (int i = 0; i < rows; ++i) row_order[i] = i;

  auto accept = [&](int, std::span<const int> b) {
    std::vector<int> orig(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) orig[i] = c.row_perm[b[i]];
    std::sort(orig.begin(), orig.end());
    for (int t = 0; t < d; ++t) {
      std::int64_t s = 0;
      for (int r : orig) s += z.xz(r, t);
      if (s < z.zlo[t] || s > z.zhi[t]) return;
    }
    std::vector<double> sums(d, 0.0);
    for (int t = 0; t < d; ++t) {
      for (int r : orig) sums[t] += x(r, t);
    }
    ctl.add(Solution{std::move(orig), std::move(sums)});
  };
  mine_rows(alg, xe, m, elo, ehi, row_order, start, cfg, ctl, accept);
  return finish();
}

}  // namespace flsss
