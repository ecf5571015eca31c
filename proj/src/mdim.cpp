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

#include "flsss/mdim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "flsss/algebra.hpp"
#include "flsss/contraction.hpp"
#include "flsss/parallel.hpp"
#include "flsss/solver1d.hpp"
#include "flsss/subspacing.hpp"

namespace flsss {
namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return v[a] < v[b]; });
  std::vector<double> rank(n);
  for (int i = 0; i < n;) {
    int j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * (i + j);
    for (int k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

// Sum of the n smallest (or largest) entries.
double extreme_sum(std::vector<double> v, int n, bool largest) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  if (largest) {
    for (int k = 0; k < n; ++k) s += v[v.size() - 1 - k];
  } else {
    for (int k = 0; k < n; ++k) s += v[k];
  }
  return s;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  return pearson(average_ranks(a), average_ranks(b));
}

int leader_column(const RealMatrix& x) {
  const int d = x.cols();
  std::vector<std::vector<double>> ranks(d);
  for (int t = 0; t < d; ++t) ranks[t] = average_ranks(x.column(t));
  int best = 0;
  double best_score = -1e300;
  for (int t = 0; t < d; ++t) {
    double score = 0.0;
    for (int o = 0; o < d; ++o) {
      if (o != t) score += pearson(ranks[t], ranks[o]);
    }
    if (score > best_score) {
      best_score = score;
      best = t;
    }
  }
  return best;
}

Comonotonized comonotonize(const RealMatrix& x, bool sort_by_leader) {
  const int N = x.rows();
  const int d = x.cols();
  Comonotonized c;
  c.leader = leader_column(x);
  c.row_perm.resize(N);
  std::iota(c.row_perm.begin(), c.row_perm.end(), 0);
  if (sort_by_leader) {
    std::stable_sort(c.row_perm.begin(), c.row_perm.end(), [&](int a, int b) {
      return x(a, c.leader) < x(b, c.leader);
    });
  }
  auto at = [&](int s, int t) { return x(c.row_perm[s], t); };

  c.key.assign(N, 0);
  for (int s = 1; s < N; ++s) {
    bool dominated = true;
    for (int t = 0; t < d && dominated; ++t) dominated = at(s - 1, t) <= at(s, t);
    c.key[s] = c.key[s - 1] + (dominated ? 0 : 1);
  }
  c.theta.assign(d, 0.0);
  for (int t = 0; t < d; ++t) {
    double low = 0.0;
    for (int s = 1; s < N; ++s) low = std::min(low, at(s, t) - at(s - 1, t));
    c.theta[t] = std::fabs(low);
  }
  c.star = RealMatrix(N, d + 1);
  for (int s = 0; s < N; ++s) {
    for (int t = 0; t < d; ++t) {
      double v = at(s, t) + c.key[s] * c.theta[t];
      // Guard against a one-ulp dip where a step is exactly -theta.
      if (s > 0) v = std::max(v, c.star(s - 1, t));
      c.star(s, t) = v;
    }
    c.star(s, d) = c.key[s];
  }
  c.leader_values.resize(N);
  for (int s = 0; s < N; ++s) c.leader_values[s] = at(s, c.leader);
  return c;
}

TargetTable build_targets(const Comonotonized& c, int n,
                          std::span<const double> lo,
                          std::span<const double> hi, std::size_t max_rows) {
  const int N = c.star.rows();
  const int d = c.star.cols() - 1;
  if (n < 1 || n > N) initial_bounds(N, n);  // throws
  long long kmin = 0, kmax = 0;
  for (int k = 0; k < n; ++k) {
    kmin += c.key[k];
    kmax += c.key[N - n + k];
  }
  const std::size_t rows = static_cast<std::size_t>(kmax - kmin + 1);
  if (rows > max_rows) {
    throw ConfigError("target table would need " + std::to_string(rows) +
                      " rows, above the limit of " + std::to_string(max_rows));
  }
  TargetTable tt;
  tt.lower = RealMatrix(static_cast<int>(rows), d + 1);
  tt.upper = RealMatrix(static_cast<int>(rows), d + 1);
  for (std::size_t s = 0; s < rows; ++s) {
    const long long K = kmin + static_cast<long long>(s);
    tt.key_sums.push_back(K);
    const int r = static_cast<int>(s);
    for (int t = 0; t < d; ++t) {
      tt.lower(r, t) = K * c.theta[t] + lo[t];
      tt.upper(r, t) = K * c.theta[t] + hi[t];
    }
    tt.lower(r, d) = tt.upper(r, d) = static_cast<double>(K);
  }
  tt.order.resize(rows);
  std::iota(tt.order.begin(), tt.order.end(), 0);
  return tt;
}

std::vector<int> order_targets(const TargetTable& tt, const Comonotonized& c,
                               int n, std::span<const double> lo,
                               std::span<const double> hi) {
  const int rows = static_cast<int>(tt.key_sums.size());
  std::vector<int> order(rows);
  std::iota(order.begin(), order.end(), 0);
  if (rows <= 1) return order;
  const double smin = extreme_sum(c.leader_values, n, false);
  const double smax = extreme_sum(c.leader_values, n, true);
  if (!(smax > smin)) return order;
  const double mid = 0.5 * (lo[c.leader] + hi[c.leader]);
  const double p = (mid - smin) / (smax - smin);
  const double k0 = static_cast<double>(tt.key_sums.front());
  const double span = static_cast<double>(tt.key_sums.back()) - k0;
  std::vector<double> dist(rows);
  for (int s = 0; s < rows; ++s) {
    dist[s] = std::fabs((tt.key_sums[s] - k0) / span - p);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] < dist[b]; });
  return order;
}

namespace detail {

void md_bounds(const RealMatrix& x, int n, std::span<const double> target,
               std::span<const double> me, std::vector<double>& lo,
               std::vector<double>& hi) {
  const int d = x.cols();
  if (static_cast<int>(target.size()) != d || static_cast<int>(me.size()) != d) {
    throw InvalidInput("target and error vectors need " + std::to_string(d) +
                       " entries");
  }
  initial_bounds(x.rows(), n);
  lo.resize(d);
  hi.resize(d);
  for (int t = 0; t < d; ++t) {
    if (!(me[t] >= 0.0)) {
      throw InvalidInput("subset sum error must be >= 0 in column " +
                             std::to_string(t),
                         t);
    }
    lo[t] = target[t] - me[t];
    hi[t] = target[t] + me[t];
  }
}

bool md_verify(const RealMatrix& x, std::span<const int> rows,
               std::span<const double> lo, std::span<const double> hi,
               std::vector<double>& sums) {
  const int d = x.cols();
  sums.assign(d, 0.0);
  for (int t = 0; t < d; ++t) {
    for (int r : rows) sums[t] += x(r, t);
    if (!(sums[t] >= lo[t] && sums[t] <= hi[t])) return false;
  }
  return true;
}

}  // namespace detail

MineResult solve_md(const RealMatrix& x, int n, std::span<const double> target,
                    std::span<const double> me, const MiningConfig& cfg,
                    const MdOptions& opts) {
  std::vector<double> lo, hi;
  detail::md_bounds(x, n, target, me, lo, hi);
  return solve_md_range(x, n, lo, hi, cfg, opts);
}

MineResult solve_md_range(const RealMatrix& x, int n,
                          std::span<const double> lo,
                          std::span<const double> hi, const MiningConfig& cfg,
                          const MdOptions& opts) {
  cfg.validate();
  x.check_finite("superset");
  const int N = x.rows();
  const int d = x.cols();
  const IndexBounds start = initial_bounds(N, n);
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d) {
    throw InvalidInput("range vectors need " + std::to_string(d) + " entries");
  }
  SearchControl ctl(cfg);
  for (int t = 0; t < d; ++t) {
    if (!(lo[t] <= hi[t])) return ctl.finish();
  }

  const Comonotonized c = comonotonize(x, opts.sort_by_leader);
  const TargetTable tt = build_targets(c, n, lo, hi, opts.max_target_rows);
  const std::vector<int> order =
      opts.order_rows ? order_targets(tt, c, n, lo, hi) : tt.order;

  const int w = d + 1;
  const VectorAlgebra alg(w);
  ElementTable<double> xe(N, w);
  for (int s = 0; s < N; ++s) {
    for (int t = 0; t < w; ++t) xe.row(s)[t] = c.star(s, t);
  }
  const QuasiTriangleMatrix<VectorAlgebra> m(alg, xe, n);

  // Per-column rounding allowance; the key column is integral and exact.
  const int rows = tt.lower.rows();
  ElementTable<double> elo(rows, w), ehi(rows, w);
  for (int t = 0; t < w; ++t) {
    double slack = 0.0;
    if (t < d) {
      std::vector<double> mags(N);
      for (int s = 0; s < N; ++s) mags[s] = std::fabs(c.star(s, t));
      double scale = extreme_sum(mags, n, true);
      for (int r = 0; r < rows; ++r) {
        scale = std::max({scale, std::fabs(tt.lower(r, t)), std::fabs(tt.upper(r, t))});
      }
      slack = detail::sum_slack(n, scale);
    }
    for (int r = 0; r < rows; ++r) {
      elo.row(r)[t] = tt.lower(r, t) - slack;
      ehi.row(r)[t] = tt.upper(r, t) + slack;
    }
  }

  auto accept = [&](int, std::span<const int> b) {
    std::vector<int> orig(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) orig[i] = c.row_perm[b[i]];
    std::sort(orig.begin(), orig.end());
    std::vector<double> sums;
    if (!detail::md_verify(x, orig, lo, hi, sums)) return;
    ctl.add(Solution{std::move(orig), std::move(sums)});
  };
  mine_rows(alg, xe, m, elo, ehi, order, start, cfg, ctl, accept);
  return ctl.finish();
}

}  // namespace flsss
