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

#include "flsss/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "flsss/algebra.hpp"
#include "flsss/contraction.hpp"
#include "flsss/mdim.hpp"
#include "flsss/parallel.hpp"
#include "flsss/schedule.hpp"
#include "flsss/solver1d.hpp"
#include "flsss/subspacing.hpp"

namespace flsss {
namespace {

void validate(const KnapsackInstance& inst) {
  const int N = inst.costs.rows();
  const int d = inst.costs.cols();
  if (N < 1 || d < 1) throw InvalidInput("knapsack needs at least one item and one cost column");
  inst.costs.check_finite("costs");
  if (static_cast<int>(inst.profits.size()) != N) {
    throw InvalidInput("need one profit per item");
  }
  if (static_cast<int>(inst.budgets.size()) != d) {
    throw InvalidInput("need one budget per cost column");
  }
  for (int i = 0; i < N; ++i) {
    if (!std::isfinite(inst.profits[i])) throw InvalidInput("profit is not finite", i);
  }
  for (int t = 0; t < d; ++t) {
    if (!std::isfinite(inst.budgets[t])) throw InvalidInput("budget is not finite", t);
  }
}

// Exact re-check in input order; true when `items` fits every budget.
bool fits(const KnapsackInstance& inst, const std::vector<int>& items,
          std::vector<double>* spent) {
  const int d = inst.costs.cols();
  if (spent) spent->assign(d, 0.0);
  for (int t = 0; t < d; ++t) {
    double s = 0.0;
    for (int i : items) s += inst.costs(i, t);
    if (!(s <= inst.budgets[t])) return false;
    if (spent) (*spent)[t] = s;
  }
  return true;
}

double profit_of(const KnapsackInstance& inst, const std::vector<int>& items) {
  double p = 0.0;
  for (int i : items) p += inst.profits[i];
  return p;
}

double sum_of_extremes(std::vector<double> v, int n, bool largest) {
  if (largest) {
    std::sort(v.begin(), v.end(), std::greater<>());
  } else {
    std::sort(v.begin(), v.end());
  }
  return std::accumulate(v.begin(), v.begin() + n, 0.0);
}

// One fixed size n; offers improvements to `inc` and returns contractions.
std::uint64_t mine_size(const KnapsackInstance& inst, int n,
                        const MiningConfig& cfg, const KnapsackOptions& opts,
                        SearchControl& ctl, Incumbent& inc) {
  const int N = inst.costs.rows();
  const int d = inst.costs.cols();

  std::vector<int> by_profit(N);
  std::iota(by_profit.begin(), by_profit.end(), 0);
  std::stable_sort(by_profit.begin(), by_profit.end(), [&](int a, int b) {
    return inst.profits[a] < inst.profits[b];
  });
  RealMatrix xs(N, d);
  for (int s = 0; s < N; ++s) {
    for (int t = 0; t < d; ++t) xs(s, t) = inst.costs(by_profit[s], t);
  }

  std::vector<double> lo(d), hi(d), slack(d);
  for (int t = 0; t < d; ++t) {
    std::vector<double> col = xs.column(t), mags(N);
    for (int s = 0; s < N; ++s) mags[s] = std::fabs(col[s]);
    lo[t] = sum_of_extremes(col, n, false);
    hi[t] = inst.budgets[t];
    slack[t] = detail::sum_slack(
        n, std::max(sum_of_extremes(mags, n, true), std::fabs(hi[t])));
    if (hi[t] < lo[t] - slack[t]) return 0;
  }

  const Comonotonized c = comonotonize(xs, false);
  const TargetTable tt = build_targets(c, n, lo, hi);
  const int rows = tt.lower.rows();

  // Columns: d costs, key, profit. The profit column is already ascending,
  // so it rides along unconstrained and yields the bound in O(1).
  const int w = d + 2;
  const int pcol = d + 1;
  const VectorAlgebra alg(w);
  ElementTable<double> xe(N, w);
  std::vector<double> pmags(N);
  for (int s = 0; s < N; ++s) {
    for (int t = 0; t <= d; ++t) xe.row(s)[t] = c.star(s, t);
    xe.row(s)[pcol] = inst.profits[by_profit[s]];
    pmags[s] = std::fabs(inst.profits[by_profit[s]]);
  }
  const double pslack = detail::sum_slack(n, sum_of_extremes(pmags, n, true));
  const double inf = std::numeric_limits<double>::infinity();
  ElementTable<double> elo(rows, w), ehi(rows, w);
  for (int r = 0; r < rows; ++r) {
    for (int t = 0; t < d; ++t) {
      const double star_slack = detail::sum_slack(
          n, std::max(std::fabs(tt.lower(r, t)), std::fabs(tt.upper(r, t))));
      elo.row(r)[t] = tt.lower(r, t) - slack[t] - star_slack;
      ehi.row(r)[t] = tt.upper(r, t) + slack[t] + star_slack;
    }
    elo.row(r)[d] = ehi.row(r)[d] = tt.lower(r, d);
    elo.row(r)[pcol] = -inf;
    ehi.row(r)[pcol] = inf;
  }
  const QuasiTriangleMatrix<VectorAlgebra> m(alg, xe, n);

  using Engine = DfsEngine<VectorAlgebra>;
  using Task = Engine::Task;
  const IndexBounds start = initial_bounds(N, n);
  std::vector<Task> roots;
  {
    Engine probe(alg, xe, m, cfg.search_mode());
    for (int r = rows - 1; r >= 0; --r) roots.push_back(probe.root_task(r, start));
  }

  auto prune = [&](const double* fixed, const double* sum_u) {
    if (!opts.prune || !inc.has()) return false;
    return fixed[pcol] + sum_u[pcol] + pslack <= inc.value();
  };
  auto leaf = [&](std::span<const int> b) {
    std::vector<int> items(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) items[i] = by_profit[b[i]];
    std::sort(items.begin(), items.end());
    if (!fits(inst, items, nullptr)) return;
    const double p = profit_of(inst, items);
    inc.offer(p, std::move(items));
  };
  auto bounds = [&](int row) {
    return std::pair<const double*, const double*>(elo.row(row), ehi.row(row));
  };
  auto make = [&] { return Engine(alg, xe, m, cfg.search_mode()); };
  return schedule_rows<Engine>(std::move(roots), make, bounds, cfg.threads,
                               opts.phi, ctl, prune, leaf);
}

KnapsackResult collect(const KnapsackInstance& inst, const Incumbent& inc,
                       const SearchControl& ctl, std::uint64_t nodes) {
  KnapsackResult r;
  r.nodes = nodes;
  r.status = ctl.timed_out() ? Status::kTimeout : Status::kExhausted;
  if (!inc.has()) return r;
  r.feasible = true;
  r.indexes = inc.payload();
  r.profit = profit_of(inst, r.indexes);
  fits(inst, r.indexes, &r.costs);
  return r;
}

void check_options(const KnapsackOptions& opts) {
  if (opts.phi < 1) throw ConfigError("phi must be >= 1");
}

}  // namespace

KnapsackResult solve_mf01k(const KnapsackInstance& inst, const MiningConfig& cfg,
                           const KnapsackOptions& opts) {
  cfg.validate();
  check_options(opts);
  validate(inst);
  initial_bounds(inst.costs.rows(), inst.n);  // validates n
  SearchControl ctl(cfg);
  Incumbent inc;
  const std::uint64_t nodes = mine_size(inst, inst.n, cfg, opts, ctl, inc);
  return collect(inst, inc, ctl, nodes);
}

KnapsackResult solve_01(const KnapsackInstance& inst, const MiningConfig& cfg,
                        const KnapsackOptions& opts) {
  cfg.validate();
  check_options(opts);
  validate(inst);
  const int N = inst.costs.rows();
  SearchControl ctl(cfg);
  Incumbent inc;
  std::uint64_t nodes = 0;
  std::vector<double> mags(N);
  for (int i = 0; i < N; ++i) mags[i] = std::fabs(inst.profits[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  std::vector<double> pscale(N + 1, 0.0);
  for (int i = 0; i < N; ++i) pscale[i + 1] = pscale[i] + mags[i];
  for (int n = 1; n <= N && !ctl.stopped(); ++n) {
    // No size-n set can beat the incumbent.
    if (opts.prune && inc.has() &&
        sum_of_extremes(inst.profits, n, true) + detail::sum_slack(n, pscale[n]) <=
            inc.value()) {
      continue;
    }
    nodes += mine_size(inst, n, cfg, opts, ctl, inc);
  }
  return collect(inst, inc, ctl, nodes);
}

}  // namespace flsss
