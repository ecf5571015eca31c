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

#include "flsss/gap.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <span>
#include <string>
#include <utility>

#include "flsss/parallel.hpp"
#include "flsss/schedule.hpp"
#include "flsss/solver1d.hpp"
#include "flsss/subspacing.hpp"

namespace flsss {

std::vector<double> GapSuperset::ranked_row(int row) const {
  const CompactRow& r = rows[row];
  std::vector<double> v(agents + 1, 0.0);
  v[r.agent] = r.cost;
  v[agents] = r.key;
  return v;
}

std::vector<double> GapSuperset::scaled_row(int row) const {
  const CompactRow& r = rows[row];
  std::vector<double> v(agents + 1, r.key * mu);
  v[r.agent] += r.cost;
  v[agents] = r.key;
  return v;
}

std::vector<double> GapSuperset::scaled_upper(const std::vector<double>& budgets,
                                              long long key_sum) const {
  std::vector<double> v(agents + 1);
  for (int t = 0; t < agents; ++t) v[t] = budgets[t] + static_cast<double>(key_sum) * mu;
  v[agents] = static_cast<double>(key_sum);
  return v;
}

std::vector<double> CompactSum::scaled(double mu) const {
  std::vector<double> v(cost.size() + 1);
  for (std::size_t t = 0; t < cost.size(); ++t) {
    v[t] = static_cast<double>(key) * mu + cost[t];
  }
  v[cost.size()] = static_cast<double>(key);
  return v;
}

bool CompactSum::within(const std::vector<double>& budgets, long long key_sum,
                        double mu, double slack) const {
  if (key > key_sum) return false;
  const double shift = static_cast<double>(key - key_sum) * mu;
  for (std::size_t t = 0; t < cost.size(); ++t) {
    if (!(shift + cost[t] <= budgets[t] + slack)) return false;
  }
  return true;
}

GapSuperset build_gap_superset(const GapInstance& g) {
  const int T = g.cost.rows();
  const int A = g.cost.cols();
  if (T < 1 || A < 1) throw InvalidInput("assignment needs at least one task and one agent");
  if (g.profit.rows() != T || g.profit.cols() != A) {
    throw InvalidInput("profit matrix must match the cost matrix shape");
  }
  if (static_cast<int>(g.budgets.size()) != A) {
    throw InvalidInput("need one budget per agent");
  }
  g.cost.check_finite("cost");
  g.profit.check_finite("profit");
  double top = 0.0;
  for (int s = 0; s < T; ++s) {
    for (int a = 0; a < A; ++a) {
      if (g.cost(s, a) < 0.0) {
        throw InvalidInput("negative cost for task " + std::to_string(s), s);
      }
      top = std::max(top, g.cost(s, a));
    }
  }
  for (int a = 0; a < A; ++a) {
    if (!std::isfinite(g.budgets[a])) throw InvalidInput("budget is not finite", a);
  }

  GapSuperset sup;
  sup.tasks = T;
  sup.agents = A;
  sup.mu = top + 1.0;
  sup.rows.reserve(static_cast<std::size_t>(T) * A);
  std::vector<int> by_profit(A);
  for (int s = 0; s < T; ++s) {
    std::iota(by_profit.begin(), by_profit.end(), 0);
    std::stable_sort(by_profit.begin(), by_profit.end(),
                     [&](int a, int b) { return g.profit(s, a) < g.profit(s, b); });
    for (int r = 0; r < A; ++r) {
      const int a = by_profit[r];
      sup.rows.push_back({g.cost(s, a), a, r});
      sup.row_profit.push_back(g.profit(s, a));
    }
  }
  return sup;
}

namespace {

// Block-local branch and bound. State vectors hold the key sum, per-agent
// cost and profit of a row set; bounds are {K} below and the scaled upper
// row above. Indexes of different blocks are independent, so contraction
// needs no consecutive-sum table.
class GapEngine {
 public:
  using word = double;
  using Task = SearchTask<double>;

  GapEngine(const GapSuperset& g, const std::vector<double>& budgets,
            double slack)
      : g_(g), budgets_(budgets), slack_(slack), width_(g.agents + 2),
        sl_(width_), su_(width_), other_(width_) {}

  Task root_task(int row) const {
    Task t;
    t.row = row;
    for (int k = 0; k < g_.tasks; ++k) {
      t.l.push_back(k * g_.agents);
      t.u.push_back(k * g_.agents + g_.agents - 1);
    }
    t.fixed_sum.assign(width_, 0.0);
    return t;
  }

  template <class Hooks>
  std::vector<Task> expand(Task root, const double* lo, const double* hi,
                           Hooks& hooks, std::size_t want) {
    std::vector<Task> level;
    level.push_back(std::move(root));
    while (!level.empty() && level.size() < want) {
      std::vector<Task> next;
      for (Task& t : level) {
        if (hooks.stop()) return {};
        const Outcome r = settle(t, lo, hi, hooks);
        if (r == Outcome::kLeaf) hooks.leaf(std::span<const int>(t.fixed));
        if (r != Outcome::kBranch) continue;
        Task right = t;
        split(t, right);
        next.push_back(std::move(t));
        next.push_back(std::move(right));
      }
      level = std::move(next);
    }
    return level;
  }

  template <class Hooks>
  void run(const Task& task, const double* lo, const double* hi, Hooks& hooks) {
    std::deque<Task> stack;
    stack.push_back(task);
    while (!stack.empty()) {
      if (hooks.stop()) return;
      if (stack.size() > 1 && hooks.hungry()) {
        hooks.donate(std::move(stack.front()));
        stack.pop_front();
      }
      Task t = std::move(stack.back());
      stack.pop_back();
      const Outcome r = settle(t, lo, hi, hooks);
      if (r == Outcome::kLeaf) hooks.leaf(std::span<const int>(t.fixed));
      if (r != Outcome::kBranch) continue;
      Task right = t;
      split(t, right);
      stack.push_back(std::move(right));
      stack.push_back(std::move(t));
    }
  }

  std::uint64_t contractions() const { return contractions_; }

 private:
  enum class Outcome { kFail, kLeaf, kBranch };

  void add(std::vector<double>& s, int row, double sign = 1.0) const {
    const CompactRow& r = g_.rows[row];
    s[0] += sign * r.key;
    s[1 + r.agent] += sign * r.cost;
    s[width_ - 1] += sign * g_.row_profit[row];
  }

  void sum_bounds(const Task& t) {
    sl_ = t.fixed_sum;
    su_ = t.fixed_sum;
    for (std::size_t k = 0; k < t.l.size(); ++k) {
      add(sl_, t.l[k]);
      add(su_, t.u[k]);
    }
  }

  // True when `row` added to the state `base` stays within the scaled upper
  // bounds `hi`.
  bool fits_upper(int row, const std::vector<double>& base, const double* hi) const {
    const CompactRow& r = g_.rows[row];
    const double key = base[0] + r.key;
    if (key > hi[0]) return false;
    for (int a = 0; a < g_.agents; ++a) {
      double v = key * g_.mu + base[1 + a];
      if (a == r.agent) v += r.cost;
      if (!(v <= hi[1 + a] + slack_)) return false;
    }
    return true;
  }

  bool contract(Task& t, const double* lo, const double* hi) {
    const int n = static_cast<int>(t.l.size());
    sum_bounds(t);
    int quiet = 0;
    bool lower_turn = true;
    while (quiet < 2) {
      bool changed = false;
      for (int k = 0; k < n; ++k) {
        if (lower_turn) {
          // Smallest rank whose key still lets the others reach lo[0].
          const double others = su_[0] - g_.rows[t.u[k]].key;
          const int start = g_.block_of(t.l[k]) * g_.agents;
          const int need = static_cast<int>(std::ceil(lo[0] - others));
          const int floor = std::max(t.l[k], start + need);
          if (floor > t.u[k]) return false;
          if (floor != t.l[k]) {
            add(sl_, t.l[k], -1.0);
            add(sl_, floor);
            t.l[k] = floor;
            changed = true;
          }
        } else {
          other_ = sl_;
          add(other_, t.l[k], -1.0);
          int cap = t.u[k];
          while (cap >= t.l[k] && !fits_upper(cap, other_, hi)) --cap;
          if (cap < t.l[k]) return false;
          if (cap != t.u[k]) {
            add(su_, t.u[k], -1.0);
            add(su_, cap);
            t.u[k] = cap;
            changed = true;
          }
        }
      }
      quiet = changed ? 0 : quiet + 1;
      lower_turn = !lower_turn;
    }
    // Plain cost feasibility: the cheapest pick per block for each agent.
    for (int a = 0; a < g_.agents; ++a) {
      double least = t.fixed_sum[1 + a];
      for (int k = 0; k < n; ++k) {
        double m = g_.rows[t.l[k]].agent == a ? g_.rows[t.l[k]].cost : 0.0;
        for (int i = t.l[k] + 1; i <= t.u[k] && m > 0.0; ++i) {
          m = std::min(m, g_.rows[i].agent == a ? g_.rows[i].cost : 0.0);
        }
        least += m;
      }
      if (!(least <= budgets_[a] + slack_)) return false;
    }
    return true;
  }

  template <class Hooks>
  Outcome settle(Task& t, const double* lo, const double* hi, Hooks& hooks) {
    ++contractions_;
    if (!t.l.empty()) {
      if (!contract(t, lo, hi)) return Outcome::kFail;
      // su_ still includes fixed; the hook wants the open part separately.
      other_ = su_;
      for (int i = 0; i < width_; ++i) other_[i] -= t.fixed_sum[i];
      if (hooks.prune(t.fixed_sum.data(), other_.data())) return Outcome::kFail;
    }
    int j = 0;
    for (std::size_t k = 0; k < t.l.size(); ++k) {
      if (t.l[k] == t.u[k]) {
        t.fixed.push_back(t.l[k]);
        add(t.fixed_sum, t.l[k]);
      } else {
        t.l[j] = t.l[k];
        t.u[j] = t.u[k];
        ++j;
      }
    }
    t.l.resize(j);
    t.u.resize(j);
    return j == 0 ? Outcome::kLeaf : Outcome::kBranch;
  }

  // Halves the narrowest open block: `left` keeps the low ranks.
  static void split(Task& left, Task& right) {
    int kappa = 0;
    for (std::size_t k = 1; k < left.l.size(); ++k) {
      if (left.u[k] - left.l[k] < left.u[kappa] - left.l[kappa]) kappa = static_cast<int>(k);
    }
    const int mid = left.l[kappa] + (left.u[kappa] - left.l[kappa]) / 2;
    left.u[kappa] = mid;
    right.l[kappa] = mid + 1;
  }

  const GapSuperset& g_;
  const std::vector<double>& budgets_;
  double slack_;
  int width_;
  std::vector<double> sl_, su_, other_;
  std::uint64_t contractions_ = 0;
};

}  // namespace

GapResult solve_gap(const GapInstance& g, const MiningConfig& cfg,
                    const GapOptions& opts) {
  cfg.validate();
  if (opts.phi < 1) throw ConfigError("phi must be >= 1");
  const GapSuperset sup = build_gap_superset(g);
  const int T = sup.tasks;
  const int A = sup.agents;

  double bmax = 0.0, pscale = 0.0;
  for (double b : g.budgets) bmax = std::max(bmax, std::fabs(b));
  for (int s = 0; s < T; ++s) {
    double m = 0.0;
    for (int a = 0; a < A; ++a) m = std::max(m, std::fabs(g.profit(s, a)));
    pscale += m;
  }
  const long long kmax = static_cast<long long>(T) * (A - 1);
  const double slack =
      detail::sum_slack(T + 2, bmax + static_cast<double>(kmax + T) * sup.mu);
  const double pslack = detail::sum_slack(T, pscale);

  // Row K of the bound tables: key sum K below, scaled budgets above.
  const int rows = static_cast<int>(kmax + 1);
  std::vector<std::vector<double>> lo(rows), hi(rows);
  for (int r = 0; r < rows; ++r) {
    lo[r] = {static_cast<double>(r)};
    hi[r] = {static_cast<double>(r)};
    for (int a = 0; a < A; ++a) hi[r].push_back(g.budgets[a] + r * sup.mu);
  }

  SearchControl ctl(cfg);
  Incumbent inc;
  const int pcol = A + 1;
  auto prune = [&](const double* fixed, const double* sum_u) {
    if (!opts.prune || !inc.has()) return false;
    return fixed[pcol] + sum_u[pcol] + pslack <= inc.value();
  };
  auto leaf = [&](std::span<const int> b) {
    std::vector<int> agent(T, -1);
    for (int row : b) agent[sup.block_of(row)] = sup.rows[row].agent;
    std::vector<double> load(A, 0.0);
    for (int s = 0; s < T; ++s) load[agent[s]] += g.cost(s, agent[s]);
    for (int a = 0; a < A; ++a) {
      if (!(load[a] <= g.budgets[a])) return;
    }
    double p = 0.0;
    for (int s = 0; s < T; ++s) p += g.profit(s, agent[s]);
    inc.offer(p, std::move(agent));
  };
  auto bounds = [&](int row) {
    return std::pair<const double*, const double*>(lo[row].data(), hi[row].data());
  };
  auto make = [&] { return GapEngine(sup, g.budgets, slack); };

  std::vector<GapEngine::Task> roots;
  {
    const GapEngine probe = make();
    for (int r = rows - 1; r >= 0; --r) roots.push_back(probe.root_task(r));
  }
  GapResult res;
  res.nodes = schedule_rows<GapEngine>(std::move(roots), make, bounds,
                                       cfg.threads, opts.phi, ctl, prune, leaf);
  res.status = ctl.timed_out() ? Status::kTimeout : Status::kExhausted;
  if (!inc.has()) return res;
  res.feasible = true;
  res.agent_of_task = inc.payload();
  res.agent_cost.assign(A, 0.0);
  for (int s = 0; s < T; ++s) {
    const int a = res.agent_of_task[s];
    res.agent_cost[a] += g.cost(s, a);
    res.profit += g.profit(s, a);
  }
  return res;
}

}  // namespace flsss
