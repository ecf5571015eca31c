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

#include "flsss/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>

#include "flsss/mdim.hpp"
#include "flsss/packedint.hpp"
#include "flsss/solver1d.hpp"

namespace flsss::bench {
namespace {

std::vector<int> sample(Rng& rng, int N, int n) {
  std::vector<int> idx(N);
  std::iota(idx.begin(), idx.end(), 0);
  for (int k = 0; k < n; ++k) {
    std::uniform_int_distribution<int> pick(k, N - 1);
    std::swap(idx[k], idx[pick(rng)]);
  }
  idx.resize(n);
  return idx;
}

struct Timed {
  double ms;
  std::size_t found;
};

Timed timed(const std::function<std::size_t()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t found = f();
  const auto t1 = std::chrono::steady_clock::now();
  return {std::chrono::duration<double, std::milli>(t1 - t0).count(), found};
}

int pick(int given, int fallback) { return given > 0 ? given : fallback; }

}  // namespace

Workload1D planted_1d(Rng& rng, int N, int n, double hi, double me) {
  Workload1D w;
  std::uniform_real_distribution<double> u(0.0, hi);
  w.superset.resize(N);
  for (double& v : w.superset) v = u(rng);
  w.n = n;
  for (int i : sample(rng, N, n)) w.target += w.superset[i];
  w.me = me;
  return w;
}

WorkloadMd planted_md(Rng& rng, int N, int d, int n, double hi, bool relative,
                      double me) {
  WorkloadMd w;
  std::uniform_real_distribution<double> u(0.0, hi);
  w.x = RealMatrix(N, d);
  for (int s = 0; s < N; ++s) {
    for (int t = 0; t < d; ++t) w.x(s, t) = u(rng);
  }
  w.n = n;
  std::vector<double> sums(d, 0.0);
  for (int s : sample(rng, N, n)) {
    for (int t = 0; t < d; ++t) sums[t] += w.x(s, t);
  }
  w.target.resize(d);
  w.me.resize(d);
  for (int t = 0; t < d; ++t) {
    if (relative) {
      const double lo = sums[t] * 0.999;
      const double up = sums[t] * 1.001;
      w.target[t] = (lo + up) / 2;
      w.me[t] = (up - lo) / 2;
    } else {
      w.target[t] = sums[t];
      w.me[t] = me;
    }
  }
  return w;
}

const std::vector<std::string>& experiments() {
  static const std::vector<std::string> names = {
      "contraction-search", "subspacing-tree", "order-opt", "integerization"};
  return names;
}

Report run(const Params& p) {
  if (p.instances < 1) throw ConfigError("need at least one instance");
  Report rep;
  rep.experiment = p.experiment;
  Rng rng(p.seed);
  MiningConfig base;
  base.threads = p.threads;
  base.validate();

  using Arm = std::function<std::size_t()>;
  std::vector<std::pair<Arm, Arm>> pairs;  // baseline, candidate per instance

  if (p.experiment == "contraction-search") {
    rep.baseline_arm = "binary";
    rep.candidate_arm = "linear";
    rep.reference = 1.79;
    const int N = pick(p.N, 1000), n = pick(p.n, 100);
    for (int i = 0; i < p.instances; ++i) {
      auto w = std::make_shared<Workload1D>(planted_1d(rng, N, n, 1e6, 1e-4));
      auto arm = [w, base](bool bisect) {
        return [w, base, bisect] {
          MiningConfig cfg = base;
          cfg.max_solutions = 10;
          cfg.use_binary_search = bisect;
          const Superset1D s(w->superset);
          return solve_fixed(s, w->n, w->target, w->me, cfg).solutions.size();
        };
      };
      pairs.emplace_back(arm(true), arm(false));
    }
  } else if (p.experiment == "subspacing-tree") {
    rep.baseline_arm = "variable";
    rep.candidate_arm = "binary";
    rep.reference = 1.59;
    const int N = pick(p.N, 70), n = pick(p.n, 7), d = pick(p.d, 14);
    for (int i = 0; i < p.instances; ++i) {
      auto w = std::make_shared<WorkloadMd>(planted_md(rng, N, d, n, 1e4, false, 0.01));
      auto arm = [w, base](SubspacingVariant v) {
        return [w, base, v] {
          MiningConfig cfg = base;
          cfg.max_solutions = 1000;
          cfg.variant = v;
          return solve_md(w->x, w->n, w->target, w->me, cfg).solutions.size();
        };
      };
      pairs.emplace_back(arm(SubspacingVariant::kVariable), arm(SubspacingVariant::kBinary));
    }
  } else if (p.experiment == "order-opt") {
    rep.baseline_arm = "no-opt";
    rep.candidate_arm = "opt";
    rep.reference = 4.39;
    const int N = pick(p.N, 60), n = pick(p.n, 6), d = pick(p.d, 5);
    for (int i = 0; i < p.instances; ++i) {
      auto w = std::make_shared<WorkloadMd>(planted_md(rng, N, d, n, 1e4, true));
      auto arm = [w, base](bool opt) {
        return [w, base, opt] {
          MdOptions o;
          o.sort_by_leader = opt;
          o.order_rows = opt;
          return solve_md(w->x, w->n, w->target, w->me, base, o).solutions.size();
        };
      };
      pairs.emplace_back(arm(false), arm(true));
    }
  } else if (p.experiment == "integerization") {
    rep.baseline_arm = "real";
    rep.candidate_arm = "integerized";
    rep.reference = 1.48;
    const int N = pick(p.N, 70), n = pick(p.n, 7), d = pick(p.d, 14);
    const std::int64_t lambda = p.lambda > 0 ? p.lambda : kDefaultLambda;
    for (int i = 0; i < p.instances; ++i) {
      auto w = std::make_shared<WorkloadMd>(planted_md(rng, N, d, n, 1e4, true));
      MiningConfig cfg = base;
      cfg.max_solutions = 1000;
      Arm real = [w, cfg] {
        return solve_md(w->x, w->n, w->target, w->me, cfg).solutions.size();
      };
      Arm packed = [w, cfg, lambda] {
        const std::vector<std::int64_t> lam(w->x.cols(), lambda);
        return solve_md_integerized(w->x, w->n, w->target, w->me, lam, cfg)
            .solutions.size();
      };
      pairs.emplace_back(real, packed);
    }
  } else {
    throw ConfigError("unknown experiment '" + p.experiment + "'");
  }

  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Timed b = timed(pairs[i].first);
    const Timed c = timed(pairs[i].second);
    const int id = static_cast<int>(i);
    rep.rows.push_back({id, rep.baseline_arm, b.ms, b.found});
    rep.rows.push_back({id, rep.candidate_arm, c.ms, c.found});
    ratio_sum += b.ms / std::max(c.ms, 1e-6);
  }
  rep.mean_ratio = ratio_sum / static_cast<double>(pairs.size());
  return rep;
}

void write_csv(const Report& r, std::ostream& os) {
  os << "instance_id,arm,wall_ms,solutions_found\n";
  for (const Row& row : r.rows) {
    os << row.instance_id << ',' << row.arm << ',' << row.wall_ms << ','
       << row.solutions_found << '\n';
  }
  os << "ratio," << r.baseline_arm << '/' << r.candidate_arm << ','
     << r.mean_ratio << ",\n";
}

}  // namespace flsss::bench
