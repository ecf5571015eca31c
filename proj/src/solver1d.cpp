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

#include "flsss/solver1d.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <vector>

#include "flsss/contraction.hpp"
#include "flsss/subspacing.hpp"

namespace flsss {
namespace detail {

double sum_slack(int n, double scale) {
  return 32.0 * (n + 4) * DBL_EPSILON * scale;
}

void mine_into(const Superset1D& s, TargetRange range,
               const IndexBounds& initial, const MiningConfig& cfg,
               SearchControl& ctl, const Verifier& verify, bool unique) {
  cfg.validate();
  validate_bounds(initial, s.size());
  if (!(range.min <= range.max)) return;
  const int n = initial.dims();

  std::vector<double> mags(s.elems().begin(), s.elems().end());
  for (double& v : mags) v = std::fabs(v);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double scale = std::max(std::fabs(range.min), std::fabs(range.max));
  double top = 0.0;
  for (int k = 0; k < n; ++k) top += mags[k];
  scale = std::max(scale, top);
  const double slack = sum_slack(n, scale);

  const ScalarAlgebra alg;
  const ElementTable<double> x = scalar_table(s);
  const QuasiTriangleMatrix<ScalarAlgebra> m(alg, x, n);
  ElementTable<double> lo(1, 1), hi(1, 1);
  lo.row(0)[0] = range.min - slack;
  hi.row(0)[0] = range.max + slack;

  const auto perm = s.perm();
  auto accept = [&](int, std::span<const int> b) {
    std::vector<int> pos(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) pos[i] = perm[b[i]];
    std::sort(pos.begin(), pos.end());
    auto sol = verify(pos);
    if (!sol) return;
    if (unique) {
      ctl.add_unique(std::move(*sol));
    } else {
      ctl.add(std::move(*sol));
    }
  };
  mine_rows(alg, x, m, lo, hi, std::vector<int>{0}, initial, cfg, ctl, accept);
}

}  // namespace detail

namespace {

detail::Verifier range_verifier(const Superset1D& s, TargetRange range) {
  return [&s, range](std::span<const int> pos) -> std::optional<Solution> {
    double sum = 0.0;
    for (int p : pos) sum += s.input()[p];
    if (!range.contains(sum)) return std::nullopt;
    return Solution{{pos.begin(), pos.end()}, {sum}};
  };
}

}  // namespace

MineResult solve_bounded(const Superset1D& s, TargetRange range,
                         const IndexBounds& initial, const MiningConfig& cfg) {
  SearchControl ctl(cfg);
  detail::mine_into(s, range, initial, cfg, ctl, range_verifier(s, range),
                    false);
  return ctl.finish();
}

MineResult mine(const Superset1D& s, int n, TargetRange range,
                const MiningConfig& cfg) {
  return solve_bounded(s, range, initial_bounds(s.size(), n), cfg);
}

MineResult solve_fixed(const Superset1D& s, int n, double target, double me,
                       const MiningConfig& cfg) {
  return mine(s, n, TargetRange::around(target, me), cfg);
}

MineResult solve_variable(const Superset1D& s, double target, double me,
                          const MiningConfig& cfg, VariableStrategy strategy) {
  const TargetRange range = TargetRange::around(target, me);
  const int N = s.size();
  SearchControl ctl(cfg);
  if (strategy == VariableStrategy::kLoopSizes) {
    for (int n = 1; n <= N && !ctl.stopped(); ++n) {
      detail::mine_into(s, range, initial_bounds(N, n), cfg, ctl,
                        range_verifier(s, range), false);
    }
    return ctl.finish();
  }

  // Zero padding: N extra zeros after the originals turn every subset of
  // size k into size-N subsets; padded positions are dropped afterwards.
  std::vector<double> padded(s.input().begin(), s.input().end());
  padded.resize(2 * static_cast<std::size_t>(N), 0.0);
  const Superset1D ps(padded);
  auto verify = [&s, N, range](std::span<const int> pos)
      -> std::optional<Solution> {
    std::vector<int> kept;
    for (int p : pos) {
      if (p < N) kept.push_back(p);
    }
    if (kept.empty()) return std::nullopt;
    double sum = 0.0;
    for (int p : kept) sum += s.input()[p];
    if (!range.contains(sum)) return std::nullopt;
    return Solution{std::move(kept), {sum}};
  };
  detail::mine_into(ps, range, initial_bounds(2 * N, N), cfg, ctl, verify,
                    true);
  return ctl.finish();
}

}  // namespace flsss
