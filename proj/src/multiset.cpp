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

#include "flsss/multiset.hpp"

#include <algorithm>
#include <string>

#include "flsss/parallel.hpp"
#include "flsss/solver1d.hpp"

namespace flsss {

PooledInstance pool(const MultiInstance& mi) {
  const int K = static_cast<int>(mi.supersets.size());
  if (K == 0) throw InvalidInput("no supersets given");
  if (static_cast<int>(mi.sizes.size()) != K) {
    throw InvalidInput("expected one subset size per superset");
  }
  PooledInstance p;
  p.block_start.resize(K);
  p.offsets.resize(K);
  p.perms.resize(K);
  double shift_total = 0.0;
  for (int h = 0; h < K; ++h) {
    const auto& raw = mi.supersets[h];
    const int N = static_cast<int>(raw.size());
    const int n = mi.sizes[h];
    if (n < 1 || n > N) {
      throw InfeasibleSize("subset size " + std::to_string(n) +
                           " invalid for superset " + std::to_string(h) +
                           " of size " + std::to_string(N));
    }
    const Superset1D s(raw);
    p.perms[h].assign(s.perm().begin(), s.perm().end());
    const double offset = h == 0 ? 0.0 : p.pooled.back() - s[0];
    p.offsets[h] = offset;
    p.block_start[h] = static_cast<int>(p.pooled.size());
    for (int t = 0; t < N; ++t) {
      p.pooled.push_back(h == 0 ? s[t] : s[t] - s[0] + p.pooled[p.block_start[h] - 1]);
    }
    const int start = p.block_start[h];
    for (int k = 0; k < n; ++k) {
      p.block_bounds.lower.push_back(start + k);
      p.block_bounds.upper.push_back(start + N - n + k);
    }
    shift_total += offset * n;
  }
  p.adjusted = {mi.range.min + shift_total, mi.range.max + shift_total};
  return p;
}

MultiResult solve_multi(const MultiInstance& mi, const MiningConfig& cfg) {
  const PooledInstance p = pool(mi);
  const int K = static_cast<int>(mi.supersets.size());
  const Superset1D pooled(p.pooled);

  // Pooled position -> (block, original input position).
  std::vector<int> block_of(p.pooled.size()), input_of(p.pooled.size());
  for (int h = 0; h < K; ++h) {
    for (std::size_t t = 0; t < p.perms[h].size(); ++t) {
      block_of[p.block_start[h] + t] = h;
      input_of[p.block_start[h] + t] = p.perms[h][t];
    }
  }

  const TargetRange range = mi.range;
  auto verify = [&](std::span<const int> pos) -> std::optional<Solution> {
    std::vector<std::vector<int>> per(K);
    for (int q : pos) per[block_of[q]].push_back(input_of[q]);
    double sum = 0.0;
    for (int h = 0; h < K; ++h) {
      std::sort(per[h].begin(), per[h].end());
      for (int i : per[h]) sum += mi.supersets[h][i];
    }
    if (!range.contains(sum)) return std::nullopt;
    return Solution{{pos.begin(), pos.end()}, {sum}};
  };

  SearchControl ctl(cfg);
  detail::mine_into(pooled, p.adjusted, p.block_bounds, cfg, ctl, verify,
                    false);
  MineResult raw = ctl.finish();

  MultiResult out;
  out.status = raw.status;
  for (const Solution& s : raw.solutions) {
    MultiSolution ms;
    ms.indexes.resize(K);
    for (int q : s.indexes) ms.indexes[block_of[q]].push_back(input_of[q]);
    for (auto& v : ms.indexes) std::sort(v.begin(), v.end());
    ms.achieved = s.achieved[0];
    out.solutions.push_back(std::move(ms));
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  return out;
}

}  // namespace flsss
