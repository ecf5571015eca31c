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

#include "flsss/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flsss::oracle {
namespace {

double choose(int N, int n) {
  double c = 1.0;
  for (int i = 0; i < n; ++i) c = c * (N - i) / (i + 1);
  return c;
}

void guard(double cases) {
  if (cases > kMaxCases) {
    throw GuardExceeded("brute force would enumerate " +
                        std::to_string(static_cast<long long>(cases)) +
                        " cases");
  }
}

// Advances a strictly increasing tuple over [0, N); false after the last.
bool next_combination(std::vector<int>& idx, int N) {
  const int n = static_cast<int>(idx.size());
  int k = n - 1;
  while (k >= 0 && idx[k] == N - n + k) --k;
  if (k < 0) return false;
  ++idx[k];
  for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

std::vector<int> first_combination(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

}  // namespace

IndexSets brute_1d(std::span<const double> values, int n, TargetRange range) {
  const int N = static_cast<int>(values.size());
  IndexSets out;
  if (n < 1 || n > N) return out;
  guard(choose(N, n));
  std::vector<int> idx = first_combination(n);
  do {
    double sum = 0.0;
    for (int i : idx) sum += values[i];
    if (sum >= range.min && sum <= range.max) out.push_back(idx);
  } while (next_combination(idx, N));
  return out;
}

IndexSets brute_md(const RealMatrix& x, int n, std::span<const double> lo,
                   std::span<const double> hi) {
  const int N = x.rows();
  const int d = x.cols();
  IndexSets out;
  if (n < 1 || n > N) return out;
  guard(choose(N, n));
  std::vector<int> idx = first_combination(n);
  do {
    bool ok = true;
    for (int t = 0; t < d && ok; ++t) {
      double sum = 0.0;
      for (int i : idx) sum += x(i, t);
      ok = sum >= lo[t] && sum <= hi[t];
    }
    if (ok) out.push_back(idx);
  } while (next_combination(idx, N));
  return out;
}

KnapsackOptimum brute_knapsack(const RealMatrix& costs,
                               std::span<const double> profits,
                               std::span<const double> budgets, int n) {
  const int N = costs.rows();
  const int d = costs.cols();
  KnapsackOptimum best;
  const int from = n < 0 ? 1 : n;
  const int to = n < 0 ? N : n;
  double cases = 0.0;
  for (int k = from; k <= to; ++k) cases += choose(N, k);
  guard(cases);
  for (int k = from; k <= to; ++k) {
    if (k < 1 || k > N) continue;
    std::vector<int> idx = first_combination(k);
    do {
      bool ok = true;
      for (int t = 0; t < d && ok; ++t) {
        double c = 0.0;
        for (int i : idx) c += costs(i, t);
        ok = c <= budgets[t];
      }
      if (!ok) continue;
      double p = 0.0;
      for (int i : idx) p += profits[i];
      if (!best.feasible || p > best.profit) {
        best.feasible = true;
        best.profit = p;
        best.indexes = idx;
      }
    } while (next_combination(idx, N));
  }
  return best;
}

GapOptimum brute_gap(const RealMatrix& cost, const RealMatrix& profit,
                     std::span<const double> budgets) {
  const int T = cost.rows();
  const int A = cost.cols();
  GapOptimum best;
  guard(std::pow(static_cast<double>(A), T));
  std::vector<int> agent(T, 0);
  std::vector<double> load(A);
  for (;;) {
    std::fill(load.begin(), load.end(), 0.0);
    for (int k = 0; k < T; ++k) load[agent[k]] += cost(k, agent[k]);
    bool ok = true;
    for (int a = 0; a < A && ok; ++a) ok = load[a] <= budgets[a];
    if (ok) {
      double p = 0.0;
      for (int k = 0; k < T; ++k) p += profit(k, agent[k]);
      if (!best.feasible || p > best.profit) {
        best.feasible = true;
        best.profit = p;
        best.agent_of_task = agent;
      }
    }
    int k = T - 1;
    while (k >= 0 && agent[k] == A - 1) agent[k--] = 0;
    if (k < 0) break;
    ++agent[k];
  }
  return best;
}

}  // namespace flsss::oracle
