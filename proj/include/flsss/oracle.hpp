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

// Exhaustive reference solvers. They share no code with the search engines
// and sum members in ascending input position, one element at a time.

#ifndef FLSSS_ORACLE_HPP_
#define FLSSS_ORACLE_HPP_

#include <span>
#include <vector>

#include "flsss/core.hpp"

namespace flsss::oracle {

// Enumeration would exceed kMaxCases candidates.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr double kMaxCases = 1e7;

using IndexSets = std::vector<std::vector<int>>;

// All size-n position sets whose sum lies in `range`, lexicographic.
IndexSets brute_1d(std::span<const double> values, int n, TargetRange range);

// All size-n row sets with every column sum inside [lo(t), hi(t)].
IndexSets brute_md(const RealMatrix& x, int n, std::span<const double> lo,
                   std::span<const double> hi);

struct KnapsackOptimum {
  bool feasible = false;
  double profit = 0.0;
  std::vector<int> indexes;
};

// Best nonempty item set within budgets; size n, or any size when n < 0.
KnapsackOptimum brute_knapsack(const RealMatrix& costs,
                               std::span<const double> profits,
                               std::span<const double> budgets, int n);

struct GapOptimum {
  bool feasible = false;
  double profit = 0.0;
  std::vector<int> agent_of_task;
};

// cost and profit are T x A; every task goes to exactly one agent.
GapOptimum brute_gap(const RealMatrix& cost, const RealMatrix& profit,
                     std::span<const double> budgets);

}  // namespace flsss::oracle

#endif  // FLSSS_ORACLE_HPP_
