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

// Exact multidimensional 0-1 knapsack.
//
// Items are sorted by profit and their cost rows comonotonized; each cost
// column must reach at least the sum of its n smallest entries (always true)
// and at most its budget. Target rows are mined from the largest key sum
// down, and a branch is dropped once the profit of its upper bounds cannot
// beat the incumbent.

#ifndef FLSSS_KNAPSACK_HPP_
#define FLSSS_KNAPSACK_HPP_

#include <cstdint>
#include <vector>

#include "flsss/core.hpp"

namespace flsss {

struct KnapsackInstance {
  RealMatrix costs;              // N x d
  std::vector<double> profits;   // N
  std::vector<double> budgets;   // d
  int n = 0;                     // subset size; ignored by solve_01
};

struct KnapsackOptions {
  int phi = 16;
  bool prune = true;
};

struct KnapsackResult {
  bool feasible = false;
  double profit = 0.0;
  std::vector<int> indexes;      // ascending input positions
  std::vector<double> costs;     // per-column cost of `indexes`
  Status status = Status::kExhausted;  // kTimeout: best found, not proven
  std::uint64_t nodes = 0;       // contractions performed
};

// Best item set of size inst.n within budgets. max_solutions is ignored.
KnapsackResult solve_mf01k(const KnapsackInstance& inst, const MiningConfig& cfg,
                           const KnapsackOptions& opts = {});

// Best nonempty item set of any size.
KnapsackResult solve_01(const KnapsackInstance& inst, const MiningConfig& cfg,
                        const KnapsackOptions& opts = {});

}  // namespace flsss

#endif  // FLSSS_KNAPSACK_HPP_
