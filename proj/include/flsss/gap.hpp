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

// Exact generalized assignment.
//
// Task s becomes a block of A rows, one per agent: cost c(s, a) in column a,
// zero elsewhere. Rows in a block are sorted by profit and the profit is
// replaced by its rank (the key). With one multiplier mu > max cost for all
// columns, the row of rank r scaled by mu reads r * mu everywhere except
// c + r * mu in its agent's column, so it is stored as (cost, agent, rank).
// A choice of one row per block with key sum K fits the budgets iff its
// scaled column sums stay within b(t) + K * mu.

#ifndef FLSSS_GAP_HPP_
#define FLSSS_GAP_HPP_

#include <cstdint>
#include <vector>

#include "flsss/core.hpp"

namespace flsss {

struct GapInstance {
  RealMatrix cost;               // T x A, nonnegative
  RealMatrix profit;             // T x A
  std::vector<double> budgets;   // A
};

struct CompactRow {
  double cost = 0.0;
  int agent = 0;
  int key = 0;
};

struct GapSuperset {
  int tasks = 0;
  int agents = 0;
  double mu = 0.0;
  std::vector<CompactRow> rows;      // block-major, rank order inside a block
  std::vector<double> row_profit;

  int block_of(int row) const { return row / agents; }

  // Unscaled cost columns plus rank, as a dense row of A + 1 entries.
  std::vector<double> ranked_row(int row) const;
  // Dense row scaled by mu: numerators over mu, then the key.
  std::vector<double> scaled_row(int row) const;
  // Scaled upper bounds for key sum K: b(t) + K * mu, then K.
  std::vector<double> scaled_upper(const std::vector<double>& budgets,
                                   long long key_sum) const;
};

// Throws InvalidInput on shape errors, non-finite entries or negative costs.
GapSuperset build_gap_superset(const GapInstance& g);

// Sum of compact rows: key sum, then per-agent cost. Its dense scaled form
// is key * mu + cost(t) in every column t.
struct CompactSum {
  long long key = 0;
  std::vector<double> cost;

  explicit CompactSum(int agents = 0) : cost(agents, 0.0) {}
  void add(const CompactRow& r) {
    key += r.key;
    cost[r.agent] += r.cost;
  }
  void sub(const CompactRow& r) {
    key -= r.key;
    cost[r.agent] -= r.cost;
  }
  std::vector<double> scaled(double mu) const;
  // Dense comparison against scaled_upper(budgets, key_sum).
  bool within(const std::vector<double>& budgets, long long key_sum, double mu,
              double slack = 0.0) const;
};

struct GapOptions {
  int phi = 16;
  bool prune = true;
};

struct GapResult {
  bool feasible = false;
  double profit = 0.0;
  std::vector<int> agent_of_task;
  std::vector<double> agent_cost;
  Status status = Status::kExhausted;  // kTimeout: best found, not proven
  std::uint64_t nodes = 0;
};

GapResult solve_gap(const GapInstance& g, const MiningConfig& cfg,
                    const GapOptions& opts = {});

}  // namespace flsss

#endif  // FLSSS_GAP_HPP_
