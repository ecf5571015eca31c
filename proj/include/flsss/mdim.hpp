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

// Multidimensional fixed-size subset sum.
//
// Rows are made component-wise nondecreasing by appending an integer key
// column v (v steps by one wherever a row fails to dominate its
// predecessor) and adding v * theta(t) to every column t, where theta(t)
// cancels the column's most negative step. A subset with key sum K then
// qualifies iff its transformed sum lies in [K * theta + S_L, K * theta +
// S_U] with key column exactly K, so each attainable K yields one target
// row for the vector-valued search.

#ifndef FLSSS_MDIM_HPP_
#define FLSSS_MDIM_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "flsss/core.hpp"

namespace flsss {

struct Comonotonized {
  RealMatrix star;               // N x (d + 1); column d is the key
  std::vector<double> theta;     // d multipliers
  std::vector<int> key;          // N entries, v(0) = 0
  int leader = 0;
  std::vector<double> leader_values;  // leader column in sorted row order
  std::vector<int> row_perm;     // sorted row -> original row
};

// Spearman correlation with average ranks; 0 when either column is constant.
double spearman(std::span<const double> a, std::span<const double> b);

// Column with the largest summed correlation to the others (lowest wins
// ties).
int leader_column(const RealMatrix& x);

// With sort_by_leader the rows are first stable-sorted by the leader column.
Comonotonized comonotonize(const RealMatrix& x, bool sort_by_leader = true);

struct TargetTable {
  RealMatrix lower;              // N_S x (d + 1)
  RealMatrix upper;
  std::vector<long long> key_sums;
  std::vector<int> order;        // mining order over rows
};

inline constexpr std::size_t kDefaultMaxTargetRows = 1'000'000;

// Throws ConfigError when more than max_rows key sums are attainable.
TargetTable build_targets(const Comonotonized& c, int n,
                          std::span<const double> lo,
                          std::span<const double> hi,
                          std::size_t max_rows = kDefaultMaxTargetRows);

// Rows sorted by how far their relative key position is from the relative
// position of the leader-column target midpoint; ties favour lower keys.
std::vector<int> order_targets(const TargetTable& tt, const Comonotonized& c,
                               int n, std::span<const double> lo,
                               std::span<const double> hi);

struct MdOptions {
  bool sort_by_leader = true;
  bool order_rows = true;
  std::size_t max_target_rows = kDefaultMaxTargetRows;
};

// Size-n row sets whose per-column sums lie in [target - me, target + me].
MineResult solve_md(const RealMatrix& x, int n, std::span<const double> target,
                    std::span<const double> me, const MiningConfig& cfg,
                    const MdOptions& opts = {});

// Same with explicit per-column bounds.
MineResult solve_md_range(const RealMatrix& x, int n,
                          std::span<const double> lo,
                          std::span<const double> hi, const MiningConfig& cfg,
                          const MdOptions& opts = {});

namespace detail {

// Validates shapes and converts target +- me into per-column bounds.
void md_bounds(const RealMatrix& x, int n, std::span<const double> target,
               std::span<const double> me, std::vector<double>& lo,
               std::vector<double>& hi);

// True when every column sum over `rows` (ascending) lies in [lo, hi];
// fills `sums`.
bool md_verify(const RealMatrix& x, std::span<const int> rows,
               std::span<const double> lo, std::span<const double> hi,
               std::vector<double>& sums);

}  // namespace detail
}  // namespace flsss

#endif  // FLSSS_MDIM_HPP_
