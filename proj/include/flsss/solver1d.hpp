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

#ifndef FLSSS_SOLVER1D_HPP_
#define FLSSS_SOLVER1D_HPP_

#include <functional>
#include <optional>
#include <span>

#include "flsss/core.hpp"
#include "flsss/parallel.hpp"

namespace flsss {

enum class VariableStrategy { kPadZeros, kLoopSizes };

// Every size-n subset of `s` whose sum lies in `range`.
MineResult mine(const Superset1D& s, int n, TargetRange range,
                const MiningConfig& cfg);

MineResult solve_fixed(const Superset1D& s, int n, double target, double me,
                       const MiningConfig& cfg);

// As mine, restricted to the hyperrectangle `initial` (sorted positions).
MineResult solve_bounded(const Superset1D& s, TargetRange range,
                         const IndexBounds& initial, const MiningConfig& cfg);

// Subsets of any nonempty size.
MineResult solve_variable(const Superset1D& s, double target, double me,
                          const MiningConfig& cfg,
                          VariableStrategy strategy = VariableStrategy::kLoopSizes);

namespace detail {

// Receives a candidate as ascending input positions and returns the
// solution to record, or nothing to reject it.
using Verifier =
    std::function<std::optional<Solution>(std::span<const int> positions)>;

// Runs the search over `initial` with a range widened against rounding and
// records verified leaves in `ctl`. `unique` drops repeated index sets.
void mine_into(const Superset1D& s, TargetRange range,
               const IndexBounds& initial, const MiningConfig& cfg,
               SearchControl& ctl, const Verifier& verify, bool unique);

// Rounding allowance for sums of up to n elements of magnitude `scale`.
double sum_slack(int n, double scale);

}  // namespace detail
}  // namespace flsss

#endif  // FLSSS_SOLVER1D_HPP_
