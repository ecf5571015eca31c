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

// Multi-subset sum: choose n_h elements from each of K supersets so the
// joint sum lands in one range. Each sorted superset is shifted to start at
// the previous shifted superset's maximum, the shifted sets are pooled into
// one nondecreasing superset, and a single bounded search runs with every
// position confined to its own block.

#ifndef FLSSS_MULTISET_HPP_
#define FLSSS_MULTISET_HPP_

#include <vector>

#include "flsss/core.hpp"

namespace flsss {

struct MultiInstance {
  std::vector<std::vector<double>> supersets;
  std::vector<int> sizes;
  TargetRange range;
};

struct PooledInstance {
  std::vector<double> pooled;        // nondecreasing
  TargetRange adjusted;
  IndexBounds block_bounds;
  std::vector<double> offsets;       // added to every element of block h
  std::vector<int> block_start;      // first pooled position of block h
  std::vector<std::vector<int>> perms;  // sorted -> input, per superset
};

// Throws InvalidInput / InfeasibleSize on malformed instances.
PooledInstance pool(const MultiInstance& mi);

struct MultiSolution {
  std::vector<std::vector<int>> indexes;  // per superset, input positions
  double achieved = 0.0;

  bool operator<(const MultiSolution& o) const { return indexes < o.indexes; }
  bool operator==(const MultiSolution& o) const { return indexes == o.indexes; }
};

struct MultiResult {
  std::vector<MultiSolution> solutions;
  Status status = Status::kExhausted;
};

MultiResult solve_multi(const MultiInstance& mi, const MiningConfig& cfg);

}  // namespace flsss

#endif  // FLSSS_MULTISET_HPP_
