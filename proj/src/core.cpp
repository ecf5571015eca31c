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

#include "flsss/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flsss {

TargetRange TargetRange::around(double target, double me) {
  if (!(me >= 0.0)) throw InvalidInput("subset sum error must be >= 0");
  return {target - me, target + me};
}

Superset1D::Superset1D(std::span<const double> values)
    : input_(values.begin(), values.end()) {
  if (values.empty()) throw InvalidInput("superset is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidInput("non-finite superset value at index " +
                             std::to_string(i),
                         static_cast<long>(i));
    }
  }
  perm_.resize(values.size());
  std::iota(perm_.begin(), perm_.end(), 0);
  std::stable_sort(perm_.begin(), perm_.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  elems_.reserve(values.size());
  for (int p : perm_) elems_.push_back(values[p]);
}

SortedValues make_superset(std::span<const double> values) {
  Superset1D s(values);
  std::vector<int> perm(s.perm().begin(), s.perm().end());
  return {std::move(s), std::move(perm)};
}

RealMatrix RealMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidInput("matrix has no rows");
  const int cols = static_cast<int>(rows[0].size());
  if (cols == 0) throw InvalidInput("matrix has no columns");
  RealMatrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) {
      throw InvalidInput("row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " entries, expected " +
                             std::to_string(cols),
                         r);
    }
    for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<double> RealMatrix::column(int c) const {
  std::vector<double> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void RealMatrix::check_finite(const char* what) const {
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (!std::isfinite((*this)(r, c))) {
        throw InvalidInput(std::string("non-finite ") + what + " entry at row " +
                               std::to_string(r) + ", column " + std::to_string(c),
                           r);
      }
    }
  }
}

const char* to_string(Status s) {
  switch (s) {
    case Status::kExhausted:
      return "exhausted";
    case Status::kQuota:
      return "quota";
    case Status::kTimeout:
      return "timeout";
  }
  return "unknown";
}

void MiningConfig::validate() const {
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (!(time_limit.count() > 0.0)) throw ConfigError("time limit must be > 0");
  if (max_solutions == 0) throw ConfigError("max_solutions must be positive");
}

IndexBounds initial_bounds(int N, int n) {
  if (n < 1) throw InfeasibleSize("subset size must be >= 1");
  if (n > N) {
    throw InfeasibleSize("subset size " + std::to_string(n) +
                         " exceeds superset size " + std::to_string(N));
  }
  IndexBounds b;
  b.lower.resize(n);
  b.upper.resize(n);
  for (int k = 0; k < n; ++k) {
    b.lower[k] = k;
    b.upper[k] = N - n + k;
  }
  return b;
}

void validate_bounds(const IndexBounds& b, int N) {
  const int n = b.dims();
  if (n < 1 || static_cast<int>(b.upper.size()) != n) {
    throw InvalidInput("index bounds must have matching nonzero length");
  }
  for (int k = 0; k < n; ++k) {
    if (b.lower[k] < 0 || b.upper[k] >= N || b.lower[k] > b.upper[k]) {
      throw InvalidInput("index bound out of range at position " +
                             std::to_string(k),
                         k);
    }
    if (k > 0 && (b.lower[k] <= b.lower[k - 1] || b.upper[k] <= b.upper[k - 1])) {
      throw InvalidInput("index bounds not strictly increasing at position " +
                             std::to_string(k),
                         k);
    }
  }
}

void canonicalize(std::vector<Solution>& sols) {
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
}

}  // namespace flsss
