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

#ifndef FLSSS_CORE_HPP_
#define FLSSS_CORE_HPP_

#include <chrono>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flsss {

// Errors -------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data is malformed (non-finite values, wrong shapes, bad bounds).
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what, long index = -1)
      : Error(what), index_(index) {}
  // Offending element position, or -1 when not tied to one element.
  long index() const { return index_; }

 private:
  long index_;
};

// Requested subset size cannot be drawn from the superset.
class InfeasibleSize : public Error {
 public:
  using Error::Error;
};

// Solver knobs that cannot be honored (word budget, row caps, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Domain types ---------------------------------------------------------------

// Closed subset-sum interval [min, max].
struct TargetRange {
  double min = 0.0;
  double max = 0.0;

  static TargetRange around(double target, double me);
  double width() const { return max - min; }
  bool contains(double v) const { return v >= min && v <= max; }
};

// Sorted element store plus the permutation back to caller positions.
class Superset1D {
 public:
  // Stable-sorts `values`; throws InvalidInput on a non-finite entry.
  explicit Superset1D(std::span<const double> values);

  int size() const { return static_cast<int>(elems_.size()); }
  std::span<const double> elems() const { return elems_; }
  double operator[](int k) const { return elems_[k]; }
  // perm()[k] = input position of sorted element k.
  std::span<const int> perm() const { return perm_; }
  std::span<const double> input() const { return input_; }

 private:
  std::vector<double> elems_;
  std::vector<int> perm_;
  std::vector<double> input_;
};

// Row-major real matrix (N rows by d columns).
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  // Throws InvalidInput on ragged rows.
  static RealMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  std::vector<double> column(int c) const;
  // Throws InvalidInput naming the first non-finite entry.
  void check_finite(const char* what) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Per-position lower/upper index arrays: the search hyperrectangle.
struct IndexBounds {
  std::vector<int> lower;
  std::vector<int> upper;

  int dims() const { return static_cast<int>(lower.size()); }
  bool operator==(const IndexBounds&) const = default;
};

struct Solution {
  std::vector<int> indexes;       // ascending, caller numbering
  std::vector<double> achieved;   // one entry per dimension

  bool operator==(const Solution& o) const { return indexes == o.indexes; }
  bool operator<(const Solution& o) const { return indexes < o.indexes; }
};

enum class Status { kExhausted, kQuota, kTimeout };
const char* to_string(Status s);

enum class SearchMode { kLinear, kBinary };
enum class SubspacingVariant { kBinary, kVariable };

struct MiningConfig {
  static constexpr std::size_t kUnbounded =
      std::numeric_limits<std::size_t>::max();

  std::size_t max_solutions = kUnbounded;
  std::chrono::duration<double> time_limit{3600.0};
  int threads = 1;
  bool use_binary_search = false;
  SubspacingVariant variant = SubspacingVariant::kBinary;

  SearchMode search_mode() const {
    return use_binary_search ? SearchMode::kBinary : SearchMode::kLinear;
  }
  void validate() const;
};

struct MineResult {
  std::vector<Solution> solutions;
  Status status = Status::kExhausted;
  // Set when index sets were judged on integerized data.
  bool integerized = false;
};

// Sorted superset plus its permutation (sorted position -> input position).
struct SortedValues {
  Superset1D superset;
  std::vector<int> permutation;
};
SortedValues make_superset(std::span<const double> values);

// Hypercube l[k] = k, u[k] = N - n + k.
IndexBounds initial_bounds(int N, int n);

// Checks l <= u, strict monotonicity and range [0, N).
void validate_bounds(const IndexBounds& b, int N);

// Sorts solutions by index tuple and drops repeats.
void canonicalize(std::vector<Solution>& sols);

}  // namespace flsss

#endif  // FLSSS_CORE_HPP_
