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

// Integerized, bit-packed rows.
//
// Each integer column t gets a field of bits(t) = bit_width(psi(t)) + 1
// bits, where psi(t) bounds every magnitude the search can produce in that
// column; the extra top bit is the field's sign. Fields are laid out from the
// most significant end of 64-bit words, first fit in column order.
//
// Vectors add and subtract as plain words: as long as every column result
// stays within its field, carries and borrows never cross fields except when
// a lower field goes negative. Comparison a <= b subtracts and tests the
// sign bits through the mask pi; the lowest negative field always shows its
// own sign bit, so the test is exact.

#ifndef FLSSS_PACKEDINT_HPP_
#define FLSSS_PACKEDINT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "flsss/core.hpp"
#include "flsss/mdim.hpp"

namespace flsss {

// A value does not fit its field.
class PackOverflow : public Error {
 public:
  using Error::Error;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::int64_t operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::span<const std::int64_t> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

struct IntegerizedInstance {
  std::vector<std::int64_t> lambda;
  IntMatrix xz;
  std::vector<std::int64_t> zlo, zhi;
};

// Maps column t by v -> round((v - min) / max * lambda) with ties away from
// zero; the range uses the same map with an n * min shift. Columns whose
// maximum is not positive divide by (max - min) instead; constant columns
// map to zero.
IntegerizedInstance integerize(const RealMatrix& x, std::span<const double> lo,
                               std::span<const double> hi, int n,
                               std::span<const std::int64_t> lambda);

struct Placement {
  int word = 0;
  int shift = 0;   // field occupies bits [shift, shift + bits)
};

struct PackLayout {
  std::vector<std::uint64_t> psi;
  std::vector<int> bits;
  std::vector<Placement> place;
  std::vector<std::uint64_t> mask;
  int words = 0;
};

inline constexpr int kWordBits = 64;
inline constexpr int kMaxFieldBits = 63;

// Throws ConfigError when a column needs more than kMaxFieldBits bits.
PackLayout layout_from_psi(std::span<const std::uint64_t> psi);

// psi(t) = max(|target entries|, sum of the n largest entries) per column.
PackLayout plan_layout(const IntMatrix& star, int n, const IntMatrix& lo,
                       const IntMatrix& hi);

// Throws PackOverflow when |v(t)| >= 2^(bits(t) - 1).
void pack_row(const PackLayout& L, std::span<const std::int64_t> v,
              std::uint64_t* out);
std::vector<std::uint64_t> pack_row(const PackLayout& L,
                                    std::span<const std::int64_t> v);
std::vector<std::int64_t> unpack_row(const PackLayout& L,
                                     std::span<const std::uint64_t> w);

class PackedAlgebra {
 public:
  using word = std::uint64_t;
  static constexpr bool kExact = true;

  explicit PackedAlgebra(const PackLayout& L)
      : width_(L.words), mask_(L.mask.data()) {}

  int width() const { return width_; }
  void add(word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) a[i] += b[i];
  }
  void sub(word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) a[i] -= b[i];
  }
  void copy(word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) a[i] = b[i];
  }
  void zero(word* a) const {
    for (int i = 0; i < width_; ++i) a[i] = 0;
  }
  void sum_into(word* dst, const word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) dst[i] = a[i] + b[i];
  }
  bool leq(const word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) {
      if ((b[i] - a[i]) & mask_[i]) return false;
    }
    return true;
  }
  bool geq(const word* a, const word* b) const { return leq(b, a); }

 private:
  int width_;
  const word* mask_;
};

// integerize -> comonotonize -> targets -> layout -> packed search. Index
// sets satisfy the integerized ranges exactly; the result carries
// integerized = true because small lambda may change the set relative to
// real-valued mining. `achieved` holds the real column sums.
MineResult solve_md_integerized(const RealMatrix& x, int n,
                                std::span<const double> target,
                                std::span<const double> me,
                                std::span<const std::int64_t> lambda,
                                const MiningConfig& cfg,
                                const MdOptions& opts = {});

}  // namespace flsss

#endif  // FLSSS_PACKEDINT_HPP_
