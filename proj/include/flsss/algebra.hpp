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

// Element algebras the search engine is generic over. An element (and every
// running sum of elements) is a fixed-width array of words; the algebra
// supplies +, -, and the component-wise partial order. Three instances:
//   ScalarAlgebra  - one double (one-dimensional mining)
//   VectorAlgebra  - d doubles (comonotonized multidimensional rows)
//   PackedAlgebra  - compressed integer rows (see packedint.hpp)

#ifndef FLSSS_ALGEBRA_HPP_
#define FLSSS_ALGEBRA_HPP_

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

namespace flsss {

template <class A>
concept Algebra = requires(const A& a, typename A::word* w,
                           const typename A::word* c) {
  typename A::word;
  { a.width() } -> std::convertible_to<int>;
  { A::kExact } -> std::convertible_to<bool>;
  a.add(w, c);
  a.sub(w, c);
  a.copy(w, c);
  a.zero(w);
  a.sum_into(w, c, c);
  { a.geq(c, c) } -> std::same_as<bool>;
  { a.leq(c, c) } -> std::same_as<bool>;
};

struct ScalarAlgebra {
  using word = double;
  static constexpr bool kExact = false;

  static constexpr int width() { return 1; }
  static void add(word* a, const word* b) { a[0] += b[0]; }
  static void sub(word* a, const word* b) { a[0] -= b[0]; }
  static void copy(word* a, const word* b) { a[0] = b[0]; }
  static void zero(word* a) { a[0] = 0.0; }
  static void sum_into(word* dst, const word* a, const word* b) {
    dst[0] = a[0] + b[0];
  }
  static bool geq(const word* a, const word* b) { return a[0] >= b[0]; }
  static bool leq(const word* a, const word* b) { return a[0] <= b[0]; }
};

class VectorAlgebra {
 public:
  using word = double;
  static constexpr bool kExact = false;

  explicit VectorAlgebra(int width) : width_(width) {}

  int width() const { return width_; }
  void add(word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) a[i] += b[i];
  }
  void sub(word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) a[i] -= b[i];
  }
  void copy(word* a, const word* b) const { std::copy_n(b, width_, a); }
  void zero(word* a) const { std::fill_n(a, width_, 0.0); }
  void sum_into(word* dst, const word* a, const word* b) const {
    for (int i = 0; i < width_; ++i) dst[i] = a[i] + b[i];
  }
  bool geq(const word* a, const word* b) const {
    for (int i = 0; i < width_; ++i)
      if (!(a[i] >= b[i])) return false;
    return true;
  }
  bool leq(const word* a, const word* b) const {
    for (int i = 0; i < width_; ++i)
      if (!(a[i] <= b[i])) return false;
    return true;
  }

 private:
  int width_;
};

// Row-major table of N elements, each `width` words.
template <class Word>
class ElementTable {
 public:
  ElementTable() = default;
  ElementTable(int rows, int width)
      : rows_(rows), width_(width),
        data_(static_cast<std::size_t>(rows) * width) {}

  int rows() const { return rows_; }
  int width() const { return width_; }
  const Word* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * width_;
  }
  Word* row(int i) { return data_.data() + static_cast<std::size_t>(i) * width_; }
  std::span<const Word> data() const { return data_; }

 private:
  int rows_ = 0;
  int width_ = 0;
  std::vector<Word> data_;
};

}  // namespace flsss

#endif  // FLSSS_ALGEBRA_HPP_
