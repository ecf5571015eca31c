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

// Hyperrectangle contraction.
//
// A candidate subset is a strictly increasing index array i_0 < ... < i_{n-1}
// into a sorted superset x. Contraction shrinks per-position bounds
// [l(i_k), u(i_k)] against a target range [lo, hi]:
//
//   lower sweep (k = 0..n-1): the least alpha such that the largest sum
//     attainable with i_k = alpha still reaches lo;
//   upper sweep (k = n-1..0): the greatest alpha such that the smallest sum
//     attainable with i_k = alpha stays within hi;
//
// repeated until neither sweep moves a bound. The largest sum attainable with
// i_k = alpha is sum_{t<t*} x(u_t) + sum_{t=t*..k} x(alpha-k+t) + sum_{t>k}
// x(u_t), where t* is where the diagonal alpha-k+t meets the upper bounds. t*
// only moves forward within a sweep and is kept in a ContractionCursor; the
// consecutive-run sum in the middle is one lookup in a QuasiTriangleMatrix.

#ifndef FLSSS_CONTRACTION_HPP_
#define FLSSS_CONTRACTION_HPP_

#include <algorithm>
#include <cassert>
#include <vector>

#include "flsss/algebra.hpp"
#include "flsss/core.hpp"

namespace flsss {

// Consecutive-run sums: entry (r, c) = x[r] + x[r+1] + ... + x[r+c], for
// c in [0, cols). Column c holds N - c rows and is nondecreasing in r when x
// is sorted. Built once per superset and shared read-only between workers.
template <Algebra Alg>
class QuasiTriangleMatrix {
 public:
  using word = typename Alg::word;

  QuasiTriangleMatrix(const Alg& alg, const ElementTable<word>& x, int cols)
      : rows_(x.rows()), cols_(cols), width_(alg.width()) {
    if (cols < 1 || cols > rows_) {
      throw InfeasibleSize("matrix column count must lie in [1, N]");
    }
    offsets_.resize(cols + 1);
    std::size_t total = 0;
    for (int c = 0; c < cols; ++c) {
      offsets_[c] = total;
      total += static_cast<std::size_t>(rows_ - c) * width_;
    }
    offsets_[cols] = total;
    data_.resize(total);
    for (int r = 0; r < rows_; ++r) alg.copy(mut(r, 0), x.row(r));
    for (int c = 1; c < cols; ++c) {
      for (int r = 0; r + c < rows_; ++r) {
        alg.sum_into(mut(r, c), at(r, c - 1), x.row(r + c));
      }
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const word* at(int r, int c) const {
    assert(c >= 0 && c < cols_ && r >= 0 && r + c < rows_);
    return data_.data() + offsets_[c] + static_cast<std::size_t>(r) * width_;
  }

 private:
  word* mut(int r, int c) {
    return data_.data() + offsets_[c] + static_cast<std::size_t>(r) * width_;
  }

  int rows_;
  int cols_;
  int width_;
  std::vector<std::size_t> offsets_;
  std::vector<word> data_;
};

// Mutable view of the active part of a search node. `fixed` is the sum of
// elements already committed outside the active positions; it is folded into
// every comparison so all compared quantities remain subset sums.
template <class Word>
struct BoxRef {
  int n;
  int* l;
  int* u;
  Word* sum_l;
  Word* sum_u;
  const Word* fixed;
};

// t* memo plus running partial sums for one sweep.
template <class Word>
struct ContractionCursor {
  int tstar = 0;
  std::vector<Word> head;  // lower: fixed-free sum_{t<t*} x(u_t)
  std::vector<Word> tail;  // lower: fixed + sum_{t>k} x(u_t)
  std::vector<Word> base;
  std::vector<Word> probe;

  explicit ContractionCursor(int width = 1)
      : head(width), tail(width), base(width), probe(width) {}
};

enum class SweepOrder { kLowerFirst, kUpperFirst };

template <Algebra Alg>
class Contractor {
 public:
  using word = typename Alg::word;
  using Box = BoxRef<word>;
  using Cursor = ContractionCursor<word>;

  Contractor(const Alg& alg, const ElementTable<word>& x,
             const QuasiTriangleMatrix<Alg>& m, SearchMode mode)
      : alg_(alg), x_(x), m_(m), mode_(mode), cur_(alg.width()) {}

  // Contracts `box` to a stationary rectangle; false when no subset inside
  // it can reach [lo, hi]. On success sum_l and sum_u describe the result.
  bool contract(Box box, const word* lo, const word* hi,
                SweepOrder order = SweepOrder::kLowerFirst) {
    bool lower_turn = order == SweepOrder::kLowerFirst;
    int quiet = 0;
    while (quiet < 2) {
      bool changed = false;
      const bool ok = lower_turn ? lower_sweep(box, lo, &changed)
                                 : upper_sweep(box, hi, &changed);
      if (!ok) return false;
      quiet = changed ? 0 : quiet + 1;
      lower_turn = !lower_turn;
    }
    return true;
  }

  bool lower_sweep(Box box, const word* lo, bool* changed) {
    begin_lower(box, cur_);
    for (int k = 0; k < box.n; ++k) {
      if (!tighten_lower(k, box, lo, cur_, changed)) return false;
    }
    return true;
  }

  bool upper_sweep(Box box, const word* hi, bool* changed) {
    begin_upper(box, cur_);
    for (int k = box.n - 1; k >= 0; --k) {
      if (!tighten_upper(k, box, hi, cur_, changed)) return false;
    }
    return true;
  }

  // Resets the cursor for a lower sweep starting at k = 0.
  void begin_lower(Box box, Cursor& cur) const {
    if constexpr (!Alg::kExact) refresh(box.sum_u, box.u, box.n);
    cur.tstar = 0;
    alg_.zero(cur.head.data());
    alg_.sum_into(cur.tail.data(), box.fixed, box.sum_u);
    alg_.sub(cur.tail.data(), x_.row(box.u[0]));
  }

  void begin_upper(Box box, Cursor& cur) const {
    if constexpr (!Alg::kExact) refresh(box.sum_l, box.l, box.n);
    cur.tstar = box.n - 1;
    alg_.zero(cur.tail.data());
    alg_.sum_into(cur.head.data(), box.fixed, box.sum_l);
    alg_.sub(cur.head.data(), x_.row(box.l[box.n - 1]));
  }

  // Raises l(i_k). Must be called for k = 0, 1, ... in order after
  // begin_lower. Returns false when the box holds no subset reaching lo.
  bool tighten_lower(int k, Box box, const word* lo, Cursor& cur,
                     bool* changed) const {
    int* l = box.l;
    const int* u = box.u;
    if (k > 0) alg_.sub(cur.tail.data(), x_.row(u[k]));
    const int before = l[k];
    if (k > 0 && l[k] <= l[k - 1]) l[k] = l[k - 1] + 1;
    if (l[k] > u[k]) return false;

    word* base = cur.base.data();
    word* probe = cur.probe.data();
    alg_.sum_into(base, cur.head.data(), cur.tail.data());
    int& ts = cur.tstar;
    for (;;) {
      alg_.sum_into(probe, base, m_.at(u[ts], k - ts));
      if (alg_.geq(probe, lo)) break;
      if (ts == k) return false;
      alg_.add(cur.head.data(), x_.row(u[ts]));
      alg_.add(base, x_.row(u[ts]));
      ++ts;
    }

    const int width = k - ts;
    const int alpha_hi = u[ts] + width;
    int alpha_lo = l[k];
    if (ts > 0) alpha_lo = std::max(alpha_lo, u[ts - 1] + width + 1);
    auto reaches = [&](int alpha) {
      alg_.sum_into(probe, base, m_.at(alpha - width, width));
      return alg_.geq(probe, lo);
    };
    int alpha = alpha_lo;
    if (alpha_lo < alpha_hi) {
      if (mode_ == SearchMode::kLinear) {
        while (alpha < alpha_hi && !reaches(alpha)) ++alpha;
      } else {
        int a = alpha_lo, b = alpha_hi;
        while (a < b) {
          const int mid = a + (b - a) / 2;
          if (reaches(mid)) b = mid; else a = mid + 1;
        }
        alpha = a;
      }
    }
    if (alpha != before) {
      alg_.sub(box.sum_l, x_.row(before));
      alg_.add(box.sum_l, x_.row(alpha));
      *changed = true;
    }
    l[k] = alpha;
    return true;
  }

  // Lowers u(i_k). Must be called for k = n-1, n-2, ... after begin_upper.
  bool tighten_upper(int k, Box box, const word* hi, Cursor& cur,
                     bool* changed) const {
    const int n = box.n;
    const int* l = box.l;
    int* u = box.u;
    if (k < n - 1) alg_.sub(cur.head.data(), x_.row(l[k]));
    const int before = u[k];
    if (k < n - 1 && u[k] >= u[k + 1]) u[k] = u[k + 1] - 1;
    if (u[k] < l[k]) return false;

    word* base = cur.base.data();
    word* probe = cur.probe.data();
    alg_.sum_into(base, cur.head.data(), cur.tail.data());
    int& ts = cur.tstar;
    for (;;) {
      alg_.sum_into(probe, base, m_.at(l[ts] - (ts - k), ts - k));
      if (alg_.leq(probe, hi)) break;
      if (ts == k) return false;
      alg_.add(cur.tail.data(), x_.row(l[ts]));
      alg_.add(base, x_.row(l[ts]));
      --ts;
    }

    const int width = ts - k;
    const int alpha_lo = l[ts] - width;
    int alpha_hi = u[k];
    if (ts < n - 1) alpha_hi = std::min(alpha_hi, l[ts + 1] - width - 1);
    auto fits = [&](int alpha) {
      alg_.sum_into(probe, base, m_.at(alpha, width));
      return alg_.leq(probe, hi);
    };
    int alpha = alpha_hi;
    if (alpha_hi > alpha_lo) {
      if (mode_ == SearchMode::kLinear) {
        while (alpha > alpha_lo && !fits(alpha)) --alpha;
      } else {
        int a = alpha_lo, b = alpha_hi;
        while (a < b) {
          const int mid = b - (b - a) / 2;
          if (fits(mid)) a = mid; else b = mid - 1;
        }
        alpha = a;
      }
    }
    if (alpha != before) {
      alg_.sub(box.sum_u, x_.row(before));
      alg_.add(box.sum_u, x_.row(alpha));
      *changed = true;
    }
    u[k] = alpha;
    return true;
  }

  const Alg& algebra() const { return alg_; }
  const ElementTable<word>& elements() const { return x_; }
  const QuasiTriangleMatrix<Alg>& matrix() const { return m_; }

 private:
  void refresh(word* sum, const int* idx, int n) const {
    alg_.zero(sum);
    for (int t = 0; t < n; ++t) alg_.add(sum, x_.row(idx[t]));
  }

  const Alg& alg_;
  const ElementTable<word>& x_;
  const QuasiTriangleMatrix<Alg>& m_;
  SearchMode mode_;
  Cursor cur_;
};

// One-dimensional convenience wrappers over a Superset1D.
ElementTable<double> scalar_table(const Superset1D& s);

struct ContractionResult {
  bool feasible = false;
  IndexBounds bounds;
  double sum_lower = 0.0;
  double sum_upper = 0.0;
};

ContractionResult contract_1d(const Superset1D& s, const IndexBounds& start,
                              TargetRange range, SearchMode mode,
                              SweepOrder order = SweepOrder::kLowerFirst);

}  // namespace flsss

#endif  // FLSSS_CONTRACTION_HPP_
