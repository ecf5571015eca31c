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

// Depth-first branch and bound over index hyperrectangles.
//
// Each frame holds an uncontracted box. Descending copies the top frame,
// contracts the copy, commits dimensions whose bounds met (pushing them on
// the fixed buffer B), then halves the narrowest remaining dimension: the
// frame keeps the left half while its child is explored and is switched to
// the right half on the way back up. A frame whose right half has been
// handed out (explored or donated) is popped together with its fixed
// entries.
//
// Hooks let callers observe and steer the search:
//   bool stop()                              polled before each contraction
//   bool prune(const word* fixed, const word* sum_u)
//                                            after a successful contraction
//   void leaf(std::span<const int> B)        all n positions committed
//   bool hungry()                            another worker wants work
//   void donate(SearchTask&&)                receives the shallowest open
//                                            right half

#ifndef FLSSS_SUBSPACING_HPP_
#define FLSSS_SUBSPACING_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flsss/algebra.hpp"
#include "flsss/contraction.hpp"
#include "flsss/core.hpp"
#include "flsss/parallel.hpp"

namespace flsss {

// A self-contained unit of work: an uncontracted box plus the elements
// already committed on the way to it.
template <class Word>
struct SearchTask {
  int row = 0;
  std::vector<int> l, u;
  std::vector<int> fixed;
  std::vector<Word> fixed_sum;
};

template <Algebra Alg>
class DfsEngine {
 public:
  using word = typename Alg::word;
  using Task = SearchTask<word>;

  DfsEngine(const Alg& alg, const ElementTable<word>& x,
            const QuasiTriangleMatrix<Alg>& m, SearchMode mode)
      : alg_(alg), x_(x), m_(m), contractor_(alg, x, m, mode) {}

  // Builds the root task over `b` with nothing committed.
  Task root_task(int row, const IndexBounds& b) const {
    Task t;
    t.row = row;
    t.l = b.lower;
    t.u = b.upper;
    t.fixed_sum.assign(alg_.width(), word{});
    return t;
  }

  // Binary subspacing.
  template <class Hooks>
  void run(const Task& task, const word* lo, const word* hi, Hooks& hooks) {
    const int n = static_cast<int>(task.l.size());
    ensure_frames(n + 2);
    load(frames_[0], task);
    B_.assign(task.fixed.begin(), task.fixed.end());
    base_fixed_ = B_.size();
    if (n == 0) {
      hooks.leaf(std::span<const int>(B_));
      return;
    }
    int depth = 0;
    for (;;) {
      if (hooks.stop()) return;
      if (depth > 0 && hooks.hungry()) donate(task.row, depth, hooks);
      if (static_cast<int>(frames_.size()) <= depth + 1) {
        frames_.resize(depth + 2, Frame(alg_.width(), frames_[0].l.size()));
      }
      Frame& child = frames_[depth + 1];
      copy_frame(child, frames_[depth]);
      const Outcome r = settle(child, lo, hi, hooks);
      if (r == Outcome::kBranch) {
        split_left(child);
        ++depth;
        continue;
      }
      if (r == Outcome::kLeaf) hooks.leaf(std::span<const int>(B_));
      B_.resize(B_.size() - child.nz);
      while (depth > 0 && frames_[depth].beta == 1) {
        B_.resize(B_.size() - frames_[depth].nz);
        --depth;
      }
      if (depth == 0) return;
      split_right(frames_[depth]);
    }
  }

  // Variable subspacing: the narrowest dimension is fixed to each of its
  // admissible indexes in turn, one child per index.
  template <class Hooks>
  void run_variable(const Task& task, const word* lo, const word* hi,
                    Hooks& hooks) {
    const int n = static_cast<int>(task.l.size());
    ensure_frames(n + 2);
    load(frames_[0], task);
    B_.assign(task.fixed.begin(), task.fixed.end());
    vs_node(0, lo, hi, hooks);
  }

  // Breadth-first expansion until at least `want` open nodes share a depth.
  // Leaves met on the way go to hooks.leaf; an empty result means the
  // subtree is exhausted (or stopped).
  template <class Hooks>
  std::vector<Task> expand(Task root, const word* lo, const word* hi,
                           Hooks& hooks, std::size_t want) {
    const int n = static_cast<int>(root.l.size());
    ensure_frames(n + 2);
    std::vector<Task> level;
    level.push_back(std::move(root));
    while (!level.empty() && level.size() < want) {
      std::vector<Task> next;
      for (Task& t : level) {
        if (hooks.stop()) return {};
        Frame& f = frames_[0];
        load(f, t);
        B_.assign(t.fixed.begin(), t.fixed.end());
        if (f.n == 0) {
          hooks.leaf(std::span<const int>(B_));
          continue;
        }
        const Outcome r = settle(f, lo, hi, hooks);
        if (r == Outcome::kFail) continue;
        if (r == Outcome::kLeaf) {
          hooks.leaf(std::span<const int>(B_));
          continue;
        }
        split_left(f);
        next.push_back(export_task(t.row, f, B_.size()));
        split_right(f);
        next.push_back(export_task(t.row, f, B_.size()));
      }
      level = std::move(next);
    }
    return level;
  }

  std::uint64_t contractions() const { return contractions_; }

 private:
  enum class Outcome { kFail, kLeaf, kBranch };

  struct Frame {
    int beta = 1;
    int kappa = 0;
    int split = 0;
    int n = 0;
    int nz = 0;
    std::vector<int> l, u, u_saved;
    std::vector<word> sum_l, sum_u, sum_u_saved, fixed;

    Frame(int width, int cap)
        : l(cap), u(cap), u_saved(cap), sum_l(width), sum_u(width),
          sum_u_saved(width), fixed(width) {}
  };

  void ensure_frames(int count) {
    const int cap = count - 2;
    if (!frames_.empty() && static_cast<int>(frames_[0].l.size()) < cap) {
      frames_.clear();
    }
    if (static_cast<int>(frames_.size()) < count) {
      frames_.resize(count, Frame(alg_.width(), std::max(cap, 1)));
    }
  }

  void load(Frame& f, const Task& t) {
    f.n = static_cast<int>(t.l.size());
    f.beta = 1;
    f.nz = 0;
    std::copy(t.l.begin(), t.l.end(), f.l.begin());
    std::copy(t.u.begin(), t.u.end(), f.u.begin());
    alg_.copy(f.fixed.data(), t.fixed_sum.data());
    alg_.zero(f.sum_l.data());
    alg_.zero(f.sum_u.data());
    for (int k = 0; k < f.n; ++k) {
      alg_.add(f.sum_l.data(), x_.row(f.l[k]));
      alg_.add(f.sum_u.data(), x_.row(f.u[k]));
    }
  }

  void copy_frame(Frame& dst, const Frame& src) const {
    dst.n = src.n;
    dst.beta = 1;
    dst.nz = 0;
    std::copy_n(src.l.begin(), src.n, dst.l.begin());
    std::copy_n(src.u.begin(), src.n, dst.u.begin());
    alg_.copy(dst.sum_l.data(), src.sum_l.data());
    alg_.copy(dst.sum_u.data(), src.sum_u.data());
    alg_.copy(dst.fixed.data(), src.fixed.data());
  }

  // Contract, prune, and commit collapsed dimensions.
  template <class Hooks>
  Outcome settle(Frame& f, const word* lo, const word* hi, Hooks& hooks) {
    f.nz = 0;
    ++contractions_;
    BoxRef<word> box{f.n, f.l.data(), f.u.data(), f.sum_l.data(),
                     f.sum_u.data(), f.fixed.data()};
    if (!contractor_.contract(box, lo, hi)) return Outcome::kFail;
    if (hooks.prune(f.fixed.data(), f.sum_u.data())) return Outcome::kFail;
    int j = 0;
    for (int t = 0; t < f.n; ++t) {
      if (f.l[t] == f.u[t]) {
        const word* e = x_.row(f.l[t]);
        B_.push_back(f.l[t]);
        alg_.add(f.fixed.data(), e);
        alg_.sub(f.sum_l.data(), e);
        alg_.sub(f.sum_u.data(), e);
        ++f.nz;
      } else {
        f.l[j] = f.l[t];
        f.u[j] = f.u[t];
        ++j;
      }
    }
    f.n = j;
    return j == 0 ? Outcome::kLeaf : Outcome::kBranch;
  }

  static int narrowest(const Frame& f) {
    int kappa = 0;
    for (int t = 1; t < f.n; ++t) {
      if (f.u[t] - f.l[t] < f.u[kappa] - f.l[kappa]) kappa = t;
    }
    return kappa;
  }

  // Keeps indexes <= split in dimension kappa and propagates the cap down.
  void split_left(Frame& f) {
    const int kappa = narrowest(f);
    const int mid = f.l[kappa] + (f.u[kappa] - f.l[kappa]) / 2;
    f.kappa = kappa;
    f.split = mid;
    f.beta = 0;
    std::copy_n(f.u.begin(), kappa + 1, f.u_saved.begin());
    alg_.copy(f.sum_u_saved.data(), f.sum_u.data());
    int t = kappa;
    for (; t >= 0; --t) {
      const int cap = mid - kappa + t;
      if (f.u[t] <= cap) break;
      alg_.sub(f.sum_u.data(), x_.row(f.u[t]));
      f.u[t] = cap;
    }
    // Positions t+1..kappa now hold the consecutive run starting at
    // mid - kappa + t + 1.
    if (t < kappa) alg_.add(f.sum_u.data(), m_.at(mid - kappa + t + 1, kappa - t - 1));
  }

  // Restores the saved upper prefix and raises lower bounds past split.
  void split_right(Frame& f) {
    const int kappa = f.kappa;
    const int mid = f.split;
    f.beta = 1;
    std::copy_n(f.u_saved.begin(), kappa + 1, f.u.begin());
    alg_.copy(f.sum_u.data(), f.sum_u_saved.data());
    int t = kappa;
    for (; t < f.n; ++t) {
      const int floor = mid + 1 + t - kappa;
      if (f.l[t] >= floor) break;
      alg_.sub(f.sum_l.data(), x_.row(f.l[t]));
      f.l[t] = floor;
    }
    if (t > kappa) alg_.add(f.sum_l.data(), m_.at(mid + 1, t - kappa - 1));
  }

  Task export_task(int row, const Frame& f, std::size_t fixed_len) const {
    Task t;
    t.row = row;
    t.l.assign(f.l.begin(), f.l.begin() + f.n);
    t.u.assign(f.u.begin(), f.u.begin() + f.n);
    t.fixed.assign(B_.begin(), B_.begin() + fixed_len);
    t.fixed_sum.assign(f.fixed.begin(), f.fixed.end());
    return t;
  }

  // Hands the right half of the shallowest open frame to another worker.
  template <class Hooks>
  void donate(int row, int depth, Hooks& hooks) {
    std::size_t fixed_len = base_fixed_;
    for (int d = 1; d <= depth; ++d) {
      fixed_len += frames_[d].nz;
      Frame& f = frames_[d];
      if (f.beta != 0) continue;
      // Work on a scratch copy so this frame's left half stays intact.
      if (static_cast<int>(scratch_.l.size()) < f.n) {
        scratch_ = Frame(alg_.width(), frames_[0].l.size());
      }
      Frame& scratch = scratch_;
      copy_frame(scratch, f);
      scratch.kappa = f.kappa;
      scratch.split = f.split;
      std::copy_n(f.u_saved.begin(), f.kappa + 1, scratch.u_saved.begin());
      alg_.copy(scratch.sum_u_saved.data(), f.sum_u_saved.data());
      split_right(scratch);
      hooks.donate(export_task(row, scratch, fixed_len));
      f.beta = 1;
      return;
    }
  }

  template <class Hooks>
  void vs_node(int d, const word* lo, const word* hi, Hooks& hooks) {
    if (hooks.stop()) return;
    Frame& f = frames_[d];
    if (f.n == 0) {
      hooks.leaf(std::span<const int>(B_));
      return;
    }
    const Outcome r = settle(f, lo, hi, hooks);
    if (r == Outcome::kLeaf) hooks.leaf(std::span<const int>(B_));
    if (r == Outcome::kBranch) {
      const int kappa = narrowest(f);
      for (int v = f.l[kappa]; v <= f.u[kappa]; ++v) {
        Frame& c = frames_[d + 1];
        copy_frame(c, f);
        c.l[kappa] = c.u[kappa] = v;
        for (int t = 0; t < kappa; ++t) c.u[t] = std::min(c.u[t], v - kappa + t);
        for (int t = kappa + 1; t < c.n; ++t) {
          c.l[t] = std::max(c.l[t], v + t - kappa);
        }
        resum(c);
        vs_node(d + 1, lo, hi, hooks);
        if (hooks.stop()) break;
      }
    }
    B_.resize(B_.size() - f.nz);
  }

  void resum(Frame& f) const {
    alg_.zero(f.sum_l.data());
    alg_.zero(f.sum_u.data());
    for (int k = 0; k < f.n; ++k) {
      alg_.add(f.sum_l.data(), x_.row(f.l[k]));
      alg_.add(f.sum_u.data(), x_.row(f.u[k]));
    }
  }

  const Alg& alg_;
  const ElementTable<word>& x_;
  const QuasiTriangleMatrix<Alg>& m_;
  Contractor<Alg> contractor_;
  std::vector<Frame> frames_;
  Frame scratch_{1, 0};
  std::vector<int> B_;
  std::size_t base_fixed_ = 0;
  std::uint64_t contractions_ = 0;
};

// Shared driver for the row-based miners (1-D, multidimensional, packed).
// Each target row becomes one root task; `accept(row, B)` checks a leaf in
// the caller's own space and records it through `ctl`.
template <Algebra Alg, class Accept>
void mine_rows(const Alg& alg, const ElementTable<typename Alg::word>& x,
               const QuasiTriangleMatrix<Alg>& m,
               const ElementTable<typename Alg::word>& lo,
               const ElementTable<typename Alg::word>& hi,
               const std::vector<int>& order, const IndexBounds& start,
               const MiningConfig& cfg, SearchControl& ctl, Accept accept) {
  using word = typename Alg::word;
  using Task = SearchTask<word>;
  std::vector<Task> roots;
  roots.reserve(order.size());
  {
    DfsEngine<Alg> probe(alg, x, m, cfg.search_mode());
    for (int row : order) roots.push_back(probe.root_task(row, start));
  }
  const int workers = cfg.threads;
  WorkQueue<Task> queue(std::move(roots), workers);

  struct Hooks {
    SearchControl& ctl;
    WorkQueue<Task>& queue;
    Accept& accept;
    int row = 0;
    unsigned tick = 0;
    bool donating = false;

    bool stop() { return ctl.poll(tick); }
    bool prune(const word*, const word*) { return false; }
    void leaf(std::span<const int> b) { accept(row, b); }
    bool hungry() { return donating && queue.hungry(); }
    void donate(Task&& t) { queue.push(std::move(t)); }
  };

  run_workers(workers, [&](int) {
    DfsEngine<Alg> engine(alg, x, m, cfg.search_mode());
    Hooks hooks{ctl, queue, accept};
    hooks.donating = workers > 1 &&
                     cfg.variant == SubspacingVariant::kBinary;
    Task task;
    while (queue.pop(task)) {
      if (ctl.stopped()) continue;
      hooks.row = task.row;
      const word* l = lo.row(task.row);
      const word* h = hi.row(task.row);
      if (cfg.variant == SubspacingVariant::kVariable) {
        engine.run_variable(task, l, h, hooks);
      } else {
        engine.run(task, l, h, hooks);
      }
    }
  });
}

}  // namespace flsss

#endif  // FLSSS_SUBSPACING_HPP_
