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

// Row-by-row scheduling for the optimizers (knapsack, assignment).
//
// All workers concentrate on one target row at a time. The row's root is
// expanded breadth-first until at least threads * phi nodes share a depth;
// workers then take those tasks in order, and a worker that runs dry while
// others are busy is fed the shallowest open right half of a busy worker.

#ifndef FLSSS_SCHEDULE_HPP_
#define FLSSS_SCHEDULE_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flsss/parallel.hpp"

namespace flsss {

// Engine: expand(task, lo, hi, hooks, want), run(task, lo, hi, hooks) and
// contractions(). bounds(row) yields {lo, hi}; prune(fixed, sum_u) and
// leaf(B) are shared by all workers and must be thread-safe.
template <class Engine, class Task, class MakeEngine, class Bounds,
          class Prune, class Leaf>
std::uint64_t schedule_rows(std::vector<Task> roots, MakeEngine make_engine,
                            Bounds bounds, int threads, int phi,
                            SearchControl& ctl, Prune prune, Leaf leaf) {
  using word = typename Engine::word;
  std::atomic<std::uint64_t> nodes{0};

  struct Hooks {
    SearchControl& ctl;
    Prune& prune_fn;
    Leaf& leaf_fn;
    WorkQueue<Task>* queue = nullptr;
    unsigned tick = 0;

    bool stop() { return ctl.poll(tick); }
    bool prune(const word* fixed, const word* sum_u) {
      return prune_fn(fixed, sum_u);
    }
    void leaf(std::span<const int> b) { leaf_fn(b); }
    bool hungry() { return queue != nullptr && queue->hungry(); }
    void donate(Task&& t) { queue->push(std::move(t)); }
  };

  Engine front = make_engine();
  const std::size_t want =
      static_cast<std::size_t>(threads) * static_cast<std::size_t>(phi);
  for (Task& root : roots) {
    if (ctl.stopped()) break;
    const auto [lo, hi] = bounds(root.row);
    Hooks expander{ctl, prune, leaf};
    std::vector<Task> tasks = front.expand(std::move(root), lo, hi, expander, want);
    if (tasks.empty()) continue;
    WorkQueue<Task> queue(std::move(tasks), threads);
    run_workers(threads, [&](int) {
      Engine engine = make_engine();
      Hooks hooks{ctl, prune, leaf, threads > 1 ? &queue : nullptr};
      Task task;
      while (queue.pop(task)) {
        if (ctl.stopped()) continue;
        const auto [l, h] = bounds(task.row);
        engine.run(task, l, h, hooks);
      }
      nodes.fetch_add(engine.contractions(), std::memory_order_relaxed);
    });
  }
  return nodes.load() + front.contractions();
}

}  // namespace flsss

#endif  // FLSSS_SCHEDULE_HPP_
