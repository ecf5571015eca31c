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

#ifndef FLSSS_PARALLEL_HPP_
#define FLSSS_PARALLEL_HPP_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <set>
#include <thread>
#include <utility>
#include <vector>

#include "flsss/core.hpp"

namespace flsss {

// Cancellation, deadline and solution quota shared by all workers of one
// solve call.
class SearchControl {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SearchControl(const MiningConfig& cfg)
      : deadline_(Clock::now() +
                  std::chrono::duration_cast<Clock::duration>(cfg.time_limit)),
        quota_(cfg.max_solutions) {}

  bool stopped() const { return stop_.load(std::memory_order_relaxed); }

  // Polled between contractions; consults the clock every 64th call.
  bool poll(unsigned& tick) {
    if (stopped()) return true;
    if ((++tick & 63u) == 0 && Clock::now() >= deadline_) {
      timed_out_.store(true, std::memory_order_relaxed);
      cancel();
      return true;
    }
    return false;
  }

  void cancel() { stop_.store(true, std::memory_order_relaxed); }
  bool timed_out() const { return timed_out_.load(std::memory_order_relaxed); }

  // Appends under the lock; returns false once the quota is already met.
  bool add(Solution s) {
    std::lock_guard lock(mu_);
    if (solutions_.size() >= quota_) return false;
    solutions_.push_back(std::move(s));
    if (solutions_.size() >= quota_) {
      quota_hit_ = true;
      cancel();
    }
    return true;
  }

  // As add, but drops a solution whose index set was already recorded.
  bool add_unique(Solution s) {
    {
      std::lock_guard lock(mu_);
      if (!seen_.insert(s.indexes).second) return false;
    }
    return add(std::move(s));
  }

  std::size_t found() const {
    std::lock_guard lock(mu_);
    return solutions_.size();
  }

  MineResult finish() {
    std::lock_guard lock(mu_);
    MineResult r;
    r.solutions = std::move(solutions_);
    canonicalize(r.solutions);
    r.status = quota_hit_        ? Status::kQuota
               : timed_out()     ? Status::kTimeout
                                 : Status::kExhausted;
    return r;
  }

 private:
  std::atomic<bool> stop_{false};
  std::atomic<bool> timed_out_{false};
  Clock::time_point deadline_;
  std::size_t quota_;
  mutable std::mutex mu_;
  std::vector<Solution> solutions_;
  bool quota_hit_ = false;
  std::set<std::vector<int>> seen_;
};

// Initial tasks are claimed in order through a monotone counter; tasks
// donated while running go to a side queue that is served first. The queue
// drains when every worker is waiting and nothing is left.
// Best objective value found so far. Reads are lock-free; offers take the
// lock and keep the first of equal values.
class Incumbent {
 public:
  bool has() const { return has_.load(std::memory_order_acquire); }
  double value() const { return value_.load(std::memory_order_acquire); }

  bool offer(double value, std::vector<int> payload) {
    std::lock_guard lock(mu_);
    if (has() && !(value > this->value())) return false;
    payload_ = std::move(payload);
    value_.store(value, std::memory_order_release);
    has_.store(true, std::memory_order_release);
    return true;
  }

  std::vector<int> payload() const {
    std::lock_guard lock(mu_);
    return payload_;
  }

 private:
  std::atomic<bool> has_{false};
  std::atomic<double> value_{0.0};
  mutable std::mutex mu_;
  std::vector<int> payload_;
};

template <class Task>
class WorkQueue {
 public:
  WorkQueue(std::vector<Task> initial, int workers)
      : initial_(std::move(initial)), workers_(workers) {}

  bool pop(Task& out) {
    {
      std::unique_lock lock(mu_);
      if (!extra_.empty()) {
        out = std::move(extra_.front());
        extra_.pop_front();
        return true;
      }
    }
    const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
    if (i < initial_.size()) {
      out = std::move(initial_[i]);
      return true;
    }
    std::unique_lock lock(mu_);
    for (;;) {
      if (!extra_.empty()) {
        out = std::move(extra_.front());
        extra_.pop_front();
        return true;
      }
      if (done_) return false;
      ++idle_;
      hungry_.store(idle_, std::memory_order_relaxed);
      if (idle_ == workers_) {
        done_ = true;
        cv_.notify_all();
        return false;
      }
      cv_.wait(lock);
      --idle_;
      hungry_.store(idle_, std::memory_order_relaxed);
    }
  }

  // Front insertion keeps freshly expanded work ahead of older donations.
  void push(Task t, bool front = false) {
    std::lock_guard lock(mu_);
    if (front) {
      extra_.push_front(std::move(t));
    } else {
      extra_.push_back(std::move(t));
    }
    cv_.notify_one();
  }

  void push_all_front(std::vector<Task> tasks) {
    std::lock_guard lock(mu_);
    for (auto it = tasks.rbegin(); it != tasks.rend(); ++it) {
      extra_.push_front(std::move(*it));
    }
    cv_.notify_all();
  }

  // True while some worker waits for work.
  bool hungry() const { return hungry_.load(std::memory_order_relaxed) > 0; }

  void shutdown() {
    std::lock_guard lock(mu_);
    done_ = true;
    extra_.clear();
    cv_.notify_all();
  }

 private:
  std::vector<Task> initial_;
  std::atomic<std::size_t> next_{0};
  int workers_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Task> extra_;
  int idle_ = 0;
  std::atomic<int> hungry_{0};
  bool done_ = false;
};

// Runs `body(worker_id)` on `threads` workers; the caller's thread is
// worker 0, so threads == 1 never spawns.
inline void run_workers(int threads, const std::function<void(int)>& body) {
  std::vector<std::jthread> pool;
  pool.reserve(threads > 1 ? threads - 1 : 0);
  for (int w = 1; w < threads; ++w) pool.emplace_back(body, w);
  body(0);
}

}  // namespace flsss

#endif  // FLSSS_PARALLEL_HPP_
