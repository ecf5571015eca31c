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

// Seeded workloads and paired timing experiments.

#ifndef FLSSS_BENCH_HPP_
#define FLSSS_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "flsss/core.hpp"

namespace flsss::bench {

using Rng = std::mt19937_64;

struct Workload1D {
  std::vector<double> superset;
  int n = 0;
  double target = 0.0;
  double me = 0.0;
};

// N uniforms in [0, hi); the target is the sum of a random size-n subset.
Workload1D planted_1d(Rng& rng, int N, int n, double hi, double me);

struct WorkloadMd {
  RealMatrix x;
  int n = 0;
  std::vector<double> target, me;
};

// N x d uniforms in [0, hi) and a random size-n subset with column sums s.
// With relative = true the range is [0.999 s, 1.001 s], otherwise s +- me.
WorkloadMd planted_md(Rng& rng, int N, int d, int n, double hi, bool relative,
                      double me = 0.0);

struct Params {
  std::string experiment;
  int instances = 10;
  int N = 0;        // 0 picks the experiment default
  int n = 0;
  int d = 0;
  std::uint64_t seed = 42;
  int threads = 1;
  std::int64_t lambda = 0;  // integerization; 0 picks the default
};

struct Row {
  int instance_id = 0;
  std::string arm;
  double wall_ms = 0.0;
  std::size_t solutions_found = 0;
};

struct Report {
  std::string experiment;
  std::string baseline_arm;   // expected slower
  std::string candidate_arm;  // expected faster
  std::vector<Row> rows;
  double mean_ratio = 0.0;    // mean over instances of baseline / candidate
  double reference = 0.0;     // published speedup, for the record only
};

const std::vector<std::string>& experiments();

// Throws ConfigError for an unknown experiment.
Report run(const Params& p);

// instance_id,arm,wall_ms,solutions_found then a final
// ratio,<baseline>/<candidate>,<mean ratio>, row.
void write_csv(const Report& r, std::ostream& os);

inline constexpr std::int64_t kDefaultLambda = 1000;

}  // namespace flsss::bench

#endif  // FLSSS_BENCH_HPP_
