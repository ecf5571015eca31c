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

#include "flsss/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "flsss/bench.hpp"
#include "flsss/gap.hpp"
#include "flsss/knapsack.hpp"
#include "flsss/mdim.hpp"
#include "flsss/multiset.hpp"
#include "flsss/oracle.hpp"
#include "flsss/packedint.hpp"
#include "flsss/solver1d.hpp"

namespace flsss::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file, out;
  int len = -1;
  std::vector<double> target, me;
  std::size_t solutions = 0;  // 0 = no quota
  double timeout = 3600.0;
  int threads = 1;
  std::uint64_t seed = 42;
  bool bisearch = false;
  int phi = 16;
  bool no_prune = false;
  std::int64_t lambda = 0;
  int N = 0, d = 0;  // shape of a generated instance
  std::string problem;
  std::string experiment;
  int instances = 10;
  int n = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_number(std::string_view f) {
  f = trim(f);
  if (!f.empty() && f.front() == '+') f.remove_prefix(1);
  if (f.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size()) return std::nullopt;
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_csv(const std::string& path, const std::string& text) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return true;
  const std::string_view t = trim(text);
  return !t.empty() && t.front() != '{';
}

// Field access with file/field diagnostics.
class Fields {
 public:
  Fields(const std::string& text, std::string source) : source_(std::move(source)) {
    try {
      j_ = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(source_ + ": " + e.what());
    }
    if (!j_.is_object()) throw InputError(source_ + ": top level must be a JSON object");
  }

  bool has(const char* k) const { return j_.contains(k) && !j_[k].is_null(); }

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw InputError(source_ + ": field '" + field + "': " + msg);
  }

  const Json& need(const char* k) const {
    if (!has(k)) fail(k, "missing");
    return j_[k];
  }

  double number(const Json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "not finite");
    return x;
  }

  int integer(const char* k) const {
    const Json& v = need(k);
    if (!v.is_number_integer()) fail(k, "expected an integer");
    const long long x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      fail(k, "out of range");
    }
    return static_cast<int>(x);
  }

  std::vector<double> numbers(const Json& v, const std::string& path) const {
    if (v.is_number()) return {number(v, path)};
    if (!v.is_array()) fail(path, "expected a number or an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }
  std::vector<double> numbers(const char* k) const { return numbers(need(k), k); }

  std::vector<int> integers(const char* k) const {
    const Json& v = need(k);
    if (!v.is_array()) fail(k, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) {
        fail(std::string(k) + "[" + std::to_string(i) + "]", "expected an integer");
      }
      out.push_back(v[i].get<int>());
    }
    return out;
  }

  // Array of arrays of numbers, rows may differ in length.
  std::vector<std::vector<double>> lists(const char* k) const {
    const Json& v = need(k);
    if (!v.is_array() || v.empty()) fail(k, "expected a nonempty array of arrays");
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string path = std::string(k) + "[" + std::to_string(i) + "]";
      if (!v[i].is_array()) fail(path, "expected an array of numbers");
      out.push_back(numbers(v[i], path));
    }
    return out;
  }

  // A flat array is one column; otherwise rows of equal length.
  RealMatrix matrix(const char* k) const {
    const Json& v = need(k);
    if (!v.is_array() || v.empty()) fail(k, "expected a nonempty array");
    if (std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number(); })) {
      const std::vector<double> col = numbers(v, k);
      RealMatrix m(static_cast<int>(col.size()), 1);
      for (std::size_t i = 0; i < col.size(); ++i) m(static_cast<int>(i), 0) = col[i];
      return m;
    }
    const auto rows = lists(k);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) {
        fail(std::string(k) + "[" + std::to_string(i) + "]",
             "has " + std::to_string(rows[i].size()) + " entries, expected " +
                 std::to_string(rows[0].size()));
      }
    }
    return RealMatrix::from_rows(rows);
  }

 private:
  std::string source_;
  Json j_;
};

MiningConfig config(const Options& o) {
  if (!(o.timeout > 0.0)) throw ConfigError("--timeout must be > 0");
  MiningConfig cfg;
  if (o.solutions > 0) cfg.max_solutions = o.solutions;
  cfg.time_limit = std::chrono::duration<double>(o.timeout);
  cfg.threads = o.threads;
  cfg.use_binary_search = o.bisearch;
  cfg.validate();
  return cfg;
}

int pick(int given, int fallback) { return given > 0 ? given : fallback; }

// Subset sum instances (flsss, mflsss, mflsss-int, oracle 1d/md) ----------

struct SubsetInput {
  RealMatrix x;
  int len = -1;  // -1: any size
  std::vector<double> target, me, lambda;
};

SubsetInput load_subset(const Options& o, bool one_dim) {
  SubsetInput in;
  std::string source = o.file;
  if (o.file.empty()) {
    source = "generated instance";
    bench::Rng rng(o.seed);
    const double me = o.me.empty() ? 1e-4 : o.me[0];
    if (one_dim) {
      const bench::Workload1D w = bench::planted_1d(rng, pick(o.N, 40), pick(o.len, 5), 1e6, me);
      in.x = RealMatrix(static_cast<int>(w.superset.size()), 1);
      for (int s = 0; s < in.x.rows(); ++s) in.x(s, 0) = w.superset[s];
      in.len = w.n;
      in.target = {w.target};
      in.me = {w.me};
    } else {
      bench::WorkloadMd w =
          bench::planted_md(rng, pick(o.N, 30), pick(o.d, 3), pick(o.len, 4), 1e4, true);
      in.x = std::move(w.x);
      in.len = w.n;
      in.target = std::move(w.target);
      in.me = std::move(w.me);
    }
  } else {
    const std::string text = read_file(o.file);
    if (looks_like_csv(o.file, text)) {
      in.x = parse_csv(text, o.file);
    } else {
      const Fields f(text, o.file);
      in.x = f.matrix("superset");
      if (f.has("len")) in.len = f.integer("len");
      if (f.has("target")) in.target = f.numbers("target");
      if (f.has("me")) in.me = f.numbers("me");
      if (f.has("lambda")) in.lambda = f.numbers("lambda");
    }
  }
  if (o.len >= 0) in.len = o.len;
  if (!o.target.empty()) in.target = o.target;
  if (!o.me.empty()) in.me = o.me;

  if (one_dim && in.x.rows() == 1 && in.x.cols() > 1) {
    RealMatrix t(in.x.cols(), 1);
    for (int s = 0; s < in.x.cols(); ++s) t(s, 0) = in.x(0, s);
    in.x = std::move(t);
  }
  const int d = in.x.cols();
  if (one_dim && d != 1) throw InputError(source + ": expected one value per superset row");
  if (in.target.empty()) throw InputError(source + ": no target; give --target or a \"target\" field");
  if (in.me.empty()) in.me = {0.0};
  if (in.me.size() == 1) in.me.assign(d, in.me[0]);
  if (static_cast<int>(in.target.size()) != d || static_cast<int>(in.me.size()) != d) {
    throw InputError(source + ": target and me need " + std::to_string(d) + " entries");
  }
  return in;
}

Json solutions_json(std::vector<Solution> sols) {
  canonicalize(sols);
  Json arr = Json::array();
  for (const Solution& s : sols) arr.push_back({{"indexes", s.indexes}, {"sums", s.achieved}});
  return arr;
}

Json subset_json(const char* problem, const MineResult& r) {
  Json j;
  j["problem"] = problem;
  j["status"] = to_string(r.status);
  if (r.integerized) j["integerized"] = true;
  j["count"] = r.solutions.size();
  j["solutions"] = solutions_json(r.solutions);
  return j;
}

int run_flsss(const Options& o, Json& out) {
  const SubsetInput in = load_subset(o, true);
  const MiningConfig cfg = config(o);
  const Superset1D s(in.x.column(0));
  const MineResult r = in.len < 0 ? solve_variable(s, in.target[0], in.me[0], cfg)
                                  : solve_fixed(s, in.len, in.target[0], in.me[0], cfg);
  out = subset_json("flsss", r);
  return r.solutions.empty() ? kInfeasible : kSolved;
}

int run_mflsss(const Options& o, bool integerized, Json& out) {
  const SubsetInput in = load_subset(o, false);
  if (in.len < 0) throw InputError("mflsss needs a subset size; give --len or a \"len\" field");
  const MiningConfig cfg = config(o);
  MineResult r;
  if (integerized) {
    std::vector<std::int64_t> lam(in.x.cols(), o.lambda > 0 ? o.lambda : bench::kDefaultLambda);
    if (o.lambda <= 0 && !in.lambda.empty()) {
      if (in.lambda.size() != 1 && in.lambda.size() != lam.size()) {
        throw InputError("lambda needs 1 or " + std::to_string(lam.size()) + " entries");
      }
      for (std::size_t t = 0; t < lam.size(); ++t) {
        lam[t] = static_cast<std::int64_t>(in.lambda[in.lambda.size() == 1 ? 0 : t]);
      }
    }
    r = solve_md_integerized(in.x, in.len, in.target, in.me, lam, cfg);
  } else {
    r = solve_md(in.x, in.len, in.target, in.me, cfg);
  }
  out = subset_json(integerized ? "mflsss-int" : "mflsss", r);
  return r.solutions.empty() ? kInfeasible : kSolved;
}

// Multiset ----------------------------------------------------------------

MultiInstance load_multi(const Options& o) {
  MultiInstance mi;
  double target = 0.0, me = 1e-4;
  if (o.file.empty()) {
    bench::Rng rng(o.seed);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    const int H = pick(o.d, 3), size = pick(o.N, 12), k = pick(o.len, 2);
    for (int h = 0; h < H; ++h) {
      std::vector<double> v(size);
      for (double& e : v) e = u(rng);
      std::vector<int> idx(size);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      for (int i = 0; i < std::min(k, size); ++i) target += v[idx[i]];
      mi.supersets.push_back(std::move(v));
      mi.sizes.push_back(k);
    }
  } else {
    const std::string text = read_file(o.file);
    if (looks_like_csv(o.file, text)) throw InputError(o.file + ": multiset instances must be JSON");
    const Fields f(text, o.file);
    mi.supersets = f.lists("supersets");
    mi.sizes = f.integers("sizes");
    const std::vector<double> t = f.numbers("target");
    if (t.size() != 1) f.fail("target", "expected one number");
    target = t[0];
    me = 0.0;
    if (f.has("me")) {
      const std::vector<double> m = f.numbers("me");
      if (m.size() != 1) f.fail("me", "expected one number");
      me = m[0];
    }
  }
  if (o.target.size() > 1 || o.me.size() > 1) throw ConfigError("multiset takes one --target and one --me");
  if (!o.target.empty()) target = o.target[0];
  if (!o.me.empty()) me = o.me[0];
  mi.range = TargetRange::around(target, me);
  return mi;
}

int run_multiset(const Options& o, Json& out) {
  const MultiInstance mi = load_multi(o);
  MultiResult r = solve_multi(mi, config(o));
  std::sort(r.solutions.begin(), r.solutions.end());
  Json arr = Json::array();
  for (const MultiSolution& s : r.solutions) {
    arr.push_back({{"indexes", s.indexes}, {"sums", std::vector<double>{s.achieved}}});
  }
  out = Json{{"problem", "multiset"},
             {"status", to_string(r.status)},
             {"count", r.solutions.size()},
             {"solutions", std::move(arr)}};
  return r.solutions.empty() ? kInfeasible : kSolved;
}

// Knapsack ----------------------------------------------------------------

KnapsackInstance load_knapsack(const Options& o, bool& sized) {
  KnapsackInstance k;
  sized = false;
  if (o.file.empty()) {
    bench::Rng rng(o.seed);
    std::uniform_real_distribution<double> u(1.0, 100.0);
    const int N = pick(o.N, 16), d = pick(o.d, 2);
    k.costs = RealMatrix(N, d);
    k.profits.resize(N);
    k.budgets.assign(d, 0.0);
    for (int s = 0; s < N; ++s) {
      for (int t = 0; t < d; ++t) {
        k.costs(s, t) = u(rng);
        k.budgets[t] += 0.35 * k.costs(s, t);
      }
      k.profits[s] = u(rng);
    }
  } else {
    const std::string text = read_file(o.file);
    if (looks_like_csv(o.file, text)) throw InputError(o.file + ": knapsack instances must be JSON");
    const Fields f(text, o.file);
    k.costs = f.matrix("costs");
    k.profits = f.numbers("profits");
    k.budgets = f.numbers("budgets");
    if (f.has("len")) {
      k.n = f.integer("len");
      sized = true;
    }
  }
  if (o.len >= 0) {
    k.n = o.len;
    sized = true;
  }
  return k;
}

Json knapsack_json(const char* problem, const KnapsackResult& r) {
  return Json{{"problem", problem},     {"status", to_string(r.status)},
              {"feasible", r.feasible}, {"profit", r.profit},
              {"indexes", r.indexes},   {"costs", r.costs}};
}

int run_knapsack(const Options& o, Json& out) {
  bool sized = false;
  const KnapsackInstance k = load_knapsack(o, sized);
  const MiningConfig cfg = config(o);
  KnapsackOptions ko;
  ko.phi = o.phi;
  ko.prune = !o.no_prune;
  const KnapsackResult r = sized ? solve_mf01k(k, cfg, ko) : solve_01(k, cfg, ko);
  out = knapsack_json("knapsack", r);
  return r.feasible ? kSolved : kInfeasible;
}

// GAP ---------------------------------------------------------------------

GapInstance load_gap(const Options& o) {
  GapInstance g;
  if (o.file.empty()) {
    bench::Rng rng(o.seed);
    std::uniform_int_distribution<int> c(1, 20), p(1, 50);
    const int T = pick(o.N, 6), A = pick(o.d, 3);
    g.cost = RealMatrix(T, A);
    g.profit = RealMatrix(T, A);
    g.budgets.assign(A, 0.0);
    for (int s = 0; s < T; ++s) {
      for (int a = 0; a < A; ++a) {
        g.cost(s, a) = c(rng);
        g.profit(s, a) = p(rng);
        g.budgets[a] += 1.5 / A * g.cost(s, a);
      }
    }
  } else {
    const std::string text = read_file(o.file);
    if (looks_like_csv(o.file, text)) throw InputError(o.file + ": gap instances must be JSON");
    const Fields f(text, o.file);
    g.cost = f.matrix("cost");
    g.profit = f.matrix("profit");
    g.budgets = f.numbers("budgets");
  }
  return g;
}

std::vector<double> agent_costs(const GapInstance& g, const std::vector<int>& agent_of) {
  std::vector<double> c(g.cost.cols(), 0.0);
  for (std::size_t s = 0; s < agent_of.size(); ++s) {
    c[agent_of[s]] += g.cost(static_cast<int>(s), agent_of[s]);
  }
  return c;
}

Json gap_json(const char* problem, Status st, bool feasible, double profit,
              const std::vector<int>& agent_of, const std::vector<double>& cost) {
  return Json{{"problem", problem},   {"status", to_string(st)},
              {"feasible", feasible}, {"profit", profit},
              {"assignment", agent_of}, {"agent_cost", cost}};
}

int run_gap(const Options& o, Json& out) {
  const GapInstance g = load_gap(o);
  GapOptions go;
  go.phi = o.phi;
  go.prune = !o.no_prune;
  const GapResult r = solve_gap(g, config(o), go);
  out = gap_json("gap", r.status, r.feasible, r.profit, r.agent_of_task, r.agent_cost);
  return r.feasible ? kSolved : kInfeasible;
}

// Oracle ------------------------------------------------------------------

Json oracle_sets(const char* problem, const RealMatrix& x,
                 const oracle::IndexSets& sets) {
  std::vector<Solution> sols;
  for (const auto& set : sets) {
    Solution s;
    s.indexes = set;
    s.achieved.assign(x.cols(), 0.0);
    for (int t = 0; t < x.cols(); ++t) {
      for (int i : set) s.achieved[t] += x(i, t);
    }
    sols.push_back(std::move(s));
  }
  return Json{{"problem", problem},
              {"status", "exhausted"},
              {"count", sols.size()},
              {"solutions", solutions_json(std::move(sols))}};
}

int run_oracle(const Options& o, Json& out) {
  if (o.problem == "1d" || o.problem == "md") {
    const SubsetInput in = load_subset(o, o.problem == "1d");
    if (in.len < 0) throw InputError("the oracle needs a subset size; give --len or a \"len\" field");
    std::vector<double> lo, hi;
    detail::md_bounds(in.x, in.len, in.target, in.me, lo, hi);
    const oracle::IndexSets sets =
        o.problem == "1d" ? oracle::brute_1d(in.x.column(0), in.len, {lo[0], hi[0]})
                          : oracle::brute_md(in.x, in.len, lo, hi);
    out = oracle_sets(o.problem == "1d" ? "oracle-1d" : "oracle-md", in.x, sets);
    return sets.empty() ? kInfeasible : kSolved;
  }
  if (o.problem == "knapsack") {
    bool sized = false;
    const KnapsackInstance k = load_knapsack(o, sized);
    const oracle::KnapsackOptimum best =
        oracle::brute_knapsack(k.costs, k.profits, k.budgets, sized ? k.n : -1);
    KnapsackResult r;
    r.feasible = best.feasible;
    r.profit = best.profit;
    r.indexes = best.indexes;
    if (best.feasible) {
      r.costs.assign(k.costs.cols(), 0.0);
      for (int t = 0; t < k.costs.cols(); ++t) {
        for (int i : r.indexes) r.costs[t] += k.costs(i, t);
      }
    }
    out = knapsack_json("oracle-knapsack", r);
    return r.feasible ? kSolved : kInfeasible;
  }
  if (o.problem == "gap") {
    const GapInstance g = load_gap(o);
    build_gap_superset(g);  // same validation as the solver
    const oracle::GapOptimum best = oracle::brute_gap(g.cost, g.profit, g.budgets);
    out = gap_json("oracle-gap", Status::kExhausted, best.feasible, best.profit,
                   best.agent_of_task,
                   best.feasible ? agent_costs(g, best.agent_of_task) : std::vector<double>{});
    return best.feasible ? kSolved : kInfeasible;
  }
  throw ConfigError("unknown --problem '" + o.problem + "'");
}

// Output ------------------------------------------------------------------

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError(o.out + ": cannot write");
  f << text;
  if (!f) throw InputError(o.out + ": write failed");
}

int run_bench(const Options& o, std::ostream& out, std::ostream& err) {
  bench::Params p;
  p.experiment = o.experiment;
  p.instances = o.instances;
  p.N = o.N;
  p.n = o.n;
  p.d = o.d;
  p.seed = o.seed;
  p.threads = o.threads;
  p.lambda = o.lambda;
  const bench::Report rep = bench::run(p);
  std::ostringstream csv;
  bench::write_csv(rep, csv);
  emit(o, csv.str(), out);
  err << rep.experiment << ": mean " << rep.baseline_arm << '/' << rep.candidate_arm
      << " ratio " << rep.mean_ratio << " (reference " << rep.reference << ")\n";
  return kSolved;
}

}  // namespace

RealMatrix parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::vector<double>> rows;
  bool header_allowed = true;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    for (std::size_t a = 0;;) {
      const std::size_t b = line.find(',', a);
      fields.push_back(line.substr(a, b == std::string_view::npos ? std::string_view::npos : b - a));
      if (b == std::string_view::npos) break;
      a = b + 1;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    std::vector<double> row;
    std::size_t bad = fields.size();
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const std::optional<double> v = to_number(fields[k]);
      if (!v) {
        if (bad == fields.size()) bad = k;
        continue;
      }
      row.push_back(*v);
    }
    const bool all_text = row.empty();
    if (bad < fields.size()) {
      if (header_allowed && all_text) {
        header_allowed = false;
        continue;
      }
      throw InputError(where + ": field " + std::to_string(bad + 1) + ": '" +
                       std::string(trim(fields[bad])) + "' is not a number");
    }
    header_allowed = false;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!std::isfinite(row[k])) {
        throw InputError(where + ": field " + std::to_string(k + 1) + ": not finite");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(where + ": expected " + std::to_string(rows.front().size()) +
                       " fields, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(source + ": no data rows");
  return RealMatrix::from_rows(rows);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact subset sum, 0-1 knapsack and generalized assignment solvers", "flsss"};
  app.require_subcommand(1);
  Options o;

  auto io = [&](CLI::App* s) {
    s->add_option("--file", o.file, "Instance file: JSON, or CSV for supersets");
    s->add_option("--out", o.out, "Write the result to this file");
    s->add_option("--seed", o.seed, "Seed for the generated instance when --file is absent");
    s->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--timeout", o.timeout, "Time limit in seconds");
    s->add_option("--N", o.N, "Generated instance: rows (tasks for gap)");
    s->add_option("--d", o.d, "Generated instance: columns (agents for gap, supersets for multiset)");
  };
  auto subset = [&](CLI::App* s) {
    io(s);
    s->add_option("--len", o.len, "Subset size");
    s->add_option("--target", o.target, "Target sum, one per column")->delimiter(',');
    s->add_option("--me", o.me, "Allowed error, one per column or one for all")->delimiter(',');
    s->add_option("--solutions", o.solutions, "Stop after this many solutions (0: all)");
    s->add_flag("--use-bisearch", o.bisearch, "Binary instead of linear search in contraction");
  };
  auto optimize = [&](CLI::App* s) {
    io(s);
    s->add_option("--phi", o.phi, "Breadth-first nodes per thread before scheduling")
        ->check(CLI::PositiveNumber);
    s->add_flag("--no-prune", o.no_prune, "Disable the profit bound");
  };

  CLI::App* flsss = app.add_subcommand("flsss", "One-dimensional subset sum");
  subset(flsss);
  CLI::App* mflsss = app.add_subcommand("mflsss", "Multidimensional subset sum");
  subset(mflsss);
  CLI::App* mint = app.add_subcommand("mflsss-int", "Multidimensional subset sum on packed integers");
  subset(mint);
  mint->add_option("--lambda", o.lambda, "Integerization scale per column");
  CLI::App* multi = app.add_subcommand("multiset", "One element set per superset, one total sum");
  subset(multi);
  CLI::App* knap = app.add_subcommand("knapsack", "Multidimensional 0-1 knapsack");
  optimize(knap);
  knap->add_option("--len", o.len, "Fixed number of items (default: any)");
  CLI::App* gap = app.add_subcommand("gap", "Generalized assignment");
  optimize(gap);
  CLI::App* orc = app.add_subcommand("oracle", "Brute-force reference solutions");
  subset(orc);
  orc->add_option("--problem", o.problem, "1d, md, knapsack or gap")
      ->required()
      ->check(CLI::IsMember({"1d", "md", "knapsack", "gap"}));
  CLI::App* bench = app.add_subcommand("bench", "Paired timing experiment, CSV output");
  bench->add_option("experiment", o.experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(bench::experiments()));
  bench->add_option("--instances", o.instances, "Instance count")->check(CLI::PositiveNumber);
  bench->add_option("--n", o.n, "Subset size");
  bench->add_option("--N", o.N, "Superset size");
  bench->add_option("--d", o.d, "Dimensions");
  bench->add_option("--seed", o.seed, "Workload seed");
  bench->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--lambda", o.lambda, "Integerization scale");
  bench->add_option("--out", o.out, "Write the CSV to this file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSolved : kUsage;
  }

  try {
    if (bench->parsed()) return run_bench(o, out, err);
    Json result;
    int code = kUsage;
    if (flsss->parsed()) code = run_flsss(o, result);
    else if (mflsss->parsed()) code = run_mflsss(o, false, result);
    else if (mint->parsed()) code = run_mflsss(o, true, result);
    else if (multi->parsed()) code = run_multiset(o, result);
    else if (knap->parsed()) code = run_knapsack(o, result);
    else if (gap->parsed()) code = run_gap(o, result);
    else if (orc->parsed()) code = run_oracle(o, result);
    emit(o, result.dump(2) + "\n", out);
    return code;
  } catch (const InfeasibleSize& e) {
    err << "flsss: infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidInput& e) {
    err << "flsss: invalid input: " << e.what();
    if (e.index() >= 0) err << " (element " << e.index() << ')';
    err << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "flsss: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace flsss::cli
