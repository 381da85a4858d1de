// Copyright 2026 The twistheat Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twistheat/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "twistheat/heatcoeff.hpp"
#include "twistheat/invariants.hpp"

namespace twistheat {
namespace {

using Clock = std::chrono::steady_clock;

// A task yields one or more records (id assigned later).
using Task = std::function<std::vector<CaseRecord>()>;

struct Context {
  const SuiteOptions& opts;
  SupertraceOptions st;

  int degree_or(int needed) const { return opts.degree > 0 ? opts.degree : needed; }

  // The jet for (m, seed), from the override or the random generator.
  MetricDilatonJet jet(int m, std::uint64_t seed, int needed) const {
    if (opts.jet) {
      if (opts.jet->dim != m)
        throw UsageError("jet has dimension " + std::to_string(opts.jet->dim) + ", case needs " +
                         std::to_string(m));
      return truncate(*opts.jet, std::min(opts.jet->degree, degree_or(needed)));
    }
    return make_random(m, degree_or(needed), seed);
  }
};

CaseRecord record(std::uint64_t seed, int dim, int n, std::string quantity,
                  const std::function<std::pair<Rational, Rational>()>& compute) {
  const auto t0 = Clock::now();
  auto [lhs, rhs] = compute();
  CaseRecord r;
  r.seed = seed;
  r.dim = dim;
  r.n = n;
  r.quantity = std::move(quantity);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.elapsed_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
  return r;
}

void check_dims(const std::string& suite, const std::vector<int>& dims, int lo, int hi,
                int parity) {
  for (int m : dims) {
    if (m < lo || m > hi)
      throw UsageError(suite + ": dimension " + std::to_string(m) + " outside " +
                       std::to_string(lo) + ".." + std::to_string(hi));
    if (parity >= 0 && m % 2 != parity)
      throw UsageError(suite + ": dimension " + std::to_string(m) + " must be " +
                       (parity == 0 ? "even" : "odd"));
  }
}

// Sum of squares of every coefficient: zero iff the residual field is zero.
Rational residual_norm(const OneFormInvariantField& f) {
  Rational s(0);
  for (const auto& c : f.components)
    for (std::size_t t = 0; t < c.term_count(); ++t) s.add_product(c.coeff_at(t), c.coeff_at(t));
  return s;
}

std::vector<Task> suite_tasks(const std::string& name, const Context& ctx,
                              const std::vector<int>& dims) {
  const SuiteOptions& o = ctx.opts;
  std::vector<Task> tasks;
  auto each_trial = [&](const std::function<Task(int, std::uint64_t)>& make) {
    for (int m : dims)
      for (int t = 0; t < o.trials; ++t) tasks.push_back(make(m, o.seed + t));
  };

  if (name == "thm1-1-vanishing") {
    check_dims(name, dims, 1, 4, -1);
    each_trial([&](int m, std::uint64_t seed) -> Task {
      return [&ctx, m, seed] {
        std::vector<CaseRecord> out;
        const MetricDilatonJet jet = ctx.jet(m, seed, 2);
        for (int n = 0; n < m; n += 2)
          out.push_back(record(seed, m, n, "supertrace", [&] {
            return std::pair{supertrace(n, jet, ctx.st), Rational(0)};
          }));
        return out;
      };
    });
  } else if (name == "thm1-1-pfaffian") {
    check_dims(name, dims, 2, 4, 0);
    each_trial([&](int m, std::uint64_t seed) -> Task {
      return [&ctx, m, seed] {
        const MetricDilatonJet jet = ctx.jet(m, seed, m);
        return std::vector{record(seed, m, m, "supertrace=pfaffian", [&] {
          return std::pair{supertrace(m, jet, ctx.st), pfaffian_density(jet)};
        })};
      };
    });
  } else if (name == "thm1-1-odd") {
    check_dims(name, dims, 1, 3, 1);
    each_trial([&](int m, std::uint64_t seed) -> Task {
      return [&ctx, m, seed] {
        const MetricDilatonJet jet = ctx.jet(m, seed, m + 1);
        return std::vector{record(seed, m, m + 1, "supertrace=odd_divergence", [&] {
          return std::pair{supertrace(m + 1, jet, ctx.st), odd_divergence_density(jet)};
        })};
      };
    });
  } else if (name == "thm1-2") {
    check_dims(name, dims, 2, 4, 0);
    each_trial([&](int m, std::uint64_t seed) -> Task {
      return [&ctx, m, seed] {
        const MetricDilatonJet jet = ctx.jet(m, seed, m + 2);
        return std::vector{record(seed, m, m + 2, "supertrace=even_divergence", [&] {
          return std::pair{supertrace(m + 2, jet, ctx.st), even_divergence_density(jet)};
        })};
      };
    });
  } else if (name == "lemma2-3-product") {
    check_dims(name, dims, 2, 4, -1);
    each_trial([&](int m, std::uint64_t seed) -> Task {
      return [&ctx, m, seed, trial = static_cast<int>(seed - ctx.opts.seed)] {
        std::vector<CaseRecord> out;
        const int ma = ctx.opts.jet ? ctx.opts.jet->dim : 1 + trial % (m - 1);
        if (ma >= m) throw UsageError("lemma2-3-product: jet dimension must be below the total");
        const int top = m <= 3 ? 6 : 4;
        const MetricDilatonJet a = ctx.jet(ma, seed, top);
        const MetricDilatonJet b = make_random(m - ma, ctx.degree_or(top), seed + 7919);
        const MetricDilatonJet circle = make_flat(1, ctx.degree_or(top));
        for (int n = 2; n <= top; n += 2) {
          out.push_back(record(seed, m, n, "product", [&] {
            const ProductCheck pc = product_check(a, b, n, ctx.st);
            return std::pair{pc.lhs, pc.rhs};
          }));
          if (ma == m - 1)
            out.push_back(record(seed, m, n, "circle_extension", [&] {
              const ProductCheck pc = product_check(a, circle, n, ctx.st);
              return std::pair{pc.lhs, pc.rhs};
            }));
        }
        return out;
      };
    });
  } else if (name == "lemma3-1-kernel") {
    check_dims(name, dims, 2, 4, 0);
    each_trial([&](int m, std::uint64_t seed) -> Task {
      return [&ctx, m, seed] {
        const MetricDilatonJet base = ctx.jet(m - 1, seed, m + 2);
        const MetricDilatonJet ext = extend_by_circle(base);
        return std::vector{
            record(seed, m, m + 2, "extension_supertrace",
                   [&] { return std::pair{supertrace(m + 2, ext, ctx.st), Rational(0)}; }),
            record(seed, m, m + 2, "extension_even_divergence",
                   [&] { return std::pair{even_divergence_density(ext), Rational(0)}; })};
      };
    });
  } else if (name == "lemma3-4-identities") {
    check_dims(name, dims, 2, 4, 0);
    each_trial([&](int m, std::uint64_t seed) -> Task {
      return [&ctx, m, seed] {
        const MetricDilatonJet jet = ctx.jet(m, seed, 4);
        std::vector<CaseRecord> out;
        const auto t0 = Clock::now();
        const auto residuals = lemma34_identities(jet, 1, 2);
        const long ms = static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
        for (const auto& r : residuals) {
          out.push_back(record(seed, m, m + 2, r.identity, [&] {
            return std::pair{residual_norm(r.residual), Rational(0)};
          }));
          out.back().elapsed_ms += ms / static_cast<long>(residuals.size());
        }
        return out;
      };
    });
  } else if (name == "euler-sphere") {
    check_dims(name, dims, 2, 4, 0);
    for (int m : dims) {
      tasks.push_back([&ctx, m] {
        // (4 pi)^{-m/2} vol(S^m): 1 for S^2, 1/6 for S^4.
        const Rational volume_factor = m == 2 ? Rational(1) : Rational(1, 6);
        const MetricDilatonJet s = make_sphere(m, ctx.degree_or(m));
        return std::vector{
            record(0, m, m, "euler_characteristic",
                   [&] { return std::pair{supertrace(m, s, ctx.st) * volume_factor, Rational(2)}; }),
            record(0, m, m, "supertrace=pfaffian",
                   [&] { return std::pair{supertrace(m, s, ctx.st), pfaffian_density(s)}; })};
      });
    }
  } else {
    throw UsageError("unknown suite '" + name + "'");
  }
  return tasks;
}

std::vector<int> default_dims(const std::string& name) {
  static const std::map<std::string, std::vector<int>> table = {
      {"thm1-1-vanishing", {1, 2, 3, 4}}, {"thm1-1-pfaffian", {2, 4}},
      {"thm1-1-odd", {1, 3}},             {"thm1-2", {2, 4}},
      {"lemma2-3-product", {2, 3, 4}},    {"lemma3-1-kernel", {2, 4}},
      {"lemma3-4-identities", {2, 4}},    {"euler-sphere", {2, 4}},
  };
  auto it = table.find(name);
  if (it == table.end()) throw UsageError("unknown suite '" + name + "'");
  return it->second;
}

}  // namespace

bool VerificationReport::pass() const { return failures() == 0; }

int VerificationReport::failures() const {
  return static_cast<int>(
      std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return !c.equal(); }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "thm1-1-vanishing", "thm1-1-pfaffian",  "thm1-1-odd",          "thm1-2",
      "lemma2-3-product", "lemma3-1-kernel", "lemma3-4-identities", "euler-sphere"};
  return names;
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& requested) {
  SuiteOptions options = requested;
  if (options.jet) options.trials = 1;  // every trial would repeat the same jet
  if (options.trials < 1) throw UsageError("trials must be positive");
  if (options.parallel < 1) throw UsageError("parallel must be positive");
  if (options.degree < 0) throw UsageError("degree must be nonnegative");
  std::vector<int> dims = options.dims.empty() ? default_dims(name) : options.dims;
  if (options.jet) {
    options.jet->validate();
    if (options.dims.empty()) {
      // The jet fixes the dimension; suites on extensions use one more.
      const bool extension = name == "lemma3-1-kernel";
      dims = {options.jet->dim + (extension ? 1 : 0)};
      if (name == "lemma2-3-product") dims = {options.jet->dim + 1};
    }
  }

  Context ctx{options, {}};
  ctx.st.workers = options.parallel;
  const std::vector<Task> tasks = suite_tasks(name, ctx, dims);

  std::vector<std::vector<CaseRecord>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_workers = std::min<int>(options.parallel, static_cast<int>(tasks.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  VerificationReport report;
  report.suite = name;
  for (auto& batch : results)
    for (auto& r : batch) {
      r.id = static_cast<int>(report.cases.size());
      report.cases.push_back(std::move(r));
    }
  return report;
}

std::string rational_record(const Rational& r) {
  return r.numerator().get_str() + "/" + r.denominator().get_str();
}

std::string report_lines(const VerificationReport& report, bool timing) {
  using nlohmann::ordered_json;
  std::ostringstream os;
  for (const auto& c : report.cases) {
    ordered_json j;
    j["case"] = c.id;
    j["suite"] = report.suite;
    j["seed"] = c.seed;
    j["dim"] = c.dim;
    j["n"] = c.n;
    j["quantity"] = c.quantity;
    j["lhs"] = rational_record(c.lhs);
    j["rhs"] = rational_record(c.rhs);
    j["equal"] = c.equal();
    j["elapsed_ms"] = timing ? c.elapsed_ms : 0;
    os << j.dump() << "\n";
  }
  ordered_json s;
  s["summary"] = true;
  s["suite"] = report.suite;
  s["cases"] = report.cases.size();
  s["failures"] = report.failures();
  s["pass"] = report.pass();
  os << s.dump() << "\n";
  return os.str();
}

}  // namespace twistheat
