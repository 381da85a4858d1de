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

// End-to-end acceptance run. Prints one PASS or FAIL line per criterion and
// exits nonzero if any criterion fails. All comparisons are exact.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "twistheat/heatcoeff.hpp"
#include "twistheat/invariants.hpp"
#include "twistheat/jet_io.hpp"
#include "twistheat/verify.hpp"

namespace {

using namespace twistheat;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects mismatches; a criterion passes when none were recorded.
struct Check {
  int compared = 0;
  std::ostringstream failures;
  bool ok = true;

  void equal(const Rational& a, const Rational& b, const std::string& what) {
    ++compared;
    if (a == b) return;
    ok = false;
    failures << " [" << what << ": " << a << " != " << b << "]";
  }
  void holds(bool c, const std::string& what) {
    ++compared;
    if (c) return;
    ok = false;
    failures << " [" << what << "]";
  }
};

std::string fixture(const std::string& name) {
  return std::string(TWISTHEAT_FIXTURE_DIR) + "/" + name;
}

// phi_{;11}(0) on a flat circle is twice the x^2 coefficient.
Rational second_derivative_at_origin(const PolyJet& phi) {
  return phi.derivative(0).derivative(0).value();
}

void criterion1(Check& c) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const MetricDilatonJet jet = make_random(1, 2, seed);
    c.equal(supertrace(2, jet), Rational(2) * second_derivative_at_origin(jet.phi),
            "seed " + std::to_string(seed));
  }
  c.equal(supertrace(2, read_jet_file(fixture("circle_dilaton.json"))), Rational(2), "fixture");
}

void criterion2(Check& c) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const MetricDilatonJet jet = make_random(2, 2, 100 + seed);
    c.equal(supertrace(2, jet), pfaffian_density(jet), "seed " + std::to_string(100 + seed));
  }
  const MetricDilatonJet s2 = read_jet_file(fixture("sphere2.json"));
  c.equal(supertrace(2, s2), Rational(2), "sphere supertrace");
  c.equal(pfaffian_density(s2), Rational(2), "sphere pfaffian");
  SuiteOptions o;
  o.dims = {2};
  const VerificationReport r = run_suite("euler-sphere", o);
  c.holds(r.pass(), "euler suite passes");
  for (const auto& k : r.cases)
    if (k.quantity == "euler_characteristic") c.equal(k.lhs, Rational(2), "chi(S^2)");
}

void criterion3(Check& c) {
  const std::pair<int, int> cases[] = {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {2, 4}};
  for (const auto& [n, m] : cases)
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      c.equal(supertrace(n, make_random(m, 2, 200 + seed)), Rational(0),
              "n=" + std::to_string(n) + " m=" + std::to_string(m));
}

void criterion4(Check& c) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const MetricDilatonJet jet = make_random(3, 4, 300 + seed);
    const Rational st = supertrace(4, jet);
    c.equal(st, odd_divergence_density(jet), "seed " + std::to_string(300 + seed));
    c.holds(!st.is_zero(), "nonzero value");
  }
}

void criterion5(Check& c) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const MetricDilatonJet jet = make_random(2, 4, 400 + seed);
    c.holds(!jet.phi.is_zero(), "nonzero dilaton");
    c.equal(supertrace(4, jet), even_divergence_density(jet), "seed " + std::to_string(400 + seed));
  }
}

void criterion6(Check& c, std::ostream& log) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t0 = Clock::now();
    const MetricDilatonJet jet = make_random(4, 6, 500 + seed);
    c.holds(!jet.phi.is_zero(), "nonzero dilaton");
    const Rational st = supertrace(6, jet);
    const Rational div = even_divergence_density(jet);
    const double s = seconds_since(t0);
    c.equal(st, div, "seed " + std::to_string(500 + seed));
    c.holds(s <= 15 * 60, "seed " + std::to_string(500 + seed) + " within 15 min");
    log << "  criterion 6 jet " << seed << ": " << st << " in " << s << " s\n";
  }
}

void criterion7(Check& c) {
  auto product_case = [&](const MetricDilatonJet& a, const MetricDilatonJet& b, int n,
                          const std::string& what) {
    const ProductCheck pc = product_check(a, b, n);
    c.equal(pc.lhs, pc.rhs, what + " n=" + std::to_string(n));
  };
  // Circle x circle with dilatons.
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const MetricDilatonJet a = make_random(1, 6, 600 + seed);
    const MetricDilatonJet b = make_random(1, 6, 610 + seed);
    for (int n : {2, 4, 6}) product_case(a, b, n, "circle x circle");
  }
  // N^2 x S^1 with a flat circle and with a circle carrying a dilaton.
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const MetricDilatonJet n2 = make_random(2, 6, 620 + seed);
    for (int n : {2, 4, 6}) {
      product_case(n2, make_flat(1, 6), n, "N^2 x S^1");
      product_case(n2, make_random(1, 6, 630 + seed), n, "N^2 x (S^1, phi)");
    }
  }
  // Surface x surface.
  const MetricDilatonJet a = make_random(2, 4, 640);
  const MetricDilatonJet b = make_random(2, 4, 641);
  for (int n : {2, 4}) product_case(a, b, n, "N^2 x N^2");
}

void criterion8(Check& c, std::ostream& log) {
  for (int m : {2, 4}) {
    const auto t0 = Clock::now();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const RestrictionReport r = restriction_kernel_check(make_random(m - 1, m + 2, 700 + seed));
      const std::string tag = "m=" + std::to_string(m) + " seed " + std::to_string(700 + seed);
      c.equal(r.even_divergence, Rational(0), tag + " divergence");
      c.equal(r.supertrace, Rational(0), tag + " supertrace");
    }
    log << "  criterion 8 m=" << m << ": " << seconds_since(t0) << " s\n";
  }
}

void criterion9(Check& c) {
  for (int m : {2, 4})
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      for (const auto& r : lemma34_identities(make_random(m, 4, 800 + seed), 1, 2))
        c.holds(r.vanishes(), "m=" + std::to_string(m) + " " + r.identity);
}

FormField random_form(int m, int p, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FormField u = FormField::zero(m, p, degree);
  for (auto& comp : u.components)
    for (std::size_t t = 0; t < comp.term_count(); ++t)
      comp.coeff_at(t) = Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
  return u;
}

void criterion10(Check& c) {
  for (int m = 1; m <= 4; ++m) {
    const std::string tag = "m=" + std::to_string(m);
    const MetricDilatonJet jet = make_random(m, 4, 900 + m);
    const CurvaturePackage cp = curvature(jet, {1, 2, 0});
    const PointTensor& R = cp.R();
    const PointTensor& dR = cp.dR();
    for (const auto& t : cp.riemann) c.holds(t.symmetries_hold(), tag + " curvature symmetries");
    bool first = true, second = true;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            first = first && (R({i, j, k, l}) + R({i, k, l, j}) + R({i, l, j, k})).is_zero();
            for (int n = 0; n < m; ++n)
              second = second &&
                       (dR({i, j, k, l, n}) + dR({i, j, l, n, k}) + dR({i, j, n, k, l})).is_zero();
          }
    c.holds(first, tag + " first Bianchi");
    c.holds(second, tag + " second Bianchi");

    const Rational base = supertrace(4, jet);
    c.equal(supertrace(4, with_dilaton(jet, -jet.phi)), m % 2 == 0 ? base : -base,
            tag + " phi parity");
    c.equal(supertrace(4, with_dilaton(jet, jet.phi + PolyJet(Rational(5, 2)))), base,
            tag + " phi shift");
    const Rational s(3, 2);
    c.equal(supertrace(4, rescale(jet, s)), base * s.pow(4), tag + " homogeneity");

    for (int p = 0; p <= m; ++p) {
      const FormOperator op = build_twisted_laplacian(jet, p);
      BundleData bd = canonical_decomposition(op, jet);
      const FormField u = random_form(m, p, 4, 950 + 10 * m + p);
      c.holds(reassemble(bd, u, jet) == op.apply(u), tag + " reassembly p=" + std::to_string(p));
      if (p + 2 <= m) {
        const FormField dd = apply_d_phi(apply_d_phi(u, jet), jet);
        bool zero = true;
        for (const auto& comp : dd.components) zero = zero && comp.is_zero();
        c.holds(zero, tag + " d_phi d_phi = 0, p=" + std::to_string(p));
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string title;
    std::function<void(Check&)> run;
  };
  std::ostringstream log;
  log << std::fixed << std::setprecision(1);
  std::cout << std::fixed << std::setprecision(1);
  const std::vector<Criterion> criteria = {
      {1, "circle: supertrace(2) = 2 phi''(0)", criterion1},
      {2, "m=2: supertrace(2) = Pfaffian density; chi(S^2) = 2", criterion2},
      {3, "vanishing for n < m", criterion3},
      {4, "m=3: supertrace(4) = odd divergence density", criterion4},
      {5, "m=2: supertrace(4) = even divergence density", criterion5},
      {6, "m=4: supertrace(6) = even divergence density", [&](Check& c) { criterion6(c, log); }},
      {7, "product rule", criterion7},
      {8, "circle extensions lie in the restriction kernel", [&](Check& c) { criterion8(c, log); }},
      {9, "contraction identities among Xi and Theta", criterion9},
      {10, "property suite", criterion10},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = Clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.failures << " [exception: " << e.what() << "]";
    }
    if (c.compared == 0) {
      c.ok = false;
      c.failures << " [nothing compared]";
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.number << ": " << cr.title
              << " (" << c.compared << " exact checks, " << seconds_since(t0) << " s)"
              << c.failures.str() << "\n"
              << log.str() << std::flush;
    log.str("");
    if (!c.ok) ++failed;
  }
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return failed == 0 ? 0 : 1;
}
