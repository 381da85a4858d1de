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

#include "twistheat/heatcoeff.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

namespace twistheat {
namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

const std::vector<CoefficientTerm> kA0 = {{q(1), ""}};

const std::vector<CoefficientTerm> kA2 = {
    {q(1), "E"},
    {q(1, 6), "tau"},
};

const std::vector<CoefficientTerm> kA4 = {
    {q(60, 360), "E[;kk]"},
    {q(60, 360), "tau E"},
    {q(180, 360), "E E"},
    {q(12, 360), "tau[;kk]"},
    {q(5, 360), "tau tau"},
    {q(-2, 360), "rho[ij] rho[ij]"},
    {q(2, 360), "R[ijkl] R[ijkl]"},
    {q(30, 360), "Omega[ij] Omega[ij]"},
};

constexpr long k7 = 5040;

const std::vector<CoefficientTerm> kA6 = {
    {q(18, k7), "tau[;iijj]"},
    {q(17, k7), "tau[;k] tau[;k]"},
    {q(-2, k7), "rho[ij;k] rho[ij;k]"},
    {q(-4, k7), "rho[jk;n] rho[jn;k]"},
    {q(9, k7), "R[ijkl;n] R[ijkl;n]"},
    {q(28, k7), "tau tau[;nn]"},
    {q(-8, k7), "rho[jk] rho[jk;nn]"},
    {q(24, k7), "rho[jk] rho[jn;kn]"},
    {q(12, k7), "R[ijkl] R[ijkl;nn]"},
    {q(35, 9 * k7), "tau tau tau"},
    {q(-14, 3 * k7), "tau rho[ij] rho[ij]"},
    {q(14, 3 * k7), "tau R[ijkl] R[ijkl]"},
    {q(-208, 9 * k7), "rho[jk] rho[jn] rho[kn]"},
    {q(-64, 3 * k7), "rho[ij] rho[kl] R[ikjl]"},
    {q(-16, 3 * k7), "rho[jk] R[jnli] R[knli]"},
    {q(-44, 9 * k7), "R[ijkn] R[ijlp] R[knlp]"},
    {q(-80, 9 * k7), "R[ijkn] R[ilkp] R[jlnp]"},
    {q(1, 45), "Omega[ij;k] Omega[ij;k]"},
    {q(1, 180), "Omega[ij;j] Omega[ik;k]"},
    {q(1, 60), "Omega[ij;kk] Omega[ij]"},
    {q(1, 60), "Omega[ij] Omega[ij;kk]"},
    {q(-1, 30), "Omega[ij] Omega[jk] Omega[ki]"},
    {q(-1, 60), "R[ijkn] Omega[ij] Omega[kn]"},
    {q(-1, 90), "rho[jk] Omega[jn] Omega[kn]"},
    {q(1, 72), "tau Omega[kn] Omega[kn]"},
    {q(1, 60), "E[;iijj]"},
    {q(1, 6), "E E[;ii]"},
    {q(1, 12), "E[;i] E[;i]"},
    {q(1, 6), "E E E"},
    {q(1, 12), "E Omega[ij] Omega[ij]"},
    {q(1, 36), "tau E[;kk]"},
    {q(1, 90), "rho[jk] E[;jk]"},
    {q(1, 30), "tau[;k] E[;k]"},
    {q(1, 12), "E E tau"},
    {q(1, 30), "E tau[;kk]"},
    {q(1, 72), "E tau tau"},
    {q(-1, 180), "E rho[ij] rho[ij]"},
    {q(1, 180), "E R[ijkl] R[ijkl]"},
};

enum class Atom { kR, kRho, kTau, kE, kOmega };

struct Factor {
  Atom atom;
  int derivatives = 0;
  std::vector<int> letters;  // positions into the letter list
};

struct ParsedPattern {
  std::vector<Factor> factors;
  int letter_count = 0;
  bool identity = true;
};

int base_slots(Atom a) {
  switch (a) {
    case Atom::kR: return 4;
    case Atom::kRho:
    case Atom::kOmega: return 2;
    default: return 0;
  }
}

ParsedPattern parse_pattern(const std::string& pattern) {
  static const std::map<std::string, Atom> names = {
      {"R", Atom::kR}, {"rho", Atom::kRho}, {"tau", Atom::kTau},
      {"E", Atom::kE}, {"Omega", Atom::kOmega}};
  ParsedPattern out;
  std::map<char, int> letter_ids;
  std::map<char, int> uses;
  std::istringstream in(pattern);
  std::string token;
  while (in >> token) {
    const auto open = token.find('[');
    const std::string name = token.substr(0, open);
    const auto it = names.find(name);
    if (it == names.end()) throw UsageError("pattern: unknown atom '" + name + "' in " + pattern);
    Factor f;
    f.atom = it->second;
    if (f.atom == Atom::kE || f.atom == Atom::kOmega) out.identity = false;
    std::string slots;
    if (open != std::string::npos) {
      if (token.back() != ']') throw UsageError("pattern: unclosed bracket in " + pattern);
      slots = token.substr(open + 1, token.size() - open - 2);
    }
    const auto semi = slots.find(';');
    const std::string base = slots.substr(0, semi);
    const std::string deriv = semi == std::string::npos ? "" : slots.substr(semi + 1);
    if (static_cast<int>(base.size()) != base_slots(f.atom))
      throw UsageError("pattern: wrong number of indices on " + token);
    f.derivatives = static_cast<int>(deriv.size());
    for (char c : base + deriv) {
      if (c < 'a' || c > 'z') throw UsageError("pattern: bad index letter in " + token);
      if (!letter_ids.count(c)) letter_ids[c] = out.letter_count++;
      ++uses[c];
      f.letters.push_back(letter_ids[c]);
    }
    out.factors.push_back(std::move(f));
  }
  for (const auto& [c, n] : uses)
    if (n != 2)
      throw UsageError(std::string("pattern: index '") + c + "' must appear exactly twice in " +
                       pattern);
  return out;
}

const PointTensor& scalar_atom(const Factor& f, const CurvatureAtoms& atoms) {
  const std::vector<PointTensor>* list = nullptr;
  switch (f.atom) {
    case Atom::kR: list = &atoms.cp.riemann; break;
    case Atom::kRho: list = &atoms.rho; break;
    case Atom::kTau: list = &atoms.cp.tau; break;
    default: throw UsageError("scalar_atom: bundle atom");
  }
  if (f.derivatives >= static_cast<int>(list->size()))
    throw UsageError("a_n: curvature data lacks " + std::to_string(f.derivatives) +
                     " derivatives");
  return (*list)[f.derivatives];
}

const Tensor<RationalMatrix>& bundle_atom(const Factor& f, const BundleData& bd) {
  const auto& list = f.atom == Atom::kE ? bd.dE : bd.dOmega;
  if (f.derivatives >= static_cast<int>(list.size()))
    throw UsageError("a_n: bundle data lacks " + std::to_string(f.derivatives) +
                     " derivatives of " + (f.atom == Atom::kE ? "E" : "Omega"));
  return list[f.derivatives];
}

}  // namespace

const std::vector<CoefficientTerm>& coefficient_terms(int n) {
  switch (n) {
    case 0: return kA0;
    case 2: return kA2;
    case 4: return kA4;
    case 6: return kA6;
    default: throw UsageError("heat coefficient a_" + std::to_string(n) + " is not supported");
  }
}

int pattern_weight(const std::string& pattern) {
  int w = 0;
  for (const auto& f : parse_pattern(pattern).factors) w += 2 + f.derivatives;
  return w;
}

bool is_identity_term(const std::string& pattern) { return parse_pattern(pattern).identity; }

BundleOrders bundle_orders_for(int n) {
  if (n <= 2) return {0, 0};
  if (n == 4) return {2, 0};
  return {4, 2};
}

CurvatureAtoms curvature_atoms(const MetricDilatonJet& jet, int n) {
  CurvatureOrders orders{0, 0, 0};
  if (n == 4) orders = {0, 0, 2};
  if (n >= 6) orders = {2, 0, 4};
  CurvatureAtoms atoms;
  atoms.cp = curvature(jet, orders);
  for (const auto& R : atoms.cp.riemann) {
    const int extra = R.rank() - 4;
    PointTensor rho(R.dim(), 2 + extra);
    for (std::size_t f = 0; f < rho.values.size(); ++f) {
      const auto idx = rho.values.unflatten(f);
      std::vector<int> full(4 + extra);
      full[0] = idx[0];
      full[3] = idx[1];
      std::copy(idx.begin() + 2, idx.end(), full.begin() + 4);
      Rational s(0);
      for (int k = 0; k < R.dim(); ++k) {
        full[1] = full[2] = k;
        s += R.at(full);
      }
      rho.values.flat(f) = s;
    }
    atoms.rho.push_back(std::move(rho));
  }
  return atoms;
}

Rational evaluate_pattern(const std::string& pattern, const BundleData& bd,
                          const CurvatureAtoms& atoms) {
  const ParsedPattern parsed = parse_pattern(pattern);
  const int m = atoms.cp.dim;
  if (parsed.factors.empty()) return Rational(bd.rank);

  std::vector<const PointTensor*> scalars(parsed.factors.size(), nullptr);
  std::vector<const Tensor<RationalMatrix>*> matrices(parsed.factors.size(), nullptr);
  for (std::size_t i = 0; i < parsed.factors.size(); ++i) {
    const Factor& f = parsed.factors[i];
    if (f.atom == Atom::kE || f.atom == Atom::kOmega)
      matrices[i] = &bundle_atom(f, bd);
    else
      scalars[i] = &scalar_atom(f, atoms);
  }

  Rational total(0);
  std::vector<int> assign(parsed.letter_count, 0);
  std::vector<int> idx;
  const long count = [&] {
    long c = 1;
    for (int i = 0; i < parsed.letter_count; ++i) c *= m;
    return c;
  }();
  for (long it = 0; it < count; ++it) {
    long rest = it;
    for (int i = parsed.letter_count - 1; i >= 0; --i) {
      assign[i] = static_cast<int>(rest % m);
      rest /= m;
    }
    Rational scalar(1);
    bool zero = false;
    for (std::size_t i = 0; i < parsed.factors.size() && !zero; ++i) {
      if (!scalars[i]) continue;
      idx.clear();
      for (int l : parsed.factors[i].letters) idx.push_back(assign[l]);
      const Rational& v = scalars[i]->at(idx);
      if (v.is_zero())
        zero = true;
      else
        scalar *= v;
    }
    if (zero) continue;
    if (parsed.identity) {
      total += scalar * Rational(bd.rank);
      continue;
    }
    RationalMatrix product;
    bool first = true;
    for (std::size_t i = 0; i < parsed.factors.size(); ++i) {
      if (!matrices[i]) continue;
      idx.clear();
      for (int l : parsed.factors[i].letters) idx.push_back(assign[l]);
      const RationalMatrix& mat = matrices[i]->at(idx);
      if (first) {
        product = mat;
        first = false;
      } else {
        product = (product * mat).eval();
      }
    }
    Rational trace(0);
    for (Eigen::Index r = 0; r < product.rows(); ++r) trace += product(r, r);
    total += scalar * trace;
  }
  return total;
}

Rational a_n(int n, const BundleData& bd, const CurvatureAtoms& atoms,
             const CoefficientOptions& options) {
  Rational total(0);
  for (const auto& term : coefficient_terms(n)) {
    if (options.drop_identity_terms && is_identity_term(term.pattern)) continue;
    total += term.coefficient * evaluate_pattern(term.pattern, bd, atoms);
  }
  return total;
}

namespace {

void check_supported(int n, const MetricDilatonJet& jet) {
  coefficient_terms(n);
  if (n > 0 && jet.degree < n)
    throw TruncationError("a_" + std::to_string(n) + " needs jet degree " + std::to_string(n) +
                          ", got " + std::to_string(jet.degree));
}

Rational coefficient_for_form_degree(int n, const MetricDilatonJet& jet, int p,
                                     const CurvatureAtoms& atoms,
                                     const CoefficientOptions& options) {
  BundleData bd;
  if (n == 0) {
    bd.dim = jet.dim;
    bd.degree = p;
    bd.rank = FormBasis::get(jet.dim, p).size();
  } else {
    bd = canonical_decomposition(build_twisted_laplacian(jet, p), jet);
    bundle_curvature_and_derivs(bd, jet, bundle_orders_for(n));
  }
  return a_n(n, bd, atoms, options);
}

}  // namespace

Rational heat_coefficient(int n, const MetricDilatonJet& jet, int p,
                          const SupertraceOptions& options) {
  check_supported(n, jet);
  if (p < 0 || p > jet.dim) throw UsageError("form degree out of range");
  const MetricDilatonJet work = n > 0 ? truncate(jet, n) : jet;
  const CurvatureAtoms atoms = n > 0 ? curvature_atoms(work, n) : CurvatureAtoms{};
  return coefficient_for_form_degree(n, work, p, atoms, options.coefficients);
}

Rational supertrace(int n, const MetricDilatonJet& jet, const SupertraceOptions& options) {
  check_supported(n, jet);
  const MetricDilatonJet work = n > 0 ? truncate(jet, n) : jet;
  const CurvatureAtoms atoms = n > 0 ? curvature_atoms(work, n) : CurvatureAtoms{};
  const int m = jet.dim;
  std::vector<Rational> parts(m + 1);
  if (options.workers <= 1) {
    for (int p = 0; p <= m; ++p)
      parts[p] = coefficient_for_form_degree(n, work, p, atoms, options.coefficients);
  } else {
    // Round-robin over form degrees; each worker owns disjoint slots.
    std::vector<std::future<void>> jobs;
    const int workers = std::min(options.workers, m + 1);
    for (int w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (int p = w; p <= m; p += workers)
          parts[p] = coefficient_for_form_degree(n, work, p, atoms, options.coefficients);
      }));
    for (auto& j : jobs) j.get();
  }
  Rational total(0);
  for (int p = 0; p <= m; ++p) total += (p % 2 == 0) ? parts[p] : -parts[p];
  return total;
}

ProductCheck product_check(const MetricDilatonJet& a, const MetricDilatonJet& b, int n,
                           const SupertraceOptions& options) {
  if (n % 2 != 0) throw UsageError("product_check: n must be even");
  ProductCheck r;
  r.lhs = supertrace(n, product(a, b), options);
  r.rhs = Rational(0);
  for (int n1 = 0; n1 <= n; n1 += 2) {
    const int n2 = n - n1;
    if (n1 < a.dim || n2 < b.dim) continue;
    r.rhs += supertrace(n1, a, options) * supertrace(n2, b, options);
  }
  return r;
}

}  // namespace twistheat
