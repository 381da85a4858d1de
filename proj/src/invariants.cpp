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

#include "twistheat/invariants.hpp"

#include <algorithm>
#include <map>

#include "twistheat/heatcoeff.hpp"

namespace twistheat {
namespace {

struct NamedInvariant {
  std::string name;
  std::string pattern;
  bool odd_ell;  // phi^ell with ell odd keeps the invariant even in phi
};

const std::vector<NamedInvariant>& named_invariants() {
  static const std::vector<NamedInvariant> table = {
      {"Xi1", "phi2[i1,j1] phi1[i2] chain[3] e[j2]", false},
      {"Xi2", "dR[i1,i2,j2,j1,k] chain[3] e[k]", false},
      {"Xi3", "dR[i1,i2,k,j1,k] chain[3] e[j2]", false},
      {"Xi4", "phi1[k] chain[1] e[k]", true},
      {"Xi5", "phi1[i1] R[i2,k,k,j2] chain[3] e[j1]", true},
      {"Theta1", "phi1[k] R[i1,i2,j2,k] chain[3] e[j1]", true},
      {"Theta2", "phi1[i1] R[i2,k,j2,j1] chain[3] e[k]", true},
      {"Theta3", "phi1[i1] R[i2,k,j3,j2] R[i3,i4,j4,k] chain[5] e[j1]", true},
      {"Theta4", "R[i1,i2,k,j2] dR[i3,i4,j4,j3,k] chain[5] e[j1]", false},
  };
  return table;
}

const NamedInvariant& find_invariant(const std::string& name) {
  for (const auto& n : named_invariants())
    if (n.name == name) return n;
  throw UsageError("unknown invariant '" + name + "'");
}

void require_even(int m, const char* what) {
  if (m % 2 != 0) throw UsageError(std::string(what) + ": dimension must be even");
}

void require_degree(const MetricDilatonJet& jet, int needed, const char* what) {
  if (jet.degree < needed)
    throw TruncationError(std::string(what) + " needs jet degree " + std::to_string(needed) +
                          ", got " + std::to_string(jet.degree));
}

// Curvature and dilaton jet fields feeding the contractions.
struct FieldTensors {
  LeviCivita lc;
  Tensor<PolyJet> R, dR, phi1, phi2;

  explicit FieldTensors(const MetricDilatonJet& jet) : lc(jet) {
    R = riemann_field(lc);
    dR = covariant_derivative(R, lc);
    Tensor<PolyJet> phi0(jet.dim, 0);
    phi0.flat(0) = jet.phi;
    phi1 = covariant_derivative(phi0, lc);
    phi2 = covariant_derivative(phi1, lc);
  }

  TensorMap<PolyJet> map() const {
    return {{"R", &R}, {"dR", &dR}, {"phi1", &phi1}, {"phi2", &phi2}};
  }

  ContractionMetric<PolyJet> metric() const {
    ContractionMetric<PolyJet> c;
    c.dim = lc.dim;
    c.orthonormal = false;
    c.inverse = lc.inverse;
    c.metric = lc.metric;
    c.inverse_volume = lc.inverse_volume;
    return c;
  }
};

OneFormInvariantField contract_one_form(const std::string& pattern, int ell,
                                        const MetricDilatonJet& jet, const FieldTensors& ft) {
  const ContractionPattern p = ContractionPattern::parse(pattern);
  if (!p.is_one_form()) throw UsageError("not a one-form pattern: " + pattern);
  if (ell < 0) throw UsageError("phi power must be nonnegative");
  std::vector<PolyJet> comps = eps_contract(p, ft.map(), ft.metric());
  PolyJet power = PolyJet::constant(jet.dim, jet.degree, Rational(1));
  for (int e = 0; e < ell; ++e) power = power * jet.phi;
  for (auto& c : comps) c = c * power;
  return FormField{jet.dim, 1, std::move(comps)};
}

// g^{ab} V_{a;b} at the origin.
Rational divergence_at_origin(const OneFormInvariantField& v, const LeviCivita& lc) {
  Tensor<PolyJet> t(v.dim, 1);
  for (int a = 0; a < v.dim; ++a) t.flat(a) = v.components[a];
  const Tensor<PolyJet> tr = trace_last_two(covariant_derivative(t, lc), lc);
  return tr.flat(0).value();
}

OneFormInvariantField combine(const std::vector<std::pair<Rational, OneFormInvariantField>>& terms) {
  OneFormInvariantField out = terms.front().second;
  for (auto& c : out.components) c = PolyJet() + c * terms.front().first;
  for (std::size_t t = 1; t < terms.size(); ++t)
    for (std::size_t i = 0; i < out.components.size(); ++i)
      out.components[i] += terms[t].second.components[i] * terms[t].first;
  return out;
}

}  // namespace

Rational eps_normalization(int m) {
  const int mbar = m / 2;
  Rational two_pow(1);
  for (int i = 0; i < mbar; ++i) two_pow *= Rational(2);
  return Rational(1) / (two_pow * factorial(mbar));
}

Rational pfaffian_density(const MetricDilatonJet& jet) {
  require_even(jet.dim, "pfaffian_density");
  require_degree(jet, jet.dim == 0 ? 0 : 2, "pfaffian_density");
  const CurvaturePackage cp = curvature(jet, {0, 0, 0});
  const TensorMap<Rational> tensors = {{"R", &cp.R().values}};
  return eps_contract_point(ContractionPattern::parse("chain[1]"), tensors, jet.dim) *
         eps_normalization(jet.dim);
}

Rational odd_divergence_density(const MetricDilatonJet& jet) {
  if (jet.dim % 2 == 0) throw UsageError("odd_divergence_density: dimension must be odd");
  require_degree(jet, 2, "odd_divergence_density");
  const CurvaturePackage cp = curvature(jet, {0, 2, 0});
  const TensorMap<Rational> tensors = {{"R", &cp.R().values}, {"phi2", &cp.phi[2].values}};
  return Rational(2) *
         eps_contract_point(ContractionPattern::parse("phi2[i1,j1] chain[2]"), tensors,
                            jet.dim) *
         eps_normalization(jet.dim);
}

EvenDivergenceTerms even_divergence_terms(const MetricDilatonJet& jet) {
  require_even(jet.dim, "even_divergence_density");
  require_degree(jet, 4, "even_divergence_density");
  const MetricDilatonJet j4 = truncate(jet, 4);
  const FieldTensors ft(j4);
  EvenDivergenceTerms out;
  out.div_xi1 = divergence_at_origin(
      contract_one_form(find_invariant("Xi1").pattern, 0, j4, ft), ft.lc);
  out.div_xi3 = divergence_at_origin(
      contract_one_form(find_invariant("Xi3").pattern, 0, j4, ft), ft.lc);
  Tensor<PolyJet> s(j4.dim, 0);
  s.flat(0) = eps_contract(ContractionPattern::parse("chain[1]"), ft.map(), ft.metric())[0];
  const Tensor<PolyJet> hess = covariant_derivative(covariant_derivative(s, ft.lc), ft.lc);
  out.laplace_pfaffian = trace_last_two(hess, ft.lc).flat(0).value();
  return out;
}

Rational even_divergence_density(const MetricDilatonJet& jet) {
  const EvenDivergenceTerms t = even_divergence_terms(jet);
  const Rational mbar(jet.dim / 2);
  return (Rational(4) * mbar * t.div_xi1 + t.laplace_pfaffian / Rational(12) +
          mbar / Rational(6) * t.div_xi3) *
         eps_normalization(jet.dim);
}

const std::vector<std::string>& one_form_invariant_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& inv : named_invariants()) n.push_back(inv.name);
    return n;
  }();
  return names;
}

const std::string& one_form_invariant_pattern(const std::string& name) {
  return find_invariant(name).pattern;
}

OneFormInvariantField xi_theta_eval(const std::string& name, int ell,
                                    const MetricDilatonJet& jet) {
  const NamedInvariant& inv = find_invariant(name);
  require_even(jet.dim, "xi_theta_eval");
  if ((ell % 2 != 0) != inv.odd_ell)
    throw UsageError(name + " needs an " + (inv.odd_ell ? "odd" : "even") + " power of phi");
  return eval_one_form_pattern(inv.pattern, ell, jet);
}

OneFormInvariantField eval_one_form_pattern(const std::string& pattern, int ell,
                                            const MetricDilatonJet& jet) {
  require_degree(jet, 3, "one-form invariants");
  const FieldTensors ft(jet);
  return contract_one_form(pattern, ell, jet, ft);
}

PolyJet eval_scalar_pattern(const std::string& pattern, const MetricDilatonJet& jet) {
  const ContractionPattern p = ContractionPattern::parse(pattern);
  if (p.is_one_form()) throw UsageError("not a scalar pattern: " + pattern);
  require_degree(jet, 3, "scalar invariants");
  const FieldTensors ft(jet);
  return eps_contract(p, ft.map(), ft.metric())[0];
}

bool IdentityResidual::vanishes() const {
  return std::all_of(residual.components.begin(), residual.components.end(),
                     [](const PolyJet& c) { return c.is_zero(); });
}

std::vector<IdentityResidual> lemma34_identities(const MetricDilatonJet& jet, int ell_odd,
                                                 int ell_even) {
  require_even(jet.dim, "lemma34_identities");
  require_degree(jet, 3, "lemma34_identities");
  if (ell_odd % 2 == 0 || ell_even % 2 != 0)
    throw UsageError("lemma34_identities: phi powers have the wrong parity");
  const FieldTensors ft(jet);
  std::map<std::string, OneFormInvariantField> f;
  for (const auto& inv : named_invariants())
    f.emplace(inv.name,
              contract_one_form(inv.pattern, inv.odd_ell ? ell_odd : ell_even, jet, ft));
  const Rational m(jet.dim), m2(jet.dim - 2);
  std::vector<IdentityResidual> out;
  out.push_back({"Xi4 - m Theta1", combine({{1, f.at("Xi4")}, {-m, f.at("Theta1")}})});
  out.push_back({"Theta2 + 2 Xi5 - (m-2) Theta3",
                 combine({{1, f.at("Theta2")}, {2, f.at("Xi5")}, {-m2, f.at("Theta3")}})});
  out.push_back({"Xi4 + m Theta2", combine({{1, f.at("Xi4")}, {m, f.at("Theta2")}})});
  out.push_back({"Theta1 - 2 Xi5 + (m-2) Theta3",
                 combine({{1, f.at("Theta1")}, {-2, f.at("Xi5")}, {m2, f.at("Theta3")}})});
  out.push_back({"Xi2 - 2 Xi3 + (m-2) Theta4",
                 combine({{1, f.at("Xi2")}, {-2, f.at("Xi3")}, {m2, f.at("Theta4")}})});
  return out;
}

Rational codifferential_of_field(const OneFormInvariantField& field,
                                 const MetricDilatonJet& jet) {
  if (field.degree != 1 || field.dim != jet.dim)
    throw UsageError("codifferential_of_field: expected a one-form on the jet's chart");
  return apply_delta(field, jet).components.at(0).value();
}

RestrictionReport restriction_kernel_check(const MetricDilatonJet& jet,
                                           const SupertraceOptions& options) {
  const MetricDilatonJet ext = extend_by_circle(jet);
  require_even(ext.dim, "restriction_kernel_check");
  RestrictionReport r;
  r.dim = ext.dim;
  r.supertrace = supertrace(ext.dim + 2, ext, options);
  r.even_divergence = even_divergence_density(ext);
  return r;
}

}  // namespace twistheat
