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

#include "twistheat/derham.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "twistheat/eps.hpp"

namespace twistheat {
namespace {

void check_degree(int m, int p) {
  if (m < 1 || p < 0 || p > m)
    throw UsageError("form degree " + std::to_string(p) + " out of range for dim " +
                     std::to_string(m));
}

JetMatrix zero_matrix(int rows, int cols) {
  return JetMatrix::Constant(rows, cols, PolyJet());
}

// Full antisymmetric rank-p tensor of a form.
Tensor<PolyJet> to_full_tensor(const FormField& u) {
  Tensor<PolyJet> t(u.dim, u.degree);
  for (std::size_t f = 0; f < t.size(); ++f) t.flat(f) = u.component(t.unflatten(f));
  return t;
}

PolyJet gradient_up(const MetricDilatonJet& jet, const LeviCivita& lc, int l) {
  PolyJet s;
  for (int k = 0; k < jet.dim; ++k) s += lc.inverse({l, k}) * jet.phi.derivative(k);
  return s;
}

FormField exterior_derivative(const FormField& u, const PolyJet* phi) {
  const int m = u.dim, p = u.degree;
  if (p >= m) throw UsageError("d: form degree must be below the dimension");
  const FormBasis& target = FormBasis::get(m, p + 1);
  const FormBasis& source = FormBasis::get(m, p);
  FormField out;
  out.dim = m;
  out.degree = p + 1;
  out.components.resize(target.size());
  std::vector<int> rest(p);
  for (int J = 0; J < target.size(); ++J) {
    const auto& t = target.tuple(J);
    PolyJet s;
    for (int a = 0; a <= p; ++a) {
      std::copy(t.begin(), t.begin() + a, rest.begin());
      std::copy(t.begin() + a + 1, t.end(), rest.begin() + a);
      const PolyJet& c = u.components[source.locate(rest).first];
      PolyJet term = c.derivative(t[a]);
      if (phi) term += phi->derivative(t[a]) * c;
      s += (a % 2 == 0) ? term : -term;
    }
    out.components[J] = std::move(s);
  }
  return out;
}

FormField codifferential(const FormField& u, const MetricDilatonJet& jet, bool twisted) {
  const int m = u.dim, p = u.degree;
  if (p < 1) throw UsageError("delta: form degree must be at least 1");
  const LeviCivita lc(jet);
  const Tensor<PolyJet> nabla = covariant_derivative(to_full_tensor(u), lc);
  const FormBasis& target = FormBasis::get(m, p - 1);
  FormField out;
  out.dim = m;
  out.degree = p - 1;
  out.components.resize(target.size());
  std::vector<int> idx(p + 1);
  std::vector<PolyJet> grad;
  if (twisted)
    for (int l = 0; l < m; ++l) grad.push_back(gradient_up(jet, lc, l));
  for (int I = 0; I < target.size(); ++I) {
    const auto& tail = target.tuple(I);
    std::copy(tail.begin(), tail.end(), idx.begin() + 1);
    PolyJet s;
    for (int l = 0; l < m; ++l) {
      idx[0] = l;
      for (int k = 0; k < m; ++k) {
        idx[p] = k;
        s -= lc.inverse({k, l}) * nabla.at(idx);
      }
      if (twisted) {
        std::vector<int> lt(idx.begin(), idx.begin() + p);
        s += grad[l] * u.component(lt);
      }
    }
    out.components[I] = std::move(s);
  }
  return out;
}

FormField scaled(const FormField& u, const PolyJet& f) {
  FormField r = u;
  for (auto& c : r.components) c = f * c;
  return r;
}

PolyJet centered_dilaton(const MetricDilatonJet& jet) {
  return PolyJet::zero(jet.dim, jet.degree) + jet.phi - PolyJet(jet.phi.value());
}

FirstOrderOperator build_d_phi(const MetricDilatonJet& jet, int p) {
  const int m = jet.dim;
  check_degree(m, p);
  if (p >= m) throw UsageError("d_phi: form degree must be below the dimension");
  const FormBasis& target = FormBasis::get(m, p + 1);
  const FormBasis& source = FormBasis::get(m, p);
  FirstOrderOperator op;
  op.dim = m;
  op.from_degree = p;
  op.to_degree = p + 1;
  op.first.assign(m, zero_matrix(target.size(), source.size()));
  op.zeroth = zero_matrix(target.size(), source.size());
  std::vector<PolyJet> dphi;
  for (int k = 0; k < m; ++k) dphi.push_back(jet.phi.derivative(k));
  std::vector<int> rest(p);
  for (int J = 0; J < target.size(); ++J) {
    const auto& t = target.tuple(J);
    for (int a = 0; a <= p; ++a) {
      std::copy(t.begin(), t.begin() + a, rest.begin());
      std::copy(t.begin() + a + 1, t.end(), rest.begin() + a);
      const int I = source.locate(rest).first;
      const int sign = a % 2 == 0 ? 1 : -1;
      op.first[t[a]](J, I) = PolyJet(sign);
      op.zeroth(J, I) += sign == 1 ? dphi[t[a]] : -dphi[t[a]];
    }
  }
  return op;
}

FirstOrderOperator build_delta_phi(const MetricDilatonJet& jet, const LeviCivita& lc, int p) {
  const int m = jet.dim;
  check_degree(m, p);
  if (p < 1) throw UsageError("delta_phi: form degree must be at least 1");
  const FormBasis& target = FormBasis::get(m, p - 1);
  const FormBasis& source = FormBasis::get(m, p);
  FirstOrderOperator op;
  op.dim = m;
  op.from_degree = p;
  op.to_degree = p - 1;
  op.first.assign(m, zero_matrix(target.size(), source.size()));
  op.zeroth = zero_matrix(target.size(), source.size());
  // G(l, b, c) = g^{kl} Gamma^b_{kc}
  Tensor<PolyJet> G(m, 3);
  for (int l = 0; l < m; ++l)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        PolyJet s;
        for (int k = 0; k < m; ++k) {
          const PolyJet& gamma = lc.gamma(b, k, c);
          if (!gamma.is_zero()) s += lc.inverse({k, l}) * gamma;
        }
        G({l, b, c}) = std::move(s);
      }
  std::vector<PolyJet> grad;
  for (int l = 0; l < m; ++l) grad.push_back(gradient_up(jet, lc, l));
  std::vector<int> t(p);
  for (int I = 0; I < target.size(); ++I) {
    const auto& tail = target.tuple(I);
    std::copy(tail.begin(), tail.end(), t.begin() + 1);
    for (int l = 0; l < m; ++l) {
      t[0] = l;
      const auto [C, sign] = source.locate(t);
      if (C >= 0) {
        for (int k = 0; k < m; ++k) {
          const PolyJet& gkl = lc.inverse({k, l});
          if (!gkl.is_zero()) op.first[k](I, C) -= gkl * Rational(sign);
        }
        op.zeroth(I, C) += grad[l] * Rational(sign);
      }
      for (int s = 0; s < p; ++s) {
        std::vector<int> moved = t;
        for (int b = 0; b < m; ++b) {
          moved[s] = b;
          const auto [C2, sign2] = source.locate(moved);
          if (C2 < 0) continue;
          const PolyJet& g = G({l, b, t[s]});
          if (!g.is_zero()) op.zeroth(I, C2) += g * Rational(sign2);
        }
      }
    }
  }
  return op;
}

SecondOrderOperator twisted_laplacian_expansion(const MetricDilatonJet& jet,
                                                const LeviCivita& lc, int p) {
  const int m = jet.dim;
  check_degree(m, p);
  SecondOrderOperator total;
  bool have = false;
  if (p > 0) {
    total = compose(build_d_phi(jet, p - 1), build_delta_phi(jet, lc, p));
    have = true;
  }
  if (p < m) {
    SecondOrderOperator other =
        compose(build_delta_phi(jet, lc, p + 1), build_d_phi(jet, p));
    total = have ? total + other : other;
  }
  return total;
}

FormOperator laplace_type(const SecondOrderOperator& op, const LeviCivita& lc) {
  const int m = op.dim;
  if (op.from_degree != op.to_degree)
    throw UsageError("to_laplace_type: operator changes the form degree");
  const int n = static_cast<int>(op.zeroth.rows());
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          PolyJet sym = (op.second[k * m + l](r, c) + op.second[l * m + k](r, c)) *
                        Rational(1, 2);
          if (r == c) sym += lc.inverse({k, l});
          if (!sym.is_zero())
            throw UsageError("to_laplace_type: leading symbol is not -g^{ij} Id");
        }
  FormOperator out;
  out.dim = m;
  out.degree = op.from_degree;
  out.inverse_metric = lc.inverse;
  for (const auto& t : op.first) out.A.push_back(-t);
  out.B = -op.zeroth;
  return out;
}

// Column-vector view of a form's components.
std::vector<PolyJet> apply_matrix(const JetMatrix& M, const std::vector<PolyJet>& v) {
  std::vector<PolyJet> r(M.rows());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero() && !v[j].is_zero()) r[i] += M(i, j) * v[j];
  return r;
}

std::vector<PolyJet> derivative(const std::vector<PolyJet>& v, int k) {
  std::vector<PolyJet> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.derivative(k));
  return r;
}

void add_to(std::vector<PolyJet>& acc, const std::vector<PolyJet>& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
}

FormField make_field(int dim, int degree, std::vector<PolyJet> components) {
  FormField f;
  f.dim = dim;
  f.degree = degree;
  f.components = std::move(components);
  return f;
}

}  // namespace

// --- FormBasis ------------------------------------------------------------

const FormBasis& FormBasis::get(int m, int p) {
  check_degree(m, p);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FormBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{m, p}];
  if (!slot) slot.reset(new FormBasis(m, p));
  return *slot;
}

FormBasis::FormBasis(int m, int p) : m_(m), p_(p) {
  std::vector<int> t(p);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == p) {
      tuples_.push_back(t);
      return;
    }
    for (int i = start; i < m; ++i) {
      t[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

std::pair<int, int> FormBasis::locate(const std::vector<int>& indices) const {
  std::vector<int> s = indices;
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
      if (s[j - 1] == s[j]) return {-1, 0};
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  const auto it = std::lower_bound(tuples_.begin(), tuples_.end(), s);
  return {static_cast<int>(it - tuples_.begin()), sign};
}

// --- FormField ------------------------------------------------------------

FormField FormField::zero(int dim, int p, int jet_degree) {
  const FormBasis& basis = FormBasis::get(dim, p);
  return make_field(dim, p,
                    std::vector<PolyJet>(basis.size(), PolyJet::zero(dim, jet_degree)));
}

PolyJet FormField::component(const std::vector<int>& indices) const {
  const auto [i, sign] = FormBasis::get(dim, degree).locate(indices);
  if (i < 0) return PolyJet();
  return sign > 0 ? components[i] : -components[i];
}

int FormField::precision() const {
  int d = PolyJet::kExact;
  for (const auto& c : components) d = std::min(d, c.degree());
  return d;
}

bool operator==(const FormField& a, const FormField& b) {
  if (a.dim != b.dim || a.degree != b.degree) return false;
  for (std::size_t i = 0; i < a.components.size(); ++i)
    if (!(a.components[i] - b.components[i]).is_zero()) return false;
  return true;
}

// --- field-level operators ------------------------------------------------

FormField apply_d(const FormField& u) { return exterior_derivative(u, nullptr); }

FormField apply_delta(const FormField& u, const MetricDilatonJet& jet) {
  return codifferential(u, jet, false);
}

FormField apply_d_phi(const FormField& u, const MetricDilatonJet& jet) {
  return exterior_derivative(u, &jet.phi);
}

FormField apply_delta_phi(const FormField& u, const MetricDilatonJet& jet) {
  return codifferential(u, jet, true);
}

FormField apply_d_phi_conjugated(const FormField& u, const MetricDilatonJet& jet) {
  const PolyJet psi = centered_dilaton(jet);
  return scaled(apply_d(scaled(u, psi.exp())), (-psi).exp());
}

FormField apply_delta_phi_conjugated(const FormField& u, const MetricDilatonJet& jet) {
  const PolyJet psi = centered_dilaton(jet);
  return scaled(apply_delta(scaled(u, (-psi).exp()), jet), psi.exp());
}

PolyJet form_inner(const FormField& a, const FormField& b, const MetricDilatonJet& jet) {
  if (a.dim != b.dim || a.degree != b.degree)
    throw UsageError("form_inner: forms differ in shape");
  const LeviCivita lc(jet);
  const FormBasis& basis = FormBasis::get(a.dim, a.degree);
  const int p = a.degree;
  PolyJet total;
  for (int I = 0; I < basis.size(); ++I) {
    if (a.components[I].is_zero()) continue;
    for (int J = 0; J < basis.size(); ++J) {
      if (b.components[J].is_zero()) continue;
      // det of the g^{-1} block on rows I, columns J
      PolyJet det;
      for (const auto& perm : permutations(p)) {
        PolyJet term(perm.sign);
        for (int r = 0; r < p; ++r)
          term = term * lc.inverse({basis.tuple(I)[r], basis.tuple(J)[perm.image[r]]});
        det += term;
      }
      total += det * a.components[I] * b.components[J];
    }
  }
  return total;
}

// --- operators as coefficient matrices ------------------------------------

FormField FirstOrderOperator::apply(const FormField& u) const {
  if (u.degree != from_degree) throw UsageError("apply: form degree mismatch");
  std::vector<PolyJet> out = apply_matrix(zeroth, u.components);
  for (int k = 0; k < dim; ++k) add_to(out, apply_matrix(first[k], derivative(u.components, k)));
  return make_field(dim, to_degree, std::move(out));
}

FirstOrderOperator d_phi_operator(const MetricDilatonJet& jet, int p) {
  return build_d_phi(jet, p);
}

FirstOrderOperator delta_phi_operator(const MetricDilatonJet& jet, int p) {
  return build_delta_phi(jet, LeviCivita(jet), p);
}

FormField SecondOrderOperator::apply(const FormField& u) const {
  if (u.degree != from_degree) throw UsageError("apply: form degree mismatch");
  std::vector<PolyJet> out = apply_matrix(zeroth, u.components);
  for (int k = 0; k < dim; ++k) {
    const auto du = derivative(u.components, k);
    add_to(out, apply_matrix(first[k], du));
    for (int l = 0; l < dim; ++l) add_to(out, apply_matrix(second[k * dim + l], derivative(du, l)));
  }
  return make_field(dim, to_degree, std::move(out));
}

SecondOrderOperator compose(const FirstOrderOperator& P, const FirstOrderOperator& Q) {
  if (P.from_degree != Q.to_degree || P.dim != Q.dim)
    throw UsageError("compose: operators do not chain");
  const int m = P.dim;
  SecondOrderOperator r;
  r.dim = m;
  r.from_degree = Q.from_degree;
  r.to_degree = P.to_degree;
  std::vector<JetMatrix> dQ0;
  for (int k = 0; k < m; ++k) dQ0.push_back(derivative(Q.zeroth, k));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) r.second.push_back(multiply(P.first[k], Q.first[l]));
  for (int l = 0; l < m; ++l) {
    JetMatrix t = multiply(P.first[l], Q.zeroth);
    t += multiply(P.zeroth, Q.first[l]);
    for (int k = 0; k < m; ++k) {
      const JetMatrix dq = derivative(Q.first[l], k);
      if (!is_zero(dq)) t += multiply(P.first[k], dq);
    }
    r.first.push_back(std::move(t));
  }
  r.zeroth = multiply(P.zeroth, Q.zeroth);
  for (int k = 0; k < m; ++k) r.zeroth += multiply(P.first[k], dQ0[k]);
  return r;
}

SecondOrderOperator operator+(const SecondOrderOperator& a, const SecondOrderOperator& b) {
  if (a.dim != b.dim || a.from_degree != b.from_degree || a.to_degree != b.to_degree)
    throw UsageError("operator+: shapes differ");
  SecondOrderOperator r = a;
  for (std::size_t i = 0; i < r.second.size(); ++i) r.second[i] += b.second[i];
  for (std::size_t i = 0; i < r.first.size(); ++i) r.first[i] += b.first[i];
  r.zeroth += b.zeroth;
  return r;
}

FormField FormOperator::apply(const FormField& u) const {
  if (u.degree != degree) throw UsageError("apply: form degree mismatch");
  std::vector<PolyJet> out = apply_matrix(B, u.components);
  for (int k = 0; k < dim; ++k) {
    const auto du = derivative(u.components, k);
    add_to(out, apply_matrix(A[k], du));
    for (int l = 0; l < dim; ++l) {
      const PolyJet& g = inverse_metric({k, l});
      if (g.is_zero()) continue;
      const auto ddu = derivative(du, l);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += g * ddu[i];
    }
  }
  for (auto& c : out) c = -c;
  return make_field(dim, degree, std::move(out));
}

FormOperator to_laplace_type(const SecondOrderOperator& op, const MetricDilatonJet& jet) {
  return laplace_type(op, LeviCivita(jet));
}

FormOperator build_twisted_laplacian(const MetricDilatonJet& jet, int p) {
  const LeviCivita lc(jet);
  return laplace_type(twisted_laplacian_expansion(jet, lc, p), lc);
}

FormField apply_twisted_laplacian(const FormField& u, const MetricDilatonJet& jet) {
  FormField out = FormField::zero(u.dim, u.degree, jet.degree);
  if (u.degree > 0) {
    const FormField a = apply_d_phi(apply_delta_phi(u, jet), jet);
    for (std::size_t i = 0; i < out.components.size(); ++i) out.components[i] += a.components[i];
  }
  if (u.degree < u.dim) {
    const FormField b = apply_delta_phi(apply_d_phi(u, jet), jet);
    for (std::size_t i = 0; i < out.components.size(); ++i) out.components[i] += b.components[i];
  }
  return out;
}

// --- canonical decomposition ----------------------------------------------

BundleData canonical_decomposition(const FormOperator& op, const MetricDilatonJet& jet) {
  const int m = op.dim;
  const int n = op.size();
  const LeviCivita lc(jet);
  BundleData bd;
  bd.dim = m;
  bd.degree = op.degree;
  bd.rank = n;
  // omega_k = 1/2 g_{kj} (A^j + g^{il} Gamma^j_{il} Id)
  std::vector<JetMatrix> shifted;
  for (int j = 0; j < m; ++j) {
    PolyJet trace_gamma;
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < m; ++l) trace_gamma += lc.inverse({i, l}) * lc.gamma(j, i, l);
    JetMatrix s = op.A[j];
    for (int r = 0; r < n; ++r) s(r, r) += trace_gamma;
    shifted.push_back(std::move(s));
  }
  for (int k = 0; k < m; ++k) {
    JetMatrix w = zero_matrix(n, n);
    for (int j = 0; j < m; ++j) {
      const PolyJet& g = lc.metric({k, j});
      if (!g.is_zero()) w += scale(g, shifted[j]);
    }
    bd.omega.push_back(scale(PolyJet(Rational(1, 2)), w));
  }
  // E = B - g^{ij} (d_i omega_j + omega_i omega_j - Gamma^k_{ij} omega_k)
  JetMatrix inner_sum = zero_matrix(n, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const PolyJet& gij = lc.inverse({i, j});
      if (gij.is_zero()) continue;
      JetMatrix t = derivative(bd.omega[j], i);
      const int cap = min_degree(t);
      t += multiply(bd.omega[i], bd.omega[j], cap);
      for (int k = 0; k < m; ++k) {
        const PolyJet& gamma = lc.gamma(k, i, j);
        if (!gamma.is_zero()) t -= scale(gamma, bd.omega[k], cap);
      }
      inner_sum += scale(gij, t, cap);
    }
  bd.E = op.B - inner_sum;
  return bd;
}

void bundle_curvature_and_derivs(BundleData& bd, const MetricDilatonJet& jet,
                                 const BundleOrders& orders) {
  const int m = bd.dim;
  const LeviCivita lc(jet);
  bd.Omega = Tensor<JetMatrix>(m, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) {
        bd.Omega({i, j}) = zero_matrix(bd.rank, bd.rank);
        continue;
      }
      if (j < i) continue;
      JetMatrix w = derivative(bd.omega[j], i) - derivative(bd.omega[i], j);
      w += commutator(bd.omega[i], bd.omega[j], min_degree(w));
      bd.Omega({j, i}) = -w;
      bd.Omega({i, j}) = std::move(w);
    }

  auto fill = [&](Tensor<JetMatrix> field, int order, const char* what,
                  std::vector<Tensor<RationalMatrix>>& out) {
    out.clear();
    for (int r = 0; r <= order; ++r) {
      if (r > 0) field = covariant_derivative(field, lc, bd.omega);
      int precision = PolyJet::kExact;
      for (std::size_t f = 0; f < field.size(); ++f)
        precision = std::min(precision, min_degree(field.flat(f)));
      if (precision < 0)
        throw TruncationError(std::string(what) + ": jet degree " +
                              std::to_string(jet.degree) + " too low for " +
                              std::to_string(r) + " covariant derivatives");
      out.push_back(at_origin(field));
    }
  };
  Tensor<JetMatrix> e(m, 0);
  e.flat(0) = bd.E;
  fill(std::move(e), orders.E, "E", bd.dE);
  fill(bd.Omega, orders.Omega, "Omega", bd.dOmega);
}

FormField reassemble(const BundleData& bd, const FormField& u, const MetricDilatonJet& jet) {
  const int m = bd.dim;
  const LeviCivita lc(jet);
  std::vector<std::vector<PolyJet>> first(m);  // u_{;i}
  for (int i = 0; i < m; ++i) {
    first[i] = derivative(u.components, i);
    add_to(first[i], apply_matrix(bd.omega[i], u.components));
  }
  std::vector<PolyJet> trace(u.components.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const PolyJet& gij = lc.inverse({i, j});
      if (gij.is_zero()) continue;
      // u_{;ij} = d_j u_{;i} + omega_j u_{;i} - Gamma^k_{ji} u_{;k}
      std::vector<PolyJet> second = derivative(first[i], j);
      add_to(second, apply_matrix(bd.omega[j], first[i]));
      for (int k = 0; k < m; ++k) {
        const PolyJet& gamma = lc.gamma(k, j, i);
        if (gamma.is_zero()) continue;
        for (std::size_t r = 0; r < second.size(); ++r) second[r] -= gamma * first[k][r];
      }
      for (std::size_t r = 0; r < trace.size(); ++r) trace[r] += gij * second[r];
    }
  add_to(trace, apply_matrix(bd.E, u.components));
  for (auto& c : trace) c = -c;
  return make_field(u.dim, u.degree, std::move(trace));
}

}  // namespace twistheat
