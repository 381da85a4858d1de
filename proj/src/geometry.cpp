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

#include "twistheat/geometry.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace twistheat {
namespace {

void require_degree(int have, int need, const char* what) {
  if (have < need)
    throw TruncationError(std::string(what) + ": jet degree " +
                          std::to_string(have) + " is below the required " +
                          std::to_string(need));
}

std::vector<SlotSymmetry> riemann_symmetries(int rank) {
  auto with_tail = [rank](std::vector<int> head) {
    for (int r = 4; r < rank; ++r) head.push_back(r);
    return head;
  };
  return {{with_tail({1, 0, 2, 3}), -1},
          {with_tail({0, 1, 3, 2}), -1},
          {with_tail({2, 3, 0, 1}), 1}};
}

}  // namespace

void MetricDilatonJet::validate() const {
  if (g.rank() != 2 || g.dim() != dim)
    throw UsageError("MetricDilatonJet: metric shape does not match dim");
  if (phi.dim() != dim && !phi.is_exact_constant())
    throw UsageError("MetricDilatonJet: dilaton dimension mismatch");
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const PolyJet& gij = g({i, j});
      if (!(gij == g({j, i})))
        throw UsageError("MetricDilatonJet: metric is not symmetric");
      if (!(gij.value() == Rational(i == j ? 1 : 0)))
        throw UsageError("MetricDilatonJet: g(0) must be the identity");
      if (gij.degree() >= 1)
        for (int k = 0; k < dim; ++k)
          if (!gij.derivative(k).value().is_zero())
            throw UsageError("MetricDilatonJet: first derivatives of g must vanish at 0");
    }
  }
}

Tensor<PolyJet> christoffel(const MetricDilatonJet& jet) {
  return LeviCivita(jet).christoffel;
}

LeviCivita::LeviCivita(const MetricDilatonJet& jet) : dim(jet.dim), metric(jet.g) {
  const int m = jet.dim;
  inverse = to_tensor(inverse_near_identity(to_matrix(jet.g)));
  inverse_volume = determinant(to_matrix(jet.g)).inverse();
  Tensor<PolyJet> dg(m, 3);  // (l, i, j) -> d_l g_{ij}
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) dg({l, i, j}) = dg({l, j, i}) = jet.g({i, j}).derivative(l);
  christoffel = Tensor<PolyJet>(m, 3);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      std::vector<PolyJet> lowered(m);  // Gamma_{l i j}
      for (int l = 0; l < m; ++l)
        lowered[l] = (dg({i, j, l}) + dg({j, i, l}) - dg({l, i, j})) * Rational(1, 2);
      for (int k = 0; k < m; ++k) {
        PolyJet s;
        for (int l = 0; l < m; ++l)
          if (!lowered[l].is_zero()) s += inverse({k, l}) * lowered[l];
        christoffel({k, i, j}) = christoffel({k, j, i}) = s;
      }
    }
  }
}

Tensor<PolyJet> riemann_field(const LeviCivita& lc) {
  const int m = lc.dim;
  // Standard R^a_{kij} = d_i G^a_{jk} - d_j G^a_{ik} + G^a_{ip} G^p_{jk}
  //                      - G^a_{jp} G^p_{ik}; then R_{ijkl} = g_{la} R^a_{kij}.
  Tensor<PolyJet> up(m, 4);  // (a, k, i, j)
  for (int a = 0; a < m; ++a)
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          PolyJet s = lc.gamma(a, j, k).derivative(i) - lc.gamma(a, i, k).derivative(j);
          const int cap = s.degree();
          for (int p = 0; p < m; ++p) {
            s += lc.gamma(a, i, p).times(lc.gamma(p, j, k), cap);
            s -= lc.gamma(a, j, p).times(lc.gamma(p, i, k), cap);
          }
          up({a, k, i, j}) = s;
          up({a, k, j, i}) = -s;
        }
  Tensor<PolyJet> R(m, 4);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          if (i == j) continue;
          PolyJet s;
          for (int a = 0; a < m; ++a) s += lc.metric({l, a}) * up({a, k, i, j});
          R({i, j, k, l}) = s;
        }
  return R;
}

Tensor<PolyJet> covariant_derivative(const Tensor<PolyJet>& field,
                                     const LeviCivita& lc) {
  const int m = lc.dim;
  const int rank = field.rank();
  Tensor<PolyJet> out(m, rank + 1);
  std::vector<int> idx(rank + 1), moved(rank);
  for (std::size_t f = 0; f < field.size(); ++f) {
    const auto base = field.unflatten(f);
    for (int k = 0; k < m; ++k) {
      PolyJet s = field.flat(f).derivative(k);
      const int cap = s.degree();
      for (int slot = 0; slot < rank; ++slot) {
        moved = base;
        for (int b = 0; b < m; ++b) {
          const PolyJet& G = lc.gamma(b, k, base[slot]);
          if (G.is_zero()) continue;
          moved[slot] = b;
          const PolyJet& t = field.at(moved);
          if (t.is_zero()) continue;
          s -= G.times(t, cap);
        }
      }
      std::copy(base.begin(), base.end(), idx.begin());
      idx[rank] = k;
      out.at(idx) = std::move(s);
    }
  }
  return out;
}

Tensor<JetMatrix> covariant_derivative(const Tensor<JetMatrix>& field,
                                       const LeviCivita& lc,
                                       const std::vector<JetMatrix>& omega) {
  const int m = lc.dim;
  const int rank = field.rank();
  Tensor<JetMatrix> out(m, rank + 1);
  std::vector<int> idx(rank + 1), moved(rank);
  for (std::size_t f = 0; f < field.size(); ++f) {
    const auto base = field.unflatten(f);
    const JetMatrix& value = field.flat(f);
    for (int k = 0; k < m; ++k) {
      JetMatrix s = derivative(value, k);
      const int cap = min_degree(s);
      if (!omega.empty()) s += commutator(omega[k], value, cap);
      for (int slot = 0; slot < rank; ++slot) {
        moved = base;
        for (int b = 0; b < m; ++b) {
          const PolyJet& G = lc.gamma(b, k, base[slot]);
          if (G.is_zero()) continue;
          moved[slot] = b;
          s -= scale(G, field.at(moved), cap);
        }
      }
      std::copy(base.begin(), base.end(), idx.begin());
      idx[rank] = k;
      out.at(idx) = std::move(s);
    }
  }
  return out;
}

Tensor<PolyJet> trace_last_two(const Tensor<PolyJet>& field, const LeviCivita& lc) {
  const int m = lc.dim;
  const int rank = field.rank() - 2;
  if (rank < 0) throw UsageError("trace_last_two: rank below 2");
  Tensor<PolyJet> out(m, rank);
  std::vector<int> idx(rank + 2);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto base = out.unflatten(f);
    std::copy(base.begin(), base.end(), idx.begin());
    PolyJet s;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const PolyJet& gab = lc.inverse({a, b});
        if (gab.is_zero()) continue;
        idx[rank] = a;
        idx[rank + 1] = b;
        s += gab * field.at(idx);
      }
    out.flat(f) = std::move(s);
  }
  return out;
}

Tensor<JetMatrix> trace_last_two(const Tensor<JetMatrix>& field,
                                 const LeviCivita& lc) {
  const int m = lc.dim;
  const int rank = field.rank() - 2;
  if (rank < 0) throw UsageError("trace_last_two: rank below 2");
  Tensor<JetMatrix> out(m, rank);
  std::vector<int> idx(rank + 2);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto base = out.unflatten(f);
    std::copy(base.begin(), base.end(), idx.begin());
    JetMatrix s;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const PolyJet& gab = lc.inverse({a, b});
        if (gab.is_zero()) continue;
        idx[rank] = a;
        idx[rank + 1] = b;
        const JetMatrix& t = field.at(idx);
        JetMatrix term = scale(gab, t, min_degree(t));
        if (s.size() == 0)
          s = std::move(term);
        else
          s += term;
      }
    out.flat(f) = std::move(s);
  }
  return out;
}

PointTensor ricci_from(const PointTensor& R) {
  const int m = R.dim();
  PointTensor rho(m, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Rational s(0);
      for (int k = 0; k < m; ++k) s += R({i, k, k, j});
      rho({i, j}) = s;
    }
  rho.symmetries = {{{1, 0}, 1}};
  return rho;
}

Rational scalar_from(const PointTensor& rho) {
  Rational s(0);
  for (int j = 0; j < rho.dim(); ++j) s += rho({j, j});
  return s;
}

CurvaturePackage curvature(const MetricDilatonJet& jet, const CurvatureOrders& orders) {
  require_degree(jet.degree, 2 + orders.riemann, "curvature (Riemann derivatives)");
  require_degree(jet.degree, orders.phi, "curvature (dilaton derivatives)");
  require_degree(jet.degree, 2 + orders.tau, "curvature (scalar curvature derivatives)");
  jet.validate();
  const int m = jet.dim;
  const LeviCivita lc(jet);
  CurvaturePackage cp;
  cp.dim = m;

  Tensor<PolyJet> field = riemann_field(lc);
  for (int r = 0; r <= orders.riemann; ++r) {
    if (r > 0) field = covariant_derivative(field, lc);
    PointTensor p = at_origin(field);
    p.symmetries = riemann_symmetries(4 + r);
    cp.riemann.push_back(std::move(p));
  }
  cp.rho = ricci_from(cp.R());
  cp.scalar = scalar_from(cp.rho);

  Tensor<PolyJet> phi_field(m, 0);
  phi_field.flat(0) = jet.phi;
  for (int r = 0; r <= orders.phi; ++r) {
    if (r > 0) phi_field = covariant_derivative(phi_field, lc);
    PointTensor p = at_origin(phi_field);
    if (r >= 2) {
      std::vector<int> perm(r);
      for (int s = 0; s < r; ++s) perm[s] = s;
      std::swap(perm[0], perm[1]);
      p.symmetries = {{perm, 1}};
    }
    cp.phi.push_back(std::move(p));
  }

  if (orders.tau == 0) {
    PointTensor t(m, 0);
    t.values.flat(0) = cp.scalar;
    cp.tau.push_back(std::move(t));
  } else {
    const Tensor<PolyJet> R = riemann_field(lc);
    Tensor<PolyJet> rho(m, 2);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        PolyJet s;
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) s += lc.inverse({k, l}) * R({i, k, l, j});
        rho({i, j}) = s;
      }
    Tensor<PolyJet> tau = trace_last_two(rho, lc);
    for (int r = 0; r <= orders.tau; ++r) {
      if (r > 0) tau = covariant_derivative(tau, lc);
      cp.tau.push_back(at_origin(tau));
    }
  }
  return cp;
}

MetricDilatonJet make_flat(int dim, int degree) {
  MetricDilatonJet jet;
  jet.dim = dim;
  jet.degree = degree;
  jet.g = Tensor<PolyJet>(dim, 2);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      jet.g({i, j}) = PolyJet::constant(dim, degree, Rational(i == j ? 1 : 0));
  jet.phi = PolyJet::zero(dim, degree);
  return jet;
}

MetricDilatonJet make_circle_with_dilaton(const PolyJet& phi) {
  if (phi.dim() != 1) throw UsageError("circle dilaton must be a jet in one variable");
  MetricDilatonJet jet = make_flat(1, phi.degree());
  jet.phi = phi;
  return jet;
}

MetricDilatonJet make_sphere(int dim, int degree) {
  MetricDilatonJet jet = make_flat(dim, degree);
  PolyJet s = PolyJet::constant(dim, degree, Rational(1));
  for (int i = 0; i < dim; ++i) {
    const PolyJet x = PolyJet::coordinate(dim, degree, i);
    s += x * x * Rational(1, 4);
  }
  const PolyJet f = s.inverse();
  const PolyJet conformal = f * f;
  for (int i = 0; i < dim; ++i) jet.g({i, i}) = conformal;
  return jet;
}

namespace {

Rational draw(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 7) - 3;
  const long den = static_cast<long>(rng() % 3) + 1;
  return Rational(num, den);
}

}  // namespace

MetricDilatonJet make_random(int dim, int degree, std::uint64_t seed, bool with_dilaton) {
  std::mt19937_64 rng(seed);
  MetricDilatonJet jet = make_flat(dim, degree);
  const auto& basis = MonomialBasis::get(dim, degree);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      PolyJet e = jet.g({i, j});
      for (int t = basis.size(1); t < basis.size(degree); ++t) e.coeff_at(t) = draw(rng);
      jet.g({i, j}) = jet.g({j, i}) = e;
    }
  if (with_dilaton) {
    PolyJet phi = PolyJet::zero(dim, degree);
    for (int t = 0; t < basis.size(degree); ++t) phi.coeff_at(t) = draw(rng);
    // Keep the Hessian part nonzero so divergence terms are exercised.
    if (degree >= 2) {
      bool hessian_zero = true;
      for (int t = basis.size(1); t < basis.size(2); ++t)
        hessian_zero = hessian_zero && phi.coeff_at(t).is_zero();
      if (hessian_zero) phi.coeff_at(basis.size(1)) = Rational(1);
    }
    jet.phi = phi;
  }
  return jet;
}

MetricDilatonJet product(const MetricDilatonJet& a, const MetricDilatonJet& b) {
  MetricDilatonJet jet;
  jet.dim = a.dim + b.dim;
  jet.degree = std::min(a.degree, b.degree);
  jet.g = Tensor<PolyJet>(jet.dim, 2);
  for (int i = 0; i < jet.dim; ++i)
    for (int j = 0; j < jet.dim; ++j) {
      PolyJet e = PolyJet::zero(jet.dim, jet.degree);
      if (i < a.dim && j < a.dim)
        e = a.g({i, j}).embedded(jet.dim, 0);
      else if (i >= a.dim && j >= a.dim)
        e = b.g({i - a.dim, j - a.dim}).embedded(jet.dim, a.dim);
      jet.g({i, j}) = PolyJet::zero(jet.dim, jet.degree) + e;
    }
  jet.phi = PolyJet::zero(jet.dim, jet.degree) + a.phi.embedded(jet.dim, 0) +
            b.phi.embedded(jet.dim, a.dim);
  return jet;
}

MetricDilatonJet extend_by_circle(const MetricDilatonJet& jet) {
  return product(jet, make_flat(1, jet.degree));
}

MetricDilatonJet rescale(const MetricDilatonJet& jet, const Rational& c) {
  MetricDilatonJet out = jet;
  for (std::size_t i = 0; i < out.g.size(); ++i) out.g.flat(i) = jet.g.flat(i).rescaled(c);
  out.phi = jet.phi.rescaled(c);
  return out;
}

MetricDilatonJet with_dilaton(const MetricDilatonJet& jet, const PolyJet& phi) {
  MetricDilatonJet out = jet;
  out.phi = PolyJet::zero(jet.dim, jet.degree) + phi;
  return out;
}

MetricDilatonJet truncate(const MetricDilatonJet& jet, int degree) {
  if (degree >= jet.degree) return jet;
  MetricDilatonJet out = jet;
  out.degree = degree;
  for (std::size_t i = 0; i < out.g.size(); ++i) out.g.flat(i) = jet.g.flat(i).truncated(degree);
  out.phi = jet.phi.truncated(degree);
  return out;
}

}  // namespace twistheat
