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

// Exterior calculus on jets, the dilaton-twisted operators
//   d_phi = d + dphi ^ .      delta_phi = delta + i(grad phi)
// and the Laplace-type data of Delta_phi = d_phi delta_phi + delta_phi d_phi.
//
// delta is the metric adjoint of d: on one-forms delta = -div, so
// delta(x1 dx1) = -1 on flat space.

#pragma once

#include <vector>

#include "twistheat/geometry.hpp"

namespace twistheat {

/// Increasing index tuples of length p in {0..m-1}, lexicographic order.
class FormBasis {
 public:
  static const FormBasis& get(int m, int p);

  int dim() const { return m_; }
  int degree() const { return p_; }
  int size() const { return static_cast<int>(tuples_.size()); }
  const std::vector<int>& tuple(int index) const { return tuples_[index]; }
  /// Position of an arbitrary tuple after sorting, with the sorting sign.
  /// Returns {-1, 0} if an index repeats.
  std::pair<int, int> locate(const std::vector<int>& indices) const;

 private:
  FormBasis(int m, int p);
  int m_, p_;
  std::vector<std::vector<int>> tuples_;
};

/// A p-form near the origin: one jet per increasing index tuple.
struct FormField {
  int dim = 0;
  int degree = 0;
  std::vector<PolyJet> components;

  static FormField zero(int dim, int p, int jet_degree);
  /// Coefficient of dx^{indices} with antisymmetry applied; 0 on repeats.
  PolyJet component(const std::vector<int>& indices) const;
  int precision() const;
  friend bool operator==(const FormField& a, const FormField& b);
};

FormField apply_d(const FormField& u);
FormField apply_delta(const FormField& u, const MetricDilatonJet& jet);
/// d + dphi ^ .
FormField apply_d_phi(const FormField& u, const MetricDilatonJet& jet);
/// delta + i(grad phi).
FormField apply_delta_phi(const FormField& u, const MetricDilatonJet& jet);
/// e^{-psi} d e^{psi} and e^{psi} delta e^{-psi} with psi = phi - phi(0),
/// computed through the jet exponential.
FormField apply_d_phi_conjugated(const FormField& u, const MetricDilatonJet& jet);
FormField apply_delta_phi_conjugated(const FormField& u, const MetricDilatonJet& jet);
/// Pointwise inner product sum over increasing tuples of g-contracted
/// components; with g(0) = delta this is the metric pairing of forms.
PolyJet form_inner(const FormField& a, const FormField& b, const MetricDilatonJet& jet);

/// P = P^k d_k + P^0 acting from p-forms to q-forms.
struct FirstOrderOperator {
  int dim = 0;
  int from_degree = 0, to_degree = 0;
  std::vector<JetMatrix> first;  // [k], rows over q-forms, cols over p-forms
  JetMatrix zeroth;

  FormField apply(const FormField& u) const;
};

FirstOrderOperator d_phi_operator(const MetricDilatonJet& jet, int p);
FirstOrderOperator delta_phi_operator(const MetricDilatonJet& jet, int p);

/// S^{kl} d_k d_l + T^k d_k + U, with S stored unsymmetrized at k * m + l.
struct SecondOrderOperator {
  int dim = 0;
  int from_degree = 0, to_degree = 0;
  std::vector<JetMatrix> second;
  std::vector<JetMatrix> first;
  JetMatrix zeroth;

  FormField apply(const FormField& u) const;
};

/// P o Q.
SecondOrderOperator compose(const FirstOrderOperator& p, const FirstOrderOperator& q);
SecondOrderOperator operator+(const SecondOrderOperator& a, const SecondOrderOperator& b);

/// D = -(g^{ij} d_i d_j + A^k d_k + B) on p-forms.
struct FormOperator {
  int dim = 0;
  int degree = 0;
  Tensor<PolyJet> inverse_metric;
  std::vector<JetMatrix> A;
  JetMatrix B;

  FormField apply(const FormField& u) const;
  int size() const { return static_cast<int>(B.rows()); }
};

/// Throws UsageError if the symmetrized second-order part is not -g^{ij} Id.
FormOperator to_laplace_type(const SecondOrderOperator& op, const MetricDilatonJet& jet);

/// Delta_phi on p-forms.
FormOperator build_twisted_laplacian(const MetricDilatonJet& jet, int p);
/// Field-level d_phi delta_phi u + delta_phi d_phi u.
FormField apply_twisted_laplacian(const FormField& u, const MetricDilatonJet& jet);

struct BundleOrders {
  int E = 4;      // covariant derivatives of E
  int Omega = 2;  // covariant derivatives of Omega
};

/// Canonical connection and endomorphism of a Laplace-type operator, with
/// D u = -(u_{;ii} + E u) and u_{;i} = d_i u + omega_i u.
struct BundleData {
  int dim = 0;
  int degree = 0;  // form degree p
  int rank = 0;    // fibre dimension
  std::vector<JetMatrix> omega;
  JetMatrix E;
  Tensor<JetMatrix> Omega;  // rank 2, filled by bundle_curvature_and_derivs

  std::vector<Tensor<RationalMatrix>> dE;      // [r] = nabla^r E at 0
  std::vector<Tensor<RationalMatrix>> dOmega;  // [r] = nabla^r Omega at 0
};

BundleData canonical_decomposition(const FormOperator& op, const MetricDilatonJet& jet);
/// Omega_{ij} = d_i omega_j - d_j omega_i + [omega_i, omega_j] and the
/// requested covariant derivatives of E and Omega at the origin.
void bundle_curvature_and_derivs(BundleData& bd, const MetricDilatonJet& jet,
                                 const BundleOrders& orders);
/// -(u_{;ii} + E u) rebuilt from the bundle data.
FormField reassemble(const BundleData& bd, const FormField& u, const MetricDilatonJet& jet);

}  // namespace twistheat
