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

#include <gtest/gtest.h>

#include "twistheat/heatcoeff.hpp"

namespace twistheat {
namespace {

TEST(HeatCoeff, EveryTermHasTheRightWeight) {
  for (int n : {0, 2, 4, 6})
    for (const auto& t : coefficient_terms(n)) EXPECT_EQ(pattern_weight(t.pattern), n) << t.pattern;
  EXPECT_EQ(coefficient_terms(6).size(), 38u);
  EXPECT_THROW(coefficient_terms(8), UsageError);
  EXPECT_THROW(pattern_weight("R[ijk]"), UsageError);
  EXPECT_THROW(pattern_weight("E[;i]"), UsageError);
  EXPECT_THROW(pattern_weight("Foo"), UsageError);
  EXPECT_TRUE(is_identity_term("tau rho[ij] rho[ij]"));
  EXPECT_FALSE(is_identity_term("rho[jk] E[;jk]"));
}

TEST(HeatCoeff, LeadingCoefficientIsRank) {
  for (int m = 1; m <= 4; ++m)
    for (int p = 0; p <= m; ++p)
      EXPECT_EQ(heat_coefficient(0, make_random(m, 2, 1), p), binomial(m, p));
  EXPECT_EQ(heat_coefficient(0, make_flat(3, 6), 1), Rational(3));
}

TEST(HeatCoeff, FlatScalarLaplacianHasNoCorrections) {
  for (int n : {2, 4, 6}) EXPECT_EQ(heat_coefficient(n, make_flat(2, 6), 0), Rational(0));
}

// Scalar heat trace on S^2: sum (2l+1) e^{-l(l+1)t} = 1/t + 1/3 + t/15 + 4t^2/315 + ...
TEST(HeatCoeff, RoundTwoSphereScalarSpectrum) {
  const MetricDilatonJet s2 = make_sphere(2, 6);
  EXPECT_EQ(heat_coefficient(2, s2, 0), Rational(1, 3));
  EXPECT_EQ(heat_coefficient(4, s2, 0), Rational(1, 15));
  EXPECT_EQ(heat_coefficient(6, s2, 0), Rational(4, 315));
}

// On S^3, sum n^2 e^{-(n^2 - 1)t} = e^t sqrt(pi) / (4 t^{3/2}) up to
// exponentially small terms, so the normalized coefficients are 1/k!.
TEST(HeatCoeff, RoundThreeSphereScalarSpectrum) {
  const MetricDilatonJet s3 = make_sphere(3, 6);
  EXPECT_EQ(heat_coefficient(2, s3, 0), Rational(1));
  EXPECT_EQ(heat_coefficient(4, s3, 0), Rational(1, 2));
  EXPECT_EQ(heat_coefficient(6, s3, 0), Rational(1, 6));
}

TEST(HeatCoeff, CircleSupertraceIsTwiceHessian) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MetricDilatonJet jet = make_random(1, 2, seed);
    const Rational hess = jet.phi.coeff(std::vector<int>{2}) * Rational(2);
    EXPECT_EQ(supertrace(2, jet), hess * Rational(2));
  }
}

TEST(HeatCoeff, SphereEulerCharacteristics) {
  EXPECT_EQ(supertrace(2, make_sphere(2, 6)), Rational(2));
  EXPECT_EQ(supertrace(4, make_sphere(2, 6)), Rational(0));
  EXPECT_EQ(supertrace(6, make_sphere(2, 6)), Rational(0));
  EXPECT_EQ(supertrace(4, make_sphere(4, 4)), Rational(12));
}

TEST(HeatCoeff, VanishingBelowDimension) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    EXPECT_EQ(supertrace(0, make_random(1, 2, seed)), Rational(0));
    EXPECT_EQ(supertrace(0, make_random(2, 2, seed)), Rational(0));
    EXPECT_EQ(supertrace(2, make_random(3, 2, seed)), Rational(0));
    EXPECT_EQ(supertrace(2, make_random(4, 2, seed)), Rational(0));
  }
}

TEST(HeatCoeff, IdentityTermsCancelInSupertrace) {
  SupertraceOptions drop;
  drop.coefficients.drop_identity_terms = true;
  for (int m = 1; m <= 3; ++m) {
    const MetricDilatonJet jet = make_random(m, 4, 200 + m);
    for (int n : {2, 4}) EXPECT_EQ(supertrace(n, jet, drop), supertrace(n, jet)) << m << " " << n;
  }
  const MetricDilatonJet jet = make_random(2, 6, 210);
  EXPECT_EQ(supertrace(6, jet, drop), supertrace(6, jet));
  EXPECT_NE(heat_coefficient(4, jet, 0, drop), heat_coefficient(4, jet, 0));
}

// Hodge duality swaps Delta_phi^p and Delta_{-phi}^{m-p}, so flipping the
// dilaton multiplies the supertrace by (-1)^m.
TEST(HeatCoeff, DilatonParityAndShift) {
  for (int m = 1; m <= 4; ++m) {
    const MetricDilatonJet jet = make_random(m, 4, 220 + m);
    const MetricDilatonJet flipped = with_dilaton(jet, -jet.phi);
    const MetricDilatonJet shifted = with_dilaton(jet, jet.phi + PolyJet(Rational(7, 3)));
    const Rational base = supertrace(4, jet);
    EXPECT_EQ(supertrace(4, flipped), m % 2 == 0 ? base : -base);
    if (m % 2 == 1) EXPECT_FALSE(base.is_zero());
    EXPECT_EQ(supertrace(4, shifted), base);
  }
}

TEST(HeatCoeff, WeightHomogeneity) {
  const Rational c(2, 3);
  for (int m = 1; m <= 3; ++m) {
    const MetricDilatonJet jet = make_random(m, 4, 230 + m);
    for (int n : {2, 4}) {
      EXPECT_EQ(supertrace(n, rescale(jet, c)), supertrace(n, jet) * c.pow(n));
      EXPECT_EQ(heat_coefficient(n, rescale(jet, c), m / 2), heat_coefficient(n, jet, m / 2) * c.pow(n));
    }
  }
}

TEST(HeatCoeff, ParallelMatchesSerial) {
  SupertraceOptions par;
  par.workers = 3;
  const MetricDilatonJet jet = make_random(3, 4, 240);
  EXPECT_EQ(supertrace(4, jet, par), supertrace(4, jet));
}

TEST(HeatCoeff, TruncationIsReportedWithRequiredDegree) {
  try {
    supertrace(6, make_random(2, 4, 1));
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_NE(std::string(e.what()).find("degree 6"), std::string::npos) << e.what();
  }
  EXPECT_THROW(supertrace(3, make_random(2, 4, 1)), UsageError);
}

TEST(HeatCoeff, ProductRuleOnDilatonCircles) {
  const PolyJet x1 = PolyJet::coordinate(1, 4, 0);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const MetricDilatonJet a = make_random(1, 4, seed), b = make_random(1, 4, 50 + seed);
    const ProductCheck r = product_check(a, b, 4);
    EXPECT_TRUE(r.equal()) << r.lhs.str() << " vs " << r.rhs.str();
    // Torus with phi1(x1) + phi2(x2): a_hat_{4,2} = 4 phi1'' phi2''.
    const Rational h1 = a.phi.coeff(std::vector<int>{2}) * Rational(2);
    const Rational h2 = b.phi.coeff(std::vector<int>{2}) * Rational(2);
    EXPECT_EQ(r.lhs, Rational(4) * h1 * h2);
  }
  const ProductCheck flat = product_check(make_flat(1, 4), make_flat(2, 4), 4);
  EXPECT_TRUE(flat.equal());
  EXPECT_EQ(flat.lhs, Rational(0));
}

TEST(HeatCoeff, ProductRuleWithSurface) {
  const ProductCheck r = product_check(make_random(2, 4, 3), make_random(1, 4, 4), 4);
  EXPECT_TRUE(r.equal()) << r.lhs.str() << " vs " << r.rhs.str();
  const ProductCheck s = product_check(make_sphere(2, 4), make_sphere(2, 4), 4);
  EXPECT_EQ(s.lhs, Rational(4));
  EXPECT_TRUE(s.equal());
}

}  // namespace
}  // namespace twistheat
