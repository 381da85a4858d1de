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

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "twistheat/eps.hpp"
#include "twistheat/poly_jet.hpp"
#include "twistheat/rational.hpp"

namespace twistheat {
namespace {

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  return Rational(num(rng), den(rng));
}

PolyJet random_jet(std::mt19937_64& rng, int dim, int degree) {
  PolyJet j = PolyJet::zero(dim, degree);
  for (std::size_t i = 0; i < j.term_count(); ++i) j.coeff_at(i) = small_rational(rng);
  return j;
}

// Unit round sphere: R_{ijkl} = delta_il delta_jk - delta_ik delta_jl, which
// gives R_{1221} = +1.
Tensor<Rational> constant_curvature(int m) {
  Tensor<Rational> R(m, 4, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          R({i, j, k, l}) = Rational((i == l && j == k) - (i == k && j == l));
  return R;
}

Tensor<Rational> random_tensor(std::mt19937_64& rng, int m, int rank) {
  Tensor<Rational> t(m, rank, Rational(0));
  for (std::size_t i = 0; i < t.size(); ++i) t.flat(i) = small_rational(rng);
  return t;
}

// Brute-force oracle: loops over every m-tuple I and J (not just
// permutations) and weights by eps_sign.
Rational brute_force(int m, const std::function<Rational(const std::vector<int>&,
                                                          const std::vector<int>&)>& body) {
  std::vector<std::vector<int>> tuples{{}};
  for (int p = 0; p < m; ++p) {
    std::vector<std::vector<int>> next;
    for (const auto& t : tuples)
      for (int v = 1; v <= m; ++v) {
        auto u = t;
        u.push_back(v);
        next.push_back(u);
      }
    tuples = next;
  }
  Rational sum(0);
  for (const auto& I : tuples)
    for (const auto& J : tuples) {
      const Rational e = eps_sign(I, J, m);
      if (e.is_zero()) continue;
      sum += e * body(I, J);
    }
  return sum;
}

TEST(RationalTest, LowestTermsAndParse) {
  const Rational a(6, -4);
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(a.str(), "-3/2");
  EXPECT_EQ(Rational::parse("-3/2"), a);
  EXPECT_EQ(Rational::parse("12345678901234567890123/7").str(),
            "12345678901234567890123/7");
  EXPECT_THROW(Rational::parse("1/0"), UsageError);
  EXPECT_THROW(Rational::parse("x"), UsageError);
  EXPECT_THROW(Rational(1) / Rational(0), UsageError);
  EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
}

TEST(EpsSignTest, Examples) {
  EXPECT_EQ(eps_sign(std::vector{1, 2}, std::vector{1, 2}, 2), Rational(1));
  EXPECT_EQ(eps_sign(std::vector{1, 2}, std::vector{2, 1}, 2), Rational(-1));
  EXPECT_EQ(eps_sign(std::vector{1, 1}, std::vector{1, 2}, 2), Rational(0));
  EXPECT_EQ(eps_sign(std::vector{1, 2}, std::vector{1, 3}, 3), Rational(0));
  EXPECT_THROW(eps_sign(std::vector{1, 3}, std::vector{1, 2}, 2), UsageError);
  EXPECT_THROW(eps_sign(std::vector{0, 1}, std::vector{1, 0}, 2), UsageError);
}

TEST(EpsSignTest, SymmetryAndTranspositionsExhaustive) {
  for (int m = 1; m <= 4; ++m) {
    std::vector<std::vector<int>> tuples{{}};
    for (int p = 0; p < m; ++p) {
      std::vector<std::vector<int>> next;
      for (const auto& t : tuples)
        for (int v = 1; v <= m; ++v) {
          auto u = t;
          u.push_back(v);
          next.push_back(u);
        }
      tuples = next;
    }
    for (const auto& I : tuples)
      for (const auto& J : tuples) {
        const Rational e = eps_sign(I, J, m);
        ASSERT_EQ(e, eps_sign(J, I, m));
        for (int a = 0; a < m; ++a)
          for (int b = a + 1; b < m; ++b) {
            auto swapped = I;
            std::swap(swapped[a], swapped[b]);
            ASSERT_EQ(eps_sign(swapped, J, m), -e);
          }
      }
  }
}

TEST(PermutationsTest, CountAndSigns) {
  EXPECT_EQ(permutations(4).size(), 24u);
  int total = 0;
  for (const auto& p : permutations(4)) total += p.sign;
  EXPECT_EQ(total, 0);
  for (const auto& p : permutations(3)) {
    std::vector<int> I, J;
    for (int i = 0; i < 3; ++i) {
      I.push_back(i + 1);
      J.push_back(p.image[i] + 1);
    }
    EXPECT_EQ(eps_sign(I, J, 3), Rational(p.sign));
  }
}

TEST(CurlyRTest, Examples) {
  const auto R = constant_curvature(2);
  const std::vector<int> I{1, 2}, J{1, 2};
  EXPECT_EQ(curly_r(I, J, 3, 2, R), Rational(1));
  EXPECT_EQ(curly_r(I, J, 1, 2, R), Rational(1));
  const Tensor<Rational> flat(2, 4, Rational(0));
  EXPECT_EQ(curly_r(I, J, 1, 2, flat), Rational(0));
  EXPECT_THROW(curly_r(I, J, 1, 1, R), UsageError);
}

TEST(EpsContractTest, SphereChainIsFour) {
  const auto R = constant_curvature(2);
  const auto pattern = ContractionPattern::parse("chain[1]");
  EXPECT_EQ(eps_contract_point(pattern, {{"R", &R}}, 2), Rational(4));
  const Rational oracle = brute_force(2, [&](const auto& I, const auto& J) {
    return curly_r(I, J, 1, 2, R);
  });
  EXPECT_EQ(oracle, Rational(4));
}

TEST(EpsContractTest, FlatSpaceVanishes) {
  const Tensor<Rational> R(3, 4, Rational(0));
  const Tensor<Rational> phi2(3, 2, Rational(0));
  const auto pattern = ContractionPattern::parse("phi2[i1,j1] chain[2]");
  EXPECT_EQ(eps_contract_point(pattern, {{"R", &R}, {"phi2", &phi2}}, 3),
            Rational(0));
}

TEST(EpsContractTest, OddChainWindowIsMalformed) {
  const auto R = constant_curvature(2);
  Tensor<Rational> phi2(2, 2, Rational(0));
  phi2({0, 0}) = Rational(1);
  const auto pattern = ContractionPattern::parse("phi2[i1,j1] chain[2]");
  EXPECT_THROW(eps_contract_point(pattern, {{"R", &R}, {"phi2", &phi2}}, 2),
               UsageError);
}

TEST(EpsContractTest, MalformedPatterns) {
  const Tensor<Rational> phi2(2, 2, Rational(0));
  EXPECT_THROW(ContractionPattern::parse("phi2[i1"), UsageError);
  EXPECT_THROW(ContractionPattern::parse("phi2[i0,j1]"), UsageError);
  EXPECT_THROW(eps_contract_point(ContractionPattern::parse("phi2[i1]"),
                                  {{"phi2", &phi2}}, 2),
               UsageError);
  EXPECT_THROW(eps_contract_point(ContractionPattern::parse("phi2[k,i1]"),
                                  {{"phi2", &phi2}}, 2),
               UsageError);
  EXPECT_THROW(eps_contract_point(ContractionPattern::parse("psi[i1,j1]"),
                                  {{"phi2", &phi2}}, 2),
               UsageError);
}

// Random tensors against the all-tuples oracle, m = 1..4.
TEST(EpsContractTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 4; ++m) {
    const auto R = random_tensor(rng, m, 4);
    const auto phi1 = random_tensor(rng, m, 1);
    const auto phi2 = random_tensor(rng, m, 2);
    const TensorMap<Rational> tensors{{"R", &R}, {"phi1", &phi1}, {"phi2", &phi2}};
    if (m % 2 == 1) {
      const auto p = ContractionPattern::parse("phi2[i1,j1] chain[2]");
      const Rational oracle = brute_force(m, [&](const auto& I, const auto& J) {
        return phi2({I[0] - 1, J[0] - 1}) * curly_r(I, J, 2, m, R);
      });
      EXPECT_EQ(eps_contract_point(p, tensors, m), oracle) << "m=" << m;
    } else {
      const auto p = ContractionPattern::parse("chain[1]");
      const Rational oracle = brute_force(m, [&](const auto& I, const auto& J) {
        return curly_r(I, J, 1, m, R);
      });
      EXPECT_EQ(eps_contract_point(p, tensors, m), oracle) << "m=" << m;
      // A contracted letter: phi1_k R_{i1 i2 j2 k} ...
      if (m >= 2) {
        const auto q = ContractionPattern::parse(
            "phi1[k] phi1[j1] R[i1,i2,j2,k] chain[3]");
        const Rational oracle2 = brute_force(m, [&](const auto& I, const auto& J) {
          Rational s(0);
          for (int k = 0; k < m; ++k)
            s += phi1({k}) * phi1({J[0] - 1}) *
                 R({I[0] - 1, I[1] - 1, J[1] - 1, k});
          return s * curly_r(I, J, 3, m, R);
        });
        EXPECT_EQ(eps_contract_point(q, tensors, m), oracle2) << "m=" << m;
      }
    }
  }
}

TEST(EpsContractTest, MultilinearInEachTensor) {
  std::mt19937_64 rng(5);
  const int m = 4;
  auto R = random_tensor(rng, m, 4);
  auto phi2 = random_tensor(rng, m, 2);
  auto phi1 = random_tensor(rng, m, 1);
  const auto p = ContractionPattern::parse("phi2[i1,j1] phi1[i2] phi1[j2] chain[3]");
  const Rational base =
      eps_contract_point(p, {{"R", &R}, {"phi1", &phi1}, {"phi2", &phi2}}, m);
  const Rational c(-7, 3);
  auto phi2c = phi2;
  for (std::size_t i = 0; i < phi2c.size(); ++i) phi2c.flat(i) *= c;
  EXPECT_EQ(eps_contract_point(p, {{"R", &R}, {"phi1", &phi1}, {"phi2", &phi2c}}, m),
            c * base);
  auto Rc = R;
  for (std::size_t i = 0; i < Rc.size(); ++i) Rc.flat(i) *= c;
  EXPECT_EQ(eps_contract_point(p, {{"R", &Rc}, {"phi1", &phi1}, {"phi2", &phi2}}, m),
            c * base);
}

TEST(EpsContractTest, OneFormFreeSlot) {
  // m = 2: eps_J^I phi_{;i1 j1} phi_{;i2} e^{j2} = (tr(H) - H) grad(phi).
  Tensor<Rational> H(2, 2, Rational(0)), g(2, 1, Rational(0));
  H({0, 0}) = Rational(2);
  H({0, 1}) = H({1, 0}) = Rational(3);
  H({1, 1}) = Rational(5);
  g({0}) = Rational(7);
  g({1}) = Rational(-1);
  const auto p = ContractionPattern::parse("phi2[i1,j1] phi1[i2] e[j2]");
  const auto v = eps_contract(p, {{"phi2", &H}, {"phi1", &g}},
                              ContractionMetric<Rational>::frame(2));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], Rational(7 * 7 - (2 * 7 + 3 * -1)));
  EXPECT_EQ(v[1], Rational(7 * -1 - (3 * 7 + 5 * -1)));
}

class PolyJetTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{1234};
};

TEST_F(PolyJetTest, RingAxioms) {
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + trial % 4;
    const auto a = random_jet(rng_, dim, 4);
    const auto b = random_jet(rng_, dim, 4);
    const auto c = random_jet(rng_, dim, 4);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b - b, a);
  }
}

TEST_F(PolyJetTest, PartialsCommute) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_jet(rng_, 3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_EQ(a.derivative(i).derivative(j), a.derivative(j).derivative(i));
  }
}

TEST_F(PolyJetTest, PrecisionTracking) {
  const auto a = random_jet(rng_, 2, 4);
  const auto b = random_jet(rng_, 2, 2);
  EXPECT_EQ((a * b).degree(), 2);
  EXPECT_EQ((a + b).degree(), 2);
  EXPECT_EQ(a.derivative(0).degree(), 3);
  EXPECT_EQ((a * PolyJet(Rational(3))).degree(), 4);
  const auto exhausted = b.derivative(0).derivative(1).derivative(0);
  EXPECT_EQ(exhausted.degree(), -1);
  EXPECT_THROW(exhausted.value(), TruncationError);
  EXPECT_THROW(a.coeff(std::vector{5, 0}), TruncationError);
}

TEST_F(PolyJetTest, ProductMatchesMonomialExpansion) {
  // (1 + x)(1 - x + x^2) = 1 + x^3 truncated at degree 2 is 1.
  const int d = 2;
  auto x = PolyJet::coordinate(1, d, 0);
  auto one = PolyJet::constant(1, d, Rational(1));
  const auto p = (one + x) * (one - x + x * x);
  EXPECT_EQ(p, one);
  auto x5 = PolyJet::coordinate(1, 5, 0);
  auto one5 = PolyJet::constant(1, 5, Rational(1));
  const auto q = (one5 + x5) * (one5 - x5 + x5 * x5);
  EXPECT_EQ(q.coeff(std::vector{3}), Rational(1));
  EXPECT_EQ(q.coeff(std::vector{1}), Rational(0));
}

TEST_F(PolyJetTest, InverseAndExp) {
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_jet(rng_, 2, 5);
    f.coeff_at(0) = Rational(trial + 1, 2);
    EXPECT_EQ(f * f.inverse(), PolyJet::constant(2, 5, Rational(1)));
    auto u = random_jet(rng_, 2, 5);
    auto v = random_jet(rng_, 2, 5);
    u.coeff_at(0) = Rational(0);
    v.coeff_at(0) = Rational(0);
    EXPECT_EQ((u + v).exp(), u.exp() * v.exp());
    EXPECT_EQ(u.exp() * (-u).exp(), PolyJet::constant(2, 5, Rational(1)));
  }
}

TEST_F(PolyJetTest, TermOrderDoesNotMatter) {
  const auto a = random_jet(rng_, 3, 4);
  std::vector<std::size_t> order(a.term_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int shuffle = 0; shuffle < 5; ++shuffle) {
    std::shuffle(order.begin(), order.end(), rng_);
    PolyJet rebuilt = PolyJet::zero(3, 4);
    for (std::size_t i : order) {
      const auto e = a.basis()->exponent(static_cast<int>(i));
      rebuilt += PolyJet::monomial(3, 4, e, a.coeff_at(i));
    }
    EXPECT_EQ(rebuilt, a);
    EXPECT_EQ(rebuilt * a, a * a);
  }
}

TEST_F(PolyJetTest, RescaleAndEmbed) {
  const auto a = random_jet(rng_, 2, 3);
  const Rational c(2, 3);
  const auto r = a.rescaled(c);
  for (std::size_t i = 0; i < a.term_count(); ++i)
    EXPECT_EQ(r.coeff_at(i),
              a.coeff_at(i) * c.pow(a.basis()->degree_of(static_cast<int>(i))));
  const auto e = a.embedded(4, 1);
  EXPECT_EQ(e.coeff(std::vector{0, 1, 2, 0}), a.coeff(std::vector{1, 2}));
  EXPECT_EQ(e.derivative(1).embedded(4, 0), e.derivative(1));
  EXPECT_EQ(e.derivative(0).is_zero(), true);
}

TEST_F(PolyJetTest, BasisPrefixProperty) {
  const auto& small = MonomialBasis::get(3, 2);
  const auto& big = MonomialBasis::get(3, 7);
  for (int i = 0; i < small.size(2); ++i) {
    const auto a = small.exponent(i);
    const auto b = big.exponent(i);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
  }
  EXPECT_EQ(big.size(6), 84);
  EXPECT_EQ(MonomialBasis::get(4, 6).size(6), 210);
}

}  // namespace
}  // namespace twistheat
