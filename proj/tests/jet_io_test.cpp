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

#include "twistheat/jet_io.hpp"

namespace twistheat {
namespace {

const std::string kFixtures = TWISTHEAT_FIXTURE_DIR;

void expect_same_jet(const MetricDilatonJet& a, const MetricDilatonJet& b) {
  ASSERT_EQ(a.dim, b.dim);
  ASSERT_EQ(a.degree, b.degree);
  for (std::size_t f = 0; f < a.g.size(); ++f) EXPECT_EQ(a.g.flat(f), b.g.flat(f));
  EXPECT_EQ(a.phi, b.phi);
}

TEST(JetIo, RoundTripIsBitExact) {
  for (int m = 1; m <= 4; ++m) {
    const MetricDilatonJet jet = make_random(m, 5, 100 + m);
    const std::string text = jet_to_json(jet);
    const MetricDilatonJet back = jet_from_json(text);
    expect_same_jet(jet, back);
    EXPECT_EQ(jet_to_json(back), text);
  }
}

TEST(JetIo, LargeCoefficientsSurvive) {
  MetricDilatonJet jet = make_flat(2, 3);
  jet.phi.coeff_at(3) = Rational::parse("123456789012345678901234567890/7");
  expect_same_jet(jet, jet_from_json(jet_to_json(jet)));
}

TEST(JetIo, FixturesMatchConstructors) {
  const PolyJet x = PolyJet::coordinate(1, 6, 0);
  expect_same_jet(read_jet_file(kFixtures + "/circle_dilaton.json"),
                  make_circle_with_dilaton(x * x * Rational(1, 2)));
  expect_same_jet(read_jet_file(kFixtures + "/sphere2.json"), make_sphere(2, 6));
  expect_same_jet(read_jet_file(kFixtures + "/sphere4.json"), make_sphere(4, 6));
  expect_same_jet(read_jet_file(kFixtures + "/flat3.json"), make_flat(3, 6));
}

TEST(JetIo, MalformedInputThrows) {
  const char* bad[] = {
      "not json",
      "{}",
      R"({"dim": 1, "degree": 2, "metric": [], "dilaton": []})",  // g(0) = 0
      R"({"dim": 1, "degree": 2, "metric": [{"i":0,"j":0,"terms":[[[0],"1","1"]]}],
          "dilaton": [[[3],"1","1"]]})",  // beyond degree
      R"({"dim": 1, "degree": 2, "metric": [{"i":0,"j":0,"terms":[[[0],"1","0"]]}],
          "dilaton": []})",  // zero denominator
      R"({"dim": 2, "degree": 2, "metric": [{"i":0,"j":0,"terms":[[[0],"1","1"]]}],
          "dilaton": []})",  // short exponent tuple
      R"({"dim": 1, "degree": 2, "metric": [{"i":0,"j":0,"terms":[[[1],"1","1"],[[0],"1","1"]]}],
          "dilaton": []})",  // first derivative of g
  };
  for (const char* text : bad) EXPECT_THROW(jet_from_json(text), JetFormatError) << text;
  EXPECT_THROW(read_jet_file(kFixtures + "/missing.json"), JetFormatError);
}

}  // namespace
}  // namespace twistheat
