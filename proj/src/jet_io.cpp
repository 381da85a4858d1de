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

#include "twistheat/jet_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace twistheat {
namespace {

using nlohmann::json;

json terms_to_json(const PolyJet& f) {
  json out = json::array();
  if (f.is_exact_constant()) {
    if (!f.value().is_zero())
      throw UsageError("jet_to_json: exact constant entries need a dimension");
    return out;
  }
  for (std::size_t t = 0; t < f.term_count(); ++t) {
    const Rational& c = f.coeff_at(t);
    if (c.is_zero()) continue;
    const auto e = f.basis()->exponent(static_cast<int>(t));
    out.push_back(json::array({json(std::vector<int>(e.begin(), e.end())),
                               c.numerator().get_str(), c.denominator().get_str()}));
  }
  return out;
}

PolyJet terms_from_json(const json& terms, int dim, int degree) {
  if (!terms.is_array()) throw JetFormatError("jet: term list must be an array");
  PolyJet f = PolyJet::zero(dim, degree);
  const MonomialBasis& basis = MonomialBasis::get(dim, degree);
  for (const json& term : terms) {
    if (!term.is_array() || term.size() != 3 || !term[0].is_array() ||
        !term[1].is_string() || !term[2].is_string())
      throw JetFormatError("jet: each term must be [exponents, \"num\", \"den\"]");
    std::vector<int> exps;
    for (const json& e : term[0]) {
      if (!e.is_number_integer() || e.get<int>() < 0)
        throw JetFormatError("jet: exponents must be non-negative integers");
      exps.push_back(e.get<int>());
    }
    if (static_cast<int>(exps.size()) != dim)
      throw JetFormatError("jet: exponent tuple length differs from dim");
    int total = 0;
    for (int e : exps) total += e;
    if (total > degree) throw JetFormatError("jet: term exceeds the declared degree");
    Rational c;
    try {
      c = Rational::parse(term[1].get<std::string>() + "/" + term[2].get<std::string>());
    } catch (const UsageError& e) {
      throw JetFormatError(std::string("jet: bad coefficient: ") + e.what());
    }
    f.coeff_at(basis.index_of(exps)) += c;
  }
  return f;
}

}  // namespace

std::string jet_to_json(const MetricDilatonJet& jet) {
  // One term per line keeps fixtures diffable.
  auto write_terms = [](std::ostringstream& out, const json& terms, const char* indent) {
    if (terms.empty()) {
      out << "[]";
      return;
    }
    out << "[\n";
    for (std::size_t t = 0; t < terms.size(); ++t)
      out << indent << "  " << terms[t].dump() << (t + 1 < terms.size() ? ",\n" : "\n");
    out << indent << "]";
  };
  const auto full = [&jet](const PolyJet& f) {
    return (PolyJet::zero(jet.dim, jet.degree) + f).truncated(jet.degree);
  };
  std::ostringstream out;
  out << "{\n  \"dim\": " << jet.dim << ",\n  \"degree\": " << jet.degree
      << ",\n  \"metric\": [\n";
  for (int i = 0; i < jet.dim; ++i)
    for (int j = i; j < jet.dim; ++j) {
      out << "    {\"i\": " << i << ", \"j\": " << j << ", \"terms\": ";
      write_terms(out, terms_to_json(full(jet.g({i, j}))), "    ");
      out << ((i == jet.dim - 1 && j == jet.dim - 1) ? "}\n" : "},\n");
    }
  out << "  ],\n  \"dilaton\": ";
  write_terms(out, terms_to_json(full(jet.phi)), "  ");
  out << "\n}\n";
  return out.str();
}

MetricDilatonJet jet_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JetFormatError(std::string("jet: not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("degree") ||
      !doc.contains("metric") || !doc.contains("dilaton"))
    throw JetFormatError("jet: need fields dim, degree, metric, dilaton");
  if (!doc["dim"].is_number_integer() || !doc["degree"].is_number_integer())
    throw JetFormatError("jet: dim and degree must be integers");
  const int dim = doc["dim"].get<int>();
  const int degree = doc["degree"].get<int>();
  if (dim < 1 || dim > 8 || degree < 0 || degree > 16)
    throw JetFormatError("jet: dim must be in 1..8 and degree in 0..16");

  MetricDilatonJet jet = make_flat(dim, degree);
  for (std::size_t f = 0; f < jet.g.size(); ++f) jet.g.flat(f) = PolyJet::zero(dim, degree);
  std::vector<bool> seen(static_cast<std::size_t>(dim * dim), false);
  if (!doc["metric"].is_array()) throw JetFormatError("jet: metric must be an array");
  for (const json& entry : doc["metric"]) {
    if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
        !entry.contains("terms") || !entry["i"].is_number_integer() ||
        !entry["j"].is_number_integer())
      throw JetFormatError("jet: metric entries need i, j, terms");
    int i = entry["i"].get<int>(), j = entry["j"].get<int>();
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= dim) throw JetFormatError("jet: metric index out of range");
    if (seen[i * dim + j]) throw JetFormatError("jet: duplicate metric entry");
    seen[i * dim + j] = true;
    jet.g({i, j}) = jet.g({j, i}) = terms_from_json(entry["terms"], dim, degree);
  }
  jet.phi = terms_from_json(doc["dilaton"], dim, degree);
  try {
    jet.validate();
  } catch (const UsageError& e) {
    throw JetFormatError(e.what());
  }
  return jet;
}

MetricDilatonJet read_jet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JetFormatError("cannot open jet file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return jet_from_json(buf.str());
}

void write_jet_file(const std::string& path, const MetricDilatonJet& jet) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write jet file " + path);
  out << jet_to_json(jet);
}

}  // namespace twistheat
