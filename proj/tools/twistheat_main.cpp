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

// twistheat: run verification suites or evaluate single quantities.
//
//   twistheat --suite thm1-2 --trials 5 --seed 1 --dims 2,4 [--parallel 2]
//   twistheat eval supertrace --n 2 --jet fixtures/circle_dilaton.json
//   twistheat eval coeff --n 0 --p 1 --jet fixtures/flat3.json
//   twistheat eval invariant --name pfaffian --jet fixtures/sphere2.json
//
// Exit status: 0 if every case passed (or an evaluation succeeded), 1 if a
// suite case failed, 2 on bad usage, a malformed jet or a truncated jet.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "twistheat/heatcoeff.hpp"
#include "twistheat/invariants.hpp"
#include "twistheat/jet_io.hpp"
#include "twistheat/verify.hpp"

namespace {

using namespace twistheat;

constexpr const char* kNormalization = "(4 pi)^{m/2} a_n";

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + out_path + "'");
  f << text;
}

struct EvalArgs {
  std::string command;
  int n = -1;
  int p = -1;
  std::string name;
};

std::string evaluate(const EvalArgs& a, const MetricDilatonJet& jet, int parallel) {
  SupertraceOptions st;
  st.workers = parallel;
  nlohmann::ordered_json rec;
  rec["command"] = a.command;
  rec["dim"] = jet.dim;
  rec["degree"] = jet.degree;
  Rational value;
  if (a.command == "coeff" || a.command == "supertrace") {
    if (a.n < 0) throw UsageError(a.command + " needs --n");
    rec["n"] = a.n;
    if (a.command == "coeff") {
      if (a.p < 0 || a.p > jet.dim) throw UsageError("coeff needs --p in 0..dim");
      rec["p"] = a.p;
      value = heat_coefficient(a.n, jet, a.p, st);
    } else {
      value = supertrace(a.n, jet, st);
    }
    rec["normalization"] = kNormalization;
  } else if (a.command == "invariant") {
    rec["name"] = a.name;
    if (a.name == "pfaffian") {
      value = pfaffian_density(jet);
    } else if (a.name == "odd-divergence") {
      value = odd_divergence_density(jet);
    } else if (a.name == "even-divergence") {
      value = even_divergence_density(jet);
    } else {
      throw UsageError("unknown invariant '" + a.name +
                       "' (pfaffian, odd-divergence, even-divergence)");
    }
    rec["normalization"] = "(4 pi)^{m/2} times the local density";
  } else {
    throw UsageError("unknown eval command '" + a.command + "' (coeff, supertrace, invariant)");
  }
  rec["value"] = rational_record(value);
  return rational_record(value) + "\n" + rec.dump() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact heat-trace coefficients of the dilaton-twisted de Rham complex"};
  app.require_subcommand(0, 1);

  std::string suite;
  SuiteOptions opts;
  std::string jet_path, out_path;
  bool no_timing = false;
  bool list = false;
  app.add_option("--suite", suite, "Verification suite to run");
  app.add_option("--trials", opts.trials, "Random jets per dimension")->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "Base seed; trial t uses seed + t");
  app.add_option("--dims", opts.dims, "Dimensions, comma separated")->delimiter(',');
  app.add_option("--degree", opts.degree, "Jet degree override (truncation)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--jet", jet_path, "Jet file used instead of random jets");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--parallel", opts.parallel, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", no_timing, "Write elapsed times as 0 (byte-identical reports)");
  app.add_flag("--list", list, "List suite names");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate one quantity on a jet file");
  eval->fallthrough();
  eval->add_option("command", eval_args.command, "coeff, supertrace or invariant")->required();
  eval->add_option("--n", eval_args.n, "Coefficient index");
  eval->add_option("--p", eval_args.p, "Form degree (coeff)");
  eval->add_option("--name", eval_args.name, "pfaffian, odd-divergence or even-divergence");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list) {
      std::ostringstream os;
      for (const auto& s : suite_names()) os << s << "\n";
      emit(os.str(), out_path);
      return 0;
    }
    std::optional<MetricDilatonJet> jet;
    if (!jet_path.empty()) {
      jet = read_jet_file(jet_path);
      if (opts.degree > 0) jet = truncate(*jet, opts.degree);
    }
    if (eval->parsed()) {
      if (!jet) throw UsageError("eval needs --jet");
      emit(evaluate(eval_args, *jet, opts.parallel), out_path);
      return 0;
    }
    if (suite.empty()) {
      std::cerr << app.help();
      return 2;
    }
    opts.jet = jet;
    const VerificationReport report = run_suite(suite, opts);
    emit(report_lines(report, !no_timing), out_path);
    return report.pass() ? 0 : 1;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
