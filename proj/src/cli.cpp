// Copyright 2026 The qforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qforest/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qforest/decompose.hpp"
#include "qforest/error.hpp"
#include "qforest/qae.hpp"
#include "qforest/statevector.hpp"
#include "qforest/synth.hpp"

namespace qforest {
namespace {

using nlohmann::json;

constexpr double kAgreementTolerance = 1e-9;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string forest_path;
  std::string input;
  std::uint64_t seed = 1;
  std::optional<std::size_t> shots;
  std::size_t runs = 1;
  std::string strategy = "auto";
  std::string schedule = "linear";
  std::string out_path;
  std::size_t max_controls = 9;
  bool text = false;
};

std::size_t max_qubits() {
  const char* env = std::getenv("QFOREST_MAX_QUBITS");
  if (env == nullptr || *env == '\0') return 22;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw ValidationError("QFOREST_MAX_QUBITS must be a positive integer");
  return static_cast<std::size_t>(v);
}

void check_width(const RegisterLayout& layout) {
  const std::size_t limit = max_qubits();
  if (layout.width() > limit) {
    throw ValidationError("circuit needs " + std::to_string(layout.width()) +
                          " qubits, above the simulation limit of " + std::to_string(limit) +
                          " (set QFOREST_MAX_QUBITS to raise it)");
  }
}

ForestModel load_forest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open forest file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_forest(buffer.str());
}

Bits load_input(const ForestModel& forest, const std::string& text) {
  Bits x = parse_bitstring(text);
  if (x.size() != forest.attr_count()) {
    throw ValidationError("input has " + std::to_string(x.size()) + " bits, forest expects " +
                          std::to_string(forest.attr_count()));
  }
  return x;
}

SynthOptions synth_options(const std::string& strategy) {
  SynthOptions o;
  if (strategy == "ucg") o.tree_select_strategy = McxStrategy::Ucg;
  if (strategy == "recursion") o.tree_select_strategy = McxStrategy::Recursion;
  return o;
}

json report_json(const GateCountReport& report) { return json::parse(report_to_json(report)); }

json estimation_json(const EstimationResult& r) {
  json log = json::array();
  for (const auto& t : r.trial_log) log.push_back({{"k", t.k}, {"class", t.measured_class}});
  return {{"k", r.k},
          {"estimate", r.estimate},
          {"seed", r.seed},
          {"total_q_applications", r.total_q_applications},
          {"trial_log", log}};
}

void print_text(std::ostream& out, const json& doc, const std::string& prefix = "") {
  for (const auto& [key, value] : doc.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_text(out, value, name);
    } else {
      out << std::left << std::setw(32) << name << ' ' << value.dump() << '\n';
    }
  }
}

json cmd_validate(const Flags& f) {
  const ForestModel forest = load_forest(f.forest_path);
  return {{"valid", true},
          {"forest", f.forest_path},
          {"attr_count", forest.attr_count()},
          {"trees", forest.tree_count()},
          {"height", forest.height()}};
}

json cmd_predict(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  const ForestModel forest = load_forest(f.forest_path);
  const Bits x = load_input(forest, f.input);
  const auto predictor = synthesize_rf_predict(forest, x, synth_options(f.strategy));
  check_width(predictor.layout);

  const double classical = predict_proba(forest, x);
  const Statevector state = run(predictor.circuit);
  const Qubit cls = predictor.layout.class_qubit();
  const double simulated = marginal(state, cls, 0);
  const Circuit lowered = lower_to_basis(predictor.circuit);
  const double simulated_lowered = marginal(run(lowered), cls, 0);

  if (std::abs(classical - simulated) > kAgreementTolerance ||
      std::abs(classical - simulated_lowered) > kAgreementTolerance) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "classical p_class0 " << classical << " disagrees with simulated "
        << simulated << " (lowered " << simulated_lowered << ")";
    throw InvariantViolation(msg.str());
  }

  json doc{{"forest", f.forest_path},
           {"input", to_bitstring(x)},
           {"seed", f.seed},
           {"classical_p_class0", classical},
           {"simulated_p_class0", simulated},
           {"simulated_lowered_p_class0", simulated_lowered},
           {"gate_count", report_json(count_gates(lowered))}};
  if (f.shots) {
    const std::vector<Qubit> measured{cls};
    const auto s = sample(state, std::span<const Qubit>(measured), *f.shots, f.seed);
    doc["shots"] = s.shots;
    doc["counts"] = s.counts;
  }
  doc["duration_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return doc;
}

json cmd_estimate(const Flags& f) {
  const ForestModel forest = load_forest(f.forest_path);
  const Bits x = load_input(forest, f.input);
  const auto predictor = synthesize_rf_predict(forest, x, synth_options(f.strategy));
  check_width(predictor.layout);
  EstimationOptions options;
  options.schedule = f.schedule == "exponential" ? Schedule::Exponential : Schedule::Linear;

  json doc{{"forest", f.forest_path},
           {"input", to_bitstring(x)},
           {"seed", f.seed},
           {"schedule", f.schedule},
           {"classical_p_class0", predict_proba(forest, x)}};
  if (f.runs == 1) {
    doc["result"] = estimation_json(estimate_probability(predictor, f.seed, options));
    return doc;
  }
  json runs = json::array();
  double total = 0.0;
  for (std::size_t r = 0; r < f.runs; ++r) {
    const auto result = estimate_probability(predictor, run_seed(f.seed, r), options);
    total += static_cast<double>(result.total_q_applications);
    runs.push_back(estimation_json(result));
  }
  doc["runs"] = runs;
  doc["mean_total_q_applications"] = total / static_cast<double>(f.runs);
  return doc;
}

json cmd_count_gates(const Flags& f) {
  const ForestModel forest = load_forest(f.forest_path);
  const Bits x = f.input.empty() ? Bits(forest.attr_count(), 0) : load_input(forest, f.input);
  const auto predictor = synthesize_rf_predict(forest, x, synth_options(f.strategy));
  const Circuit lowered = lower_to_basis(predictor.circuit);
  return {{"forest", f.forest_path},
          {"input", to_bitstring(x)},
          {"strategy", f.strategy},
          {"index_qubits", forest.index_qubits()},
          {"height", forest.height()},
          {"composite", report_json(count_gates(predictor.circuit))},
          {"lowered", report_json(count_gates(lowered, true))}};
}

json cmd_mcx_table(const Flags& f) {
  if (f.max_controls < 2 || f.max_controls > 9) throw ValidationError("--max-controls must be in [2, 9]");
  json rows = json::array();
  for (std::size_t k = 2; k <= f.max_controls; ++k) {
    std::vector<Qubit> controls(k);
    for (std::size_t c = 0; c < k; ++c) controls[c] = c;
    Circuit ucg(k + 2);
    ucg.append(std::span<const Gate>(lower_mcx_ucg(controls, k)));
    const auto u = count_gates(ucg);
    json row{{"k", k}, {"ucg", {{"u", u.u_count}, {"cx", u.cx_count}}}};
    if (k >= 3) {
      Circuit rec(k + 2);
      rec.append(std::span<const Gate>(lower_mcx_recursion(controls, k, k + 1)));
      const auto r = count_gates(rec);
      row["recursion"] = {{"u", r.u_count}, {"cx", r.cx_count}};
    } else {
      row["recursion"] = nullptr;
    }
    row["selected"] = select_mcx_strategy(k) == McxStrategy::Ucg ? "ucg" : "recursion";
    rows.push_back(row);
  }
  return {{"rows", rows}};
}

void print_mcx_table(std::ostream& out, const json& doc) {
  out << std::right << std::setw(3) << "k" << std::setw(10) << "ucg U" << std::setw(10) << "ucg CX"
      << std::setw(10) << "rec U" << std::setw(10) << "rec CX" << "  selected\n";
  for (const auto& row : doc["rows"]) {
    out << std::setw(3) << row["k"].get<std::size_t>() << std::setw(10)
        << row["ucg"]["u"].get<std::size_t>() << std::setw(10) << row["ucg"]["cx"].get<std::size_t>();
    if (row["recursion"].is_null()) {
      out << std::setw(10) << "-" << std::setw(10) << "-";
    } else {
      out << std::setw(10) << row["recursion"]["u"].get<std::size_t>() << std::setw(10)
          << row["recursion"]["cx"].get<std::size_t>();
    }
    out << "  " << row["selected"].get<std::string>() << '\n';
  }
}

json cmd_synth(const Flags& f) {
  const ForestModel forest = load_forest(f.forest_path);
  const Bits x = load_input(forest, f.input);
  const auto predictor = synthesize_rf_predict(forest, x, synth_options(f.strategy));
  const Circuit lowered = lower_to_basis(predictor.circuit);
  std::ofstream file(f.out_path);
  if (!file) throw ValidationError("cannot write '" + f.out_path + "'");
  file << circuit_to_json(lowered, 2) << '\n';
  if (!file) throw ValidationError("failed writing '" + f.out_path + "'");
  return {{"forest", f.forest_path},
          {"input", to_bitstring(x)},
          {"out", f.out_path},
          {"class_qubit", predictor.layout.class_qubit()},
          {"gate_count", report_json(count_gates(lowered))}};
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum random-forest prediction circuits: synthesis, lowering, simulation, estimation"};
  app.require_subcommand(1);
  Flags f;

  auto add_forest = [&](CLI::App* sub) {
    sub->add_option("--forest", f.forest_path, "Forest model JSON file")->required();
  };
  auto add_input = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--input", f.input,
                                "Input bitstring; the leftmost character is attribute 0");
    if (required) opt->required();
  };
  auto add_strategy = [&](CLI::App* sub) {
    sub->add_option("--strategy", f.strategy, "MCX strategy for tree selection")
        ->check(CLI::IsMember({"ucg", "recursion", "auto"}));
  };

  auto* validate = app.add_subcommand("validate", "Check a forest model file");
  add_forest(validate);

  auto* predict = app.add_subcommand("predict", "Classical vs simulated class-0 probability");
  add_forest(predict);
  add_input(predict, true);
  add_strategy(predict);
  predict->add_option("--seed", f.seed, "Sampling seed");
  predict->add_option("--shots", f.shots, "Sample the class qubit this many times")
      ->check(CLI::PositiveNumber);

  auto* estimate = app.add_subcommand("estimate", "Amplitude estimation loop");
  add_forest(estimate);
  add_input(estimate, true);
  add_strategy(estimate);
  estimate->add_option("--seed", f.seed, "RNG seed");
  estimate->add_option("--runs", f.runs, "Independent runs")->check(CLI::PositiveNumber);
  estimate->add_option("--schedule", f.schedule, "Iteration schedule")
      ->check(CLI::IsMember({"linear", "exponential"}));

  auto* count = app.add_subcommand("count-gates", "Gate counts of the lowered circuit");
  add_forest(count);
  add_input(count, false);
  add_strategy(count);

  auto* table = app.add_subcommand("mcx-table", "U/CX counts of the MCX decompositions");
  table->add_option("--max-controls", f.max_controls, "Largest control count (2..9)");

  auto* synth = app.add_subcommand("synth", "Write the lowered circuit as JSON");
  add_forest(synth);
  add_input(synth, true);
  add_strategy(synth);
  synth->add_option("--out", f.out_path, "Output circuit file")->required();

  for (auto* sub : {validate, predict, estimate, count, table, synth}) {
    sub->add_flag("--text", f.text, "Human-readable output instead of JSON");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    out << error_json("usage", e.what()).dump() << '\n';
    return kExitValidation;
  }

  try {
    json doc;
    if (*validate) doc = cmd_validate(f);
    else if (*predict) doc = cmd_predict(f);
    else if (*estimate) doc = cmd_estimate(f);
    else if (*count) doc = cmd_count_gates(f);
    else if (*table) doc = cmd_mcx_table(f);
    else doc = cmd_synth(f);

    if (!f.text) {
      out << doc.dump(2) << '\n';
    } else if (*table) {
      print_mcx_table(out, doc);
    } else {
      print_text(out, doc);
    }
    return kExitOk;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    out << error_json("invariant", e.what()).dump() << '\n';
    return kExitInvariant;
  } catch (const EstimationCapExceeded& e) {
    err << "estimation cap exceeded: " << e.what() << '\n';
    out << error_json("cap_exceeded", e.what()).dump() << '\n';
    return kExitCapExceeded;
  } catch (const CircuitError& e) {
    err << "internal error: " << e.what() << '\n';
    out << error_json("invariant", e.what()).dump() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    out << error_json("validation", e.what()).dump() << '\n';
    return kExitValidation;
  }
}

}  // namespace qforest
