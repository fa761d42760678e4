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

#include "qforest/circuit.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "json.hpp"
#include "qforest/error.hpp"

namespace qforest {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 12> kNames{{
    {GateKind::PauliX, "x"},
    {GateKind::Hadamard, "h"},
    {GateKind::PauliZ, "z"},
    {GateKind::Phase, "p"},
    {GateKind::RotY, "ry"},
    {GateKind::CNOT, "cx"},
    {GateKind::CZ, "cz"},
    {GateKind::Swap, "swap"},
    {GateKind::MCX, "mcx"},
    {GateKind::MCZ, "mcz"},
    {GateKind::RC3X, "rc3x"},
    {GateKind::UCGRotY, "ucg_ry"},
}};

bool has_angle(GateKind kind) { return kind == GateKind::RotY || kind == GateKind::Phase; }

}  // namespace

std::string_view kind_name(GateKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GateKind> kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_single_qubit(GateKind kind) {
  switch (kind) {
    case GateKind::PauliX:
    case GateKind::Hadamard:
    case GateKind::PauliZ:
    case GateKind::Phase:
    case GateKind::RotY:
      return true;
    default:
      return false;
  }
}

bool is_basis(GateKind kind) { return is_single_qubit(kind) || kind == GateKind::CNOT; }

namespace gates {

Gate x(Qubit q) { return {GateKind::PauliX, {q}}; }
Gate h(Qubit q) { return {GateKind::Hadamard, {q}}; }
Gate z(Qubit q) { return {GateKind::PauliZ, {q}}; }
Gate phase(Qubit q, double lambda) { return {GateKind::Phase, {q}, lambda}; }
Gate ry(Qubit q, double theta) { return {GateKind::RotY, {q}, theta}; }
Gate cx(Qubit control, Qubit target) { return {GateKind::CNOT, {control, target}}; }
Gate cz(Qubit a, Qubit b) { return {GateKind::CZ, {a, b}}; }
Gate swap(Qubit a, Qubit b) { return {GateKind::Swap, {a, b}}; }

Gate mcx(std::vector<Qubit> controls, Qubit target, std::optional<Qubit> ancilla) {
  Gate g{GateKind::MCX, std::move(controls)};
  g.qubits.push_back(target);
  g.ancilla = ancilla;
  return g;
}

Gate mcz(std::vector<Qubit> qubits) { return {GateKind::MCZ, std::move(qubits)}; }

Gate rc3x(Qubit c0, Qubit c1, Qubit c2, Qubit target) {
  return {GateKind::RC3X, {c0, c1, c2, target}};
}

Gate ucg_ry(std::vector<Qubit> selects, Qubit target, std::vector<double> angles) {
  Gate g{GateKind::UCGRotY, std::move(selects)};
  g.qubits.push_back(target);
  g.angles = std::move(angles);
  return g;
}

}  // namespace gates

void validate_gate(const Gate& gate, std::size_t width) {
  const auto name = std::string(kind_name(gate.kind));
  const std::size_t arity = gate.qubits.size();
  auto fail = [&](const std::string& why) { throw CircuitError(name + ": " + why); };

  switch (gate.kind) {
    case GateKind::PauliX:
    case GateKind::Hadamard:
    case GateKind::PauliZ:
    case GateKind::Phase:
    case GateKind::RotY:
      if (arity != 1) fail("expects 1 qubit");
      break;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::Swap:
      if (arity != 2) fail("expects 2 qubits");
      break;
    case GateKind::MCX:
      if (arity < 2) fail("needs at least one control");
      break;
    case GateKind::MCZ:
      if (arity < 1) fail("needs at least one qubit");
      break;
    case GateKind::RC3X:
      if (arity != 4) fail("expects 3 controls and a target");
      break;
    case GateKind::UCGRotY: {
      if (arity < 1) fail("needs a target");
      const std::size_t selects = arity - 1;
      if (selects >= 8 * sizeof(std::size_t) || gate.angles.size() != (std::size_t{1} << selects)) {
        fail("expects 2^k angles for k=" + std::to_string(selects) + " select qubits, got " +
             std::to_string(gate.angles.size()));
      }
      break;
    }
  }
  for (std::size_t a = 0; a < arity; ++a) {
    if (gate.qubits[a] >= width) {
      fail("qubit " + std::to_string(gate.qubits[a]) + " outside width " + std::to_string(width));
    }
    for (std::size_t b = a + 1; b < arity; ++b) {
      if (gate.qubits[a] == gate.qubits[b]) fail("repeated qubit " + std::to_string(gate.qubits[a]));
    }
  }
  if (gate.ancilla) {
    if (gate.kind != GateKind::MCX) fail("only mcx takes an ancilla");
    if (*gate.ancilla >= width) fail("ancilla outside width");
    if (std::find(gate.qubits.begin(), gate.qubits.end(), *gate.ancilla) != gate.qubits.end()) {
      fail("ancilla overlaps the gate's qubits");
    }
  }
}

Circuit& Circuit::append(Gate gate) {
  validate_gate(gate, width_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(std::span<const Gate> gates) {
  for (const auto& g : gates) append(g);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.width() > width_) {
    throw CircuitError("cannot append a width-" + std::to_string(other.width()) +
                       " circuit to a width-" + std::to_string(width_) + " circuit");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

bool Circuit::is_basis_level() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return is_basis(g.kind); });
}

Gate inverse(const Gate& gate) {
  Gate inv = gate;
  switch (gate.kind) {
    case GateKind::Phase:
    case GateKind::RotY:
      inv.angle = -gate.angle;
      break;
    case GateKind::UCGRotY:
      for (auto& a : inv.angles) a = -a;
      break;
    default:
      break;  // self-inverse; RC3X is handled by pairing during lowering
  }
  return inv;
}

Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.width());
  if (circuit.layout()) out.set_layout(*circuit.layout());
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
    out.append(inverse(*it));
  }
  return out;
}

GateCountReport& GateCountReport::operator+=(const GateCountReport& other) {
  for (const auto& [k, v] : other.per_kind) per_kind[k] += v;
  u_count += other.u_count;
  cx_count += other.cx_count;
  total += other.total;
  width = std::max(width, other.width);
  depth.reset();
  return *this;
}

GateCountReport count_gates(const Circuit& circuit, bool with_depth) {
  GateCountReport r;
  r.width = circuit.width();
  for (const auto& g : circuit.gates()) {
    ++r.per_kind[std::string(kind_name(g.kind))];
    if (is_single_qubit(g.kind)) ++r.u_count;
    if (g.kind == GateKind::CNOT) ++r.cx_count;
    ++r.total;
  }
  if (with_depth) r.depth = depth(circuit);
  return r;
}

std::size_t depth(const Circuit& circuit) {
  std::vector<std::size_t> level(circuit.width(), 0);
  std::size_t deepest = 0;
  for (const auto& g : circuit.gates()) {
    std::size_t d = 0;
    for (Qubit q : g.qubits) d = std::max(d, level[q]);
    if (g.ancilla) d = std::max(d, level[*g.ancilla]);
    ++d;
    for (Qubit q : g.qubits) level[q] = d;
    if (g.ancilla) level[*g.ancilla] = d;
    deepest = std::max(deepest, d);
  }
  return deepest;
}

std::string circuit_to_json(const Circuit& circuit, int indent) {
  using nlohmann::json;
  json doc;
  doc["width"] = circuit.width();
  json list = json::array();
  for (const auto& g : circuit.gates()) {
    json jg;
    jg["kind"] = kind_name(g.kind);
    jg["qubits"] = g.qubits;
    if (has_angle(g.kind)) jg["angle"] = g.angle;
    if (g.kind == GateKind::UCGRotY) jg["angles"] = g.angles;
    if (g.ancilla) jg["ancilla"] = *g.ancilla;
    list.push_back(std::move(jg));
  }
  doc["gates"] = std::move(list);
  return doc.dump(indent);
}

Circuit circuit_from_json(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw CircuitError(std::string("malformed circuit JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("width") || !doc["width"].is_number_unsigned() ||
      !doc.contains("gates") || !doc["gates"].is_array()) {
    throw CircuitError("circuit JSON needs an unsigned \"width\" and a \"gates\" array");
  }
  Circuit c(doc["width"].get<std::size_t>());
  for (std::size_t n = 0; n < doc["gates"].size(); ++n) {
    const auto& jg = doc["gates"][n];
    const std::string where = "gates[" + std::to_string(n) + "]";
    if (!jg.is_object() || !jg.contains("kind") || !jg["kind"].is_string() ||
        !jg.contains("qubits") || !jg["qubits"].is_array()) {
      throw CircuitError(where + ": needs \"kind\" and \"qubits\"");
    }
    const auto kind = kind_from_name(jg["kind"].get<std::string>());
    if (!kind) throw CircuitError(where + ": unknown kind \"" + jg["kind"].get<std::string>() + "\"");
    Gate g;
    g.kind = *kind;
    for (const auto& q : jg["qubits"]) {
      if (!q.is_number_unsigned()) throw CircuitError(where + ": qubit indexes must be unsigned");
      g.qubits.push_back(q.get<Qubit>());
    }
    if (has_angle(g.kind)) {
      if (!jg.contains("angle") || !jg["angle"].is_number()) throw CircuitError(where + ": missing \"angle\"");
      g.angle = jg["angle"].get<double>();
    }
    if (g.kind == GateKind::UCGRotY) {
      if (!jg.contains("angles") || !jg["angles"].is_array()) throw CircuitError(where + ": missing \"angles\"");
      g.angles = jg["angles"].get<std::vector<double>>();
    }
    if (jg.contains("ancilla")) g.ancilla = jg["ancilla"].get<Qubit>();
    try {
      c.append(std::move(g));
    } catch (const CircuitError& e) {
      throw CircuitError(where + ": " + e.what());
    }
  }
  return c;
}

std::string report_to_json(const GateCountReport& report, int indent) {
  nlohmann::json doc;
  doc["per_kind"] = report.per_kind;
  doc["u_count"] = report.u_count;
  doc["cx_count"] = report.cx_count;
  doc["total"] = report.total;
  doc["width"] = report.width;
  if (report.depth) doc["depth"] = *report.depth;
  return doc.dump(indent);
}

}  // namespace qforest
