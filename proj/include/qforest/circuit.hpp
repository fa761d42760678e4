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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qforest/layout.hpp"

namespace qforest {

enum class GateKind {
  PauliX,
  Hadamard,
  PauliZ,
  Phase,  // diag(1, e^{i angle})
  RotY,   // [[cos a/2, -sin a/2], [sin a/2, cos a/2]]
  CNOT,
  CZ,
  Swap,
  MCX,
  MCZ,
  RC3X,
  UCGRotY,
};

/// JSON spelling of a gate kind ("x", "h", "z", "p", "ry", "cx", ...).
std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);

bool is_single_qubit(GateKind kind);
bool is_basis(GateKind kind);

/// A gate over explicit qubit indexes.
///
/// Qubit order: controls first, target last (CNOT, MCX, RC3X); selects then
/// target for UCGRotY, with select bit b read from qubits[b]; MCZ and CZ are
/// symmetric. `ancilla` is only meaningful on MCX and requests the
/// clean-ancilla recursion when lowered.
struct Gate {
  GateKind kind = GateKind::PauliX;
  std::vector<Qubit> qubits;
  double angle = 0.0;
  std::vector<double> angles;
  std::optional<Qubit> ancilla;

  Qubit target() const { return qubits.back(); }
  std::span<const Qubit> controls() const {
    return std::span<const Qubit>(qubits).first(qubits.size() - 1);
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

namespace gates {

Gate x(Qubit q);
Gate h(Qubit q);
Gate z(Qubit q);
Gate phase(Qubit q, double lambda);
Gate ry(Qubit q, double theta);
Gate cx(Qubit control, Qubit target);
Gate cz(Qubit a, Qubit b);
Gate swap(Qubit a, Qubit b);
Gate mcx(std::vector<Qubit> controls, Qubit target, std::optional<Qubit> ancilla = std::nullopt);
Gate mcz(std::vector<Qubit> qubits);
Gate rc3x(Qubit c0, Qubit c1, Qubit c2, Qubit target);
Gate ucg_ry(std::vector<Qubit> selects, Qubit target, std::vector<double> angles);

}  // namespace gates

/// Throws CircuitError if the gate is malformed or does not fit `width`.
void validate_gate(const Gate& gate, std::size_t width);

/// Ordered gate sequence over a fixed-width register.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  const std::optional<RegisterLayout>& layout() const { return layout_; }
  void set_layout(RegisterLayout layout) { layout_ = std::move(layout); }

  Circuit& append(Gate gate);
  Circuit& append(std::span<const Gate> gates);
  /// Appends every gate of `other`, which must not be wider.
  Circuit& append(const Circuit& other);

  /// Only single-qubit kinds and CNOT.
  bool is_basis_level() const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.width_ == b.width_ && a.gates_ == b.gates_;
  }

 private:
  std::size_t width_ = 0;
  std::vector<Gate> gates_;
  std::optional<RegisterLayout> layout_;
};

Gate inverse(const Gate& gate);

/// Gates reversed and individually inverted. RC3X stays an RC3X: lowering
/// pairs RC3X occurrences on equal qubits as compute/uncompute, and that
/// pairing is preserved by reversal.
Circuit inverse(const Circuit& circuit);

struct GateCountReport {
  std::map<std::string, std::size_t> per_kind;
  std::size_t u_count = 0;
  std::size_t cx_count = 0;
  std::size_t total = 0;
  std::size_t width = 0;
  std::optional<std::size_t> depth;

  GateCountReport& operator+=(const GateCountReport& other);
  friend bool operator==(const GateCountReport&, const GateCountReport&) = default;
};

GateCountReport count_gates(const Circuit& circuit, bool with_depth = false);

/// Longest chain of gates linked by shared qubits.
std::size_t depth(const Circuit& circuit);

std::string circuit_to_json(const Circuit& circuit, int indent = -1);
Circuit circuit_from_json(std::string_view document);
std::string report_to_json(const GateCountReport& report, int indent = -1);

}  // namespace qforest
