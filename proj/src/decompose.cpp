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

#include "qforest/decompose.hpp"

#include <bit>
#include <map>
#include <numbers>
#include <string>

#include "qforest/error.hpp"

namespace qforest {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t gray(std::size_t g) { return g ^ (g >> 1); }

void append_all(std::vector<Gate>& out, const std::vector<Gate>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Ry on the target between Gray-code CNOTs. With `close` the sequence
// returns every select's parity to zero; without it the last CNOT (driven
// by the most significant select) is left out.
std::vector<Gate> gray_multiplexed_ry(std::span<const Qubit> selects, Qubit target,
                                      std::span<const double> angles, bool close) {
  const auto phi = ucg_gray_angles(angles);
  const std::size_t n = phi.size();
  std::vector<Gate> out;
  out.reserve(2 * n);
  for (std::size_t g = 0; g < n; ++g) {
    out.push_back(gates::ry(target, phi[g]));
    if (selects.empty()) break;
    if (g + 1 < n) {
      out.push_back(gates::cx(selects[std::countr_zero(g + 1)], target));
    } else if (close) {
      out.push_back(gates::cx(selects.back(), target));
    }
  }
  return out;
}

}  // namespace

McxStrategy select_mcx_strategy(std::size_t controls) {
  return controls < 8 ? McxStrategy::Ucg : McxStrategy::Recursion;
}

std::vector<Gate> lower_swap(Qubit a, Qubit b) {
  if (a == b) throw CircuitError("swap: qubits must differ");
  return {gates::cx(a, b), gates::cx(b, a), gates::cx(a, b)};
}

std::vector<double> ucg_gray_angles(std::span<const double> angles) {
  const std::size_t n = angles.size();
  if (!std::has_single_bit(n)) throw CircuitError("ucg_ry: angle count must be a power of two");
  std::vector<double> phi(n, 0.0);
  for (std::size_t g = 0; g < n; ++g) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      acc += (std::popcount(s & gray(g)) % 2 ? -angles[s] : angles[s]);
    }
    phi[g] = acc / static_cast<double>(n);
  }
  return phi;
}

std::vector<Gate> lower_ucg_ry(std::span<const Qubit> selects, Qubit target,
                               std::span<const double> angles) {
  if (angles.size() != (std::size_t{1} << selects.size())) {
    throw CircuitError("ucg_ry: expects 2^k angles for k=" + std::to_string(selects.size()) +
                       " selects, got " + std::to_string(angles.size()));
  }
  return gray_multiplexed_ry(selects, target, angles, true);
}

std::vector<Gate> lower_mcx_ucg(std::span<const Qubit> controls, Qubit target) {
  const std::size_t k = controls.size();
  if (k == 0) throw CircuitError("mcx: needs at least one control");
  if (k == 1) return {gates::cx(controls[0], target)};

  // Dropping the closing CNOT leaves X^{s_msb} Ry(theta_s) per pattern s:
  // theta = 0 gives I (msb 0) or X (all ones), theta = pi gives X.Ry(pi) = Z.
  const std::size_t n = std::size_t{1} << k;
  const std::size_t msb = n >> 1;
  std::vector<double> theta(n, 0.0);
  for (std::size_t s = msb; s + 1 < n; ++s) theta[s] = kPi;
  return gray_multiplexed_ry(controls, target, theta, false);
}

std::vector<Gate> lower_mcz_exact(std::span<const Qubit> qubits) {
  const std::size_t m = qubits.size();
  if (m == 0) throw CircuitError("mcz: needs at least one qubit");
  // pi * x_0 ... x_{m-1} = sum over nonempty S of pi (-1)^{|S|+1} / 2^{m-1} * parity_S(x)
  const double unit = kPi / static_cast<double>(std::size_t{1} << (m - 1));
  auto coeff = [unit](int subset_size) { return subset_size % 2 ? unit : -unit; };

  std::vector<Gate> out;
  out.push_back(gates::phase(qubits[0], coeff(1)));
  for (std::size_t l = 1; l < m; ++l) {
    const std::size_t steps = std::size_t{1} << l;
    for (std::size_t g = 0; g < steps; ++g) {
      out.push_back(gates::phase(qubits[l], coeff(std::popcount(gray(g)) + 1)));
      const Qubit source = (g + 1 < steps) ? qubits[std::countr_zero(g + 1)] : qubits[l - 1];
      out.push_back(gates::cx(source, qubits[l]));
    }
  }
  return out;
}

std::vector<Gate> lower_mcx_exact(std::span<const Qubit> controls, Qubit target) {
  if (controls.empty()) throw CircuitError("mcx: needs at least one control");
  if (controls.size() == 1) return {gates::cx(controls[0], target)};
  std::vector<Qubit> all(controls.begin(), controls.end());
  all.push_back(target);
  std::vector<Gate> out{gates::h(target)};
  append_all(out, lower_mcz_exact(all));
  out.push_back(gates::h(target));
  return out;
}

std::vector<Gate> lower_mcx_recursion(std::span<const Qubit> controls, Qubit target,
                                      Qubit ancilla) {
  const std::size_t k = controls.size();
  if (k < 3) throw CircuitError("mcx recursion: needs at least 3 controls");
  for (Qubit c : controls) {
    if (c == ancilla) throw CircuitError("mcx recursion: ancilla overlaps a control");
  }
  if (target == ancilla) throw CircuitError("mcx recursion: ancilla overlaps the target");

  const std::size_t head = (k + 1) / 2;
  const auto first = controls.first(head);
  std::vector<Qubit> rest(controls.begin() + static_cast<std::ptrdiff_t>(head), controls.end());
  rest.push_back(ancilla);

  auto compute = lower_mcx_ucg(first, ancilla);
  std::vector<Gate> out = compute;
  append_all(out, lower_mcx_exact(rest, target));
  append_all(out, compute);
  return out;
}

std::vector<Gate> lower_rc3x(Qubit c0, Qubit c1, Qubit c2, Qubit t) {
  const double q = kPi / 4;
  return {
      gates::h(t),         gates::phase(t, q),  gates::cx(c2, t),    gates::phase(t, -q),
      gates::h(t),         gates::cx(c0, t),    gates::phase(t, q),  gates::cx(c1, t),
      gates::phase(t, -q), gates::cx(c0, t),    gates::phase(t, q),  gates::cx(c1, t),
      gates::phase(t, -q), gates::h(t),         gates::phase(t, q),  gates::cx(c2, t),
      gates::phase(t, -q), gates::h(t),
  };
}

std::vector<Gate> lower_rc3x_inverse(Qubit c0, Qubit c1, Qubit c2, Qubit t) {
  auto seq = lower_rc3x(c0, c1, c2, t);
  std::vector<Gate> out;
  out.reserve(seq.size());
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Circuit lower_to_basis(const Circuit& circuit) {
  Circuit out(circuit.width());
  if (circuit.layout()) out.set_layout(*circuit.layout());
  std::map<std::vector<Qubit>, bool> rc3x_open;

  for (const auto& g : circuit.gates()) {
    const auto& q = g.qubits;
    switch (g.kind) {
      case GateKind::PauliX:
      case GateKind::Hadamard:
      case GateKind::PauliZ:
      case GateKind::Phase:
      case GateKind::RotY:
      case GateKind::CNOT:
        out.append(g);
        break;
      case GateKind::CZ:
        out.append(gates::h(q[1]));
        out.append(gates::cx(q[0], q[1]));
        out.append(gates::h(q[1]));
        break;
      case GateKind::Swap:
        out.append(lower_swap(q[0], q[1]));
        break;
      case GateKind::MCX:
        if (g.ancilla && g.controls().size() >= 3) {
          out.append(lower_mcx_recursion(g.controls(), g.target(), *g.ancilla));
        } else {
          out.append(lower_mcx_ucg(g.controls(), g.target()));
        }
        break;
      case GateKind::MCZ:
        out.append(lower_mcz_exact(q));
        break;
      case GateKind::RC3X: {
        bool& open = rc3x_open[q];
        out.append(open ? lower_rc3x_inverse(q[0], q[1], q[2], q[3])
                        : lower_rc3x(q[0], q[1], q[2], q[3]));
        open = !open;
        break;
      }
      case GateKind::UCGRotY:
        out.append(lower_ucg_ry(g.controls(), g.target(), g.angles));
        break;
    }
  }
  for (const auto& [qubits, open] : rc3x_open) {
    if (open) {
      std::string where;
      for (Qubit x : qubits) where += (where.empty() ? "" : ",") + std::to_string(x);
      throw CircuitError("rc3x on qubits [" + where +
                         "] has no matching uncompute; its relative phases would leak");
    }
  }
  return out;
}

}  // namespace qforest
