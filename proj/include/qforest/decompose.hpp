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
#include <span>
#include <vector>

#include "qforest/circuit.hpp"

namespace qforest {

enum class McxStrategy {
  Ucg,        // 2^k single-qubit gates, 2^k - 1 CNOTs, no ancilla, relative phase
  Recursion,  // exact, borrows one clean ancilla (anc_mct_rec)
};

/// Ucg below 8 controls, Recursion from 8 on.
McxStrategy select_mcx_strategy(std::size_t controls);

std::vector<Gate> lower_swap(Qubit a, Qubit b);

/// Multi-controlled X as a multiplexed Ry with the closing CNOT dropped.
///
/// Exactly 2^k Ry and 2^k - 1 CNOTs (k = 1 degenerates to one CNOT). The
/// result is MCX times a diagonal: Z on the target for every control
/// pattern whose last control is 1 but which is not all ones. The diagonal
/// is invisible whenever the target is |0> on such patterns, so the gate
/// is exact on a clean target and when uncomputing one.
std::vector<Gate> lower_mcx_ucg(std::span<const Qubit> controls, Qubit target);

/// Exact MCX: the first half of the controls is ANDed into `ancilla`
/// (which must be |0> and is returned to |0>), the remainder plus the
/// ancilla drive an exact Gray-code MCX onto the target. Needs k >= 3.
std::vector<Gate> lower_mcx_recursion(std::span<const Qubit> controls, Qubit target,
                                      Qubit ancilla);

/// Exact MCZ over all listed qubits as a Gray-code phase polynomial:
/// 2^m - 2 CNOTs and 2^m - 1 phase gates for m qubits.
std::vector<Gate> lower_mcz_exact(std::span<const Qubit> qubits);

/// Exact MCX without ancilla (H . MCZ . H).
std::vector<Gate> lower_mcx_exact(std::span<const Qubit> controls, Qubit target);

/// Relative-phase 3-controlled X: 6 CNOTs and 12 single-qubit gates.
std::vector<Gate> lower_rc3x(Qubit c0, Qubit c1, Qubit c2, Qubit target);
std::vector<Gate> lower_rc3x_inverse(Qubit c0, Qubit c1, Qubit c2, Qubit target);

/// Gray-code rotation angles for a multiplexed Ry: solves
/// theta_s = sum_g (-1)^popcount(s & gray(g)) phi_g for phi.
std::vector<double> ucg_gray_angles(std::span<const double> angles);

/// Multiplexed Ry with 2^k CNOTs and 2^k Ry gates; select bit b is
/// selects[b].
std::vector<Gate> lower_ucg_ry(std::span<const Qubit> selects, Qubit target,
                               std::span<const double> angles);

/// Lowers every composite gate to {single-qubit, CNOT}. RC3X occurrences on
/// the same qubits alternate compute / uncompute; an RC3X left open at the
/// end throws CircuitError.
Circuit lower_to_basis(const Circuit& circuit);

}  // namespace qforest
