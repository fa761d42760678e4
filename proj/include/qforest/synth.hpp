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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qforest/circuit.hpp"
#include "qforest/decompose.hpp"
#include "qforest/forest.hpp"
#include "qforest/layout.hpp"

namespace qforest {

struct SynthOptions {
  /// Strategy for the tree-index comparisons onto anc_i; unset selects by
  /// control count. Recursion needs at least 3 index qubits and otherwise
  /// falls back to Ucg.
  std::optional<McxStrategy> tree_select_strategy;
};

/// The prediction circuit A for one input together with what built it.
struct SynthesizedPredictor {
  Circuit circuit;
  RegisterLayout layout;
  ForestModel forest;
  Bits input;
  /// Full RotY angle 2*theta for select pattern leaf + (tree << (h-1)).
  std::vector<double> rotation_angles;
};

/// X on every X-register qubit whose attribute is 1.
std::vector<Gate> prepare_x(const RegisterLayout& layout, std::span<const std::uint8_t> x);

/// Moves j from |0> to |leaf of `tree`> in the branch where anc_i = 1 and
/// leaves every other branch alone. j holds the heap index minus its
/// leading bit: each level rotates j left (controlled SWAPs), compares it
/// against every node of the level into anc_j and appends the node's
/// attribute bit (+1 when set on inner levels, -1 when clear on the leaf
/// level, where the wrapped leading 1 sits in bit 0).
std::vector<Gate> tree_predict_controlled(const RegisterLayout& layout, const TreeModel& tree);

SynthesizedPredictor synthesize_rf_predict(const ForestModel& forest,
                                           std::span<const std::uint8_t> x,
                                           const SynthOptions& options = {});

struct Reflections {
  Circuit s0;     // sign flip of |0> on X, i, j and class
  Circuit s_chi;  // sign flip of class = 0
};

Reflections synthesize_reflections(const RegisterLayout& layout);

}  // namespace qforest
