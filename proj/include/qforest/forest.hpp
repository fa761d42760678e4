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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qforest {

/// Binary attribute vector; element t is attribute t.
using Bits = std::vector<std::uint8_t>;

/// Parses "101"-style strings; the leftmost character is attribute 0.
Bits parse_bitstring(std::string_view text);
std::string to_bitstring(std::span<const std::uint8_t> bits);

/// A balanced binary decision tree over binary attributes.
///
/// `height` counts node levels including the leaf level, so a tree has
/// 2^(height-1) - 1 internal nodes (stored in level order, root first, heap
/// children of position v at 2v+1 and 2v+2) and 2^(height-1) leaves. Leaf
/// values are class-0 probabilities.
struct TreeModel {
  unsigned height = 2;
  std::vector<std::size_t> attr_index;
  std::vector<double> leaf_prob;

  std::size_t internal_count() const { return (std::size_t{1} << (height - 1)) - 1; }
  std::size_t leaf_count() const { return std::size_t{1} << (height - 1); }

  friend bool operator==(const TreeModel&, const TreeModel&) = default;
};

/// A validated forest of 2^n equal-height trees. Immutable once built.
class ForestModel {
 public:
  /// Throws ForestError naming the offending tree and field.
  ForestModel(std::size_t attr_count, std::vector<TreeModel> trees);

  std::size_t attr_count() const { return attr_count_; }
  const std::vector<TreeModel>& trees() const { return trees_; }
  const TreeModel& tree(std::size_t t) const { return trees_.at(t); }
  std::size_t tree_count() const { return trees_.size(); }
  /// n = log2(tree count): the width of the tree-index register.
  unsigned index_qubits() const { return index_qubits_; }
  unsigned height() const { return trees_.front().height; }

  friend bool operator==(const ForestModel&, const ForestModel&) = default;

 private:
  std::size_t attr_count_;
  std::vector<TreeModel> trees_;
  unsigned index_qubits_ = 0;
};

ForestModel parse_forest(std::string_view document);
std::string serialize_forest(const ForestModel& forest);

/// Leaf reached by descending from the root: left on attribute value 0,
/// right on 1. The returned index spells the visited attribute values from
/// most to least significant bit.
std::size_t tree_predict_classical(const TreeModel& tree, std::span<const std::uint8_t> x);

/// Arithmetic mean over trees of the selected leaf's class-0 probability.
double predict_proba(const ForestModel& forest, std::span<const std::uint8_t> x);

/// arccos(sqrt(p)), in [0, pi/2].
double leaf_angle(double class0_probability);

/// Per-tree, per-leaf rotation half-angles.
struct LeafAngles {
  std::vector<std::vector<double>> angles;

  double at(std::size_t tree, std::size_t leaf) const { return angles.at(tree).at(leaf); }
};

LeafAngles leaf_angles(const ForestModel& forest);

}  // namespace qforest
