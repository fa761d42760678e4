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

#include "qforest/forest.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qforest/error.hpp"

namespace qforest {

namespace {

std::string tree_path(std::size_t t, const char* field) {
  std::ostringstream os;
  os << "trees[" << t << "]." << field;
  return os.str();
}

std::string elem_path(std::size_t t, const char* field, std::size_t k) {
  std::ostringstream os;
  os << "trees[" << t << "]." << field << "[" << k << "]";
  return os.str();
}

}  // namespace

Bits parse_bitstring(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring may only contain '0' and '1': \"" +
                                  std::string(text) + "\"");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

ForestModel::ForestModel(std::size_t attr_count, std::vector<TreeModel> trees)
    : attr_count_(attr_count), trees_(std::move(trees)) {
  if (attr_count_ == 0) throw ForestError("attr_count: must be at least 1");
  if (trees_.empty()) throw ForestError("trees: forest has no trees");
  if (!std::has_single_bit(trees_.size())) {
    throw ForestError("trees: tree count " + std::to_string(trees_.size()) +
                      " invalid, tree count must be a power of two");
  }
  index_qubits_ = static_cast<unsigned>(std::countr_zero(trees_.size()));

  const unsigned h = trees_.front().height;
  for (std::size_t t = 0; t < trees_.size(); ++t) {
    const auto& tree = trees_[t];
    if (tree.height < 2) {
      throw ForestError(tree_path(t, "height") + ": height " + std::to_string(tree.height) +
                        " must be at least 2");
    }
    if (tree.height > 30) {
      throw ForestError(tree_path(t, "height") + ": height " + std::to_string(tree.height) +
                        " is unreasonably large");
    }
    if (tree.height != h) {
      throw ForestError(tree_path(t, "height") + ": height " + std::to_string(tree.height) +
                        " differs from trees[0].height " + std::to_string(h) +
                        " (all trees must share one height)");
    }
    if (tree.attr_index.size() != tree.internal_count()) {
      throw ForestError(tree_path(t, "attr_index") + ": expected " +
                        std::to_string(tree.internal_count()) + " entries for height " +
                        std::to_string(h) + ", got " + std::to_string(tree.attr_index.size()));
    }
    if (tree.leaf_prob.size() != tree.leaf_count()) {
      throw ForestError(tree_path(t, "leaf_prob") + ": expected " +
                        std::to_string(tree.leaf_count()) + " entries for height " +
                        std::to_string(h) + ", got " + std::to_string(tree.leaf_prob.size()));
    }
    for (std::size_t k = 0; k < tree.attr_index.size(); ++k) {
      if (tree.attr_index[k] >= attr_count_) {
        throw ForestError(elem_path(t, "attr_index", k) + ": attribute " +
                          std::to_string(tree.attr_index[k]) + " out of range [0, " +
                          std::to_string(attr_count_) + ")");
      }
    }
    for (std::size_t k = 0; k < tree.leaf_prob.size(); ++k) {
      const double p = tree.leaf_prob[k];
      if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << elem_path(t, "leaf_prob", k) << ": probability " << p << " outside [0, 1]";
        throw ForestError(os.str());
      }
    }
  }
}

ForestModel parse_forest(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ForestError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ForestError("document: expected a JSON object");

  auto require_uint = [](const json& v, const std::string& path) -> std::size_t {
    if (!v.is_number_integer()) throw ForestError(path + ": expected a non-negative integer");
    if (v.get<std::int64_t>() < 0) throw ForestError(path + ": expected a non-negative integer");
    return v.get<std::size_t>();
  };

  if (!doc.contains("attr_count")) throw ForestError("attr_count: missing field");
  const std::size_t attr_count = require_uint(doc["attr_count"], "attr_count");
  if (!doc.contains("trees") || !doc["trees"].is_array()) {
    throw ForestError("trees: missing or not an array");
  }

  std::vector<TreeModel> trees;
  const auto& jtrees = doc["trees"];
  for (std::size_t t = 0; t < jtrees.size(); ++t) {
    const auto& jt = jtrees[t];
    if (!jt.is_object()) throw ForestError("trees[" + std::to_string(t) + "]: expected an object");
    for (const char* field : {"height", "attr_index", "leaf_prob"}) {
      if (!jt.contains(field)) throw ForestError(tree_path(t, field) + ": missing field");
    }
    TreeModel tree;
    tree.height = static_cast<unsigned>(require_uint(jt["height"], tree_path(t, "height")));
    if (!jt["attr_index"].is_array()) throw ForestError(tree_path(t, "attr_index") + ": expected an array");
    if (!jt["leaf_prob"].is_array()) throw ForestError(tree_path(t, "leaf_prob") + ": expected an array");
    for (std::size_t k = 0; k < jt["attr_index"].size(); ++k) {
      tree.attr_index.push_back(require_uint(jt["attr_index"][k], elem_path(t, "attr_index", k)));
    }
    for (std::size_t k = 0; k < jt["leaf_prob"].size(); ++k) {
      const auto& v = jt["leaf_prob"][k];
      if (!v.is_number()) throw ForestError(elem_path(t, "leaf_prob", k) + ": expected a number");
      tree.leaf_prob.push_back(v.get<double>());
    }
    trees.push_back(std::move(tree));
  }
  return ForestModel(attr_count, std::move(trees));
}

std::string serialize_forest(const ForestModel& forest) {
  nlohmann::json doc;
  doc["attr_count"] = forest.attr_count();
  doc["trees"] = nlohmann::json::array();
  for (const auto& tree : forest.trees()) {
    doc["trees"].push_back(
        {{"height", tree.height}, {"attr_index", tree.attr_index}, {"leaf_prob", tree.leaf_prob}});
  }
  // nlohmann emits shortest round-trip doubles, so parse(serialize(f)) == f.
  return doc.dump(2);
}

std::size_t tree_predict_classical(const TreeModel& tree, std::span<const std::uint8_t> x) {
  std::size_t node = 0;
  std::size_t leaf = 0;
  for (unsigned depth = 0; depth + 1 < tree.height; ++depth) {
    const std::size_t attr = tree.attr_index.at(node);
    if (attr >= x.size()) throw std::invalid_argument("input shorter than attribute index");
    const std::size_t bit = x[attr] ? 1 : 0;
    leaf = (leaf << 1) | bit;
    node = 2 * node + 1 + bit;
  }
  return leaf;
}

double predict_proba(const ForestModel& forest, std::span<const std::uint8_t> x) {
  if (x.size() != forest.attr_count()) {
    throw std::invalid_argument("input has " + std::to_string(x.size()) +
                                " bits, forest expects " + std::to_string(forest.attr_count()));
  }
  double sum = 0.0;
  for (const auto& tree : forest.trees()) sum += tree.leaf_prob[tree_predict_classical(tree, x)];
  return sum / static_cast<double>(forest.tree_count());
}

double leaf_angle(double class0_probability) {
  return std::acos(std::sqrt(class0_probability));
}

LeafAngles leaf_angles(const ForestModel& forest) {
  LeafAngles out;
  out.angles.reserve(forest.tree_count());
  for (const auto& tree : forest.trees()) {
    std::vector<double> row;
    row.reserve(tree.leaf_prob.size());
    for (double p : tree.leaf_prob) row.push_back(leaf_angle(p));
    out.angles.push_back(std::move(row));
  }
  return out;
}

}  // namespace qforest
