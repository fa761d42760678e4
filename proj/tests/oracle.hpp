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

// Reference implementations for tests. Deliberately naive: every gate is
// expanded into a full 2^L x 2^L matrix from its textbook definition, with
// no code shared with the statevector kernels.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qforest/circuit.hpp"
#include "qforest/forest.hpp"

namespace qforest::oracle {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline bool bit(std::size_t index, Qubit q) { return (index >> q) & 1U; }

inline Eigen::Matrix2cd single_qubit_matrix(const Gate& g) {
  Eigen::Matrix2cd m;
  const double s2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::PauliX: m << 0, 1, 1, 0; break;
    case GateKind::Hadamard: m << s2, s2, s2, -s2; break;
    case GateKind::PauliZ: m << 1, 0, 0, -1; break;
    case GateKind::Phase: m << 1, 0, 0, std::polar(1.0, g.angle); break;
    case GateKind::RotY:
      m << std::cos(g.angle / 2), -std::sin(g.angle / 2), std::sin(g.angle / 2), std::cos(g.angle / 2);
      break;
    default: throw std::logic_error("not a single-qubit gate");
  }
  return m;
}

inline Eigen::Matrix2cd ry_matrix(double a) {
  Eigen::Matrix2cd m;
  m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
  return m;
}

/// Full matrix of one gate on `width` qubits, using the ideal composite
/// semantics (RC3X as CCCX, ancilla ignored).
inline Matrix gate_matrix(const Gate& g, std::size_t width) {
  const std::size_t dim = std::size_t{1} << width;
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  auto all_set = [&](std::size_t c, std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
      if (!bit(c, g.qubits[k])) return false;
    }
    return true;
  };
  for (std::size_t c = 0; c < dim; ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    switch (g.kind) {
      case GateKind::PauliX:
      case GateKind::Hadamard:
      case GateKind::PauliZ:
      case GateKind::Phase:
      case GateKind::RotY: {
        const Qubit q = g.qubits[0];
        const auto m = single_qubit_matrix(g);
        const int b = bit(c, q);
        for (int out = 0; out < 2; ++out) {
          const std::size_t r = out ? (c | (std::size_t{1} << q)) : (c & ~(std::size_t{1} << q));
          u(static_cast<Eigen::Index>(r), col) += m(out, b);
        }
        break;
      }
      case GateKind::CNOT:
      case GateKind::MCX:
      case GateKind::RC3X: {
        const std::size_t n = g.qubits.size();
        const std::size_t r = all_set(c, 0, n - 1) ? c ^ (std::size_t{1} << g.qubits[n - 1]) : c;
        u(static_cast<Eigen::Index>(r), col) = 1;
        break;
      }
      case GateKind::CZ:
      case GateKind::MCZ:
        u(col, col) = all_set(c, 0, g.qubits.size()) ? -1.0 : 1.0;
        break;
      case GateKind::Swap: {
        const Qubit a = g.qubits[0], b = g.qubits[1];
        std::size_t r = c & ~((std::size_t{1} << a) | (std::size_t{1} << b));
        if (bit(c, a)) r |= std::size_t{1} << b;
        if (bit(c, b)) r |= std::size_t{1} << a;
        u(static_cast<Eigen::Index>(r), col) = 1;
        break;
      }
      case GateKind::UCGRotY: {
        const std::size_t k = g.qubits.size() - 1;
        std::size_t s = 0;
        for (std::size_t b = 0; b < k; ++b) s |= static_cast<std::size_t>(bit(c, g.qubits[b])) << b;
        const Qubit t = g.qubits[k];
        const auto m = ry_matrix(g.angles[s]);
        const int b = bit(c, t);
        for (int out = 0; out < 2; ++out) {
          const std::size_t r = out ? (c | (std::size_t{1} << t)) : (c & ~(std::size_t{1} << t));
          u(static_cast<Eigen::Index>(r), col) += m(out, b);
        }
        break;
      }
    }
  }
  return u;
}

inline Matrix circuit_matrix(const Circuit& c) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.width());
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& g : c.gates()) u = gate_matrix(g, c.width()) * u;
  return u;
}

inline Matrix gates_matrix(const std::vector<Gate>& gs, std::size_t width) {
  Circuit c(width);
  c.append(std::span<const Gate>(gs));
  return circuit_matrix(c);
}

/// max |a - e^{i phi} b| with phi fixed on b's largest entry.
inline double distance_up_to_phase(const Matrix& a, const Matrix& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  const cd phase = a(r, c) / b(r, c);
  return (a - (phase / std::abs(phase)) * b).cwiseAbs().maxCoeff();
}

inline double distance(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Brute-force tree walk over the heap layout, written recursively.
inline std::size_t walk(const TreeModel& tree, const Bits& x, std::size_t node, std::size_t depth,
                        std::size_t path) {
  if (depth + 1 == tree.height) return path;
  const int b = x[tree.attr_index[node]];
  return walk(tree, x, 2 * node + 1 + static_cast<std::size_t>(b), depth + 1, 2 * path + b);
}

inline double forest_proba(const ForestModel& f, const Bits& x) {
  double s = 0;
  for (const auto& t : f.trees()) s += t.leaf_prob[walk(t, x, 0, 0, 0)];
  return s / static_cast<double>(f.tree_count());
}

inline TreeModel random_tree(std::mt19937_64& rng, std::size_t attr_count, unsigned height) {
  TreeModel t;
  t.height = height;
  std::uniform_int_distribution<std::size_t> attr(0, attr_count - 1);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (std::size_t k = 0; k < t.internal_count(); ++k) t.attr_index.push_back(attr(rng));
  for (std::size_t k = 0; k < t.leaf_count(); ++k) t.leaf_prob.push_back(prob(rng));
  return t;
}

inline ForestModel random_forest(std::mt19937_64& rng, std::size_t attr_count, unsigned n,
                                 unsigned height) {
  std::vector<TreeModel> trees;
  for (std::size_t t = 0; t < (std::size_t{1} << n); ++t) trees.push_back(random_tree(rng, attr_count, height));
  return ForestModel(attr_count, std::move(trees));
}

inline Bits bits_of(std::size_t value, std::size_t count) {
  Bits x(count);
  for (std::size_t k = 0; k < count; ++k) x[k] = static_cast<std::uint8_t>((value >> k) & 1U);
  return x;
}

/// Two trees of height 3 over three attributes.
inline ForestModel fixture_f2() {
  return ForestModel(3, {TreeModel{3, {0, 1, 2}, {0.1, 0.9, 0.3, 0.5}},
                         TreeModel{3, {2, 0, 1}, {0.0, 0.4, 0.8, 0.2}}});
}

/// One tree, every leaf p.
inline ForestModel constant_forest(double p) { return ForestModel(1, {TreeModel{2, {0}, {p, p}}}); }

}  // namespace qforest::oracle
