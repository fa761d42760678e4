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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qforest/circuit.hpp"
#include "qforest/error.hpp"

namespace qforest {

/// Dense state of `width` qubits: 2^width complex amplitudes, qubit q is
/// bit q of the basis index.
template <typename Real>
class BasicStatevector {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// |0...0>
  explicit BasicStatevector(std::size_t width) : BasicStatevector(width, 0) {}

  BasicStatevector(std::size_t width, std::size_t basis_index) : width_(width) {
    if (width >= 8 * sizeof(std::size_t) - 1) throw std::length_error("statevector too wide");
    amps_ = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << width));
    amps_(static_cast<Eigen::Index>(basis_index)) = Scalar(1);
  }

  std::size_t width() const { return width_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

  const Vector& amplitudes() const { return amps_; }
  Vector& amplitudes() { return amps_; }

  Scalar& operator[](std::size_t i) { return amps_(static_cast<Eigen::Index>(i)); }
  const Scalar& operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  Real norm_squared() const { return amps_.squaredNorm(); }

 private:
  std::size_t width_;
  Vector amps_;
};

using Statevector = BasicStatevector<double>;

namespace detail {

inline std::size_t insert_zero_bit(std::size_t k, Qubit q) {
  const std::size_t low = k & ((std::size_t{1} << q) - 1);
  return ((k >> q) << (q + 1)) | low;
}

inline std::size_t mask_of(std::span<const Qubit> qubits) {
  std::size_t m = 0;
  for (Qubit q : qubits) m |= std::size_t{1} << q;
  return m;
}

template <typename Real>
void apply_matrix(BasicStatevector<Real>& state, Qubit q,
                  const Eigen::Matrix<std::complex<Real>, 2, 2>& m) {
  const std::size_t bit = std::size_t{1} << q;
  const std::size_t half = state.dim() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_zero_bit(k, q);
    const std::size_t i1 = i0 | bit;
    const auto a0 = state[i0];
    const auto a1 = state[i1];
    state[i0] = m(0, 0) * a0 + m(0, 1) * a1;
    state[i1] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

// X on `target` wherever every bit of `control_mask` is set.
template <typename Real>
void apply_controlled_x(BasicStatevector<Real>& state, std::size_t control_mask, Qubit target) {
  const std::size_t bit = std::size_t{1} << target;
  const std::size_t half = state.dim() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_zero_bit(k, target);
    if ((i0 & control_mask) == control_mask) std::swap(state[i0], state[i0 | bit]);
  }
}

template <typename Real>
void apply_sign_flip(BasicStatevector<Real>& state, std::size_t mask) {
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if ((i & mask) == mask) state[i] = -state[i];
  }
}

}  // namespace detail

/// Multiplies the state by the gate's unitary. Composite kinds are applied
/// exactly: MCX as a true multi-controlled X (ancilla ignored) and RC3X as
/// CCCX.
template <typename Real>
void apply(BasicStatevector<Real>& state, const Gate& gate) {
  using C = std::complex<Real>;
  using M2 = Eigen::Matrix<C, 2, 2>;
  validate_gate(gate, state.width());
  const auto& q = gate.qubits;

  switch (gate.kind) {
    case GateKind::PauliX:
      detail::apply_controlled_x(state, 0, q[0]);
      break;
    case GateKind::PauliZ:
      detail::apply_sign_flip(state, std::size_t{1} << q[0]);
      break;
    case GateKind::Phase: {
      const C ph = std::polar(Real(1), static_cast<Real>(gate.angle));
      const std::size_t bit = std::size_t{1} << q[0];
      for (std::size_t i = 0; i < state.dim(); ++i) {
        if (i & bit) state[i] *= ph;
      }
      break;
    }
    case GateKind::Hadamard: {
      const Real s = Real(1) / std::sqrt(Real(2));
      M2 m;
      m << s, s, s, -s;
      detail::apply_matrix(state, q[0], m);
      break;
    }
    case GateKind::RotY: {
      const Real c = std::cos(static_cast<Real>(gate.angle) / 2);
      const Real s = std::sin(static_cast<Real>(gate.angle) / 2);
      M2 m;
      m << c, -s, s, c;
      detail::apply_matrix(state, q[0], m);
      break;
    }
    case GateKind::CNOT:
    case GateKind::MCX:
    case GateKind::RC3X:
      detail::apply_controlled_x(state, detail::mask_of(gate.controls()), gate.target());
      break;
    case GateKind::CZ:
    case GateKind::MCZ:
      detail::apply_sign_flip(state, detail::mask_of(q));
      break;
    case GateKind::Swap: {
      const std::size_t a = std::size_t{1} << q[0];
      const std::size_t b = std::size_t{1} << q[1];
      for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & a) && !(i & b)) std::swap(state[i], state[i ^ a ^ b]);
      }
      break;
    }
    case GateKind::UCGRotY: {
      const Qubit target = gate.target();
      const auto selects = gate.controls();
      const std::size_t bit = std::size_t{1} << target;
      std::vector<Real> cs(gate.angles.size()), sn(gate.angles.size());
      for (std::size_t s = 0; s < gate.angles.size(); ++s) {
        cs[s] = std::cos(static_cast<Real>(gate.angles[s]) / 2);
        sn[s] = std::sin(static_cast<Real>(gate.angles[s]) / 2);
      }
      const std::size_t half = state.dim() / 2;
      for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = detail::insert_zero_bit(k, target);
        std::size_t s = 0;
        for (std::size_t b = 0; b < selects.size(); ++b) s |= ((i0 >> selects[b]) & 1U) << b;
        const auto a0 = state[i0];
        const auto a1 = state[i0 | bit];
        state[i0] = cs[s] * a0 - sn[s] * a1;
        state[i0 | bit] = sn[s] * a0 + cs[s] * a1;
      }
      break;
    }
  }
}

template <typename Real>
void run(BasicStatevector<Real>& state, const Circuit& circuit) {
  if (circuit.width() != state.width()) {
    throw CircuitError("circuit width " + std::to_string(circuit.width()) +
                       " does not match state width " + std::to_string(state.width()));
  }
  for (const auto& g : circuit.gates()) apply(state, g);
}

/// Runs `circuit` on |0...0>.
inline Statevector run(const Circuit& circuit) {
  Statevector state(circuit.width());
  run(state, circuit);
  return state;
}

/// Probability that `qubit` measures `value`.
template <typename Real>
Real marginal(const BasicStatevector<Real>& state, Qubit qubit, int value) {
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t want = value ? bit : 0;
  Real p = 0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if ((i & bit) == want) p += std::norm(state[i]);
  }
  return p;
}

/// Exact joint distribution of `qubits`; outcome o has qubits[k] in bit k.
template <typename Real>
std::vector<Real> joint_distribution(const BasicStatevector<Real>& state,
                                     std::span<const Qubit> qubits) {
  std::vector<Real> dist(std::size_t{1} << qubits.size(), Real(0));
  for (std::size_t i = 0; i < state.dim(); ++i) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) o |= ((i >> qubits[k]) & 1U) << k;
    dist[o] += std::norm(state[i]);
  }
  return dist;
}

/// MT19937-64 seeded directly; doubles take the top 53 bits, so draws are
/// identical on every platform.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct SampleResult {
  std::vector<Qubit> qubits;
  /// Outcome strings list qubits[0] first.
  std::map<std::string, std::size_t> counts;
  std::size_t shots = 0;
  std::uint64_t seed = 0;

  std::size_t count(const std::string& outcome) const {
    auto it = counts.find(outcome);
    return it == counts.end() ? 0 : it->second;
  }

  friend bool operator==(const SampleResult&, const SampleResult&) = default;
};

/// `shots` independent draws from the joint distribution of `qubits`.
template <typename Real>
SampleResult sample(const BasicStatevector<Real>& state, std::span<const Qubit> qubits,
                    std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample: shots must be at least 1");
  const auto dist = joint_distribution(state, qubits);
  std::vector<double> cdf(dist.size());
  double acc = 0;
  for (std::size_t o = 0; o < dist.size(); ++o) cdf[o] = (acc += static_cast<double>(dist[o]));

  SampleResult result{std::vector<Qubit>(qubits.begin(), qubits.end()), {}, shots, seed};
  UniformSource rng(seed);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.next() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t o = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    std::string key(qubits.size(), '0');
    for (std::size_t k = 0; k < qubits.size(); ++k) key[k] = ((o >> k) & 1U) ? '1' : '0';
    ++result.counts[key];
  }
  return result;
}

/// Column c is the circuit applied to basis state c.
inline Eigen::MatrixXcd unitary_of(const Circuit& circuit, std::size_t max_width = 12) {
  if (circuit.width() > max_width) {
    throw std::length_error("unitary_of: width " + std::to_string(circuit.width()) +
                            " exceeds guard " + std::to_string(max_width));
  }
  const std::size_t dim = std::size_t{1} << circuit.width();
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    Statevector state(circuit.width(), c);
    run(state, circuit);
    u.col(static_cast<Eigen::Index>(c)) = state.amplitudes();
  }
  return u;
}

}  // namespace qforest
