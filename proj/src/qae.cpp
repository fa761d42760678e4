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

#include "qforest/qae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qforest/decompose.hpp"
#include "qforest/error.hpp"
#include "qforest/statevector.hpp"

namespace qforest {

double estimate_from_k(std::size_t k) {
  if (k == 0) return 1.0;
  const double s = std::sin(std::numbers::pi / (4.0 * static_cast<double>(k)));
  return s * s;
}

Circuit build_q(const SynthesizedPredictor& predictor) {
  const auto refl = synthesize_reflections(predictor.layout);
  Circuit q(predictor.layout.width());
  q.set_layout(predictor.layout);
  q.append(refl.s_chi);
  q.append(inverse(predictor.circuit));
  q.append(refl.s0);
  q.append(predictor.circuit);
  return q;
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t run) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(run) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Q^k A|0> for increasing k, cached so each power is simulated once.
class AmplifiedStates {
 public:
  AmplifiedStates(Circuit a, Circuit q) : q_(std::move(q)) {
    states_.push_back(run(a));
  }

  const Statevector& at(std::size_t k) {
    while (states_.size() <= k) {
      Statevector next = states_.back();
      run(next, q_);
      states_.push_back(std::move(next));
    }
    return states_[k];
  }

 private:
  Circuit q_;
  std::vector<Statevector> states_;
};

}  // namespace

EstimationResult estimate_probability(const SynthesizedPredictor& predictor, std::uint64_t seed,
                                      const EstimationOptions& options) {
  Circuit a = predictor.circuit;
  Circuit q = build_q(predictor);
  if (options.lowered) {
    a = lower_to_basis(a);
    q = lower_to_basis(q);
  }
  AmplifiedStates states(std::move(a), std::move(q));
  const Qubit cls = predictor.layout.class_qubit();
  UniformSource rng(seed);

  EstimationResult result;
  result.seed = seed;
  double m = 1.0;
  const double m_cap = std::sqrt(std::ldexp(1.0, static_cast<int>(predictor.layout.width())));

  for (std::size_t trial = 0; trial < options.max_trials; ++trial) {
    std::size_t k = trial;
    if (options.schedule == Schedule::Exponential) {
      const auto choices = static_cast<std::size_t>(std::ceil(m));
      k = std::min(static_cast<std::size_t>(rng.next() * static_cast<double>(choices)), choices - 1);
    }
    const double good = marginal(states.at(k), cls, 0);
    const int measured = rng.next() < good ? 0 : 1;
    result.trial_log.push_back({k, measured});
    result.total_q_applications += k;
    if (measured == 0) {
      result.k = k;
      result.estimate = estimate_from_k(k);
      return result;
    }
    m = std::min(m * 6.0 / 5.0, m_cap);
  }
  throw EstimationCapExceeded("no class-0 outcome within " + std::to_string(options.max_trials) +
                              " trials (p_class0 is zero or the predictor is broken)");
}

double expected_iterations_check(double p, std::size_t runs, std::uint64_t seed,
                                 const EstimationOptions& options) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("expected_iterations_check: p must be in (0, 1]");
  if (runs == 0) throw std::invalid_argument("expected_iterations_check: runs must be positive");
  const ForestModel forest(1, {TreeModel{2, {0}, {p, p}}});
  const Bits x{0};
  const auto predictor = synthesize_rf_predict(forest, x);
  double total = 0.0;
  for (std::size_t r = 0; r < runs; ++r) {
    total += static_cast<double>(
        estimate_probability(predictor, run_seed(seed, r), options).total_q_applications);
  }
  return total / static_cast<double>(runs);
}

}  // namespace qforest
