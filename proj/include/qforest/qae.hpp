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
#include <vector>

#include "qforest/circuit.hpp"
#include "qforest/synth.hpp"

namespace qforest {

enum class Schedule {
  Linear,       // trial k applies Q exactly k times
  Exponential,  // BBHT: k drawn uniformly below m, m grows by 6/5 per miss
};

struct TrialRecord {
  std::size_t k = 0;
  int measured_class = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct EstimationResult {
  std::size_t k = 0;
  double estimate = 1.0;
  std::vector<TrialRecord> trial_log;
  std::uint64_t seed = 0;
  /// Q applications summed over every trial of the run.
  std::size_t total_q_applications = 0;

  friend bool operator==(const EstimationResult&, const EstimationResult&) = default;
};

struct EstimationOptions {
  Schedule schedule = Schedule::Linear;
  std::size_t max_trials = 64;
  /// Simulate the basis-level circuits instead of the composite ones.
  bool lowered = false;
};

/// 1 for k = 0, sin^2(pi / 4k) otherwise.
double estimate_from_k(std::size_t k);

/// Q = A S0 A^-1 S_chi, i.e. the gate order S_chi, A^-1, S0, A.
Circuit build_q(const SynthesizedPredictor& predictor);

/// Repeats trials until the class qubit reads 0; throws
/// EstimationCapExceeded after `max_trials` misses.
EstimationResult estimate_probability(const SynthesizedPredictor& predictor, std::uint64_t seed,
                                      const EstimationOptions& options = {});

/// Mean total Q applications over `runs` estimation runs on a forest whose
/// every leaf has class-0 probability p.
double expected_iterations_check(double p, std::size_t runs, std::uint64_t seed,
                                 const EstimationOptions& options = {});

/// Seed of run r in a multi-run batch (splitmix64 of seed + r).
std::uint64_t run_seed(std::uint64_t seed, std::size_t run);

}  // namespace qforest
