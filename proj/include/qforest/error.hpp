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

#include <stdexcept>
#include <string>

namespace qforest {

/// Malformed or invariant-violating forest model input.
class ForestError : public std::runtime_error {
 public:
  explicit ForestError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Gate or circuit construction errors (bad qubit indexes, arity, etc).
class CircuitError : public std::logic_error {
 public:
  explicit CircuitError(const std::string& message)
      : std::logic_error(message) {}
};

/// The iteration cap of the estimation loop was reached.
class EstimationCapExceeded : public std::runtime_error {
 public:
  explicit EstimationCapExceeded(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace qforest
