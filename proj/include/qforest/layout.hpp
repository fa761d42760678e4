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
#include <vector>

namespace qforest {

/// Qubit index; qubit q is bit q of a basis-state index (little-endian).
using Qubit = std::size_t;

/// Contiguous run of qubits.
struct QubitRange {
  Qubit offset = 0;
  std::size_t size = 0;

  Qubit operator[](std::size_t k) const { return offset + k; }
  Qubit end() const { return offset + size; }
  bool contains(Qubit q) const { return q >= offset && q < offset + size; }
  std::vector<Qubit> qubits() const {
    std::vector<Qubit> out(size);
    for (std::size_t k = 0; k < size; ++k) out[k] = offset + k;
    return out;
  }

  friend bool operator==(const QubitRange&, const QubitRange&) = default;
};

/// Sub-register offsets of the prediction state, in order
/// |anc_mct_rec>|X>|anc_i>|i>|anc_j>|j>|class>.
struct RegisterLayout {
  QubitRange anc_mct_rec;
  QubitRange x;
  QubitRange anc_i;
  QubitRange i;
  QubitRange anc_j;
  QubitRange j;
  QubitRange cls;

  static RegisterLayout make(std::size_t attr_count, unsigned index_qubits, unsigned height) {
    RegisterLayout l;
    Qubit next = 0;
    auto take = [&next](std::size_t size) {
      QubitRange r{next, size};
      next += size;
      return r;
    };
    l.anc_mct_rec = take(1);
    l.x = take(attr_count);
    l.anc_i = take(1);
    l.i = take(index_qubits);
    l.anc_j = take(1);
    l.j = take(height - 1);
    l.cls = take(1);
    return l;
  }

  std::size_t width() const { return cls.end(); }
  Qubit class_qubit() const { return cls.offset; }

  /// X, i, j and class: everything except the three ancillas.
  std::vector<Qubit> working_qubits() const {
    std::vector<Qubit> out;
    for (const auto& r : {x, i, j, cls}) {
      for (std::size_t k = 0; k < r.size; ++k) out.push_back(r[k]);
    }
    return out;
  }

  std::vector<Qubit> ancilla_qubits() const {
    return {anc_mct_rec.offset, anc_i.offset, anc_j.offset};
  }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

}  // namespace qforest
