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

#include "qforest/synth.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qforest/error.hpp"

namespace qforest {

namespace {

// Controlled SWAP of j bits a and b, driven by `control`. The control is
// listed last so the MCX's lowering diagonal can only touch the branch the
// control selects.
void append_controlled_swap(std::vector<Gate>& out, Qubit control, Qubit a, Qubit b) {
  out.push_back(gates::cx(b, a));
  out.push_back(gates::mcx({a, control}, b));
  out.push_back(gates::cx(b, a));
}

Gate compare_gate(const std::vector<Qubit>& controls, Qubit target) {
  if (controls.size() == 3) return gates::rc3x(controls[0], controls[1], controls[2], target);
  return gates::mcx(controls, target);
}

}  // namespace

std::vector<Gate> prepare_x(const RegisterLayout& layout, std::span<const std::uint8_t> x) {
  if (x.size() != layout.x.size) {
    throw std::invalid_argument("prepare_x: input has " + std::to_string(x.size()) +
                                " bits, register has " + std::to_string(layout.x.size));
  }
  std::vector<Gate> out;
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t]) out.push_back(gates::x(layout.x[t]));
  }
  return out;
}

std::vector<Gate> tree_predict_controlled(const RegisterLayout& layout, const TreeModel& tree) {
  const unsigned h = tree.height;
  const std::size_t jbits = h - 1;
  if (layout.j.size != jbits) throw CircuitError("tree height does not match the j register");
  const Qubit anc_i = layout.anc_i.offset;
  const Qubit anc_j = layout.anc_j.offset;
  const auto& j = layout.j;

  std::vector<Gate> out;
  out.push_back(gates::cx(anc_i, j[0]));  // root: heap index 1

  for (unsigned d = 0; d + 1 < h; ++d) {
    const bool leaf_level = (d + 2 == h);
    const std::size_t top = std::min<std::size_t>(d + 1, jbits - 1);
    for (std::size_t b = top; b >= 1; --b) append_controlled_swap(out, anc_i, j[b], j[b - 1]);

    const std::size_t nodes = std::size_t{1} << d;
    for (std::size_t p = 0; p < nodes; ++p) {
      const std::size_t node = nodes - 1 + p;
      const Qubit xq = layout.x[tree.attr_index[node]];
      // j after the rotation: 1p0 on inner levels, p1 on the leaf level.
      const std::size_t value = leaf_level ? ((p << 1) | 1) : (((std::size_t{1} << d) | p) << 1);

      std::vector<Gate> flips;
      std::vector<Qubit> controls;
      for (std::size_t b = 1; b < jbits; ++b) {
        if (!((value >> b) & 1U)) flips.push_back(gates::x(j[b]));
        controls.push_back(j[b]);
      }
      controls.push_back(anc_i);

      out.insert(out.end(), flips.begin(), flips.end());
      out.push_back(compare_gate(controls, anc_j));
      if (leaf_level) out.push_back(gates::cx(anc_j, j[0]));  // -1, undone below when x = 1
      out.push_back(gates::mcx({xq, anc_j}, j[0]));
      out.push_back(compare_gate(controls, anc_j));
      out.insert(out.end(), flips.begin(), flips.end());
    }
  }
  return out;
}

SynthesizedPredictor synthesize_rf_predict(const ForestModel& forest,
                                           std::span<const std::uint8_t> x,
                                           const SynthOptions& options) {
  if (x.size() != forest.attr_count()) {
    throw ForestError("input has " + std::to_string(x.size()) + " bits, forest expects " +
                      std::to_string(forest.attr_count()));
  }
  const unsigned n = forest.index_qubits();
  const unsigned h = forest.height();
  const auto layout = RegisterLayout::make(forest.attr_count(), n, h);

  Circuit a(layout.width());
  a.set_layout(layout);
  a.append(prepare_x(layout, x));
  for (std::size_t b = 0; b < n; ++b) a.append(gates::h(layout.i[b]));

  McxStrategy strategy = options.tree_select_strategy.value_or(select_mcx_strategy(n));
  if (n < 3) strategy = McxStrategy::Ucg;
  std::optional<Qubit> select_ancilla;
  if (strategy == McxStrategy::Recursion) select_ancilla = layout.anc_mct_rec.offset;

  const Qubit anc_i = layout.anc_i.offset;
  for (std::size_t t = 0; t < forest.tree_count(); ++t) {
    std::vector<Gate> select;
    if (n == 0) {
      select.push_back(gates::x(anc_i));
    } else {
      std::vector<Gate> flips;
      for (std::size_t b = 0; b < n; ++b) {
        if (!((t >> b) & 1U)) flips.push_back(gates::x(layout.i[b]));
      }
      select = flips;
      select.push_back(gates::mcx(layout.i.qubits(), anc_i, select_ancilla));
      select.insert(select.end(), flips.begin(), flips.end());
    }
    a.append(select);
    a.append(tree_predict_controlled(layout, forest.tree(t)));
    a.append(select);
  }

  const std::size_t leaves = std::size_t{1} << (h - 1);
  std::vector<double> angles(forest.tree_count() * leaves);
  for (std::size_t t = 0; t < forest.tree_count(); ++t) {
    for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
      angles[leaf + (t << (h - 1))] = 2.0 * leaf_angle(forest.tree(t).leaf_prob[leaf]);
    }
  }
  std::vector<Qubit> selects = layout.j.qubits();
  for (Qubit q : layout.i.qubits()) selects.push_back(q);
  a.append(gates::ucg_ry(selects, layout.class_qubit(), angles));

  return SynthesizedPredictor{std::move(a), layout, forest, Bits(x.begin(), x.end()),
                              std::move(angles)};
}

Reflections synthesize_reflections(const RegisterLayout& layout) {
  Reflections r{Circuit(layout.width()), Circuit(layout.width())};
  const Qubit cls = layout.class_qubit();
  r.s_chi.append(gates::x(cls));
  r.s_chi.append(gates::z(cls));
  r.s_chi.append(gates::x(cls));

  const auto working = layout.working_qubits();
  for (Qubit q : working) r.s0.append(gates::x(q));
  r.s0.append(gates::mcz(working));
  for (Qubit q : working) r.s0.append(gates::x(q));
  return r;
}

}  // namespace qforest
