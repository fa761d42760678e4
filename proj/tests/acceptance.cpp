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

// Acceptance checks. `acceptance N` runs criterion N, no argument runs all.
// Each criterion prints exactly one PASS/FAIL line; the exit status is
// nonzero when any selected criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "qforest/decompose.hpp"
#include "qforest/qae.hpp"
#include "qforest/statevector.hpp"
#include "qforest/synth.hpp"

namespace qforest {
namespace {

using oracle::Matrix;
constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<Qubit> iota(std::size_t k) {
  std::vector<Qubit> q(k);
  for (std::size_t c = 0; c < k; ++c) q[c] = c;
  return q;
}

Matrix lowered_matrix(const std::vector<Gate>& gs, std::size_t width) {
  Circuit c(width);
  c.append(std::span<const Gate>(gs));
  return unitary_of(c);
}

GateCountReport counts(const std::vector<Gate>& gs, std::size_t width) {
  Circuit c(width);
  c.append(std::span<const Gate>(gs));
  return count_gates(c);
}

// 1: simulated P(class=0) equals predict_proba on F2 and random forests.
void oracle_equivalence(Verdict& v) {
  std::vector<ForestModel> forests{oracle::fixture_f2()};
  std::mt19937_64 rng(20260101);
  for (int k = 0; k < 50; ++k) forests.push_back(oracle::random_forest(rng, 3, k % 3, 2 + (k / 3) % 2));
  double worst_composite = 0, worst_lowered = 0;
  std::size_t cases = 0;
  for (const auto& f : forests) {
    for (std::size_t x = 0; x < 8; ++x) {
      const Bits bits = oracle::bits_of(x, 3);
      const auto p = synthesize_rf_predict(f, bits);
      const double expected = predict_proba(f, bits);
      const Qubit cls = p.layout.class_qubit();
      worst_composite = std::max(worst_composite, std::abs(marginal(run(p.circuit), cls, 0) - expected));
      worst_lowered =
          std::max(worst_lowered, std::abs(marginal(run(lower_to_basis(p.circuit)), cls, 0) - expected));
      ++cases;
    }
  }
  v.detail << cases << " cases, max |delta| composite " << worst_composite << ", lowered " << worst_lowered;
  v.check(worst_composite <= 1e-9, "composite above 1e-9");
  v.check(worst_lowered <= 1e-9, "lowered above 1e-9");
}

// 2: 100 shots at p = 0.04 land in [0, 12] for at least 19 of 20 seeds.
void sampling_consistency(Verdict& v) {
  const auto p = synthesize_rf_predict(oracle::constant_forest(0.04), parse_bitstring("0"));
  const auto state = run(p.circuit);
  const std::vector<Qubit> cls{p.layout.class_qubit()};
  std::size_t inside = 0;
  v.detail << "class-0 counts:";
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = sample(state, std::span<const Qubit>(cls), 100, seed);
    const std::size_t zeros = r.count("0");
    v.detail << ' ' << zeros;
    if (zeros <= 12) ++inside;
  }
  v.detail << "; " << inside << "/20 in [0, 12]";
  v.check(inside >= 19, "fewer than 19 seeds inside the envelope");
}

// 3: mct_ucg (U, CX) column for k = 2..9.
void ucg_table(Verdict& v) {
  const std::size_t table[][2] = {{4, 3},   {8, 7},     {16, 15},   {32, 31},
                                  {64, 63}, {128, 127}, {256, 255}, {512, 511}};
  std::size_t matched = 0;
  for (std::size_t k = 2; k <= 9; ++k) {
    const auto r = counts(lower_mcx_ucg(iota(k), k), k + 1);
    const bool ok = r.u_count == table[k - 2][0] && r.cx_count == table[k - 2][1];
    if (ok) ++matched;
    v.check(ok, "k=" + std::to_string(k) + " gave (" + std::to_string(r.u_count) + ", " +
                    std::to_string(r.cx_count) + ")");
  }
  v.detail << matched << "/8 rows match";
}

// 4: brute-force unitaries of the decompositions.
void decomposition_correctness(Verdict& v) {
  const double swap_dev = oracle::distance(lowered_matrix(lower_swap(0, 1), 2), oracle::gate_matrix(gates::swap(0, 1), 2));
  v.detail << "swap " << swap_dev;
  v.check(swap_dev <= 1e-10, "lower_swap");

  v.detail << "; mcx_ucg up to phase:";
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto u = lowered_matrix(lower_mcx_ucg(iota(k), k), k + 1);
    const auto ideal = oracle::gate_matrix(gates::mcx(iota(k), k), k + 1);
    const double dev = oracle::distance_up_to_phase(u, ideal);
    const double abs_dev = oracle::distance(u.cwiseAbs(), ideal.cwiseAbs());
    v.detail << " k=" << k << ' ' << dev << " (|entries| " << abs_dev << ")";
    v.check(dev <= 1e-10, "lower_mcx_ucg k=" + std::to_string(k) + " not MCX up to global phase");
  }

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double ucg_dev = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<double> angles(std::size_t{1} << k);
    for (auto& a : angles) a = angle(rng);
    const auto sel = iota(k);
    const auto u = lowered_matrix(lower_ucg_ry(sel, k, angles), k + 1);
    ucg_dev = std::max(ucg_dev, oracle::distance(u, oracle::gate_matrix(gates::ucg_ry(sel, k, angles), k + 1)));
  }
  v.detail << "; ucg_ry " << ucg_dev;
  v.check(ucg_dev <= 1e-10, "lower_ucg_ry");

  const auto rc = lower_rc3x(0, 1, 2, 3);
  const auto rc_counts = counts(rc, 4);
  const double rc_dev = oracle::distance(lowered_matrix(rc, 4).cwiseAbs(),
                                         oracle::gate_matrix(gates::mcx({0, 1, 2}, 3), 4));
  v.detail << "; rc3x " << rc_counts.cx_count << " CX + " << rc_counts.u_count << " U, |U| dev " << rc_dev;
  v.check(rc_counts.cx_count == 6 && rc_counts.u_count == 12, "rc3x gate counts");
  v.check(rc_dev <= 1e-10, "rc3x magnitude");
}

std::size_t lowered_cx(unsigned n, unsigned h) {
  std::vector<TreeModel> trees;
  for (std::size_t t = 0; t < (std::size_t{1} << n); ++t) {
    TreeModel tree{h, std::vector<std::size_t>((std::size_t{1} << (h - 1)) - 1, 0),
                   std::vector<double>(std::size_t{1} << (h - 1), 0.5)};
    for (std::size_t k = 0; k < tree.attr_index.size(); ++k) tree.attr_index[k] = (k + t) % 3;
    trees.push_back(tree);
  }
  const ForestModel f(3, std::move(trees));
  return count_gates(lower_to_basis(synthesize_rf_predict(f, parse_bitstring("000")).circuit)).cx_count;
}

// 5: CNOT growth per extra tree-height level and per extra index qubit.
void cnot_scaling(Verdict& v) {
  v.detail << "h sweep (n=1):";
  std::size_t prev = 0;
  for (unsigned h = 2; h <= 4; ++h) {
    const std::size_t cx = lowered_cx(1, h);
    v.detail << ' ' << cx;
    if (prev) {
      const double ratio = static_cast<double>(cx) / static_cast<double>(prev);
      v.detail << " (x" << ratio << ")";
      v.check(ratio >= 3.5 && ratio <= 4.5, "h ratio " + std::to_string(ratio) + " outside [3.5, 4.5]");
    }
    prev = cx;
  }
  v.detail << "; n sweep (h=2):";
  prev = 0;
  for (unsigned n = 0; n <= 3; ++n) {
    const std::size_t cx = lowered_cx(n, 2);
    v.detail << ' ' << cx;
    if (prev) {
      const double ratio = static_cast<double>(cx) / static_cast<double>(prev);
      v.detail << " (x" << ratio << ")";
      v.check(ratio >= 1.8 && ratio <= 2.2, "n ratio " + std::to_string(ratio) + " outside [1.8, 2.2]");
    }
    prev = cx;
  }
}

// 6: A followed by its inverse returns |0...0>.
void inverse_round_trip(Verdict& v) {
  std::vector<ForestModel> forests{oracle::fixture_f2()};
  std::mt19937_64 rng(66);
  for (int k = 0; k < 10; ++k) forests.push_back(oracle::random_forest(rng, 3, k % 3, 2 + k % 2));
  double worst = 0, worst_lowered = 0;
  for (const auto& f : forests) {
    const auto p = synthesize_rf_predict(f, parse_bitstring("101"));
    Circuit both(p.circuit.width());
    both.append(p.circuit).append(inverse(p.circuit));
    auto deviation = [](const Statevector& s) {
      Statevector zero(s.width());
      return (s.amplitudes() - zero.amplitudes()).cwiseAbs().maxCoeff();
    };
    worst = std::max(worst, deviation(run(both)));
    worst_lowered = std::max(worst_lowered, deviation(run(lower_to_basis(both))));
  }
  v.detail << forests.size() << " forests, max deviation composite " << worst << ", lowered " << worst_lowered;
  v.check(worst <= 1e-10, "composite round trip");
  v.check(worst_lowered <= 1e-10, "lowered round trip");
}

// 7: estimator values and the mean number of Q applications at p = 0.25.
void estimator(Verdict& v) {
  const double e0 = estimate_from_k(0), e1 = estimate_from_k(1), e3 = estimate_from_k(3);
  const double sin12 = std::sin(kPi / 12);
  v.detail << "k=0 " << e0 << ", k=1 " << e1 << ", k=3 " << e3;
  v.check(e0 == 1.0, "k=0");
  v.check(std::abs(e1 - 0.5) <= 1e-12, "k=1");
  v.check(std::abs(e3 - sin12 * sin12) <= 1e-12 && std::abs(e3 - 0.07) < 0.005, "k=3");

  const auto p = synthesize_rf_predict(oracle::constant_forest(0.25), parse_bitstring("0"));
  double total = 0;
  bool in_range = true;
  for (std::size_t r = 0; r < 200; ++r) {
    const auto res = estimate_probability(p, run_seed(7, r));
    total += static_cast<double>(res.total_q_applications);
    const double s = res.k == 0 ? 1.0 : std::sin(kPi / (4.0 * static_cast<double>(res.k)));
    in_range = in_range && res.estimate == (res.k == 0 ? 1.0 : s * s);
  }
  const double mean = total / 200;
  v.detail << "; mean total Q applications " << mean << " (window [0.8, 5])";
  v.check(mean >= 2.0 / 2.5 && mean <= 2.0 * 2.5, "mean outside factor 2.5 of 1/sqrt(p)");
  v.check(in_range, "estimate outside discrete range");
}

// 8: strategy switch and the recursion decomposition.
void strategy_selector(Verdict& v) {
  bool switch_ok = true;
  for (std::size_t k = 1; k <= 7; ++k) switch_ok &= select_mcx_strategy(k) == McxStrategy::Ucg;
  for (std::size_t k = 8; k <= 16; ++k) switch_ok &= select_mcx_strategy(k) == McxStrategy::Recursion;
  v.check(switch_ok, "select_mcx_strategy");

  const std::size_t cx8 = counts(lower_mcx_recursion(iota(8), 8, 9), 10).cx_count;
  v.detail << "recursion k=8 " << cx8 << " CX";
  v.check(cx8 < 255, "recursion k=8 not below 255 CX");

  const auto u = lowered_matrix(lower_mcx_recursion(iota(3), 3, 4), 5);
  std::size_t checked = 0, wrong = 0;
  for (std::size_t c = 0; c < 32; ++c) {
    if ((c >> 4) & 1U) continue;  // ancilla must start clean
    const std::size_t expect = (c & 7U) == 7U ? c ^ 8U : c;
    ++checked;
    if (std::abs(u(static_cast<Eigen::Index>(expect), static_cast<Eigen::Index>(c)) - 1.0) > 1e-10) ++wrong;
  }
  v.detail << "; k=3 basis states " << checked - wrong << "/" << checked;
  v.check(wrong == 0, "k=3 basis enumeration");
}

struct Criterion {
  const char* title;
  std::function<void(Verdict&)> run;
  double budget_seconds;
};

}  // namespace
}  // namespace qforest

int main(int argc, char** argv) {
  using namespace qforest;
  const Criterion all[] = {
      {"oracle equivalence", oracle_equivalence, 120},
      {"sampling consistency", sampling_consistency, 60},
      {"mct_ucg gate counts", ucg_table, 10},
      {"decomposition correctness", decomposition_correctness, 10},
      {"CNOT scaling", cnot_scaling, 60},
      {"inverse round trip", inverse_round_trip, 60},
      {"estimator arithmetic and loop", estimator, 120},
      {"strategy selector", strategy_selector, 10},
  };
  int first = 1, last = 8;
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > 8) {
      std::fprintf(stderr, "usage: acceptance [1-8]\n");
      return 2;
    }
  }
  bool ok = true;
  for (int c = first; c <= last; ++c) {
    const auto& crit = all[c - 1];
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.run(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.check(secs <= crit.budget_seconds, "runtime over " + std::to_string(crit.budget_seconds) + " s");
    std::printf("%s criterion %d (%s): %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c, crit.title,
                v.detail.str().c_str(), secs);
    ok = ok && v.pass;
  }
  return ok ? 0 : 1;
}
