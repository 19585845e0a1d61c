// Copyright 2026 The chiral-nri Authors
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

#include "chiral_nri/liouville_oracle.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "chiral_nri/constitutive.hpp"
#include "chiral_nri/error.hpp"

namespace chiral_nri::oracle {

namespace {

using Hamiltonian = Eigen::Matrix<Complex, 4, 4>;
using Identity4 = Eigen::Matrix<Complex, 4, 4>;

constexpr int kTraceRow = vec_index(kLevel1, kLevel1);

bool allowed_transition(FieldRole role, int upper, int lower) {
  switch (role) {
    case FieldRole::kControl: return upper == kLevel3 && lower == kLevel1;
    case FieldRole::kSignal: return upper == kLevel4 && lower == kLevel2;
    case FieldRole::kProbeElectric: return upper == kLevel4 && lower == kLevel3;
    case FieldRole::kProbeMagnetic: return upper == kLevel2 && lower == kLevel1;
  }
  return false;
}

// -i (I (x) H - H^T (x) I), the commutator part for column-major vec.
Superoperator commutator_superoperator(const Hamiltonian& h) {
  Superoperator out = Superoperator::Zero();
  const Complex minus_i{0.0, -1.0};
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      const int row = vec_index(i, j);
      for (int k = 0; k < 4; ++k) {
        // (H rho)_ij = H_ik rho_kj ; (rho H)_ij = rho_ik H_kj
        if (h(i, k) != Complex{}) out(row, vec_index(k, j)) += minus_i * h(i, k);
        if (h(k, j) != Complex{}) out(row, vec_index(i, k)) -= minus_i * h(k, j);
      }
    }
  }
  return out;
}

void add_drive(Hamiltonian& h, int upper, int lower, Complex amplitude) {
  h(upper, lower) -= amplitude;
  h(lower, upper) -= std::conj(amplitude);
}

Hamiltonian zeroth_hamiltonian(const RotatingFrameModel& model) {
  Hamiltonian h = Hamiltonian::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = model.level_energies[i];
  for (const Coupling& c : model.couplings) {
    if (!allowed_transition(c.role, c.upper, c.lower))
      throw Error(ErrorCode::kInvalidModel, "coupling on a forbidden transition");
    if (c.role == FieldRole::kProbeElectric || c.role == FieldRole::kProbeMagnetic)
      throw Error(ErrorCode::kInvalidModel, "probe couplings are not part of the zeroth order");
    require_non_negative(c.rabi, "Rabi frequency");
    add_drive(h, c.upper, c.lower, std::polar(c.rabi, -c.phase));
  }
  return h;
}

void add_dissipation(const RotatingFrameModel& model, Superoperator& l) {
  for (const DecayChannel& d : model.decays) {
    require_non_negative(d.rate, "decay rate");
    if (d.from < 0 || d.from > 3 || d.to < 0 || d.to > 3 || d.from == d.to)
      throw Error(ErrorCode::kInvalidModel, "decay channel with invalid levels");
    // Lindblad term for jump sqrt(rate) |to><from|.
    l(vec_index(d.to, d.to), vec_index(d.from, d.from)) += d.rate;
    for (int k = 0; k < 4; ++k) {
      // -1/2 {C^dag C, rho}: C^dag C = rate |from><from|
      l(vec_index(d.from, k), vec_index(d.from, k)) -= 0.5 * d.rate;
      l(vec_index(k, d.from), vec_index(k, d.from)) -= 0.5 * d.rate;
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      require_non_negative(model.dephasing[i][j], "dephasing");
      l(vec_index(i, j), vec_index(i, j)) -= model.dephasing[i][j];
    }
  }
}

DensityVector to_vector(const DensityMatrix& rho) {
  DensityVector v;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) v(vec_index(i, j)) = rho(i, j);
  return v;
}

DensityMatrix to_matrix(const DensityVector& v) {
  DensityMatrix rho;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) rho(i, j) = v(vec_index(i, j));
  return rho;
}

Superoperator bordered(const Superoperator& generator) {
  Superoperator a = generator;
  a.row(kTraceRow).setZero();
  for (int i = 0; i < 4; ++i) a(kTraceRow, vec_index(i, i)) = 1.0;
  return a;
}

double relative_residual(const Superoperator& a, const DensityVector& x, const DensityVector& b) {
  const double r = (a * x - b).norm();
  const double scale = b.norm();
  return scale > 0.0 ? r / scale : r;
}

// Strongly connected components of the dependency graph of `a` (row i
// depends on unknown j when a(i, j) != 0), emitted so that every component
// only depends on itself and components emitted before it.
std::vector<std::vector<int>> dependency_blocks(const Superoperator& a) {
  constexpr int n = 16;
  std::array<int, n> index{}, low{};
  std::array<bool, n> on_stack{};
  index.fill(-1);
  std::vector<int> stack;
  std::vector<std::vector<int>> blocks;
  int counter = 0;

  // Tarjan; a component is complete once everything it depends on is, so the
  // emission order is already a valid solve order.
  const auto visit = [&](auto&& self, int v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w = 0; w < n; ++w) {
      if (w == v || a(v, w) == Complex{}) continue;
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> block;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        block.push_back(w);
      } while (w != v);
      std::sort(block.begin(), block.end());
      blocks.push_back(std::move(block));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(visit, v);
  return blocks;
}

// Block-triangular solve of a x = b. Blocks whose right-hand side vanishes
// exactly get an exactly zero solution, so decoupled coherences stay zero.
// Returns false if a diagonal block is singular.
bool block_solve(const Superoperator& a, const DensityVector& b, DensityVector& x) {
  x.setZero();
  for (const std::vector<int>& block : dependency_blocks(a)) {
    const int m = static_cast<int>(block.size());
    Eigen::Matrix<Complex, Eigen::Dynamic, 1> rhs(m);
    bool zero = true;
    for (int r = 0; r < m; ++r) {
      Complex v = b(block[r]);
      for (int j = 0; j < 16; ++j)
        if (x(j) != Complex{} && a(block[r], j) != Complex{}) v -= a(block[r], j) * x(j);
      rhs(r) = v;
      zero = zero && v == Complex{};
    }
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> sub(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) sub(r, c) = a(block[r], block[c]);
    const Eigen::FullPivLU<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> lu(sub);
    if (!lu.isInvertible()) return false;
    if (zero) continue;
    const Eigen::Matrix<Complex, Eigen::Dynamic, 1> y = lu.solve(rhs);
    for (int r = 0; r < m; ++r) x(block[r]) = y(r);
  }
  return true;
}

}  // namespace

RotatingFrameModel build_model(const DecayRates& rates, const DampingOptions& damping,
                               const DriveConfig& drive, const DetuningSet& det,
                               FrameConvention frame) {
  rates.validate();
  drive.validate();
  det.validate();

  RotatingFrameModel m;
  const double level2 = frame == FrameConvention::kLevelFrame ? det.delta_m : det.delta_p;
  m.level_energies = {0.0, level2, det.delta_c, det.delta_c + det.delta_p};
  if (frame == FrameConvention::kIndependentDetunings)
    m.magnetic_probe_offset = det.delta_m - det.delta_p;

  // theta = theta_c - theta_s; only the difference is observable.
  m.couplings = {
      {FieldRole::kControl, kLevel3, kLevel1, drive.omega_c, drive.theta},
      {FieldRole::kSignal, kLevel4, kLevel2, drive.omega_s, 0.0},
  };
  m.decays = {
      {kLevel4, kLevel3, rates.gamma43},
      {kLevel4, kLevel2, rates.gamma42},
      {kLevel3, kLevel1, rates.gamma31},
      {kLevel2, kLevel1, rates.gamma21},
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.dephasing[i][j] = i == j ? 0.0 : rates.gamma_c;
  if (!damping.gamma6_includes_dephasing) {
    m.dephasing[kLevel2][kLevel3] = 0.0;
    m.dephasing[kLevel3][kLevel2] = 0.0;
  }
  return m;
}

Superoperator build_zeroth_liouvillian(const RotatingFrameModel& model) {
  Superoperator l = commutator_superoperator(zeroth_hamiltonian(model));
  add_dissipation(model, l);
  return l;
}

Superoperator coupling_superoperator(int upper, int lower, Complex amplitude) {
  Hamiltonian h = Hamiltonian::Zero();
  add_drive(h, upper, lower, amplitude);
  return commutator_superoperator(h);
}

Superoperator shifted_generator(const RotatingFrameModel& model, const Superoperator& zeroth) {
  Superoperator g = zeroth;
  const double offset = model.magnetic_probe_offset;
  g(vec_index(kLevel2, kLevel1), vec_index(kLevel2, kLevel1)) += Complex{0.0, -offset};
  g(vec_index(kLevel1, kLevel2), vec_index(kLevel1, kLevel2)) += Complex{0.0, offset};
  return g;
}

int kernel_dimension(const Superoperator& generator, double tolerance) {
  Eigen::JacobiSVD<Superoperator> svd(generator);
  const auto& s = svd.singularValues();
  const double cutoff = tolerance * std::max(1.0, s(0));
  int dim = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) <= cutoff) ++dim;
  return dim;
}

DensityState zeroth_steady_state(const Superoperator& generator) {
  DensityState out;
  out.kernel_dimension = kernel_dimension(generator);
  if (out.kernel_dimension != 1)
    throw Error(ErrorCode::kDegenerateKernel,
                "zeroth-order generator kernel has dimension " +
                    std::to_string(out.kernel_dimension));
  const Superoperator a = bordered(generator);
  DensityVector b = DensityVector::Zero();
  b(kTraceRow) = 1.0;
  DensityVector x;
  if (!block_solve(a, b, x))
    throw Error(ErrorCode::kDegenerateKernel, "bordered zeroth-order system is singular");
  out.residual = relative_residual(a, x, b);
  out.rho = to_matrix(x);
  return out;
}

FirstOrderResponse first_order_response(const RotatingFrameModel& model,
                                        const Superoperator& zeroth, const DensityMatrix& rho0,
                                        ProbeChannel channel, Complex amplitude) {
  const Superoperator a = bordered(shifted_generator(model, zeroth));
  const Superoperator probe =
      channel == ProbeChannel::kElectric
          ? coupling_superoperator(kLevel4, kLevel3, amplitude)
          : coupling_superoperator(kLevel2, kLevel1, amplitude);
  DensityVector b = -(probe * to_vector(rho0));
  b(kTraceRow) = 0.0;  // first-order correction is traceless

  DensityVector x;
  if (!block_solve(a, b, x))
    throw Error(ErrorCode::kSingularShiftedGenerator, "shifted generator is singular");

  FirstOrderResponse out;
  out.residual = relative_residual(a, x, b);
  out.sigma = to_matrix(x);
  out.sigma43 = out.sigma(kLevel4, kLevel3);
  out.sigma21 = out.sigma(kLevel2, kLevel1);
  return out;
}

DensityMatrix steady_state_with_probe(const RotatingFrameModel& model, Complex probe_e,
                                      Complex probe_b) {
  Superoperator g = shifted_generator(model, build_zeroth_liouvillian(model));
  g += coupling_superoperator(kLevel4, kLevel3, probe_e);
  g += coupling_superoperator(kLevel2, kLevel1, probe_b);
  return zeroth_steady_state(g).rho;
}

OracleAlphaSet oracle_alpha_set(const RotatingFrameModel& model, const DipoleMoments& dipoles,
                                double gamma_scale) {
  const Superoperator l0 = build_zeroth_liouvillian(model);
  const DensityState state = zeroth_steady_state(l0);
  const FirstOrderResponse e = first_order_response(model, l0, state.rho, ProbeChannel::kElectric);
  const FirstOrderResponse b = first_order_response(model, l0, state.rho, ProbeChannel::kMagnetic);

  OracleAlphaSet out;
  out.reduced = ReducedResponse{e.sigma43, b.sigma43, e.sigma21, b.sigma21};
  out.alphas = scale_to_si(out.reduced, dipoles, gamma_scale);
  out.rho0 = state.rho;
  out.max_residual = std::max({state.residual, e.residual, b.residual});
  return out;
}

double AlphaComparison::max_deviation() const {
  return *std::max_element(deviation.begin(), deviation.end());
}

AlphaComparison compare_alpha(const ReducedResponse& oracle, const ReducedResponse& closed) {
  const std::array<Complex, 4> o{oracle.ee, oracle.eh, oracle.he, oracle.hh};
  const std::array<Complex, 4> c{closed.ee, closed.eh, closed.he, closed.hh};
  AlphaComparison out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.deviation[k] = relative_deviation(o[k], c[k]);
    if ((o[k] == Complex{}) != (c[k] == Complex{})) out.structural_zeros_match = false;
  }
  return out;
}

AlphaComparison compare_alpha(const OracleAlphaSet& oracle, const AlphaSet& closed) {
  return compare_alpha(ReducedResponse{oracle.alphas.ee, oracle.alphas.eh, oracle.alphas.he,
                                       oracle.alphas.hh},
                       ReducedResponse{closed.ee, closed.eh, closed.he, closed.hh});
}

}  // namespace chiral_nri::oracle
