// Copyright 2026 The Photonloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "photonloss/gates.hpp"
#include "photonloss/operator.hpp"
#include "photonloss/quadratic_form.hpp"

namespace photonloss {

/// Basis states with n_k < levels[k] on every mode k of a layout.
struct InteriorWindow {
  std::vector<std::size_t> levels;

  static InteriorWindow uniform(const ModeLayout& layout, std::size_t level);
  static InteriorWindow full(const ModeLayout& layout) { return {layout.dims()}; }
  bool operator==(const InteriorWindow&) const = default;
};

/// Flat indices of the window's basis states, in layout order.
std::vector<std::size_t> window_indices(const ModeLayout& layout, const InteriorWindow& window);

/// Rows and columns of `op` restricted to the window.
Matrix window_block(const Operator& op, const InteriorWindow& window);

/// max |A - e^{i phi} B| with phi = arg tr(B^dagger A).
double phase_aligned_distance(const Matrix& a, const Matrix& b);

struct SynthesisCertificate {
  std::string target_tag;
  std::vector<std::pair<std::string, double>> parameters;
  double residual = 0.0;
  std::optional<InteriorWindow> window;
  std::size_t truncation = 0;
  std::vector<std::pair<std::string, double>> metrics;

  /// Throws InvalidArgumentError when the name is absent.
  double parameter(const std::string& name) const;
  double metric(const std::string& name) const;
};

/// V U V^dagger.
Operator conjugate(const Operator& u, const Operator& v);

/// Residual between V e^{iH} V^dagger and exp(i V H V^dagger) on the window
/// (whole space when omitted). Local two-factor H and Local V stay
/// structured; anything else is expanded densely.
double conjugation_identity_check(const Operator& h, const Operator& v,
                                  const std::optional<InteriorWindow>& window = std::nullopt);

/// exp(i l1 q^3) on info mode 0 times exp(i m1 q^3) on ancilla mode 0.
Operator cubic_pair(const ModeLayout& layout, double lambda1, double mu1);

/// V U_0 V^dagger with V = cubic_pair(lambda1, mu1).
Operator cubic_dress(const Operator& seed, double lambda1, double mu1);

/// exp(i (q+p - 3 l1 q^2)_a (x) (q+p - 3 m1 q^2)_b) built from the generator.
Operator dressed_direct(const ModeLayout& layout, double lambda1, double mu1);

/// max-entry distance between V (q+p) V^dagger and q+p - 3 l q^2 on the
/// lowest `levels` states of a `dim`-level mode, V = exp(i l q^3).
double cubic_generator_transform_residual(std::size_t dim, double lambda, std::size_t levels);

struct CubicDressOptions {
  std::size_t truncation = 80;
  /// The window is the largest uniform one on which the direct route at
  /// `truncation` and at twice that agree to this tolerance.
  double convergence_tolerance = 1e-7;
  std::size_t max_level = 0;  // 0: truncation / 2
};

/// Conjugated cubic dress against the directly exponentiated generator on a
/// truncation-converged interior window. Throws TruncationError when no
/// window converges.
SynthesisCertificate certify_cubic_dress(double lambda1, double mu1, const CubicDressOptions& options = {});

/// Fit of the Gaussian templates
///   U2a = e^{i(l6 p + l5 p^2)} e^{-i l4 q^2} e^{i l3 p^2} e^{i l2 q^2}
///   U2b = e^{i(m6 p + m5 p^2)} e^{+i m4 q^2} e^{i m3 p^2} e^{i m2 q^2}
/// so that (U2a (x) U2b) conjugates the dressed generator
///   (seed_a - 3 l1 q^2) (x) (seed_b - 3 m1 q^2)
/// onto target_coeff * target_a (x) target_b.
struct ReductionProblem {
  QuadraticForm target_a;
  QuadraticForm target_b;
  double target_coeff = 1.0;
  QuadraticForm seed_a = QuadraticForm::q() + QuadraticForm::p();
  QuadraticForm seed_b = QuadraticForm::q() + QuadraticForm::p();
  double lambda1 = 0.0;
  double mu1 = 0.0;
  bool free_cubic = false;
  std::size_t starts = 8;
  std::uint64_t seed = 1;
  /// Nonzero: also compare the two exponentials at this truncation on a
  /// small interior window.
  std::size_t matrix_truncation = 0;
};

/// The ECS target -(gamma/2) (q^2 + p^2) (x) (q^2 - p^2).
ReductionProblem ecs_reduction_problem(double gamma, double lambda1, double mu1);

/// Single-mode template conjugation U f U^dagger; `sign4` is -1 for U2a, +1 for U2b.
QuadraticForm template_conjugate(const QuadraticForm& f, std::span<const double, 5> params, double sign4);

/// Coefficient-level residual: Frobenius norm of the difference of the two
/// 6x6 coefficient outer products, without the constant (x) constant entry.
double product_form_residual(const QuadraticForm& a, const QuadraticForm& b, double coeff, const QuadraticForm& ta,
                             const QuadraticForm& tb);

struct ReductionResult {
  std::vector<double> lambda;  // l2..l6
  std::vector<double> mu;      // m2..m6
  double lambda1 = 0.0;
  double mu1 = 0.0;
  QuadraticForm achieved_a;
  QuadraticForm achieved_b;
  double residual = 0.0;
  SynthesisCertificate certificate;
};

/// Seeded multistart Levenberg-Marquardt. Never assumes an exact solution
/// exists; the best iterate is returned with its residual.
ReductionResult gaussian_reduction_solve(const ReductionProblem& problem);

struct RankHarnessResult {
  std::size_t trials = 0;
  std::size_t violations = 0;
};

/// Random forms of every rank pushed through random affine-symplectic maps.
RankHarnessResult rank_invariance_harness(std::size_t trials, std::uint64_t seed);

/// Qubit-mediated parity-controlled squeeze: pulses
///   exp(-i (pi/2) n sigma_z), exp(-i strength G sigma_x), exp(+i (pi/2) n sigma_z)
/// with n the total info photon number. One ancilla mode.
struct MediatedProtocolSpec {
  double strength = 0.0;
  double stark_coupling = 1.0;
  double squeeze_coupling = 1.0;
  int qubit_init = +1;

  /// pi/(2 mu), strength/kappa, pi/(2 mu).
  std::array<double, 3> durations() const;
  void validate() const;
};

struct MediatedResult {
  /// Over info, ancilla and the qubit (aux factor of dimension 2).
  StateVector compound;
  /// Field state with the qubit projected on its dominant eigenvector.
  StateVector field;
  double purity = 0.0;
  double field_fidelity = 0.0;
  SynthesisCertificate certificate;
};

/// Field input over a layout with one ancilla and no aux. The oracle is the
/// PCS unitary with an all-ones coupling column, encode for qubit +1 and decode
/// for qubit -1.
MediatedResult mediated_pcs(const MediatedProtocolSpec& spec, const StateVector& field_in,
                            const BuildOptions& options = {});

}  // namespace photonloss
