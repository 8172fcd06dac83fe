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

#include <Eigen/Dense>
#include <array>

#include "photonloss/fock.hpp"

namespace photonloss {

/// Single-mode real polynomial
///   qq q^2 + pp p^2 + qp (qp + pq)/2 + q_lin q + p_lin p + constant
/// in the canonical quadratures. The cross term is Weyl (symmetric) ordered.
struct QuadraticForm {
  double qq = 0.0;
  double pp = 0.0;
  double qp = 0.0;
  double q_lin = 0.0;
  double p_lin = 0.0;
  double constant = 0.0;

  static QuadraticForm q() { return {0, 0, 0, 1, 0, 0}; }
  static QuadraticForm p() { return {0, 0, 0, 0, 1, 0}; }
  static QuadraticForm q_squared() { return {1, 0, 0, 0, 0, 0}; }
  static QuadraticForm p_squared() { return {0, 1, 0, 0, 0, 0}; }

  QuadraticForm operator+(const QuadraticForm& o) const;
  QuadraticForm operator-(const QuadraticForm& o) const { return *this + (-1.0) * o; }
  friend QuadraticForm operator*(double s, const QuadraticForm& f);
  bool operator==(const QuadraticForm&) const = default;

  /// Symmetric 2x2 matrix Q with x^T Q x the quadratic part, x = (q, p).
  Eigen::Matrix2d quadratic_block() const;
  /// (qq, pp, qp, q_lin, p_lin, constant)
  std::array<double, 6> coefficients() const { return {qq, pp, qp, q_lin, p_lin, constant}; }
  static QuadraticForm from_coefficients(const std::array<double, 6>& c) { return {c[0], c[1], c[2], c[3], c[4], c[5]}; }

  bool is_finite() const;
  /// Hermitian matrix on a `dim`-level truncation, using products of the
  /// truncated q and p matrices.
  Matrix to_matrix(std::size_t dim) const;
};

/// Numerical rank of the quadratic block.
int quadratic_rank(const QuadraticForm& f, double tol = 1e-10);

/// Affine map x -> S x + d on x = (q, p).
struct AffineSymplecticMap {
  Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
  Eigen::Vector2d shift = Eigen::Vector2d::Zero();

  /// Heisenberg action U x U^dagger of U = exp(i H_form) for a quadratic
  /// generator: the flow x' = M x + v integrated to t = 1.
  static AffineSymplecticMap of_gaussian(const QuadraticForm& generator);

  /// this(other(x)).
  AffineSymplecticMap after(const AffineSymplecticMap& other) const;
  /// Substitutes x -> S x + d into f.
  QuadraticForm substitute_into(const QuadraticForm& f) const;
  /// det S = 1 to `tol`.
  bool is_symplectic(double tol = 1e-10) const;
};

/// U f U^dagger for a Gaussian gate U = exp(i H_generator).
QuadraticForm conjugate_form(const QuadraticForm& f, const QuadraticForm& generator);

}  // namespace photonloss
