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

#include "photonloss/quadratic_form.hpp"

#include <cmath>

#include "photonloss/operator.hpp"

namespace photonloss {

namespace {

// Entire functions of delta = omega^2 used by the closed-form 2x2 flow:
// cos(omega), sin(omega)/omega and (1 - cos(omega))/omega^2. They continue
// to cosh/sinh for negative delta.
struct FlowCoefficients {
  double c, s, t;
};

FlowCoefficients flow_coefficients(double delta) {
  if (std::abs(delta) < 1e-6) {
    const double d2 = delta * delta;
    return {1.0 - delta / 2.0 + d2 / 24.0, 1.0 - delta / 6.0 + d2 / 120.0, 0.5 - delta / 24.0 + d2 / 720.0};
  }
  if (delta > 0) {
    const double w = std::sqrt(delta);
    return {std::cos(w), std::sin(w) / w, (1.0 - std::cos(w)) / delta};
  }
  const double k = std::sqrt(-delta);
  return {std::cosh(k), std::sinh(k) / k, (1.0 - std::cosh(k)) / delta};
}

}  // namespace

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
  return {qq + o.qq, pp + o.pp, qp + o.qp, q_lin + o.q_lin, p_lin + o.p_lin, constant + o.constant};
}

QuadraticForm operator*(double s, const QuadraticForm& f) {
  return {s * f.qq, s * f.pp, s * f.qp, s * f.q_lin, s * f.p_lin, s * f.constant};
}

Eigen::Matrix2d QuadraticForm::quadratic_block() const {
  Eigen::Matrix2d m;
  m << qq, qp / 2.0, qp / 2.0, pp;
  return m;
}

bool QuadraticForm::is_finite() const {
  for (double c : coefficients()) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

Matrix QuadraticForm::to_matrix(std::size_t dim) const {
  const Matrix q = single_mode::position(dim);
  const Matrix p = single_mode::momentum(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix h = qq * (q * q) + pp * (p * p) + (qp / 2.0) * (q * p + p * q) + q_lin * q + p_lin * p;
  h += constant * Matrix::Identity(d, d);
  return 0.5 * (h + h.adjoint());
}

int quadratic_rank(const QuadraticForm& f, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(f.quadratic_block());
  int rank = 0;
  for (int k = 0; k < 2; ++k) {
    if (std::abs(solver.eigenvalues()[k]) > tol) ++rank;
  }
  return rank;
}

AffineSymplecticMap AffineSymplecticMap::of_gaussian(const QuadraticForm& g) {
  // i[H, q] = qp q + 2 pp p + p_lin,  i[H, p] = -2 qq q - qp p - q_lin.
  Eigen::Matrix2d m;
  m << g.qp, 2.0 * g.pp, -2.0 * g.qq, -g.qp;
  const Eigen::Vector2d v(g.p_lin, -g.q_lin);
  const double delta = m.determinant();
  const FlowCoefficients f = flow_coefficients(delta);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  AffineSymplecticMap out;
  out.linear = f.c * id + f.s * m;
  out.shift = (f.s * id + f.t * m) * v;
  return out;
}

AffineSymplecticMap AffineSymplecticMap::after(const AffineSymplecticMap& other) const {
  AffineSymplecticMap out;
  out.linear = linear * other.linear;
  out.shift = linear * other.shift + shift;
  return out;
}

QuadraticForm AffineSymplecticMap::substitute_into(const QuadraticForm& f) const {
  const Eigen::Matrix2d q = f.quadratic_block();
  const Eigen::Vector2d l(f.q_lin, f.p_lin);
  const Eigen::Matrix2d q2 = linear.transpose() * q * linear;
  const Eigen::Vector2d l2 = linear.transpose() * (2.0 * q * shift + l);
  const double c2 = shift.dot(q * shift) + l.dot(shift) + f.constant;
  return {q2(0, 0), q2(1, 1), q2(0, 1) + q2(1, 0), l2[0], l2[1], c2};
}

bool AffineSymplecticMap::is_symplectic(double tol) const { return std::abs(linear.determinant() - 1.0) <= tol; }

QuadraticForm conjugate_form(const QuadraticForm& f, const QuadraticForm& generator) {
  return AffineSymplecticMap::of_gaussian(generator).substitute_into(f);
}

}  // namespace photonloss
