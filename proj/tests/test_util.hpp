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
#include <unsupported/Eigen/MatrixFunctions>
#include <random>

#include "photonloss/fock.hpp"
#include "photonloss/operator.hpp"

namespace photonloss::testing {

inline StateVector random_state(const ModeLayout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(layout.total_dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(n(rng), n(rng));
  v.normalize();
  return StateVector(layout, v);
}

inline Matrix random_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

/// Oracle: exp(i t H) by Pade scaling-and-squaring on the dense matrix. Kept
/// independent of the eigendecomposition route used by the library.
inline Matrix pade_exp_i(const Matrix& h, double t) {
  const Matrix x = Complex(0.0, t) * h;
  return x.exp();
}

/// Dense embedding of a single-mode matrix into the layout (identity elsewhere),
/// built by explicit Kronecker products.
inline Matrix embed_dense(const ModeLayout& layout, std::size_t position, const Matrix& m) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < layout.num_modes(); ++k) {
    const auto d = static_cast<Eigen::Index>(layout.dims()[k]);
    const Matrix f = k == position ? m : Matrix(Matrix::Identity(d, d));
    Matrix next(out.rows() * d, out.cols() * d);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * d, j * d, d, d) = out(i, j) * f;
    out = std::move(next);
  }
  return out;
}

/// Pads a single-mode vector with zeros up to `dim`.
inline Vector pad(const Vector& v, Eigen::Index dim) {
  Vector out = Vector::Zero(dim);
  out.head(v.size()) = v;
  return out;
}

}  // namespace photonloss::testing
