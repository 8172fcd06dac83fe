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

#include <memory>
#include <utility>
#include <vector>

#include "photonloss/fock.hpp"

namespace photonloss {

/// Default cap on the dimension of a dense expansion (to_dense, dense exp).
inline constexpr std::size_t kDenseCap = 4096;

enum class LadderKind { Annihilate, Create };

/// A single-mode matrix placed on one mode of a layout.
struct LocalFactor {
  ModeId mode;
  Matrix matrix;
};

/// Eigendecomposition H = V diag(w) V^dagger of a Hermitian matrix.
struct HermitianEigen {
  Eigen::VectorXd values;
  Matrix vectors;

  /// exp(i * t * H).
  Matrix exp_i(double t) const;
};

/// Throws InvalidArgumentError when `h` is not Hermitian to 1e-12 (relative).
HermitianEigen eigh(const Matrix& h);

/// exp(i * t * H) for Hermitian H, through the eigendecomposition.
Matrix expm_i_hermitian(const Matrix& h, double t);

/// Linear operator on a layout's Hilbert space.
///
/// Several representations share one interface; all of them are immutable
/// and cheap to copy. Structured forms avoid materialising total_dim^2
/// matrices:
///  - Local: a Kronecker product of single-mode factors (identity elsewhere).
///  - SectorBlocks: block-diagonal over information occupation sectors, each
///    block a Kronecker product over ancilla modes (identity on aux).
///  - ProductExp: exp(i c A (x) B) for Hermitian single-mode A and B.
///  - Sum / Chain: linear combinations and products of the above.
class Operator {
 public:
  enum class Kind { Dense, Local, SectorBlocks, ProductExp, Sum, Chain };
  using SectorFactors = std::vector<std::vector<std::shared_ptr<const Matrix>>>;

  static Operator identity(const ModeLayout& layout);
  static Operator dense(const ModeLayout& layout, Matrix matrix, bool unitary = false);
  static Operator local(const ModeLayout& layout, std::vector<LocalFactor> factors, Complex scale = 1.0,
                        bool unitary = false);
  /// blocks[s][j] acts on ancilla mode j inside information sector s.
  static Operator sector_blocks(const ModeLayout& layout, SectorFactors blocks, bool unitary = false);
  static Operator product_exp(const ModeLayout& layout, ModeId mode_a, const Matrix& a, ModeId mode_b,
                              const Matrix& b, double coeff);
  static Operator sum(const ModeLayout& layout, std::vector<std::pair<Complex, Operator>> terms);
  /// ops[0] * ops[1] * ... ; the last operator acts first.
  static Operator chain(std::vector<Operator> ops);

  const ModeLayout& layout() const { return layout_; }
  Kind kind() const;
  /// True when the constructor knows the operator is unitary.
  bool is_unitary() const { return unitary_; }
  bool has_block_form() const { return kind() == Kind::SectorBlocks; }

  /// Block of ancilla mode j in information sector s (identity blocks are
  /// stored implicitly and returned materialised).
  Matrix sector_block(std::size_t sector, std::size_t anc_mode) const;
  const std::vector<LocalFactor>& local_factors() const;
  Complex local_scale() const;

  Vector apply(const Vector& v) const;
  StateVector apply(const StateVector& s) const;
  Operator adjoint() const;
  /// Dense matrix; throws DimensionCapError above `cap`.
  Matrix to_dense(std::size_t cap = kDenseCap) const;

  Operator operator*(const Operator& rhs) const { return chain({*this, rhs}); }

  struct Rep;
  friend double unitarity_defect(const Operator& op);

 private:
  Operator(ModeLayout layout, std::shared_ptr<const Rep> rep, bool unitary);

  ModeLayout layout_;
  std::shared_ptr<const Rep> rep_;
  bool unitary_ = false;
};

/// Matrix-vector product; the result is not normalised.
inline StateVector apply(const Operator& op, const StateVector& state) { return op.apply(state); }

/// Truncated ladder operator: <n-1|a|n> = sqrt(n); the creation operator maps
/// the top level to zero.
Operator ladder_op(const ModeLayout& layout, ModeId mode, LadderKind kind);

/// exp(i * t * H) for a Hermitian generator. Local one- and two-factor
/// generators stay structured; anything else goes through a dense expansion.
Operator exp_i(const Operator& hermitian, double t = 1.0);

/// max |U^dagger U - I| entry. Structured operators report the largest
/// defect among their unitary building blocks.
double unitarity_defect(const Operator& op);

double max_entry_distance(const Matrix& a, const Matrix& b);

namespace single_mode {
Matrix annihilation(std::size_t dim);
Matrix creation(std::size_t dim);
Matrix number(std::size_t dim);
/// q = (a + a^dagger) / sqrt(2)
Matrix position(std::size_t dim);
/// p = -i (a - a^dagger) / sqrt(2)
Matrix momentum(std::size_t dim);
}  // namespace single_mode

}  // namespace photonloss
