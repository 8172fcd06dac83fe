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
#include <span>
#include <string>

#include "photonloss/operator.hpp"
#include "photonloss/quadratic_form.hpp"

namespace photonloss {

enum class Scheme { ECS, PCS };
enum class Direction { Encode, Decode };
enum class Quadrature { Q, P };

std::string to_string(Scheme s);
std::string to_string(Direction d);

/// Which controlled-squeezing coding to build.
///
/// ECS: real coupling gamma(i, j); the ancilla j squeeze in a sector with
/// occupations n is g_j = sum_i gamma(i, j) n_i.
/// PCS: binary coupling and strength; g_j = strength * (-1)^(sum_i gamma(i, j) n_i).
/// Encode applies exp(-i g_j (b_j^dagger^2 + b_j^2)) per ancilla, decode the inverse.
struct CodingSpec {
  Scheme scheme = Scheme::ECS;
  Eigen::MatrixXd gamma;
  double strength = 0.0;
  Direction direction = Direction::Encode;

  static CodingSpec ecs(Eigen::MatrixXd gamma, Direction direction = Direction::Encode);
  static CodingSpec pcs(Eigen::MatrixXd gamma, double strength, Direction direction = Direction::Encode);

  std::size_t num_info() const { return static_cast<std::size_t>(gamma.rows()); }
  std::size_t num_anc() const { return static_cast<std::size_t>(gamma.cols()); }

  /// Same coupling, opposite direction.
  CodingSpec inverse() const;
  /// Throws InvalidArgumentError on non-finite or (PCS) non-binary entries.
  void validate() const;
  /// Signed squeeze g_j for ancilla j in the sector with info occupations n.
  double sector_squeeze(std::span<const std::size_t> occupations, std::size_t anc_mode) const;
  /// Column j as a vector.
  std::vector<double> column(std::size_t anc_mode) const;

  bool operator==(const CodingSpec& o) const {
    return scheme == o.scheme && gamma == o.gamma && strength == o.strength && direction == o.direction;
  }
};

struct BuildOptions {
  /// Reject squeezers whose predicted photon support exceeds the truncation.
  bool check_truncation = true;
};

/// True when a squeezed vacuum of magnitude r fits in `dim` levels:
/// sinh^2 r + 6 sinh r cosh r < dim.
bool squeeze_fits(double r, std::size_t dim);

Operator number_op(const ModeLayout& layout, ModeId mode);
/// (-1)^(sum_i column_i n_i) over the information modes; column must be binary.
Operator parity_op(const ModeLayout& layout, std::span<const double> column);

/// b^dagger^2 + b^2 on one ancilla mode.
Operator squeeze_generator(const ModeLayout& layout, ModeId anc_mode);
Matrix squeeze_generator_matrix(std::size_t dim);

/// exp(-/+ i sum_ij gamma_ij n_i (x) (b_j^dagger^2 + b_j^2)), built sector by sector.
Operator ecs_unitary(const ModeLayout& layout, const CodingSpec& coding, const BuildOptions& options = {});
/// exp(-/+ i strength sum_j Pi_j (x) (b_j^dagger^2 + b_j^2)), built sector by sector.
Operator pcs_unitary(const ModeLayout& layout, const CodingSpec& coding, const BuildOptions& options = {});
/// Dispatches on coding.scheme.
Operator coding_unitary(const ModeLayout& layout, const CodingSpec& coding, const BuildOptions& options = {});

Operator quadrature_op(const ModeLayout& layout, ModeId mode, Quadrature which);
/// exp(i H_form) on one mode.
Operator gaussian_gate(const ModeLayout& layout, ModeId mode, const QuadraticForm& form);
/// exp(i strength q^3) on one mode (q^3 is the cube of the truncated q).
Operator cubic_phase_gate(const ModeLayout& layout, ModeId mode, double strength);

/// (q_a + p_a) (x) (q_b + p_b) on info mode 0 and ancilla mode 0.
Operator two_mode_seed_generator(const ModeLayout& layout);
/// exp(i (q_a + p_a) (x) (q_b + p_b)).
Operator two_mode_seed(const ModeLayout& layout);

}  // namespace photonloss
