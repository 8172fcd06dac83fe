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

#include "photonloss/gates.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "photonloss/errors.hpp"

namespace photonloss {

std::string to_string(Scheme s) { return s == Scheme::ECS ? "ECS" : "PCS"; }
std::string to_string(Direction d) { return d == Direction::Encode ? "encode" : "decode"; }

CodingSpec CodingSpec::ecs(Eigen::MatrixXd gamma, Direction direction) {
  CodingSpec c{Scheme::ECS, std::move(gamma), 0.0, direction};
  c.validate();
  return c;
}

CodingSpec CodingSpec::pcs(Eigen::MatrixXd gamma, double strength, Direction direction) {
  CodingSpec c{Scheme::PCS, std::move(gamma), strength, direction};
  c.validate();
  return c;
}

CodingSpec CodingSpec::inverse() const {
  CodingSpec c = *this;
  c.direction = direction == Direction::Encode ? Direction::Decode : Direction::Encode;
  return c;
}

void CodingSpec::validate() const {
  if (gamma.rows() == 0 || gamma.cols() == 0) throw InvalidArgumentError("coupling matrix is empty");
  if (!gamma.allFinite()) throw InvalidArgumentError("coupling matrix has non-finite entries");
  if (!std::isfinite(strength)) throw InvalidArgumentError("strength is not finite");
  if (scheme == Scheme::PCS) {
    for (Eigen::Index i = 0; i < gamma.size(); ++i) {
      const double g = gamma.data()[i];
      if (g != 0.0 && g != 1.0) throw InvalidArgumentError("PCS coupling entries must be 0 or 1");
    }
  }
}

double CodingSpec::sector_squeeze(std::span<const std::size_t> occupations, std::size_t anc_mode) const {
  const auto j = static_cast<Eigen::Index>(anc_mode);
  if (scheme == Scheme::ECS) {
    double g = 0.0;
    for (Eigen::Index i = 0; i < gamma.rows(); ++i) g += gamma(i, j) * static_cast<double>(occupations[i]);
    return g;
  }
  std::size_t weight = 0;
  for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
    if (gamma(i, j) != 0.0) weight += occupations[i];
  }
  return weight % 2 == 0 ? strength : -strength;
}

std::vector<double> CodingSpec::column(std::size_t anc_mode) const {
  const auto j = static_cast<Eigen::Index>(anc_mode);
  std::vector<double> out(static_cast<std::size_t>(gamma.rows()));
  for (Eigen::Index i = 0; i < gamma.rows(); ++i) out[static_cast<std::size_t>(i)] = gamma(i, j);
  return out;
}

bool squeeze_fits(double r, std::size_t dim) {
  const double s = std::sinh(std::abs(r));
  const double c = std::cosh(r);
  return s * s + 6.0 * s * c < static_cast<double>(dim);
}

Operator number_op(const ModeLayout& layout, ModeId mode) {
  return Operator::local(layout, {{mode, single_mode::number(layout.dim(mode))}});
}

Operator parity_op(const ModeLayout& layout, std::span<const double> column) {
  if (column.size() != layout.num_info()) throw InvalidArgumentError("parity column length must equal the info mode count");
  std::vector<LocalFactor> factors;
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i] != 0.0 && column[i] != 1.0) throw InvalidArgumentError("parity column entries must be 0 or 1");
    if (column[i] == 0.0) continue;
    const auto d = static_cast<Eigen::Index>(layout.info_dims()[i]);
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) m(n, n) = n % 2 == 0 ? 1.0 : -1.0;
    factors.push_back({ModeId::info(i), std::move(m)});
  }
  return Operator::local(layout, std::move(factors), 1.0, true);
}

Matrix squeeze_generator_matrix(std::size_t dim) {
  const Matrix a = single_mode::annihilation(dim);
  const Matrix ad = single_mode::creation(dim);
  return ad * ad + a * a;
}

Operator squeeze_generator(const ModeLayout& layout, ModeId anc_mode) {
  if (anc_mode.reg != Register::Ancilla) throw InvalidArgumentError("squeeze generator acts on an ancilla mode");
  return Operator::local(layout, {{anc_mode, squeeze_generator_matrix(layout.dim(anc_mode))}});
}

namespace {

Operator controlled_squeeze(const ModeLayout& layout, const CodingSpec& coding, const BuildOptions& options) {
  coding.validate();
  if (layout.num_aux() != 0) throw LayoutMismatchError("coding unitaries act on layouts without aux factors");
  if (coding.num_info() != layout.num_info() || coding.num_anc() != layout.num_anc()) {
    std::ostringstream msg;
    msg << "coupling matrix is " << coding.num_info() << "x" << coding.num_anc() << " but layout has "
        << layout.num_info() << " info and " << layout.num_anc() << " ancilla modes";
    throw LayoutMismatchError(msg.str());
  }
  const double sign = coding.direction == Direction::Encode ? -1.0 : 1.0;

  std::map<std::size_t, HermitianEigen> generators;
  std::map<std::pair<std::size_t, double>, std::shared_ptr<const Matrix>> cache;
  auto block = [&](std::size_t dim, double g) -> std::shared_ptr<const Matrix> {
    if (g == 0.0) return nullptr;
    auto key = std::make_pair(dim, g);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (options.check_truncation && !squeeze_fits(2.0 * g, dim)) {
      std::ostringstream msg;
      msg << "squeeze g=" << g << " (r=" << 2.0 * std::abs(g) << ") does not fit an ancilla truncation of " << dim;
      throw TruncationError(msg.str());
    }
    auto gen = generators.find(dim);
    if (gen == generators.end()) gen = generators.emplace(dim, eigh(squeeze_generator_matrix(dim))).first;
    auto m = std::make_shared<const Matrix>(gen->second.exp_i(sign * g));
    cache.emplace(key, m);
    return m;
  };

  const ModeLayout info = layout.info_layout();
  Operator::SectorFactors blocks(layout.info_total());
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const auto n = info.unflatten(s);
    blocks[s].resize(layout.num_anc());
    for (std::size_t j = 0; j < layout.num_anc(); ++j) {
      blocks[s][j] = block(layout.anc_dims()[j], coding.sector_squeeze(n, j));
    }
  }
  return Operator::sector_blocks(layout, std::move(blocks), true);
}

}  // namespace

Operator ecs_unitary(const ModeLayout& layout, const CodingSpec& coding, const BuildOptions& options) {
  if (coding.scheme != Scheme::ECS) throw InvalidArgumentError("ecs_unitary needs an ECS coding");
  return controlled_squeeze(layout, coding, options);
}

Operator pcs_unitary(const ModeLayout& layout, const CodingSpec& coding, const BuildOptions& options) {
  if (coding.scheme != Scheme::PCS) throw InvalidArgumentError("pcs_unitary needs a PCS coding");
  return controlled_squeeze(layout, coding, options);
}

Operator coding_unitary(const ModeLayout& layout, const CodingSpec& coding, const BuildOptions& options) {
  return controlled_squeeze(layout, coding, options);
}

Operator quadrature_op(const ModeLayout& layout, ModeId mode, Quadrature which) {
  const std::size_t d = layout.dim(mode);
  return Operator::local(layout, {{mode, which == Quadrature::Q ? single_mode::position(d) : single_mode::momentum(d)}});
}

Operator gaussian_gate(const ModeLayout& layout, ModeId mode, const QuadraticForm& form) {
  if (!form.is_finite()) throw InvalidArgumentError("quadratic form has non-finite coefficients");
  return Operator::local(layout, {{mode, expm_i_hermitian(form.to_matrix(layout.dim(mode)), 1.0)}}, 1.0, true);
}

Operator cubic_phase_gate(const ModeLayout& layout, ModeId mode, double strength) {
  if (!std::isfinite(strength)) throw InvalidArgumentError("cubic strength is not finite");
  const HermitianEigen q = eigh(single_mode::position(layout.dim(mode)));
  Vector phases(q.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    const double w = q.values[k];
    phases[k] = std::polar(1.0, strength * w * w * w);
  }
  Matrix u = q.vectors * phases.asDiagonal() * q.vectors.adjoint();
  return Operator::local(layout, {{mode, std::move(u)}}, 1.0, true);
}

namespace {
void require_seed_modes(const ModeLayout& layout) {
  if (layout.num_info() < 1 || layout.num_anc() < 1) {
    throw LayoutMismatchError("two-mode seed needs info mode 0 and ancilla mode 0");
  }
}
Matrix q_plus_p(std::size_t d) { return single_mode::position(d) + single_mode::momentum(d); }
}  // namespace

Operator two_mode_seed_generator(const ModeLayout& layout) {
  require_seed_modes(layout);
  const ModeId a = ModeId::info(0), b = ModeId::anc(0);
  return Operator::local(layout, {{a, q_plus_p(layout.dim(a))}, {b, q_plus_p(layout.dim(b))}});
}

Operator two_mode_seed(const ModeLayout& layout) {
  require_seed_modes(layout);
  const ModeId a = ModeId::info(0), b = ModeId::anc(0);
  return Operator::product_exp(layout, a, q_plus_p(layout.dim(a)), b, q_plus_p(layout.dim(b)), 1.0);
}

}  // namespace photonloss
