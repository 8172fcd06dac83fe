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
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace photonloss {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default cap on the number of amplitudes in a layout (2^21).
inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 21;

/// Norms at or below this are treated as zero by normalize().
inline constexpr double kZeroNormEpsilon = 1e-14;

enum class Register { Info, Ancilla, Aux };

/// Identifies one mode by register and index within that register.
struct ModeId {
  Register reg = Register::Info;
  std::size_t index = 0;

  static ModeId info(std::size_t i) { return {Register::Info, i}; }
  static ModeId anc(std::size_t j) { return {Register::Ancilla, j}; }
  static ModeId aux(std::size_t k) { return {Register::Aux, k}; }

  bool operator==(const ModeId&) const = default;
  std::string str() const;
};

/// Registry of information, ancilla and auxiliary factors with their
/// truncation sizes.
///
/// Basis indices are row-major over the concatenated per-mode dims in the
/// order info modes, ancilla modes, aux factors. The aux register holds
/// finite-level systems (e.g. a two-level mediator) and is empty for
/// protocol layouts.
class ModeLayout {
 public:
  ModeLayout() = default;

  static ModeLayout make(std::vector<std::size_t> info_dims,
                         std::vector<std::size_t> anc_dims,
                         std::vector<std::size_t> aux_dims = {},
                         std::size_t max_dim = kDefaultDimCap);

  const std::vector<std::size_t>& info_dims() const { return info_dims_; }
  const std::vector<std::size_t>& anc_dims() const { return anc_dims_; }
  const std::vector<std::size_t>& aux_dims() const { return aux_dims_; }
  /// All per-mode dims in index order.
  const std::vector<std::size_t>& dims() const { return dims_; }

  std::size_t num_info() const { return info_dims_.size(); }
  std::size_t num_anc() const { return anc_dims_.size(); }
  std::size_t num_aux() const { return aux_dims_.size(); }
  std::size_t num_modes() const { return dims_.size(); }

  std::size_t total_dim() const { return total_; }
  std::size_t info_total() const { return info_total_; }
  std::size_t anc_total() const { return anc_total_; }
  std::size_t aux_total() const { return aux_total_; }

  /// Position of a mode in dims(); throws InvalidArgumentError.
  std::size_t position(ModeId mode) const;
  std::size_t dim(ModeId mode) const { return dims_[position(mode)]; }

  std::size_t flatten(std::span<const std::size_t> occupations) const;
  std::vector<std::size_t> unflatten(std::size_t index) const;

  /// The info-only layout with the same info dims.
  ModeLayout info_layout() const;
  /// Same layout without the aux register.
  ModeLayout without_aux() const;

  bool operator==(const ModeLayout& other) const { return dims_ == other.dims_ && info_dims_ == other.info_dims_ && anc_dims_ == other.anc_dims_; }

 private:
  std::vector<std::size_t> info_dims_, anc_dims_, aux_dims_, dims_;
  std::size_t total_ = 0, info_total_ = 0, anc_total_ = 0, aux_total_ = 0;
};

/// Free-function spelling of ModeLayout::make.
inline ModeLayout make_layout(std::vector<std::size_t> info_dims, std::vector<std::size_t> anc_dims) {
  return ModeLayout::make(std::move(info_dims), std::move(anc_dims));
}

/// Complex amplitudes over a layout's occupation-number basis.
class StateVector {
 public:
  StateVector() = default;
  /// Throws if the length mismatches or any amplitude is NaN/Inf.
  StateVector(ModeLayout layout, Vector amps);

  static StateVector zero(const ModeLayout& layout);

  const ModeLayout& layout() const { return layout_; }
  const Vector& amps() const { return amps_; }
  Complex amp(std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
  Complex amp(std::span<const std::size_t> occupations) const { return amp(layout_.flatten(occupations)); }

  double norm() const { return amps_.norm(); }
  double squared_norm() const { return amps_.squaredNorm(); }

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;
  friend StateVector operator*(Complex scale, const StateVector& s);

 private:
  ModeLayout layout_;
  Vector amps_;
};

StateVector basis_state(const ModeLayout& layout, std::span<const std::size_t> occupations);
inline StateVector basis_state(const ModeLayout& layout, std::initializer_list<std::size_t> occupations) {
  std::vector<std::size_t> occ(occupations);
  return basis_state(layout, occ);
}

/// <a|b>, conjugate-linear in a.
Complex inner(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 / (|a|^2 |b|^2). Throws ImpossibleEventError on a zero-norm input.
double fidelity(const StateVector& a, const StateVector& b);

/// Returns the unit-norm state and the norm it had before.
std::pair<StateVector, double> normalize(const StateVector& state);

/// Photon-number distribution of one mode (all other modes summed over).
std::vector<double> mode_marginal(const StateVector& state, ModeId mode);

/// Probability of finding more than `cutoff` photons in the mode.
double tail_mass(const StateVector& state, ModeId mode, std::size_t cutoff);

/// Places an info-register state into `full` with every other factor in
/// its ground level |0>.
StateVector embed_info_state(const StateVector& info, const ModeLayout& full);

/// Product state a (x) b where a spans the leading factors of `full` and b the
/// trailing ones.
StateVector tensor_product(const StateVector& a, const StateVector& b, const ModeLayout& full);

}  // namespace photonloss
