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

#include "photonloss/fock.hpp"

#include <cmath>
#include <limits>

#include "photonloss/errors.hpp"

namespace photonloss {

namespace {

std::size_t checked_product(const std::vector<std::size_t>& dims, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d != 0 && total > cap / d) {
      throw DimensionCapError("layout exceeds the dimension cap of " + std::to_string(cap) + " amplitudes");
    }
    total *= d;
  }
  return total;
}

void require_same_layout(const StateVector& a, const StateVector& b) {
  if (!(a.layout() == b.layout())) {
    throw LayoutMismatchError("states live on different layouts");
  }
}

}  // namespace

std::string ModeId::str() const {
  switch (reg) {
    case Register::Info:
      return "info[" + std::to_string(index) + "]";
    case Register::Ancilla:
      return "anc[" + std::to_string(index) + "]";
    case Register::Aux:
      return "aux[" + std::to_string(index) + "]";
  }
  return "?";
}

ModeLayout ModeLayout::make(std::vector<std::size_t> info_dims, std::vector<std::size_t> anc_dims,
                            std::vector<std::size_t> aux_dims, std::size_t max_dim) {
  if (info_dims.empty()) {
    throw InvalidArgumentError("layout needs at least one information mode");
  }
  ModeLayout layout;
  layout.dims_.insert(layout.dims_.end(), info_dims.begin(), info_dims.end());
  layout.dims_.insert(layout.dims_.end(), anc_dims.begin(), anc_dims.end());
  layout.dims_.insert(layout.dims_.end(), aux_dims.begin(), aux_dims.end());
  for (std::size_t d : layout.dims_) {
    if (d < 1) {
      throw InvalidArgumentError("every mode dimension must be >= 1");
    }
  }
  layout.total_ = checked_product(layout.dims_, max_dim);
  layout.info_total_ = checked_product(info_dims, max_dim);
  layout.anc_total_ = checked_product(anc_dims, max_dim);
  layout.aux_total_ = checked_product(aux_dims, max_dim);
  layout.info_dims_ = std::move(info_dims);
  layout.anc_dims_ = std::move(anc_dims);
  layout.aux_dims_ = std::move(aux_dims);
  return layout;
}

std::size_t ModeLayout::position(ModeId mode) const {
  switch (mode.reg) {
    case Register::Info:
      if (mode.index < info_dims_.size()) return mode.index;
      break;
    case Register::Ancilla:
      if (mode.index < anc_dims_.size()) return info_dims_.size() + mode.index;
      break;
    case Register::Aux:
      if (mode.index < aux_dims_.size()) return info_dims_.size() + anc_dims_.size() + mode.index;
      break;
  }
  throw InvalidArgumentError("invalid mode " + mode.str());
}

std::size_t ModeLayout::flatten(std::span<const std::size_t> occupations) const {
  if (occupations.size() != dims_.size()) {
    throw InvalidArgumentError("expected " + std::to_string(dims_.size()) + " occupations, got " +
                               std::to_string(occupations.size()));
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (occupations[k] >= dims_[k]) {
      throw InvalidArgumentError("occupation " + std::to_string(occupations[k]) + " out of range for mode " +
                                 std::to_string(k) + " of dimension " + std::to_string(dims_[k]));
    }
    index = index * dims_[k] + occupations[k];
  }
  return index;
}

std::vector<std::size_t> ModeLayout::unflatten(std::size_t index) const {
  if (index >= total_) {
    throw InvalidArgumentError("basis index " + std::to_string(index) + " out of range");
  }
  std::vector<std::size_t> occ(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    occ[k] = index % dims_[k];
    index /= dims_[k];
  }
  return occ;
}

ModeLayout ModeLayout::info_layout() const { return make(info_dims_, {}); }

ModeLayout ModeLayout::without_aux() const { return make(info_dims_, anc_dims_); }

StateVector::StateVector(ModeLayout layout, Vector amps) : layout_(std::move(layout)), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != layout_.total_dim()) {
    throw InvalidArgumentError("amplitude vector has length " + std::to_string(amps_.size()) + ", layout needs " +
                               std::to_string(layout_.total_dim()));
  }
  if (!amps_.allFinite()) {
    throw InvalidArgumentError("state contains non-finite amplitudes");
  }
}

StateVector StateVector::zero(const ModeLayout& layout) {
  return StateVector(layout, Vector::Zero(static_cast<Eigen::Index>(layout.total_dim())));
}

StateVector StateVector::operator+(const StateVector& other) const {
  require_same_layout(*this, other);
  return StateVector(layout_, amps_ + other.amps_);
}

StateVector StateVector::operator-(const StateVector& other) const {
  require_same_layout(*this, other);
  return StateVector(layout_, amps_ - other.amps_);
}

StateVector operator*(Complex scale, const StateVector& s) { return StateVector(s.layout_, scale * s.amps_); }

StateVector basis_state(const ModeLayout& layout, std::span<const std::size_t> occupations) {
  StateVector s = StateVector::zero(layout);
  Vector amps = s.amps();
  amps[static_cast<Eigen::Index>(layout.flatten(occupations))] = 1.0;
  return StateVector(layout, std::move(amps));
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_layout(a, b);
  return a.amps().dot(b.amps());
}

double fidelity(const StateVector& a, const StateVector& b) {
  const double na = a.squared_norm();
  const double nb = b.squared_norm();
  if (na <= kZeroNormEpsilon * kZeroNormEpsilon || nb <= kZeroNormEpsilon * kZeroNormEpsilon) {
    throw ImpossibleEventError("fidelity of a zero-norm state");
  }
  const double f = std::norm(inner(a, b)) / (na * nb);
  return std::min(1.0, std::max(0.0, f));
}

std::pair<StateVector, double> normalize(const StateVector& state) {
  const double n = state.norm();
  if (!(n > kZeroNormEpsilon)) {
    throw ImpossibleEventError("cannot normalize a zero-norm state (impossible event)");
  }
  return {Complex(1.0 / n) * state, n};
}

std::vector<double> mode_marginal(const StateVector& state, ModeId mode) {
  const ModeLayout& layout = state.layout();
  const std::size_t pos = layout.position(mode);
  const std::size_t d = layout.dims()[pos];
  std::size_t inner_size = 1;
  for (std::size_t k = pos + 1; k < layout.num_modes(); ++k) inner_size *= layout.dims()[k];
  std::vector<double> marginal(d, 0.0);
  const Vector& amps = state.amps();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    marginal[(static_cast<std::size_t>(i) / inner_size) % d] += std::norm(amps[i]);
  }
  return marginal;
}

double tail_mass(const StateVector& state, ModeId mode, std::size_t cutoff) {
  const std::vector<double> marginal = mode_marginal(state, mode);
  double tail = 0.0;
  for (std::size_t n = cutoff + 1; n < marginal.size(); ++n) tail += marginal[n];
  return tail;
}

StateVector embed_info_state(const StateVector& info, const ModeLayout& full) {
  const ModeLayout& il = info.layout();
  if (il.num_anc() != 0 || il.num_aux() != 0 || il.info_dims() != full.info_dims()) {
    throw LayoutMismatchError("info state does not match the layout's information register");
  }
  const std::size_t rest = full.anc_total() * full.aux_total();
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(full.total_dim()));
  for (std::size_t s = 0; s < il.total_dim(); ++s) {
    amps[static_cast<Eigen::Index>(s * rest)] = info.amp(s);
  }
  return StateVector(full, std::move(amps));
}

StateVector tensor_product(const StateVector& a, const StateVector& b, const ModeLayout& full) {
  const std::size_t na = a.layout().total_dim();
  const std::size_t nb = b.layout().total_dim();
  std::vector<std::size_t> dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  if (dims != full.dims()) {
    throw LayoutMismatchError("factor layouts do not concatenate to the full layout");
  }
  Vector amps(static_cast<Eigen::Index>(full.total_dim()));
  for (std::size_t i = 0; i < na; ++i) {
    amps.segment(static_cast<Eigen::Index>(i * nb), static_cast<Eigen::Index>(nb)) = a.amp(i) * b.amps();
  }
  return StateVector(full, std::move(amps));
}

}  // namespace photonloss
