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

#include <optional>
#include <vector>

#include "photonloss/gates.hpp"
#include "photonloss/measurement.hpp"
#include "photonloss/operator.hpp"

namespace photonloss {

/// A single photon lost from a weighted superposition of info modes
/// (sum_i w_i a_i) or of ancilla modes (sum_j w_j b_j), or no loss.
struct LossEvent {
  enum class Kind { None, Info, Ancilla };
  Kind kind = Kind::None;
  std::vector<Complex> weights;

  static LossEvent none() { return {}; }
  /// Uniform weights 1/sqrt(n) when `weights` is empty.
  static LossEvent info(std::size_t num_info, std::vector<Complex> weights = {});
  static LossEvent ancilla(std::size_t num_anc, std::vector<Complex> weights = {});
  /// All weight on one mode.
  static LossEvent info_mode(std::size_t num_info, std::size_t i);
  static LossEvent ancilla_mode(std::size_t num_anc, std::size_t j);

  /// Throws InvalidArgumentError unless the weights are finite and of unit norm (1e-12).
  void validate(const ModeLayout& layout) const;
};

std::string to_string(LossEvent::Kind kind);

/// sum_k w_k (annihilation on mode k) over the event's register.
Operator collective_loss_op(const ModeLayout& layout, const LossEvent& event);

struct ProtocolOptions {
  BuildOptions build;
  /// Levels at or above this fraction of an ancilla truncation count toward
  /// the reported truncation tail.
  double tail_fraction = 0.9;
};

struct ProtocolReport {
  LossEvent event;
  CodingSpec coding;
  StateVector input_info;
  /// Normalised U^-1 L U (input (x) |0>_A).
  StateVector state;
  /// |L U (input (x) |0>_A)|; 1 for no loss.
  double collapse_norm = 1.0;
  CountDistribution distribution;
  ClassProbabilities classes;
  /// Most probable ancilla record (first in record order on ties).
  CountRecord heralded;
  OutcomeClass heralded_class;
  /// Conditional info state for the heralded record, after any recovery.
  std::optional<StateVector> recovered_info;
  bool recovery_applied = false;
  std::optional<double> fidelity;
  /// Largest ancilla tail mass above the tail fraction, over the lossy
  /// encoded state and the decoded state.
  double truncation_tail = 0.0;
};

/// Encode, inject `event`, decode with the inverse coding. The ancillas start
/// in vacuum. Throws ImpossibleEventError when the loss annihilates the state.
ProtocolReport run_protocol(const ModeLayout& layout, const StateVector& input_info, const CodingSpec& coding,
                            const LossEvent& event, const ProtocolOptions& options = {});

/// Conditional info state after one click on ancilla j, computed sector by
/// sector: each sector is weighted by sinh(2 g_j(n)), which under PCS is
/// sinh(2 strength) Pi_j. Throws ImpossibleEventError when every weight vanishes.
StateVector info_distortion_after_ancilla_loss(const StateVector& input_info, const CodingSpec& coding,
                                               std::size_t anc_mode);

/// Applies Pi_j to an info-register state. PCS only; ECS throws
/// UnsupportedRecoveryError.
StateVector parity_correction(const StateVector& info_state, const CodingSpec& coding, std::size_t anc_mode);

/// The K single-photon product states |1 0 .. 0>, |0 1 .. 0>, ...
std::vector<StateVector> code_words(std::size_t num_info, std::size_t info_dim = 2);

}  // namespace photonloss
