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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "photonloss/fock.hpp"
#include "photonloss/gates.hpp"

namespace photonloss {

struct LossEvent;

/// Photons counted per ancilla mode and the probability of that record.
struct CountRecord {
  std::vector<std::size_t> counts;
  double probability = 0.0;
};

/// Every ancilla occupation record, in lexicographic (row-major) order.
using CountDistribution = std::vector<CountRecord>;

struct OutcomeClass {
  enum class Tag { NoLoss, AncillaLoss, InfoLossDetected, Ambiguous };
  Tag tag = Tag::Ambiguous;
  /// Clicked ancilla mode for AncillaLoss; info mode whose coupling support
  /// explains the clicks for InfoLossDetected.
  std::size_t mode = 0;

  bool operator==(const OutcomeClass&) const = default;
  std::string str() const;
};

/// Total probability of each outcome class.
struct ClassProbabilities {
  double no_loss = 0.0;
  double ancilla_loss = 0.0;
  double info_loss_detected = 0.0;
  double ambiguous = 0.0;
};

/// Exact joint ancilla count distribution; info and aux factors are summed over.
CountDistribution count_distribution(const StateVector& state);

/// Conditional info-register state for an ancilla record, and its probability.
/// Throws ImpossibleEventError on a zero-probability record.
std::pair<StateVector, double> project_counts(const StateVector& state, std::span<const std::size_t> counts);

/// Photon-number pmf of a squeezed vacuum of magnitude r: the state
/// exp(-i g (b^dagger^2 + b^2))|0> has r = 2|g|. Throws for |r| >= 25.
double squeezed_vacuum_pmf(double r, std::size_t m);

/// The all-zero-count probability after an information photon loss.
struct NoClickProbability {
  /// From the full encode / loss / decode pipeline.
  double exact = 0.0;
  /// sum_i |alpha_i|^2 prod_j 2 e^-|g_ij| / (1 + e^-|g_ij|) (ECS), or the
  /// tanh(strength) squeezer's vacuum weight sech(strength) per coupled mode (PCS).
  double closed_form = 0.0;
  /// sum_i |alpha_i|^2 prod_j sech(r_ij) with r = 2 gamma_ij (ECS) or 4 strength (PCS).
  double sech_form = 0.0;
};

/// The two closed forms alone (exact left at 0).
NoClickProbability no_click_closed_forms(const CodingSpec& coding, const LossEvent& event);

NoClickProbability no_click_probability(const ModeLayout& layout, const StateVector& input_info,
                                        const CodingSpec& coding, const LossEvent& event);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);
/// Standard normal by Box-Muller over uniform01; identical on every platform.
double standard_normal(std::mt19937_64& rng);

/// Inverse-CDF sampling over the record order. Same seed, same sequence.
std::vector<std::vector<std::size_t>> sample_counts(const CountDistribution& dist, std::uint64_t seed,
                                                    std::size_t shots);
std::vector<std::vector<std::size_t>> sample_counts(const StateVector& state, std::uint64_t seed, std::size_t shots);

/// Empirical frequencies of `samples` aligned with `dist`'s record order.
std::vector<double> empirical_frequencies(const CountDistribution& dist,
                                          const std::vector<std::vector<std::size_t>>& samples);
/// Half the l1 distance between `dist` and the empirical frequencies.
double total_variation(const CountDistribution& dist, const std::vector<std::vector<std::size_t>>& samples);

/// All zero -> NoLoss; a single 1 -> AncillaLoss; all counts even with the
/// clicked modes inside one info mode's coupling support -> InfoLossDetected;
/// anything else -> Ambiguous.
OutcomeClass classify(std::span<const std::size_t> counts, const CodingSpec& coding);

ClassProbabilities class_probabilities(const CountDistribution& dist, const CodingSpec& coding);

/// Mean photon count per ancilla mode.
std::vector<double> mean_counts(const CountDistribution& dist);

/// Total probability on records with an odd count on some mode.
double odd_count_mass(const CountDistribution& dist);

}  // namespace photonloss
