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

#include "photonloss/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "photonloss/errors.hpp"
#include "photonloss/protocol.hpp"

namespace photonloss {

std::string OutcomeClass::str() const {
  switch (tag) {
    case Tag::NoLoss:
      return "no_loss";
    case Tag::AncillaLoss:
      return "ancilla_loss";
    case Tag::InfoLossDetected:
      return "info_loss_detected";
    case Tag::Ambiguous:
      return "ambiguous";
  }
  return "ambiguous";
}

namespace {

std::vector<std::size_t> anc_digits(const ModeLayout& layout, std::size_t index) {
  const auto& dims = layout.anc_dims();
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

std::size_t anc_index(const ModeLayout& layout, std::span<const std::size_t> counts) {
  const auto& dims = layout.anc_dims();
  if (counts.size() != dims.size()) {
    throw InvalidArgumentError("count record has " + std::to_string(counts.size()) + " entries for " +
                               std::to_string(dims.size()) + " ancilla modes");
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (counts[k] >= dims[k]) throw InvalidArgumentError("count exceeds the ancilla truncation");
    index = index * dims[k] + counts[k];
  }
  return index;
}

}  // namespace

CountDistribution count_distribution(const StateVector& state) {
  const ModeLayout& layout = state.layout();
  const std::size_t na = layout.anc_total(), nx = layout.aux_total();
  std::vector<double> p(na, 0.0);
  for (std::size_t s = 0; s < layout.info_total(); ++s)
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t x = 0; x < nx; ++x) p[a] += std::norm(state.amp((s * na + a) * nx + x));
  const double total = state.squared_norm();
  CountDistribution out(na);
  for (std::size_t a = 0; a < na; ++a) out[a] = {anc_digits(layout, a), p[a] / total};
  return out;
}

std::pair<StateVector, double> project_counts(const StateVector& state, std::span<const std::size_t> counts) {
  const ModeLayout& layout = state.layout();
  if (layout.num_aux() != 0) throw LayoutMismatchError("projection onto counts needs a layout without aux factors");
  const std::size_t a = anc_index(layout, counts);
  const ModeLayout info = layout.info_layout();
  Vector amps(static_cast<Eigen::Index>(info.total_dim()));
  for (std::size_t s = 0; s < info.total_dim(); ++s) amps[static_cast<Eigen::Index>(s)] = state.amp(s * layout.anc_total() + a);
  const double total = state.squared_norm();
  if (total <= 0.0) throw ImpossibleEventError("cannot project a zero state");
  auto [normed, norm] = normalize(StateVector(info, std::move(amps)));
  return {std::move(normed), norm * norm / total};
}

double squeezed_vacuum_pmf(double r, std::size_t m) {
  if (!std::isfinite(r) || std::abs(r) >= 25.0) throw InvalidArgumentError("squeeze magnitude must satisfy |r| < 25");
  if (m % 2 == 1) return 0.0;
  if (r == 0.0) return m == 0 ? 1.0 : 0.0;
  const double md = static_cast<double>(m);
  const double log_p = std::lgamma(md + 1.0) - 2.0 * std::lgamma(md / 2.0 + 1.0) - md * std::numbers::ln2 +
                       md * std::log(std::tanh(std::abs(r))) - std::log(std::cosh(r));
  return std::exp(log_p);
}

NoClickProbability no_click_closed_forms(const CodingSpec& coding, const LossEvent& event) {
  if (event.kind != LossEvent::Kind::Info) throw InvalidArgumentError("no-click probability needs an info-loss event");
  if (event.weights.size() != coding.num_info()) throw InvalidArgumentError("loss weights do not match the coding");
  NoClickProbability out;
  for (std::size_t i = 0; i < coding.num_info(); ++i) {
    double closed = 1.0, sech = 1.0;
    for (std::size_t j = 0; j < coding.num_anc(); ++j) {
      const double c = coding.gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (coding.scheme == Scheme::ECS) {
        const double e = std::exp(-std::abs(c));
        closed *= 2.0 * e / (1.0 + e);
        sech *= 1.0 / std::cosh(2.0 * c);
      } else if (c != 0.0) {
        closed *= 1.0 / std::cosh(coding.strength);
        sech *= 1.0 / std::cosh(4.0 * coding.strength);
      }
    }
    const double w = std::norm(event.weights[i]);
    out.closed_form += w * closed;
    out.sech_form += w * sech;
  }
  return out;
}

NoClickProbability no_click_probability(const ModeLayout& layout, const StateVector& input_info,
                                        const CodingSpec& coding, const LossEvent& event) {
  NoClickProbability out = no_click_closed_forms(coding, event);
  out.exact = run_protocol(layout, input_info, coding, event).distribution.front().probability;
  return out;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::vector<std::size_t>> sample_counts(const CountDistribution& dist, std::uint64_t seed,
                                                    std::size_t shots) {
  if (dist.empty()) throw InvalidArgumentError("cannot sample an empty distribution");
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    acc += std::max(0.0, dist[k].probability);
    cdf[k] = acc;
  }
  if (!(acc > 0.0)) throw InvalidArgumentError("distribution has no mass");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) it = std::prev(it);
    out.push_back(dist[static_cast<std::size_t>(it - cdf.begin())].counts);
  }
  return out;
}

std::vector<std::vector<std::size_t>> sample_counts(const StateVector& state, std::uint64_t seed, std::size_t shots) {
  return sample_counts(count_distribution(state), seed, shots);
}

std::vector<double> empirical_frequencies(const CountDistribution& dist,
                                          const std::vector<std::vector<std::size_t>>& samples) {
  std::vector<double> freq(dist.size(), 0.0);
  if (samples.empty()) return freq;
  // Records are row-major, so the mixed-radix value of a count vector is its position.
  std::vector<std::size_t> radix(dist.front().counts.size(), 1);
  for (const CountRecord& r : dist)
    for (std::size_t k = 0; k < radix.size(); ++k) radix[k] = std::max(radix[k], r.counts[k] + 1);
  for (const auto& c : samples) {
    if (c.size() != radix.size()) throw InvalidArgumentError("sample length does not match the distribution");
    std::size_t index = 0;
    for (std::size_t k = 0; k < radix.size(); ++k) {
      if (c[k] >= radix[k]) throw InvalidArgumentError("sample outside the distribution's support");
      index = index * radix[k] + c[k];
    }
    freq[index] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(samples.size());
  return freq;
}

double total_variation(const CountDistribution& dist, const std::vector<std::vector<std::size_t>>& samples) {
  const std::vector<double> freq = empirical_frequencies(dist, samples);
  double tv = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) tv += std::abs(dist[k].probability - freq[k]);
  return 0.5 * tv;
}

OutcomeClass classify(std::span<const std::size_t> counts, const CodingSpec& coding) {
  using Tag = OutcomeClass::Tag;
  if (counts.size() != coding.num_anc()) throw InvalidArgumentError("count record length does not match the coding");
  std::vector<std::size_t> clicked;
  bool all_even = true;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    clicked.push_back(j);
    all_even = all_even && counts[j] % 2 == 0;
  }
  if (clicked.empty()) return {Tag::NoLoss, 0};
  if (clicked.size() == 1 && counts[clicked[0]] == 1) return {Tag::AncillaLoss, clicked[0]};
  if (!all_even) return {Tag::Ambiguous, 0};
  for (std::size_t i = 0; i < coding.num_info(); ++i) {
    const bool inside = std::all_of(clicked.begin(), clicked.end(), [&](std::size_t j) {
      return coding.gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0;
    });
    if (inside) return {Tag::InfoLossDetected, i};
  }
  return {Tag::Ambiguous, 0};
}

ClassProbabilities class_probabilities(const CountDistribution& dist, const CodingSpec& coding) {
  ClassProbabilities out;
  for (const CountRecord& r : dist) {
    if (r.probability == 0.0) continue;
    switch (classify(r.counts, coding).tag) {
      case OutcomeClass::Tag::NoLoss:
        out.no_loss += r.probability;
        break;
      case OutcomeClass::Tag::AncillaLoss:
        out.ancilla_loss += r.probability;
        break;
      case OutcomeClass::Tag::InfoLossDetected:
        out.info_loss_detected += r.probability;
        break;
      case OutcomeClass::Tag::Ambiguous:
        out.ambiguous += r.probability;
        break;
    }
  }
  return out;
}

std::vector<double> mean_counts(const CountDistribution& dist) {
  std::vector<double> out(dist.empty() ? 0 : dist.front().counts.size(), 0.0);
  for (const CountRecord& r : dist)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += r.probability * static_cast<double>(r.counts[k]);
  return out;
}

double odd_count_mass(const CountDistribution& dist) {
  double mass = 0.0;
  for (const CountRecord& r : dist) {
    if (std::any_of(r.counts.begin(), r.counts.end(), [](std::size_t c) { return c % 2 == 1; })) mass += r.probability;
  }
  return mass;
}

}  // namespace photonloss
