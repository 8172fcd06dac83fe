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

#include "photonloss/protocol.hpp"

#include <cmath>

#include "photonloss/errors.hpp"

namespace photonloss {

namespace {

std::vector<Complex> uniform_weights(std::size_t n) {
  return std::vector<Complex>(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

void require_info_state(const StateVector& info, const CodingSpec& coding) {
  const ModeLayout& l = info.layout();
  if (l.num_anc() != 0 || l.num_aux() != 0 || l.num_info() != coding.num_info()) {
    throw LayoutMismatchError("expected an info-register state with one mode per coupling row");
  }
}

}  // namespace

std::string to_string(LossEvent::Kind kind) {
  switch (kind) {
    case LossEvent::Kind::None:
      return "none";
    case LossEvent::Kind::Info:
      return "info_loss";
    case LossEvent::Kind::Ancilla:
      return "ancilla_loss";
  }
  return "none";
}

LossEvent LossEvent::info(std::size_t num_info, std::vector<Complex> weights) {
  return {Kind::Info, weights.empty() ? uniform_weights(num_info) : std::move(weights)};
}

LossEvent LossEvent::ancilla(std::size_t num_anc, std::vector<Complex> weights) {
  return {Kind::Ancilla, weights.empty() ? uniform_weights(num_anc) : std::move(weights)};
}

LossEvent LossEvent::info_mode(std::size_t num_info, std::size_t i) {
  std::vector<Complex> w(num_info, 0.0);
  w.at(i) = 1.0;
  return {Kind::Info, std::move(w)};
}

LossEvent LossEvent::ancilla_mode(std::size_t num_anc, std::size_t j) {
  std::vector<Complex> w(num_anc, 0.0);
  w.at(j) = 1.0;
  return {Kind::Ancilla, std::move(w)};
}

void LossEvent::validate(const ModeLayout& layout) const {
  if (kind == Kind::None) {
    if (!weights.empty()) throw InvalidArgumentError("a no-loss event takes no weights");
    return;
  }
  const std::size_t n = kind == Kind::Info ? layout.num_info() : layout.num_anc();
  if (weights.size() != n) {
    throw InvalidArgumentError("loss event has " + std::to_string(weights.size()) + " weights for " +
                               std::to_string(n) + " modes");
  }
  double total = 0.0;
  for (const Complex& w : weights) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw InvalidArgumentError("non-finite loss weight");
    total += std::norm(w);
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgumentError("loss weights must have unit norm");
}

Operator collective_loss_op(const ModeLayout& layout, const LossEvent& event) {
  if (event.kind == LossEvent::Kind::None) throw InvalidArgumentError("no loss operator for a no-loss event");
  event.validate(layout);
  std::vector<std::pair<Complex, Operator>> terms;
  for (std::size_t k = 0; k < event.weights.size(); ++k) {
    if (event.weights[k] == Complex(0.0)) continue;
    const ModeId mode = event.kind == LossEvent::Kind::Info ? ModeId::info(k) : ModeId::anc(k);
    terms.emplace_back(event.weights[k], ladder_op(layout, mode, LadderKind::Annihilate));
  }
  return Operator::sum(layout, std::move(terms));
}

namespace {

double ancilla_tail(const StateVector& state, double fraction) {
  const ModeLayout& layout = state.layout();
  double worst = 0.0;
  for (std::size_t j = 0; j < layout.num_anc(); ++j) {
    const std::size_t d = layout.anc_dims()[j];
    const auto level = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(d)));
    if (level == 0) continue;
    worst = std::max(worst, tail_mass(state, ModeId::anc(j), level - 1));
  }
  return worst;
}

}  // namespace

ProtocolReport run_protocol(const ModeLayout& layout, const StateVector& input_info, const CodingSpec& coding,
                            const LossEvent& event, const ProtocolOptions& options) {
  if (layout.num_aux() != 0) throw LayoutMismatchError("protocol layouts carry no aux factors");
  event.validate(layout);
  const StateVector input = normalize(input_info).first;

  const Operator encode = coding_unitary(layout, coding, options.build);
  const Operator decode = coding_unitary(layout, coding.inverse(), options.build);

  ProtocolReport report;
  report.event = event;
  report.coding = coding;
  report.input_info = input;

  StateVector lossy = encode.apply(embed_info_state(input, layout));
  if (event.kind != LossEvent::Kind::None) {
    lossy = collective_loss_op(layout, event).apply(lossy);
    report.collapse_norm = lossy.norm();
    if (report.collapse_norm <= kZeroNormEpsilon) {
      throw ImpossibleEventError("the " + to_string(event.kind) + " event annihilates this input");
    }
  }
  report.state = normalize(decode.apply(lossy)).first;
  report.truncation_tail = std::max(ancilla_tail((1.0 / report.collapse_norm) * lossy, options.tail_fraction),
                                    ancilla_tail(report.state, options.tail_fraction));

  report.distribution = count_distribution(report.state);
  report.classes = class_probabilities(report.distribution, coding);
  for (const CountRecord& r : report.distribution) {
    if (r.probability > report.heralded.probability) report.heralded = r;
  }
  report.heralded_class = classify(report.heralded.counts, coding);

  StateVector info = project_counts(report.state, report.heralded.counts).first;
  if (coding.scheme == Scheme::PCS && report.heralded_class.tag == OutcomeClass::Tag::AncillaLoss) {
    info = parity_correction(info, coding, report.heralded_class.mode);
    report.recovery_applied = true;
  }
  report.fidelity = fidelity(info, input);
  report.recovered_info = std::move(info);
  return report;
}

StateVector info_distortion_after_ancilla_loss(const StateVector& input_info, const CodingSpec& coding,
                                               std::size_t anc_mode) {
  coding.validate();
  require_info_state(input_info, coding);
  if (anc_mode >= coding.num_anc()) throw InvalidArgumentError("ancilla mode out of range");
  const ModeLayout& layout = input_info.layout();
  Vector amps = input_info.amps();
  for (std::size_t s = 0; s < layout.total_dim(); ++s) {
    const auto n = layout.unflatten(s);
    amps[static_cast<Eigen::Index>(s)] *= std::sinh(2.0 * coding.sector_squeeze(n, anc_mode));
  }
  return normalize(StateVector(layout, std::move(amps))).first;
}

StateVector parity_correction(const StateVector& info_state, const CodingSpec& coding, std::size_t anc_mode) {
  if (coding.scheme != Scheme::PCS) {
    throw UnsupportedRecoveryError("no recovery is defined for ancilla loss under ECS coding");
  }
  require_info_state(info_state, coding);
  if (anc_mode >= coding.num_anc()) throw InvalidArgumentError("ancilla mode out of range");
  return parity_op(info_state.layout(), coding.column(anc_mode)).apply(info_state);
}

std::vector<StateVector> code_words(std::size_t num_info, std::size_t info_dim) {
  if (num_info == 0) throw InvalidArgumentError("code words need at least one mode");
  if (info_dim < 2) throw InvalidArgumentError("code words need info truncation >= 2");
  const ModeLayout layout = ModeLayout::make(std::vector<std::size_t>(num_info, info_dim), {});
  std::vector<StateVector> out;
  for (std::size_t i = 0; i < num_info; ++i) {
    std::vector<std::size_t> occ(num_info, 0);
    occ[i] = 1;
    out.push_back(basis_state(layout, occ));
  }
  return out;
}

}  // namespace photonloss
