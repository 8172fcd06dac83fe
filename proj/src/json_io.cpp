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

#include "photonloss/json_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "photonloss/errors.hpp"

namespace photonloss {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

namespace {

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
  return v;
}

std::vector<std::size_t> size_list(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of non-negative integers");
  std::vector<std::size_t> out;
  for (const Json& e : j) {
    if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0)) {
      throw ValidationError(field, "expected an array of non-negative integers");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

void only_keys(const Json& j, const std::string& field, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ValidationError(field, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ValidationError(field + "." + k, "unknown field");
  }
}

const Json& required(const Json& j, const std::string& field, const char* key) {
  if (!j.contains(key)) throw ValidationError(field + "." + key, "missing");
  return j.at(key);
}

}  // namespace

Complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return {number(j, field), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], field), number(j[1], field)};
  throw ValidationError(field, "expected a number or [re, im]");
}

Json layout_to_json(const ModeLayout& layout) {
  Json j{{"info_dims", layout.info_dims()}, {"anc_dims", layout.anc_dims()}};
  if (layout.num_aux() != 0) j["aux_dims"] = layout.aux_dims();
  return j;
}

ModeLayout layout_from_json(const Json& j, const std::string& field) {
  only_keys(j, field, {"info_dims", "anc_dims", "aux_dims"});
  const auto info = size_list(required(j, field, "info_dims"), field + ".info_dims");
  const auto anc = size_list(required(j, field, "anc_dims"), field + ".anc_dims");
  const auto aux = j.contains("aux_dims") ? size_list(j.at("aux_dims"), field + ".aux_dims") : std::vector<std::size_t>{};
  try {
    return ModeLayout::make(info, anc, aux);
  } catch (const Error& e) {
    throw ValidationError(field, e.what());
  }
}

Json state_to_json(const StateVector& state) {
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < state.amps().size(); ++k) amps.push_back(complex_to_json(state.amps()[k]));
  return Json{{"layout", layout_to_json(state.layout())}, {"amps", std::move(amps)}};
}

StateVector state_from_json(const Json& j, const std::string& field) {
  only_keys(j, field, {"layout", "amps"});
  const ModeLayout layout = layout_from_json(required(j, field, "layout"), field + ".layout");
  const Json& amps = required(j, field, "amps");
  if (!amps.is_array() || amps.size() != layout.total_dim()) {
    throw ValidationError(field + ".amps", "expected " + std::to_string(layout.total_dim()) + " amplitudes");
  }
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) v[static_cast<Eigen::Index>(k)] = complex_from_json(amps[k], field + ".amps");
  return StateVector(layout, std::move(v));
}

Json coding_to_json(const CodingSpec& coding) {
  Json gamma = Json::array();
  for (Eigen::Index i = 0; i < coding.gamma.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < coding.gamma.cols(); ++k) row.push_back(coding.gamma(i, k));
    gamma.push_back(std::move(row));
  }
  return Json{{"scheme", to_string(coding.scheme)},
              {"gamma", std::move(gamma)},
              {"strength", coding.strength},
              {"direction", to_string(coding.direction)}};
}

CodingSpec coding_from_json(const Json& j, const std::string& field) {
  only_keys(j, field, {"scheme", "gamma", "strength", "direction"});
  CodingSpec c;
  const Json& scheme = required(j, field, "scheme");
  if (scheme == "ECS") {
    c.scheme = Scheme::ECS;
  } else if (scheme == "PCS") {
    c.scheme = Scheme::PCS;
  } else {
    throw ValidationError(field + ".scheme", "expected \"ECS\" or \"PCS\"");
  }
  const Json& gamma = required(j, field, "gamma");
  if (!gamma.is_array() || gamma.empty() || !gamma[0].is_array() || gamma[0].empty()) {
    throw ValidationError(field + ".gamma", "expected a non-empty K x M array");
  }
  const std::size_t rows = gamma.size(), cols = gamma[0].size();
  c.gamma.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!gamma[i].is_array() || gamma[i].size() != cols) throw ValidationError(field + ".gamma", "rows differ in length");
    for (std::size_t k = 0; k < cols; ++k) {
      c.gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = number(gamma[i][k], field + ".gamma");
    }
  }
  if (j.contains("strength")) c.strength = number(j.at("strength"), field + ".strength");
  if (c.scheme == Scheme::PCS && !j.contains("strength")) throw ValidationError(field + ".strength", "missing");
  if (j.contains("direction")) {
    const Json& d = j.at("direction");
    if (d == "encode") {
      c.direction = Direction::Encode;
    } else if (d == "decode") {
      c.direction = Direction::Decode;
    } else {
      throw ValidationError(field + ".direction", "expected \"encode\" or \"decode\"");
    }
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw ValidationError(field + ".gamma", e.what());
  }
  return c;
}

Json event_to_json(const LossEvent& event) {
  Json j{{"kind", to_string(event.kind)}};
  if (event.kind != LossEvent::Kind::None) {
    Json w = Json::array();
    for (Complex c : event.weights) w.push_back(complex_to_json(c));
    j["weights"] = std::move(w);
  }
  return j;
}

LossEvent event_from_json(const Json& j, const ModeLayout& layout, const std::string& field) {
  only_keys(j, field, {"kind", "weights"});
  const Json& kind = required(j, field, "kind");
  std::vector<Complex> weights;
  if (j.contains("weights")) {
    if (!j.at("weights").is_array()) throw ValidationError(field + ".weights", "expected an array");
    for (const Json& w : j.at("weights")) weights.push_back(complex_from_json(w, field + ".weights"));
  }
  LossEvent e;
  if (kind == "none") {
    if (!weights.empty()) throw ValidationError(field + ".weights", "a no-loss event takes no weights");
    return e;
  }
  if (kind == "info_loss") {
    e = LossEvent::info(layout.num_info(), std::move(weights));
  } else if (kind == "ancilla_loss") {
    e = LossEvent::ancilla(layout.num_anc(), std::move(weights));
  } else {
    throw ValidationError(field + ".kind", "expected \"none\", \"info_loss\" or \"ancilla_loss\"");
  }
  try {
    e.validate(layout);
  } catch (const Error& err) {
    throw ValidationError(field + ".weights", err.what());
  }
  return e;
}

Json certificate_to_json(const SynthesisCertificate& cert) {
  Json params = Json::object();
  for (const auto& [k, v] : cert.parameters) params[k] = v;
  Json metrics = Json::object();
  for (const auto& [k, v] : cert.metrics) metrics[k] = v;
  return Json{{"target_tag", cert.target_tag},
              {"parameters", std::move(params)},
              {"residual", cert.residual},
              {"window", cert.window ? Json(cert.window->levels) : Json(nullptr)},
              {"truncation", cert.truncation},
              {"metrics", std::move(metrics)}};
}

Json report_to_json(const ProtocolReport& r) {
  Json heralded{{"counts", r.heralded.counts},
                {"probability", r.heralded.probability},
                {"class", r.heralded_class.str()}};
  if (r.heralded_class.tag == OutcomeClass::Tag::AncillaLoss ||
      r.heralded_class.tag == OutcomeClass::Tag::InfoLossDetected) {
    heralded["mode"] = r.heralded_class.mode;
  }
  Json j{{"layout", layout_to_json(r.state.layout())},
         {"coding", coding_to_json(r.coding)},
         {"event", event_to_json(r.event)},
         {"fidelity", r.fidelity ? Json(*r.fidelity) : Json(nullptr)},
         {"p_zero_counts", r.distribution.front().probability},
         {"truncation_tail", r.truncation_tail},
         {"collapse_norm", r.collapse_norm},
         {"classification",
          {{"no_loss", r.classes.no_loss},
           {"ancilla_loss", r.classes.ancilla_loss},
           {"info_loss_detected", r.classes.info_loss_detected},
           {"ambiguous", r.classes.ambiguous}}},
         {"heralded", std::move(heralded)},
         {"recovery_applied", r.recovery_applied},
         {"mean_counts", mean_counts(r.distribution)},
         {"odd_count_mass", odd_count_mass(r.distribution)}};
  if (r.recovered_info) j["recovered_info"] = state_to_json(*r.recovered_info);
  return j;
}

namespace {
std::string header(std::size_t num_anc) {
  std::string h;
  for (std::size_t k = 0; k < num_anc; ++k) h += (k ? ",m_" : "m_") + std::to_string(k + 1);
  return h;
}
}  // namespace

std::string distribution_csv(const CountDistribution& dist) {
  const std::size_t m = dist.empty() ? 0 : dist.front().counts.size();
  std::string out = header(m) + (m ? "," : "") + "probability\n";
  for (const CountRecord& r : dist) {
    for (std::size_t c : r.counts) out += std::to_string(c) + ",";
    out += format_double(r.probability) + "\n";
  }
  return out;
}

std::string samples_csv(const std::vector<std::vector<std::size_t>>& samples, std::size_t num_anc) {
  std::string out = header(num_anc) + "\n";
  for (const auto& s : samples) {
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
    out += "\n";
  }
  return out;
}

}  // namespace photonloss
