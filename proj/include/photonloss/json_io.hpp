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

#include <json.hpp>
#include <string>
#include <vector>

#include "photonloss/fock.hpp"
#include "photonloss/gates.hpp"
#include "photonloss/measurement.hpp"
#include "photonloss/protocol.hpp"
#include "photonloss/synthesis.hpp"

namespace photonloss {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// [re, im]
Json complex_to_json(Complex c);
/// Accepts a number or [re, im]; `field` names the entry in errors.
Complex complex_from_json(const Json& j, const std::string& field);

Json layout_to_json(const ModeLayout& layout);
ModeLayout layout_from_json(const Json& j, const std::string& field = "layout");

/// {layout, amps: [[re, im], ...]}
Json state_to_json(const StateVector& state);
StateVector state_from_json(const Json& j, const std::string& field = "state");

/// {scheme, gamma, strength, direction}
Json coding_to_json(const CodingSpec& coding);
CodingSpec coding_from_json(const Json& j, const std::string& field = "coding");

/// {kind, weights}
Json event_to_json(const LossEvent& event);
/// Missing weights default to uniform over the register.
LossEvent event_from_json(const Json& j, const ModeLayout& layout, const std::string& field = "event");

Json certificate_to_json(const SynthesisCertificate& cert);
Json report_to_json(const ProtocolReport& report);

/// Header m_1..m_M,probability; one row per record.
std::string distribution_csv(const CountDistribution& dist);
/// Header m_1..m_M; one row per shot.
std::string samples_csv(const std::vector<std::vector<std::size_t>>& samples, std::size_t num_anc);

}  // namespace photonloss
