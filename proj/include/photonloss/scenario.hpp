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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "photonloss/json_io.hpp"

namespace photonloss {

/// How the info-register input is specified.
struct InputSpec {
  enum class Kind { Occupations, Amplitudes, CodeWord, Random };
  Kind kind = Kind::Occupations;
  std::vector<std::size_t> occupations;
  std::vector<Complex> amplitudes;
  std::size_t code_word = 0;
  std::uint64_t random_seed = 0;
};

/// Values swept by the sweep command. For ECS each point scales the
/// scenario's gamma matrix; for PCS it replaces the strength.
struct GridSpec {
  std::vector<double> values;
};

/// A declarative experiment. Sections a command does not need may be absent.
struct Scenario {
  std::optional<ModeLayout> layout;
  std::optional<CodingSpec> coding;
  std::optional<InputSpec> input;
  std::optional<LossEvent> event;
  std::uint64_t seed = 0;
  std::size_t shots = 0;
  std::vector<std::string> outputs;
  std::optional<GridSpec> grid;
  /// Synthesis task description, kept as a validated document.
  std::optional<Json> synth;
};

/// Throws ValidationError naming the offending field.
Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::filesystem::path& path);
Json scenario_to_json(const Scenario& s);

/// The normalised info-register state described by the scenario.
StateVector build_input(const Scenario& s);

/// Complex Gaussian amplitudes from mt19937_64(seed), normalised.
StateVector seeded_random_state(const ModeLayout& layout, std::uint64_t seed);

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shots;
  bool check = false;
};

/// Exit codes: 0 success, 1 an embedded check failed, 2 invalid input or
/// I/O failure, 3 the run itself failed (impossible event, truncation).
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalid = 2, kExitRunFailed = 3 };

int cmd_roundtrip(const Scenario& s, const CommandOptions& opt, std::ostream& log);
int cmd_loss_sim(const Scenario& s, const CommandOptions& opt, std::ostream& log);
int cmd_sweep(const Scenario& s, const CommandOptions& opt, std::ostream& log);
int cmd_synth(const Scenario& s, const CommandOptions& opt, std::ostream& log);
int cmd_sample(const Scenario& s, const CommandOptions& opt, std::ostream& log);

/// Loads the scenario, dispatches on `command` and maps errors to exit codes.
int run_command(const std::string& command, const std::filesystem::path& scenario, const CommandOptions& opt,
                std::ostream& log);

}  // namespace photonloss
