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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "photonloss/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"photonloss: heralded photon-loss protocol runner"};
  app.require_subcommand(1);

  std::string scenario;
  photonloss::CommandOptions opt;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::size_t shots = 0;

  for (const char* name : {"roundtrip", "loss-sim", "sweep", "synth", "sample"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--scenario", scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override the scenario seed");
    sub->add_option("--shots", shots, "override the scenario shot count");
    sub->add_flag("--check", opt.check, "assert embedded invariants and fail on violation");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : photonloss::kExitInvalid;
  }

  CLI::App* sub = app.get_subcommands().front();
  opt.out_dir = out_dir;
  if (sub->count("--seed") > 0) opt.seed = seed;
  if (sub->count("--shots") > 0) opt.shots = shots;
  return photonloss::run_command(sub->get_name(), scenario, opt, std::cerr);
}
