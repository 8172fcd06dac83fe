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

#include "photonloss/scenario.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "photonloss/errors.hpp"

using namespace photonloss;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("photonloss_cli_") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = root_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(const std::string& command, const std::string& scenario, const std::string& out, bool check = true) {
    CommandOptions opt;
    opt.out_dir = root_ / out;
    opt.check = check;
    log_.str("");
    return run_command(command, write(out + ".json", scenario), opt, log_);
  }

  std::string slurp(const std::string& rel) {
    std::ifstream in(root_ / rel, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Json report(const std::string& rel) { return Json::parse(slurp(rel)); }

  fs::path root_;
  std::ostringstream log_;
};

std::string field_of(const std::string& text) {
  try {
    parse_scenario(Json::parse(text));
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<accepted>";
}

const char* kPcsRandom = R"({
  "layout": {"info_dims": [4], "anc_dims": [120]},
  "coding": {"scheme": "PCS", "gamma": [[1]], "strength": 0.4},
  "input_state": {"preset": "random", "seed": 7},
  "event": {"kind": "none"}
})";

const char* kEcsInfoLoss = R"({
  "layout": {"info_dims": [2, 2], "anc_dims": [100, 100]},
  "coding": {"scheme": "ECS", "gamma": [[0.4, 0], [0, 0.4]]},
  "input_state": {"amplitudes": [0, 0.6, 0, 0.8]},
  "event": {"kind": "info_loss", "weights": [0, 1]},
  "seed": 9,
  "shots": 2000,
  "outputs": ["report", "distribution", "samples"]
})";

std::string sweep_scenario(const std::string& values) {
  return R"({
  "layout": {"info_dims": [2], "anc_dims": [120]},
  "coding": {"scheme": "ECS", "gamma": [[1]]},
  "input_state": {"occupations": [1]},
  "event": {"kind": "info_loss"},
  "grid": {"values": )" +
         values + "}}";
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST(ScenarioParse, RoundTripIsLossless) {
  for (const std::string text : {std::string(kPcsRandom), std::string(kEcsInfoLoss), sweep_scenario("[0.1, 0.25]"),
                                 std::string(R"({"synth": {"task": "mediated_pcs", "strength": 0.2, "qubit_init": -1}})")}) {
    const Scenario s = parse_scenario(Json::parse(text));
    const Json once = scenario_to_json(s);
    const Json twice = scenario_to_json(parse_scenario(once));
    EXPECT_EQ(once.dump(), twice.dump());
  }
}

TEST(ScenarioParse, CodeWordPreset) {
  const Scenario s = parse_scenario(Json::parse(R"({
    "layout": {"info_dims": [2, 2, 2], "anc_dims": [40]},
    "coding": {"scheme": "ECS", "gamma": [[0.2], [0.2], [0.2]]},
    "input_state": {"preset": "code_word", "index": 1}})"));
  const StateVector in = build_input(s);
  EXPECT_DOUBLE_EQ(std::abs(in.amp(std::vector<std::size_t>{0, 1, 0})), 1.0);
}

TEST(ScenarioParse, RejectsUnknownFieldsByName) {
  EXPECT_EQ(field_of(R"({"layout": {"info_dims": [2], "anc_dims": [20]}, "colour": 1})"), "colour");
  EXPECT_EQ(field_of(R"({"layout": {"info_dims": [2], "anc_dims": [20], "extra": 0}})"), "layout.extra");
  EXPECT_EQ(field_of(R"({"synth": {"task": "cubic_dress", "lambda": 0.1}})"), "synth.lambda");
  EXPECT_EQ(field_of(R"({"input_state": {"preset": "random", "seed": 1, "x": 2}})"), "input_state.x");
}

TEST(ScenarioParse, WrongGammaShapeNamesField) {
  EXPECT_EQ(field_of(R"({
    "layout": {"info_dims": [2, 2], "anc_dims": [40]},
    "coding": {"scheme": "ECS", "gamma": [[0.2, 0.1]]}})"),
            "coding.gamma");
}

TEST(ScenarioParse, OtherValidationErrors) {
  EXPECT_EQ(field_of(R"({"event": {"kind": "none"}})"), "layout");
  EXPECT_EQ(field_of(R"({"outputs": ["plot"]})"), "outputs");
  EXPECT_EQ(field_of(R"({"grid": {"values": []}})"), "grid.values");
  EXPECT_EQ(field_of(R"({"synth": {"task": "unknown"}})"), "synth.task");
  EXPECT_EQ(field_of(R"({"synth": {"task": "mediated_pcs", "qubit_init": 0}})"), "synth.qubit_init");
  EXPECT_EQ(field_of(R"({"layout": {"info_dims": [2], "anc_dims": [20]}, "input_state": {"occupations": [2]}})"),
            "input_state.occupations");
  EXPECT_EQ(field_of(R"({"layout": {"info_dims": [2], "anc_dims": [20]}, "input_state": {"amplitudes": [0, 0]}})"),
            "input_state.amplitudes");
  EXPECT_EQ(field_of(R"({"seed": -1})"), "seed");
}

TEST(ScenarioParse, SeededRandomStateIsDeterministic) {
  const ModeLayout l = make_layout({3, 2}, {});
  const StateVector a = seeded_random_state(l, 7), b = seeded_random_state(l, 7), c = seeded_random_state(l, 8);
  EXPECT_EQ(a.amps(), b.amps());
  EXPECT_NE(a.amps(), c.amps());
  EXPECT_NEAR(a.norm(), 1.0, 1e-15);
}

TEST_F(CliTest, RoundtripPcsRandomSeed7) {
  ASSERT_EQ(run("roundtrip", kPcsRandom, "rt"), kExitOk) << log_.str();
  const Json r = report("rt/report.json");
  for (const char* key : {"fidelity", "p_zero_counts", "truncation_tail"}) EXPECT_TRUE(r.contains(key)) << key;
  EXPECT_GE(r["fidelity"].get<double>(), 1.0 - 1e-10);
  EXPECT_GE(r["p_zero_counts"].get<double>(), 1.0 - 1e-10);
  EXPECT_TRUE(r.contains("checks"));
}

TEST_F(CliTest, RoundtripIgnoresScenarioEvent) {
  ASSERT_EQ(run("roundtrip", kEcsInfoLoss, "rt"), kExitOk) << log_.str();
  EXPECT_EQ(report("rt/report.json")["event"]["kind"], "none");
}

TEST_F(CliTest, MalformedScenarioExitsInvalid) {
  EXPECT_EQ(run("roundtrip", R"({
    "layout": {"info_dims": [2], "anc_dims": [40]},
    "coding": {"scheme": "ECS", "gamma": [[0.2, 0.3]]},
    "input_state": {"occupations": [1]}})",
                "bad"),
            kExitInvalid);
  EXPECT_NE(log_.str().find("coding.gamma"), std::string::npos) << log_.str();
  EXPECT_EQ(run("roundtrip", "{not json", "broken"), kExitInvalid);
  EXPECT_EQ(run("synth", kPcsRandom, "nosynth"), kExitInvalid);
  EXPECT_NE(log_.str().find("synth"), std::string::npos);
}

TEST_F(CliTest, UnsupportedArtifactForCommand) {
  std::string s = kPcsRandom;
  s.insert(s.rfind('}'), R"(, "outputs": ["certificate"])");
  EXPECT_EQ(run("roundtrip", s, "art"), kExitInvalid);
  EXPECT_NE(log_.str().find("outputs"), std::string::npos);
}

TEST_F(CliTest, LossOnVacuumIsImpossible) {
  EXPECT_EQ(run("loss-sim", R"({
    "layout": {"info_dims": [3], "anc_dims": [60]},
    "coding": {"scheme": "ECS", "gamma": [[0.3]]},
    "input_state": {"occupations": [0]},
    "event": {"kind": "info_loss"}})",
                "vac"),
            kExitRunFailed);
  EXPECT_NE(log_.str().find("impossible"), std::string::npos);
}

TEST_F(CliTest, LossSimLocalizesOnLossyMode) {
  ASSERT_EQ(run("loss-sim", kEcsInfoLoss, "ls"), kExitOk) << log_.str();
  const auto rows = csv_rows(slurp("ls/distribution.csv"));
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"m_1", "m_2", "probability"}));
  double clicks_elsewhere = 0.0, even_on_two = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const int m1 = std::stoi(rows[k][0]), m2 = std::stoi(rows[k][1]);
    const double p = std::stod(rows[k][2]);
    if (m1 != 0) clicks_elsewhere += p;
    if (m1 == 0 && m2 >= 2 && m2 % 2 == 0) even_on_two += p;
  }
  EXPECT_LE(clicks_elsewhere, 1e-12);
  const Json r = report("ls/report.json");
  EXPECT_NEAR(even_on_two, r["classification"]["info_loss_detected"].get<double>(), 1e-12);
  EXPECT_NEAR(r["no_click"]["exact"].get<double>(), 1.0 / std::cosh(0.8), 1e-9);
  EXPECT_TRUE(r["no_click"].contains("closed_form"));
  const auto samples = csv_rows(slurp("ls/samples.csv"));
  EXPECT_EQ(samples.size(), 2001u);
  EXPECT_EQ(samples.front(), (std::vector<std::string>{"m_1", "m_2"}));
}

TEST_F(CliTest, PcsAncillaLossRecovers) {
  ASSERT_EQ(run("loss-sim", R"({
    "layout": {"info_dims": [5], "anc_dims": [120]},
    "coding": {"scheme": "PCS", "gamma": [[1]], "strength": 0.4},
    "input_state": {"preset": "random", "seed": 11},
    "event": {"kind": "ancilla_loss"}})",
                "pcs"),
            kExitOk)
      << log_.str();
  const Json r = report("pcs/report.json");
  EXPECT_EQ(r["heralded"]["class"], "ancilla_loss");
  EXPECT_EQ(r["heralded"]["mode"], 0);
  EXPECT_TRUE(r["recovery_applied"].get<bool>());
  EXPECT_GE(r["recovery_fidelity"].get<double>(), 1.0 - 1e-10);
}

TEST_F(CliTest, OutputsAreByteIdentical) {
  for (const char* dir : {"a", "b"}) {
    ASSERT_EQ(run("loss-sim", kEcsInfoLoss, dir), kExitOk) << log_.str();
    ASSERT_EQ(run("sweep", sweep_scenario("[0.1, 0.3]"), std::string(dir) + "_sweep"), kExitOk);
  }
  for (const char* f : {"report.json", "distribution.csv", "samples.csv"}) {
    EXPECT_EQ(slurp(std::string("a/") + f), slurp(std::string("b/") + f)) << f;
  }
  EXPECT_EQ(slurp("a_sweep/sweep.csv"), slurp("b_sweep/sweep.csv"));
}

TEST_F(CliTest, SeedOverrideChangesSamples) {
  CommandOptions opt;
  opt.out_dir = root_ / "s1";
  const Scenario s = parse_scenario(Json::parse(kEcsInfoLoss));
  ASSERT_EQ(cmd_sample(s, opt, log_), kExitOk);
  opt.out_dir = root_ / "s2";
  opt.seed = 10;
  opt.shots = 500;
  ASSERT_EQ(cmd_sample(s, opt, log_), kExitOk);
  EXPECT_NE(slurp("s1/samples.csv"), slurp("s2/samples.csv"));
  EXPECT_EQ(csv_rows(slurp("s2/samples.csv")).size(), 501u);
  EXPECT_EQ(report("s2/report.json")["seed"], 10);
}

TEST_F(CliTest, SweepZeroGammaGivesUnitP0) {
  ASSERT_EQ(run("sweep", sweep_scenario("[0]"), "z", false), kExitOk) << log_.str();
  const auto rows = csv_rows(slurp("z/sweep.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][1], "1");
}

TEST_F(CliTest, SweepHeaderAndDecay) {
  ASSERT_EQ(run("sweep", sweep_scenario("[0.1, 0.2, 0.3, 0.4, 0.5]"), "sw"), kExitOk) << log_.str();
  const auto rows = csv_rows(slurp("sw/sweep.csv"));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"gamma", "p0_exact", "p0_paper_form", "mean_count", "rate_no_loss",
                                               "rate_ancilla_loss", "rate_info_loss_detected", "rate_ambiguous",
                                               "p0_sech_form"}));
  for (std::size_t k = 2; k < rows.size(); ++k) EXPECT_LT(std::stod(rows[k][1]), std::stod(rows[k - 1][1]));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_NEAR(std::stod(rows[k][1]), 1.0 / std::cosh(2.0 * std::stod(rows[k][0])), 1e-9);
    EXPECT_NEAR(std::stod(rows[k][8]), std::stod(rows[k][1]), 1e-9);
  }
}

TEST_F(CliTest, SweepNeedsInfoLoss) {
  std::string s = sweep_scenario("[0.1]");
  s.replace(s.find("info_loss"), 9, "none");
  EXPECT_EQ(run("sweep", s, "bad"), kExitInvalid);
}

TEST_F(CliTest, SynthMediatedPcs) {
  ASSERT_EQ(run("synth", R"({
    "layout": {"info_dims": [6], "anc_dims": [120]},
    "input_state": {"preset": "random", "seed": 3},
    "synth": {"task": "mediated_pcs", "strength": 0.4}})",
                "med"),
            kExitOk)
      << log_.str();
  const Json c = report("med/certificate.json");
  EXPECT_EQ(c["target_tag"], "mediated_pcs_encode");
  EXPECT_GE(c["metrics"]["qubit_purity"].get<double>(), 1.0 - 1e-9);
  for (const char* key : {"target_tag", "parameters", "residual", "window", "truncation"}) EXPECT_TRUE(c.contains(key));
}

TEST_F(CliTest, SynthIdentityReduction) {
  ASSERT_EQ(run("synth", R"({"synth": {"task": "gaussian_identity", "starts": 2}})", "id"), kExitOk) << log_.str();
  EXPECT_LE(report("id/certificate.json")["residual"].get<double>(), 1e-12);
}

TEST_F(CliTest, SynthConjugationSuite) {
  ASSERT_EQ(run("synth", R"({"synth": {"task": "conjugation_suite", "truncation": 60, "window": 12}})", "cs"), kExitOk)
      << log_.str();
  const Json c = report("cs/certificate.json");
  EXPECT_EQ(c["metrics"].size(), 3u);
  for (const auto& [name, v] : c["metrics"].items()) EXPECT_LE(v.get<double>(), 1e-8) << name;
}
