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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "photonloss/errors.hpp"

namespace photonloss {

namespace {

const std::vector<std::string> kArtifacts{"report", "distribution", "samples", "certificate", "sweep"};

void only_keys(const Json& j, const std::string& field, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ValidationError(field, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; })) {
      throw ValidationError(field.empty() ? k : field + "." + k, "unknown field");
    }
  }
}

std::uint64_t unsigned_field(const Json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ValidationError(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

double number_field(const Json& j, const std::string& field) {
  if (!j.is_number() || !std::isfinite(j.get<double>())) throw ValidationError(field, "expected a finite number");
  return j.get<double>();
}

InputSpec input_from_json(const Json& j) {
  const std::string f = "input_state";
  if (!j.is_object()) throw ValidationError(f, "expected an object");
  InputSpec in;
  if (j.contains("occupations")) {
    only_keys(j, f, {"occupations"});
    in.kind = InputSpec::Kind::Occupations;
    for (const Json& e : j.at("occupations")) in.occupations.push_back(unsigned_field(e, f + ".occupations"));
  } else if (j.contains("amplitudes")) {
    only_keys(j, f, {"amplitudes"});
    in.kind = InputSpec::Kind::Amplitudes;
    if (!j.at("amplitudes").is_array()) throw ValidationError(f + ".amplitudes", "expected an array");
    for (const Json& e : j.at("amplitudes")) in.amplitudes.push_back(complex_from_json(e, f + ".amplitudes"));
  } else if (j.contains("preset")) {
    const Json& p = j.at("preset");
    if (p == "code_word") {
      only_keys(j, f, {"preset", "index"});
      in.kind = InputSpec::Kind::CodeWord;
      if (!j.contains("index")) throw ValidationError(f + ".index", "missing");
      in.code_word = unsigned_field(j.at("index"), f + ".index");
    } else if (p == "random") {
      only_keys(j, f, {"preset", "seed"});
      in.kind = InputSpec::Kind::Random;
      if (!j.contains("seed")) throw ValidationError(f + ".seed", "missing");
      in.random_seed = unsigned_field(j.at("seed"), f + ".seed");
    } else {
      throw ValidationError(f + ".preset", "expected \"code_word\" or \"random\"");
    }
  } else {
    throw ValidationError(f, "expected occupations, amplitudes or preset");
  }
  return in;
}

Json input_to_json(const InputSpec& in) {
  switch (in.kind) {
    case InputSpec::Kind::Occupations:
      return Json{{"occupations", in.occupations}};
    case InputSpec::Kind::Amplitudes: {
      Json a = Json::array();
      for (Complex c : in.amplitudes) a.push_back(complex_to_json(c));
      return Json{{"amplitudes", std::move(a)}};
    }
    case InputSpec::Kind::CodeWord:
      return Json{{"preset", "code_word"}, {"index", in.code_word}};
    case InputSpec::Kind::Random:
      return Json{{"preset", "random"}, {"seed", in.random_seed}};
  }
  return Json::object();
}

void validate_synth(const Json& j) {
  const std::string f = "synth";
  if (!j.is_object() || !j.contains("task")) throw ValidationError(f + ".task", "missing");
  const Json& task = j.at("task");
  auto numbers = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (j.contains(k)) number_field(j.at(k), f + "." + k);
  };
  if (task == "cubic_dress") {
    only_keys(j, f, {"task", "lambda1", "mu1", "truncation", "convergence_tolerance"});
    numbers({"lambda1", "mu1", "convergence_tolerance"});
  } else if (task == "gaussian_reduction") {
    only_keys(j, f, {"task", "gamma", "lambda1", "mu1", "free_cubic", "starts", "matrix_truncation"});
    numbers({"gamma", "lambda1", "mu1"});
  } else if (task == "gaussian_identity") {
    only_keys(j, f, {"task", "lambda1", "mu1", "starts"});
    numbers({"lambda1", "mu1"});
  } else if (task == "mediated_pcs") {
    only_keys(j, f, {"task", "strength", "qubit_init", "stark_coupling", "squeeze_coupling"});
    numbers({"strength", "stark_coupling", "squeeze_coupling"});
  } else if (task == "conjugation_suite") {
    only_keys(j, f, {"task", "lambda1", "mu1", "truncation", "window"});
    numbers({"lambda1", "mu1"});
  } else {
    throw ValidationError(f + ".task",
                          "expected cubic_dress, gaussian_reduction, gaussian_identity, mediated_pcs or "
                          "conjugation_suite");
  }
  for (const char* k : {"truncation", "starts", "matrix_truncation", "window"})
    if (j.contains(k)) unsigned_field(j.at(k), f + "." + k);
  if (j.contains("free_cubic") && !j.at("free_cubic").is_boolean()) {
    throw ValidationError(f + ".free_cubic", "expected a boolean");
  }
  if (j.contains("qubit_init")) {
    const Json& q = j.at("qubit_init");
    if (!q.is_number_integer() || (q.get<int>() != 1 && q.get<int>() != -1)) {
      throw ValidationError(f + ".qubit_init", "expected 1 or -1");
    }
  }
}

}  // namespace

Scenario parse_scenario(const Json& j) {
  only_keys(j, "", {"layout", "coding", "input_state", "event", "seed", "shots", "outputs", "grid", "synth"});
  Scenario s;
  if (j.contains("layout")) s.layout = layout_from_json(j.at("layout"), "layout");
  if (j.contains("coding")) {
    s.coding = coding_from_json(j.at("coding"), "coding");
    if (s.layout && (s.coding->num_info() != s.layout->num_info() || s.coding->num_anc() != s.layout->num_anc())) {
      throw ValidationError("coding.gamma", "shape " + std::to_string(s.coding->num_info()) + "x" +
                                                std::to_string(s.coding->num_anc()) + " does not match " +
                                                std::to_string(s.layout->num_info()) + " info and " +
                                                std::to_string(s.layout->num_anc()) + " ancilla modes");
    }
  }
  if (j.contains("input_state")) s.input = input_from_json(j.at("input_state"));
  if (j.contains("event")) {
    if (!s.layout) throw ValidationError("layout", "required to interpret the event");
    s.event = event_from_json(j.at("event"), *s.layout, "event");
  }
  if (j.contains("seed")) s.seed = unsigned_field(j.at("seed"), "seed");
  if (j.contains("shots")) s.shots = unsigned_field(j.at("shots"), "shots");
  if (j.contains("outputs")) {
    if (!j.at("outputs").is_array()) throw ValidationError("outputs", "expected an array of artifact names");
    for (const Json& o : j.at("outputs")) {
      if (!o.is_string() || std::find(kArtifacts.begin(), kArtifacts.end(), o.get<std::string>()) == kArtifacts.end()) {
        throw ValidationError("outputs", "unknown artifact " + o.dump());
      }
      s.outputs.push_back(o.get<std::string>());
    }
  }
  if (j.contains("grid")) {
    only_keys(j.at("grid"), "grid", {"values"});
    if (!j.at("grid").contains("values") || !j.at("grid").at("values").is_array() || j.at("grid").at("values").empty()) {
      throw ValidationError("grid.values", "expected a non-empty array");
    }
    GridSpec g;
    for (const Json& v : j.at("grid").at("values")) g.values.push_back(number_field(v, "grid.values"));
    s.grid = std::move(g);
  }
  if (j.contains("synth")) {
    validate_synth(j.at("synth"));
    s.synth = j.at("synth");
  }
  if (s.input && s.layout) build_input(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("scenario", "cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("scenario", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(j);
}

Json scenario_to_json(const Scenario& s) {
  Json j = Json::object();
  if (s.layout) j["layout"] = layout_to_json(*s.layout);
  if (s.coding) j["coding"] = coding_to_json(*s.coding);
  if (s.input) j["input_state"] = input_to_json(*s.input);
  if (s.event) j["event"] = event_to_json(*s.event);
  j["seed"] = s.seed;
  j["shots"] = s.shots;
  if (!s.outputs.empty()) j["outputs"] = s.outputs;
  if (s.grid) j["grid"] = Json{{"values", s.grid->values}};
  if (s.synth) j["synth"] = *s.synth;
  return j;
}

StateVector build_input(const Scenario& s) {
  if (!s.layout) throw ValidationError("layout", "missing");
  if (!s.input) throw ValidationError("input_state", "missing");
  const ModeLayout info = s.layout->info_layout();
  const InputSpec& in = *s.input;
  switch (in.kind) {
    case InputSpec::Kind::Occupations: {
      if (in.occupations.size() != info.num_info()) {
        throw ValidationError("input_state.occupations", "expected one occupation per info mode");
      }
      for (std::size_t i = 0; i < info.num_info(); ++i) {
        if (in.occupations[i] >= info.info_dims()[i]) {
          throw ValidationError("input_state.occupations", "occupation exceeds the info truncation");
        }
      }
      return basis_state(info, in.occupations);
    }
    case InputSpec::Kind::Amplitudes: {
      if (in.amplitudes.size() != info.total_dim()) {
        throw ValidationError("input_state.amplitudes", "expected " + std::to_string(info.total_dim()) + " amplitudes");
      }
      Vector v(static_cast<Eigen::Index>(in.amplitudes.size()));
      for (std::size_t k = 0; k < in.amplitudes.size(); ++k) v[static_cast<Eigen::Index>(k)] = in.amplitudes[k];
      if (v.norm() <= kZeroNormEpsilon) throw ValidationError("input_state.amplitudes", "zero state");
      return normalize(StateVector(info, v)).first;
    }
    case InputSpec::Kind::CodeWord: {
      if (in.code_word >= info.num_info()) throw ValidationError("input_state.index", "code word index out of range");
      std::vector<std::size_t> occ(info.num_info(), 0);
      if (info.info_dims()[in.code_word] < 2) throw ValidationError("input_state.index", "mode truncation below 2");
      occ[in.code_word] = 1;
      return basis_state(info, occ);
    }
    case InputSpec::Kind::Random:
      return seeded_random_state(info, in.random_seed);
  }
  throw ValidationError("input_state", "unsupported input");
}

StateVector seeded_random_state(const ModeLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector v(static_cast<Eigen::Index>(layout.total_dim()));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    v[k] = Complex(re, im);
  }
  return normalize(StateVector(layout, v)).first;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Check {
  std::string name;
  double value;
  double threshold;
  bool at_most;  // value <= threshold, else value >= threshold

  bool passed() const { return at_most ? value <= threshold : value >= threshold; }
};

struct Checks {
  std::vector<Check> items;
  void at_most(std::string n, double v, double t) { items.push_back({std::move(n), v, t, true}); }
  void at_least(std::string n, double v, double t) { items.push_back({std::move(n), v, t, false}); }
  bool all_passed() const {
    return std::all_of(items.begin(), items.end(), [](const Check& c) { return c.passed(); });
  }
  Json to_json() const {
    Json a = Json::array();
    for (const Check& c : items) {
      a.push_back(Json{{"name", c.name},
                       {"value", c.value},
                       {"threshold", c.threshold},
                       {"relation", c.at_most ? "<=" : ">="},
                       {"passed", c.passed()}});
    }
    return a;
  }
  void log_failures(std::ostream& log) const {
    for (const Check& c : items) {
      if (!c.passed()) {
        log << "check failed: " << c.name << " = " << format_double(c.value) << (c.at_most ? " > " : " < ")
            << format_double(c.threshold) << "\n";
      }
    }
  }
};

constexpr double kCheckTolerance = 1e-10;
constexpr double kTailThreshold = 1e-8;

template <typename T>
const T& need(const std::optional<T>& v, const char* field) {
  if (!v) throw ValidationError(field, "missing");
  return *v;
}

std::vector<std::string> artifacts(const Scenario& s, std::vector<std::string> defaults,
                                   std::initializer_list<const char*> allowed, const char* command) {
  const std::vector<std::string> chosen = s.outputs.empty() ? std::move(defaults) : s.outputs;
  for (const std::string& a : chosen) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return a == k; })) {
      throw ValidationError("outputs", "the " + std::string(command) + " command cannot produce " + a);
    }
  }
  return chosen;
}

bool wants(const std::vector<std::string>& chosen, const char* name) {
  return std::find(chosen.begin(), chosen.end(), name) != chosen.end();
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("out", "cannot write " + path.string());
  out << text;
  if (!out) throw ValidationError("out", "failed writing " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t seed_of(const Scenario& s, const CommandOptions& opt) { return opt.seed.value_or(s.seed); }

void pipeline_checks(Checks& checks, const ModeLayout& layout, const CodingSpec& coding, const ProtocolReport& r) {
  checks.at_most("state_norm_error", std::abs(r.state.norm() - 1.0), kCheckTolerance);
  double total = 0.0;
  for (const CountRecord& rec : r.distribution) total += rec.probability;
  checks.at_most("distribution_sum_error", std::abs(total - 1.0), kCheckTolerance);
  checks.at_most("encode_unitarity_defect", unitarity_defect(coding_unitary(layout, coding)), kCheckTolerance);
  checks.at_most("truncation_tail", r.truncation_tail, kTailThreshold);
}

int finish(const Checks& checks, const CommandOptions& opt, std::ostream& log) {
  if (!opt.check) return kExitOk;
  checks.log_failures(log);
  return checks.all_passed() ? kExitOk : kExitCheckFailed;
}

ProtocolReport run(const Scenario& s, const LossEvent& event) {
  return run_protocol(need(s.layout, "layout"), build_input(s), need(s.coding, "coding"), event);
}

void emit_samples(const Scenario& s, const CommandOptions& opt, const CountDistribution& dist, std::size_t num_anc,
                  Json* report) {
  const std::size_t shots = opt.shots.value_or(s.shots);
  if (shots == 0) throw ValidationError("shots", "sampling needs shots > 0");
  const auto samples = sample_counts(dist, seed_of(s, opt), shots);
  write_file(opt.out_dir, "samples.csv", samples_csv(samples, num_anc));
  if (report) {
    (*report)["shots"] = shots;
    (*report)["seed"] = seed_of(s, opt);
    (*report)["total_variation"] = total_variation(dist, samples);
  }
}

}  // namespace

int cmd_roundtrip(const Scenario& s, const CommandOptions& opt, std::ostream& log) {
  const auto chosen = artifacts(s, {"report"}, {"report", "distribution", "samples"}, "roundtrip");
  const ProtocolReport r = run(s, LossEvent::none());
  Checks checks;
  pipeline_checks(checks, *s.layout, *s.coding, r);
  checks.at_least("fidelity", r.fidelity.value_or(0.0), 1.0 - kCheckTolerance);
  checks.at_least("p_zero_counts", r.distribution.front().probability, 1.0 - kCheckTolerance);

  Json report{{"command", "roundtrip"}};
  report.update(report_to_json(r));
  if (wants(chosen, "distribution")) write_file(opt.out_dir, "distribution.csv", distribution_csv(r.distribution));
  if (wants(chosen, "samples")) emit_samples(s, opt, r.distribution, s.layout->num_anc(), &report);
  if (opt.check) report["checks"] = checks.to_json();
  if (wants(chosen, "report")) write_file(opt.out_dir, "report.json", dump(report));
  return finish(checks, opt, log);
}

int cmd_loss_sim(const Scenario& s, const CommandOptions& opt, std::ostream& log) {
  const auto chosen = artifacts(s, {"report", "distribution"}, {"report", "distribution", "samples"}, "loss-sim");
  const LossEvent& event = need(s.event, "event");
  const ProtocolReport r = run(s, event);
  Checks checks;
  pipeline_checks(checks, *s.layout, *s.coding, r);

  Json report{{"command", "loss-sim"}};
  report.update(report_to_json(r));
  if (r.recovery_applied) {
    report["recovery_fidelity"] = *r.fidelity;
    checks.at_least("recovery_fidelity", *r.fidelity, 1.0 - kCheckTolerance);
  }
  if (event.kind == LossEvent::Kind::Info) {
    NoClickProbability p0 = no_click_closed_forms(*s.coding, event);
    p0.exact = r.distribution.front().probability;
    report["no_click"] = Json{{"exact", p0.exact}, {"closed_form", p0.closed_form}, {"sech_form", p0.sech_form}};
    const double mismatch = std::abs(p0.exact - p0.closed_form);
    report["no_click"]["closed_form_mismatch"] = mismatch;
    if (mismatch > 1e-6) {
      log << "note: closed form for P0 differs from the exact value by " << format_double(mismatch) << "\n";
    }
  }
  if (wants(chosen, "distribution")) write_file(opt.out_dir, "distribution.csv", distribution_csv(r.distribution));
  if (wants(chosen, "samples")) emit_samples(s, opt, r.distribution, s.layout->num_anc(), &report);
  if (opt.check) report["checks"] = checks.to_json();
  if (wants(chosen, "report")) write_file(opt.out_dir, "report.json", dump(report));
  return finish(checks, opt, log);
}

int cmd_sweep(const Scenario& s, const CommandOptions& opt, std::ostream& log) {
  const auto chosen = artifacts(s, {"sweep"}, {"sweep"}, "sweep");
  const ModeLayout& layout = need(s.layout, "layout");
  const CodingSpec& base = need(s.coding, "coding");
  const GridSpec& grid = need(s.grid, "grid");
  const LossEvent& event = need(s.event, "event");
  if (event.kind != LossEvent::Kind::Info) throw ValidationError("event.kind", "sweep needs an info_loss event");
  const StateVector input = build_input(s);

  std::string csv =
      "gamma,p0_exact,p0_paper_form,mean_count,rate_no_loss,rate_ancilla_loss,rate_info_loss_detected,"
      "rate_ambiguous,p0_sech_form\n";
  Checks checks;
  for (double v : grid.values) {
    CodingSpec c = base;
    if (c.scheme == Scheme::ECS) {
      c.gamma = v * base.gamma;
    } else {
      c.strength = v;
    }
    ProtocolReport r;
    try {
      r = run_protocol(layout, input, c, event);
    } catch (const Error& e) {
      throw Error("grid point " + format_double(v) + ": " + e.what());
    }
    NoClickProbability p0 = no_click_closed_forms(c, event);
    p0.exact = r.distribution.front().probability;
    double mean = 0.0;
    for (double m : mean_counts(r.distribution)) mean += m;
    for (double x : {v, p0.exact, p0.closed_form, mean, r.classes.no_loss, r.classes.ancilla_loss,
                     r.classes.info_loss_detected, r.classes.ambiguous}) {
      csv += format_double(x) + ",";
    }
    csv += format_double(p0.sech_form) + "\n";
    pipeline_checks(checks, layout, c, r);
  }
  if (wants(chosen, "sweep")) write_file(opt.out_dir, "sweep.csv", csv);
  return finish(checks, opt, log);
}

int cmd_sample(const Scenario& s, const CommandOptions& opt, std::ostream& log) {
  const auto chosen = artifacts(s, {"samples", "report"}, {"samples", "report", "distribution"}, "sample");
  const ProtocolReport r = run(s, s.event.value_or(LossEvent::none()));
  Json report{{"command", "sample"}, {"event", event_to_json(r.event)}};
  Checks checks;
  pipeline_checks(checks, *s.layout, *s.coding, r);
  if (wants(chosen, "samples")) {
    emit_samples(s, opt, r.distribution, s.layout->num_anc(), &report);
    checks.at_most("total_variation", report["total_variation"].get<double>(), 0.01);
  }
  if (wants(chosen, "distribution")) write_file(opt.out_dir, "distribution.csv", distribution_csv(r.distribution));
  if (opt.check) report["checks"] = checks.to_json();
  if (wants(chosen, "report")) write_file(opt.out_dir, "report.json", dump(report));
  return finish(checks, opt, log);
}

namespace {

double get_or(const Json& j, const char* key, double fallback) { return j.contains(key) ? j.at(key).get<double>() : fallback; }
std::size_t size_or(const Json& j, const char* key, std::size_t fallback) {
  return j.contains(key) ? j.at(key).get<std::size_t>() : fallback;
}

SynthesisCertificate conjugation_suite(const Json& j) {
  const std::size_t d = size_or(j, "truncation", 80);
  const double l1 = get_or(j, "lambda1", 0.05), m1 = get_or(j, "mu1", 0.05);
  const ModeLayout layout = make_layout({d}, {d});
  const InteriorWindow w = InteriorWindow::uniform(layout, size_or(j, "window", std::min<std::size_t>(12, d / 4)));
  const ModeId a = ModeId::info(0), b = ModeId::anc(0);
  const Operator cubic = cubic_pair(layout, l1, m1);
  const QuadraticForm g2{0.1, 0.2, 0.0, 0.0, 0.3, 0.0};
  std::vector<LocalFactor> gf = gaussian_gate(layout, a, g2).local_factors();
  const auto gb = gaussian_gate(layout, b, -1.0 * g2).local_factors();
  gf.insert(gf.end(), gb.begin(), gb.end());
  const Operator gaussian = Operator::local(layout, std::move(gf), 1.0, true);
  const Matrix qp = single_mode::position(d) + single_mode::momentum(d);
  const Matrix dressed_a = qp - 3.0 * l1 * single_mode::position(d) * single_mode::position(d);
  const Matrix dressed_b = qp - 3.0 * m1 * single_mode::position(d) * single_mode::position(d);
  const Operator seed_gen = two_mode_seed_generator(layout);
  const Operator dressed_gen = Operator::local(layout, {{a, dressed_a}, {b, dressed_b}});

  SynthesisCertificate cert;
  cert.target_tag = "conjugation_suite";
  cert.parameters = {{"lambda1", l1}, {"mu1", m1}};
  cert.window = w;
  cert.truncation = d;
  cert.metrics = {{"seed_by_cubic", conjugation_identity_check(seed_gen, cubic, w)},
                  {"seed_by_gaussian", conjugation_identity_check(seed_gen, gaussian, w)},
                  {"dressed_by_gaussian", conjugation_identity_check(dressed_gen, gaussian, w)}};
  for (const auto& [k, v] : cert.metrics) cert.residual = std::max(cert.residual, v);
  return cert;
}

}  // namespace

int cmd_synth(const Scenario& s, const CommandOptions& opt, std::ostream& log) {
  const auto chosen = artifacts(s, {"certificate"}, {"certificate"}, "synth");
  const Json& j = need(s.synth, "synth");
  const std::string task = j.at("task").get<std::string>();
  Checks checks;
  SynthesisCertificate cert;
  if (task == "cubic_dress") {
    CubicDressOptions o;
    o.truncation = size_or(j, "truncation", o.truncation);
    o.convergence_tolerance = get_or(j, "convergence_tolerance", o.convergence_tolerance);
    cert = certify_cubic_dress(get_or(j, "lambda1", 0.05), get_or(j, "mu1", 0.05), o);
    checks.at_most("residual", cert.residual, 1e-6);
  } else if (task == "gaussian_reduction" || task == "gaussian_identity") {
    ReductionProblem p = ecs_reduction_problem(get_or(j, "gamma", 0.4), get_or(j, "lambda1", 0.05), get_or(j, "mu1", 0.05));
    if (task == "gaussian_identity") {
      p.target_coeff = 1.0;
      p.target_a = p.seed_a - (3.0 * p.lambda1) * QuadraticForm::q_squared();
      p.target_b = p.seed_b - (3.0 * p.mu1) * QuadraticForm::q_squared();
    }
    p.free_cubic = j.value("free_cubic", false);
    p.starts = size_or(j, "starts", p.starts);
    p.matrix_truncation = size_or(j, "matrix_truncation", 0);
    p.seed = seed_of(s, opt);
    cert = gaussian_reduction_solve(p).certificate;
    if (task == "gaussian_identity") {
      cert.target_tag = "gaussian_identity";
      checks.at_most("residual", cert.residual, 1e-12);
    }
  } else if (task == "mediated_pcs") {
    MediatedProtocolSpec spec;
    spec.strength = get_or(j, "strength", 0.4);
    spec.qubit_init = j.value("qubit_init", 1);
    spec.stark_coupling = get_or(j, "stark_coupling", 1.0);
    spec.squeeze_coupling = get_or(j, "squeeze_coupling", 1.0);
    const ModeLayout& layout = need(s.layout, "layout");
    const MediatedResult r = mediated_pcs(spec, embed_info_state(build_input(s), layout));
    cert = r.certificate;
    checks.at_least("qubit_purity", r.purity, 1.0 - 1e-9);
    checks.at_least("field_fidelity", r.field_fidelity, 1.0 - 1e-9);
  } else {
    cert = conjugation_suite(j);
    for (const auto& [k, v] : cert.metrics) checks.at_most(k, v, 1e-8);
  }
  Json out = certificate_to_json(cert);
  if (opt.check) out["checks"] = checks.to_json();
  if (wants(chosen, "certificate")) write_file(opt.out_dir, "certificate.json", dump(out));
  return finish(checks, opt, log);
}

int run_command(const std::string& command, const std::filesystem::path& scenario, const CommandOptions& opt,
                std::ostream& log) {
  try {
    const Scenario s = load_scenario(scenario);
    if (command == "roundtrip") return cmd_roundtrip(s, opt, log);
    if (command == "loss-sim") return cmd_loss_sim(s, opt, log);
    if (command == "sweep") return cmd_sweep(s, opt, log);
    if (command == "synth") return cmd_synth(s, opt, log);
    if (command == "sample") return cmd_sample(s, opt, log);
    log << "error: unknown command " << command << "\n";
    return kExitInvalid;
  } catch (const ValidationError& e) {
    log << "invalid scenario: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ImpossibleEventError& e) {
    log << "impossible event: " << e.what() << "\n";
    return kExitRunFailed;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitRunFailed;
  }
}

}  // namespace photonloss
