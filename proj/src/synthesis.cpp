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

#include "photonloss/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "photonloss/errors.hpp"
#include "photonloss/measurement.hpp"

namespace photonloss {

InteriorWindow InteriorWindow::uniform(const ModeLayout& layout, std::size_t level) {
  InteriorWindow w;
  for (std::size_t d : layout.dims()) w.levels.push_back(std::min(d, level));
  return w;
}

std::vector<std::size_t> window_indices(const ModeLayout& layout, const InteriorWindow& window) {
  const auto& dims = layout.dims();
  if (window.levels.size() != dims.size()) throw InvalidArgumentError("window needs one level per mode");
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (window.levels[k] == 0 || window.levels[k] > dims[k]) throw InvalidArgumentError("window level out of range");
  }
  std::vector<std::size_t> out;
  std::vector<std::size_t> occ(dims.size(), 0);
  while (true) {
    out.push_back(layout.flatten(occ));
    std::size_t k = dims.size();
    while (k > 0) {
      --k;
      if (++occ[k] < window.levels[k]) break;
      occ[k] = 0;
      if (k == 0) return out;
    }
  }
}

Matrix window_block(const Operator& op, const InteriorWindow& window) {
  const auto idx = window_indices(op.layout(), window);
  const auto n = static_cast<Eigen::Index>(idx.size());
  Matrix block(n, n);
  Vector e = Vector::Zero(static_cast<Eigen::Index>(op.layout().total_dim()));
  for (Eigen::Index c = 0; c < n; ++c) {
    e[static_cast<Eigen::Index>(idx[c])] = 1.0;
    const Vector y = op.apply(e);
    e[static_cast<Eigen::Index>(idx[c])] = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) block(r, c) = y[static_cast<Eigen::Index>(idx[r])];
  }
  return block;
}

double phase_aligned_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgumentError("matrix shapes differ");
  const Complex t = (b.adjoint() * a).trace();
  const Complex phase = std::abs(t) > 0.0 ? t / std::abs(t) : Complex(1.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

double SynthesisCertificate::parameter(const std::string& name) const {
  for (const auto& [k, v] : parameters)
    if (k == name) return v;
  throw InvalidArgumentError("certificate has no parameter " + name);
}

double SynthesisCertificate::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw InvalidArgumentError("certificate has no metric " + name);
}

Operator conjugate(const Operator& u, const Operator& v) {
  if (!(u.layout() == v.layout())) throw LayoutMismatchError("conjugation across different layouts");
  return Operator::chain({v, u, v.adjoint()});
}

double conjugation_identity_check(const Operator& h, const Operator& v, const std::optional<InteriorWindow>& window) {
  if (!(h.layout() == v.layout())) throw LayoutMismatchError("conjugation across different layouts");
  const ModeLayout& layout = h.layout();
  const InteriorWindow w = window.value_or(InteriorWindow::full(layout));
  if (h.kind() == Operator::Kind::Local && v.kind() == Operator::Kind::Local && h.local_factors().size() <= 2) {
    std::vector<LocalFactor> moved = h.local_factors();
    for (LocalFactor& f : moved) {
      for (const LocalFactor& g : v.local_factors()) {
        if (g.mode == f.mode) f.matrix = g.matrix * f.matrix * g.matrix.adjoint();
      }
    }
    const Operator rhs = exp_i(Operator::local(layout, std::move(moved), h.local_scale()));
    const Operator lhs = conjugate(exp_i(h), v);
    return max_entry_distance(window_block(lhs, w), window_block(rhs, w));
  }
  const Matrix hd = h.to_dense(), vd = v.to_dense();
  const Matrix lhs = vd * expm_i_hermitian(hd, 1.0) * vd.adjoint();
  Matrix moved = vd * hd * vd.adjoint();
  moved = 0.5 * (moved + moved.adjoint());
  const Matrix rhs = expm_i_hermitian(moved, 1.0);
  const auto idx = window_indices(layout, w);
  double worst = 0.0;
  for (std::size_t r : idx)
    for (std::size_t c : idx)
      worst = std::max(worst, std::abs(lhs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -
                                       rhs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
  return worst;
}

Operator cubic_pair(const ModeLayout& layout, double lambda1, double mu1) {
  const ModeId a = ModeId::info(0), b = ModeId::anc(0);
  std::vector<LocalFactor> f = cubic_phase_gate(layout, a, lambda1).local_factors();
  const auto g = cubic_phase_gate(layout, b, mu1).local_factors();
  f.insert(f.end(), g.begin(), g.end());
  return Operator::local(layout, std::move(f), 1.0, true);
}

Operator cubic_dress(const Operator& seed, double lambda1, double mu1) {
  return conjugate(seed, cubic_pair(seed.layout(), lambda1, mu1));
}

namespace {

Matrix dressed_mode_generator(std::size_t d, double lambda) {
  const Matrix q = single_mode::position(d);
  return q + single_mode::momentum(d) - 3.0 * lambda * q * q;
}

}  // namespace

Operator dressed_direct(const ModeLayout& layout, double lambda1, double mu1) {
  const ModeId a = ModeId::info(0), b = ModeId::anc(0);
  return Operator::product_exp(layout, a, dressed_mode_generator(layout.dim(a), lambda1), b,
                               dressed_mode_generator(layout.dim(b), mu1), 1.0);
}

double cubic_generator_transform_residual(std::size_t dim, double lambda, std::size_t levels) {
  if (levels == 0 || levels > dim) throw InvalidArgumentError("window level out of range");
  const auto layout = ModeLayout::make({dim}, {});
  const Matrix v = cubic_phase_gate(layout, ModeId::info(0), lambda).local_factors().front().matrix;
  const Matrix q = single_mode::position(dim);
  const Matrix moved = v * (q + single_mode::momentum(dim)) * v.adjoint();
  const auto l = static_cast<Eigen::Index>(levels);
  return max_entry_distance(moved.topLeftCorner(l, l), dressed_mode_generator(dim, lambda).topLeftCorner(l, l));
}

namespace {

// Columns of an operator on basis states, computed once per occupation.
class ColumnCache {
 public:
  explicit ColumnCache(Operator op) : op_(std::move(op)) {}

  // Block over occupations (n_a, n_b) with both below `level`.
  Matrix block(std::size_t level) {
    const ModeLayout& layout = op_.layout();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < level; ++i)
      for (std::size_t j = 0; j < level; ++j) idx.push_back(layout.flatten(std::vector<std::size_t>{i, j}));
    const auto n = static_cast<Eigen::Index>(idx.size());
    Matrix out(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      const Vector& y = column(idx[static_cast<std::size_t>(c)]);
      for (Eigen::Index r = 0; r < n; ++r) out(r, c) = y[static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)])];
    }
    return out;
  }

 private:
  const Vector& column(std::size_t index) {
    auto it = cols_.find(index);
    if (it != cols_.end()) return it->second;
    Vector e = Vector::Zero(static_cast<Eigen::Index>(op_.layout().total_dim()));
    e[static_cast<Eigen::Index>(index)] = 1.0;
    return cols_.emplace(index, op_.apply(e)).first->second;
  }

  Operator op_;
  std::map<std::size_t, Vector> cols_;
};

}  // namespace

SynthesisCertificate certify_cubic_dress(double lambda1, double mu1, const CubicDressOptions& options) {
  const std::size_t d = options.truncation;
  if (d < 2) throw InvalidArgumentError("truncation must be at least 2");
  const ModeLayout small = make_layout({d}, {d});
  const ModeLayout large = make_layout({2 * d}, {2 * d});
  ColumnCache direct(dressed_direct(small, lambda1, mu1));
  ColumnCache direct2(dressed_direct(large, lambda1, mu1));
  ColumnCache conj(cubic_dress(two_mode_seed(small), lambda1, mu1));
  ColumnCache conj2(cubic_dress(two_mode_seed(large), lambda1, mu1));

  const std::size_t max_level = options.max_level == 0 ? d / 2 : std::min(options.max_level, d);
  std::size_t level = 0;
  double direct_conv = 0.0;
  for (std::size_t w = 1; w <= max_level; ++w) {
    const double conv = max_entry_distance(direct.block(w), direct2.block(w));
    if (conv > options.convergence_tolerance) break;
    level = w;
    direct_conv = conv;
  }
  if (level == 0) {
    throw TruncationError("the direct cubic-dressed exponential is not converged on any window at truncation " +
                          std::to_string(d));
  }
  SynthesisCertificate cert;
  cert.target_tag = "cubic_dress";
  cert.parameters = {{"lambda1", lambda1}, {"mu1", mu1}};
  const Matrix built = conj.block(level);
  cert.residual = phase_aligned_distance(built, direct.block(level));
  cert.window = InteriorWindow{{level, level}};
  cert.truncation = d;
  cert.metrics = {{"direct_convergence", direct_conv},
                  {"conjugated_convergence", max_entry_distance(built, conj2.block(level))},
                  {"convergence_tolerance", options.convergence_tolerance},
                  {"generator_transform_a", cubic_generator_transform_residual(d, lambda1, level)},
                  {"generator_transform_b", cubic_generator_transform_residual(d, mu1, level)}};
  return cert;
}

ReductionProblem ecs_reduction_problem(double gamma, double lambda1, double mu1) {
  ReductionProblem p;
  p.target_a = QuadraticForm::q_squared() + QuadraticForm::p_squared();
  p.target_b = QuadraticForm::q_squared() - QuadraticForm::p_squared();
  p.target_coeff = -gamma / 2.0;
  p.lambda1 = lambda1;
  p.mu1 = mu1;
  return p;
}

QuadraticForm template_conjugate(const QuadraticForm& f, std::span<const double, 5> x, double sign4) {
  // x = (l2, l3, l4, l5, l6); the rightmost factor's map is substituted first.
  const QuadraticForm g2{x[0], 0, 0, 0, 0, 0};
  const QuadraticForm g3{0, x[1], 0, 0, 0, 0};
  const QuadraticForm g4{sign4 * x[2], 0, 0, 0, 0, 0};
  const QuadraticForm g56{0, x[3], 0, 0, x[4], 0};
  QuadraticForm out = f;
  for (const QuadraticForm* g : {&g2, &g3, &g4, &g56}) out = AffineSymplecticMap::of_gaussian(*g).substitute_into(out);
  return out;
}

double product_form_residual(const QuadraticForm& a, const QuadraticForm& b, double coeff, const QuadraticForm& ta,
                             const QuadraticForm& tb) {
  const auto ca = a.coefficients(), cb = b.coefficients(), cta = ta.coefficients(), ctb = tb.coefficients();
  double s = 0.0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      if (i == 5 && j == 5) continue;
      const double r = ca[i] * cb[j] - coeff * cta[i] * ctb[j];
      s += r * r;
    }
  return std::sqrt(s);
}

namespace {

constexpr int kResidualTerms = 35;

struct Achieved {
  QuadraticForm a, b;
};

Achieved achieved_forms(const ReductionProblem& p, const Eigen::VectorXd& x) {
  const double l1 = p.free_cubic ? x[10] : p.lambda1;
  const double m1 = p.free_cubic ? x[11] : p.mu1;
  const QuadraticForm da = p.seed_a - (3.0 * l1) * QuadraticForm::q_squared();
  const QuadraticForm db = p.seed_b - (3.0 * m1) * QuadraticForm::q_squared();
  const std::array<double, 5> la{x[0], x[1], x[2], x[3], x[4]};
  const std::array<double, 5> mb{x[5], x[6], x[7], x[8], x[9]};
  return {template_conjugate(da, la, -1.0), template_conjugate(db, mb, +1.0)};
}

struct ReductionFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const ReductionProblem* problem = nullptr;

  int inputs() const { return problem->free_cubic ? 12 : 10; }
  int values() const { return kResidualTerms; }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const Achieved got = achieved_forms(*problem, x);
    const auto ca = got.a.coefficients(), cb = got.b.coefficients();
    const auto ta = problem->target_a.coefficients(), tb = problem->target_b.coefficients();
    f.resize(kResidualTerms);
    int k = 0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        if (i == 5 && j == 5) continue;
        f[k++] = ca[i] * cb[j] - problem->target_coeff * ta[i] * tb[j];
      }
    return 0;
  }
};

double residual_of(const ReductionProblem& p, const Eigen::VectorXd& x) {
  const Achieved got = achieved_forms(p, x);
  return product_form_residual(got.a, got.b, p.target_coeff, p.target_a, p.target_b);
}

bool lexicographically_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

}  // namespace

ReductionResult gaussian_reduction_solve(const ReductionProblem& problem) {
  for (const auto* f : {&problem.target_a, &problem.target_b, &problem.seed_a, &problem.seed_b}) {
    if (!f->is_finite()) throw InvalidArgumentError("reduction forms must be finite");
  }
  if (!std::isfinite(problem.target_coeff) || !std::isfinite(problem.lambda1) || !std::isfinite(problem.mu1)) {
    throw InvalidArgumentError("reduction parameters must be finite");
  }
  if (problem.starts == 0) throw InvalidArgumentError("solver needs at least one start");

  ReductionFunctor functor;
  functor.problem = &problem;
  const int n = functor.inputs();
  std::mt19937_64 rng(problem.seed);

  Eigen::VectorXd best;
  double best_residual = std::numeric_limits<double>::infinity();
  int best_status = 0;
  std::size_t evaluations = 0;
  for (std::size_t s = 0; s < problem.starts; ++s) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (s > 0) {
      for (int k = 0; k < n; ++k) x[k] = 2.0 * uniform01(rng) - 1.0;
    }
    if (problem.free_cubic) {
      x[10] += problem.lambda1;
      x[11] += problem.mu1;
    }
    if (residual_of(problem, x) > 0.0) {
      Eigen::NumericalDiff<ReductionFunctor> numdiff(functor);
      Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ReductionFunctor>> lm(numdiff);
      lm.parameters.maxfev = 4000;
      lm.parameters.xtol = 1e-14;
      lm.parameters.ftol = 1e-14;
      const int status = lm.minimize(x);
      evaluations += static_cast<std::size_t>(lm.nfev);
      if (s == 0 || residual_of(problem, x) < best_residual) best_status = status;
    }
    const double r = residual_of(problem, x);
    if (!std::isfinite(r)) continue;
    if (r < best_residual || (r == best_residual && lexicographically_less(x, best))) {
      best_residual = r;
      best = x;
    }
  }
  if (best.size() == 0) throw Error("reduction solver produced no finite iterate");

  ReductionResult out;
  out.lambda.assign(best.data(), best.data() + 5);
  out.mu.assign(best.data() + 5, best.data() + 10);
  out.lambda1 = problem.free_cubic ? best[10] : problem.lambda1;
  out.mu1 = problem.free_cubic ? best[11] : problem.mu1;
  const Achieved got = achieved_forms(problem, best);
  out.achieved_a = got.a;
  out.achieved_b = got.b;
  out.residual = best_residual;

  SynthesisCertificate& cert = out.certificate;
  cert.target_tag = "gaussian_reduction";
  cert.parameters = {{"lambda1", out.lambda1}, {"mu1", out.mu1}};
  for (std::size_t k = 0; k < 5; ++k) cert.parameters.emplace_back("lambda" + std::to_string(k + 2), out.lambda[k]);
  for (std::size_t k = 0; k < 5; ++k) cert.parameters.emplace_back("mu" + std::to_string(k + 2), out.mu[k]);
  cert.residual = best_residual;
  cert.metrics = {{"target_coeff", problem.target_coeff},
                  {"free_cubic", problem.free_cubic ? 1.0 : 0.0},
                  {"starts", static_cast<double>(problem.starts)},
                  {"seed", static_cast<double>(problem.seed)},
                  {"solver_status", static_cast<double>(best_status)},
                  {"evaluations", static_cast<double>(evaluations)},
                  {"dressed_rank_a", static_cast<double>(quadratic_rank(got.a))},
                  {"dressed_rank_b", static_cast<double>(quadratic_rank(got.b))},
                  {"target_rank_a", static_cast<double>(quadratic_rank(problem.target_a))},
                  {"target_rank_b", static_cast<double>(quadratic_rank(problem.target_b))}};
  if (problem.matrix_truncation > 0) {
    const std::size_t d = problem.matrix_truncation;
    const ModeLayout layout = make_layout({d}, {d});
    const ModeId a = ModeId::info(0), b = ModeId::anc(0);
    const Operator achieved = Operator::product_exp(layout, a, got.a.to_matrix(d), b, got.b.to_matrix(d), 1.0);
    const Operator target = Operator::product_exp(layout, a, problem.target_a.to_matrix(d), b,
                                                  problem.target_b.to_matrix(d), problem.target_coeff);
    const InteriorWindow w = InteriorWindow::uniform(layout, std::max<std::size_t>(1, d / 10));
    cert.window = w;
    cert.truncation = d;
    cert.metrics.emplace_back("matrix_residual", phase_aligned_distance(window_block(achieved, w), window_block(target, w)));
  }
  return out;
}

RankHarnessResult rank_invariance_harness(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return 2.0 * uniform01(rng) - 1.0; };
  RankHarnessResult out;
  for (std::size_t t = 0; t < trials; ++t) {
    QuadraticForm f{0, 0, 0, u(), u(), u()};
    switch (t % 3) {
      case 0:
        break;
      case 1: {
        // (a q + b p)^2 plus a linear part.
        const double a = u(), b = u();
        f.qq = a * a;
        f.pp = b * b;
        f.qp = 2.0 * a * b;
        break;
      }
      default:
        f.qq = u();
        f.pp = u();
        f.qp = u();
        break;
    }
    const QuadraticForm g{u(), u(), u(), u(), u(), 0.0};
    const auto map = AffineSymplecticMap::of_gaussian(g);
    const QuadraticForm h = map.substitute_into(f);
    const double scale = std::max({1.0, f.quadratic_block().norm(), h.quadratic_block().norm()});
    ++out.trials;
    if (quadratic_rank(f, 1e-9 * scale) != quadratic_rank(h, 1e-9 * scale)) ++out.violations;
  }
  return out;
}

std::array<double, 3> MediatedProtocolSpec::durations() const {
  const double t = std::numbers::pi / (2.0 * stark_coupling);
  return {t, strength / squeeze_coupling, t};
}

void MediatedProtocolSpec::validate() const {
  if (!std::isfinite(strength) || strength < 0.0) throw InvalidArgumentError("strength must be finite and >= 0");
  if (!std::isfinite(stark_coupling) || stark_coupling <= 0.0) throw InvalidArgumentError("stark coupling must be > 0");
  if (!std::isfinite(squeeze_coupling) || squeeze_coupling <= 0.0) {
    throw InvalidArgumentError("squeeze coupling must be > 0");
  }
  if (qubit_init != 1 && qubit_init != -1) throw InvalidArgumentError("qubit_init must be +1 or -1");
}

MediatedResult mediated_pcs(const MediatedProtocolSpec& spec, const StateVector& field_in, const BuildOptions& options) {
  spec.validate();
  const ModeLayout& field = field_in.layout();
  if (field.num_anc() != 1 || field.num_aux() != 0) {
    throw LayoutMismatchError("mediated PCS needs one ancilla mode and no aux factor");
  }
  const std::size_t d = field.anc_dims()[0];
  if (options.check_truncation && !squeeze_fits(2.0 * spec.strength, d)) {
    throw TruncationError("squeeze strength " + std::to_string(spec.strength) + " does not fit ancilla truncation " +
                          std::to_string(d));
  }
  const ModeLayout layout = ModeLayout::make(field.info_dims(), field.anc_dims(), {2});
  const ModeId qubit = ModeId::aux(0);
  Matrix sz = Matrix::Zero(2, 2), sx = Matrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  sx(0, 1) = sx(1, 0) = 1.0;

  const auto t = spec.durations();
  std::vector<Operator> stark_in, stark_out;
  for (std::size_t i = 0; i < layout.num_info(); ++i) {
    const Matrix n = single_mode::number(layout.info_dims()[i]);
    stark_in.push_back(Operator::product_exp(layout, ModeId::info(i), n, qubit, sz, -spec.stark_coupling * t[0]));
    stark_out.push_back(Operator::product_exp(layout, ModeId::info(i), n, qubit, sz, spec.stark_coupling * t[2]));
  }
  const Operator squeeze = Operator::product_exp(layout, ModeId::anc(0), squeeze_generator_matrix(d), qubit, sx,
                                                 -spec.squeeze_coupling * t[1]);
  std::vector<Operator> seq = stark_out;
  seq.push_back(squeeze);
  seq.insert(seq.end(), stark_in.begin(), stark_in.end());
  const Operator pulses = Operator::chain(std::move(seq));

  Vector q(2);
  q << 1.0, static_cast<double>(spec.qubit_init);
  q /= std::sqrt(2.0);
  const StateVector qubit_state(ModeLayout::make({2}, {}), q);
  MediatedResult out;
  out.compound = pulses.apply(tensor_product(normalize(field_in).first, qubit_state, layout));

  // Reduced qubit state and the field conditioned on its dominant eigenvector.
  const auto nf = static_cast<Eigen::Index>(field.total_dim());
  Matrix psi(nf, 2);
  for (Eigen::Index f = 0; f < nf; ++f)
    for (Eigen::Index k = 0; k < 2; ++k) psi(f, k) = out.compound.amp(static_cast<std::size_t>(2 * f + k));
  const Matrix rho = psi.transpose() * psi.conjugate();
  out.purity = std::min(1.0, (rho * rho).trace().real());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
  const Vector top = eig.eigenvectors().col(1);
  out.field = normalize(StateVector(field, psi * top.conjugate())).first;

  Eigen::MatrixXd column = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(layout.num_info()), 1);
  const CodingSpec oracle_coding =
      CodingSpec::pcs(column, spec.strength, spec.qubit_init == 1 ? Direction::Encode : Direction::Decode);
  const StateVector expected = coding_unitary(field, oracle_coding, options).apply(normalize(field_in).first);
  out.field_fidelity = fidelity(out.field, expected);

  SynthesisCertificate& cert = out.certificate;
  cert.target_tag = spec.qubit_init == 1 ? "mediated_pcs_encode" : "mediated_pcs_decode";
  cert.parameters = {{"strength", spec.strength},
                     {"stark_coupling", spec.stark_coupling},
                     {"squeeze_coupling", spec.squeeze_coupling},
                     {"qubit_init", static_cast<double>(spec.qubit_init)},
                     {"duration_1", t[0]},
                     {"duration_2", t[1]},
                     {"duration_3", t[2]}};
  cert.residual = 1.0 - out.field_fidelity;
  cert.truncation = d;
  cert.metrics = {{"qubit_purity", out.purity}, {"field_fidelity", out.field_fidelity}};
  return out;
}

}  // namespace photonloss
