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

#include <gtest/gtest.h>

#include <cmath>

#include "photonloss/errors.hpp"
#include "test_util.hpp"

using namespace photonloss;
using photonloss::testing::embed_dense;
using photonloss::testing::pade_exp_i;
using photonloss::testing::random_state;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

StateVector info_state(std::vector<std::size_t> dims, std::vector<Complex> amps) {
  const ModeLayout l = ModeLayout::make(std::move(dims), {});
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) v[static_cast<Eigen::Index>(k)] = amps[k];
  return normalize(StateVector(l, v)).first;
}

// Dense-exponential pipeline U^-1 L U for K = M = 1 ECS, built without the
// sector-block machinery.
Vector dense_ecs_pipeline(const ModeLayout& layout, double gamma, const Matrix& loss, const Vector& in) {
  const Matrix n = embed_dense(layout, 0, single_mode::number(layout.info_dims()[0]));
  const std::size_t d = layout.anc_dims()[0];
  const Matrix a = single_mode::annihilation(d), ad = single_mode::creation(d);
  const Matrix g = embed_dense(layout, 1, ad * ad + a * a);
  const Matrix h = gamma * n * g;
  return pade_exp_i(h, 1.0) * (loss * (pade_exp_i(h, -1.0) * in));
}

}  // namespace

TEST(LossEvent, defaults_and_validation) {
  const auto layout = make_layout({2, 2}, {2});
  const auto e = LossEvent::info(2);
  EXPECT_NEAR(std::abs(e.weights[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-16);
  EXPECT_NO_THROW(e.validate(layout));
  EXPECT_THROW(LossEvent::info(2, {1.0, 1.0}).validate(layout), InvalidArgumentError);
  EXPECT_THROW(LossEvent::ancilla(2).validate(layout), InvalidArgumentError);
  EXPECT_NO_THROW(LossEvent::ancilla(1).validate(layout));
  EXPECT_THROW(collective_loss_op(layout, LossEvent::none()), InvalidArgumentError);
}

TEST(Protocol, collective_loss_examples) {
  const auto layout = make_layout({2, 2}, {2});
  const auto op = collective_loss_op(layout, LossEvent::info(2));
  const auto out = op.apply(basis_state(layout, {1, 0, 0}));
  EXPECT_NEAR(std::abs(out.amp(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(out.squared_norm(), 0.5, 1e-15);
  const auto single = collective_loss_op(layout, LossEvent::ancilla(1)).to_dense();
  EXPECT_EQ(single, ladder_op(layout, ModeId::anc(0), LadderKind::Annihilate).to_dense());
  EXPECT_EQ(op.apply(basis_state(layout, {0, 0, 0})).norm(), 0.0);
}

TEST(Protocol, no_loss_round_trip) {
  const auto layout = make_layout({3, 2}, {40, 40});
  std::mt19937_64 rng(5);
  for (const auto& c : {CodingSpec::ecs(mat({{0.2, 0.1}, {-0.3, 0.25}})), CodingSpec::pcs(mat({{1, 0}, {1, 1}}), 0.5)}) {
    const auto in = random_state(layout.info_layout(), rng);
    const auto r = run_protocol(layout, in, c, LossEvent::none());
    EXPECT_GE(*r.fidelity, 1.0 - 1e-10);
    EXPECT_GE(r.classes.no_loss, 1.0 - 1e-10);
    EXPECT_GE(r.distribution.front().probability, 1.0 - 1e-10);
    EXPECT_EQ(r.heralded_class.tag, OutcomeClass::Tag::NoLoss);
    EXPECT_FALSE(r.recovery_applied);
    EXPECT_LT(r.truncation_tail, 1e-4);
  }
}

TEST(Protocol, ecs_ancilla_loss_on_number_state) {
  const auto layout = make_layout({2}, {60});
  const auto r = run_protocol(layout, info_state({2}, {0.0, 1.0}), CodingSpec::ecs(mat({{0.3}})), LossEvent::ancilla(1));
  EXPECT_GE(r.distribution[1].probability, 1.0 - 1e-12);
  EXPECT_GE(*r.fidelity, 1.0 - 1e-12);
  EXPECT_NEAR(r.collapse_norm, std::sinh(0.6), 1e-10);
  EXPECT_EQ(r.heralded_class, (OutcomeClass{OutcomeClass::Tag::AncillaLoss, 0}));
}

TEST(Protocol, pcs_ancilla_loss_flips_parity_and_is_recovered) {
  const auto layout = make_layout({2}, {120});
  const auto in = info_state({2}, {1.0, 1.0});
  const auto c = CodingSpec::pcs(mat({{1}}), 0.4);
  const auto r = run_protocol(layout, in, c, LossEvent::ancilla(1));
  const auto projected = project_counts(r.state, std::vector<std::size_t>{1});
  EXPECT_NEAR(projected.second, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(projected.first.amp(0) - projected.first.amp(1) * -1.0), 0.0, 1e-12);
  EXPECT_TRUE(r.recovery_applied);
  EXPECT_GE(*r.fidelity, 1.0 - 1e-12);
}

TEST(Protocol, ecs_distortion_matches_dense_pipeline) {
  const auto layout = make_layout({3}, {120});
  const auto in = info_state({3}, {0.0, 1.0, 1.0});
  const auto c = CodingSpec::ecs(mat({{0.3}}));
  const auto d = info_distortion_after_ancilla_loss(in, c, 0);
  // Independent dense route, then projection on one click.
  const Matrix b = embed_dense(layout, 1, single_mode::annihilation(120));
  const Vector out = dense_ecs_pipeline(layout, 0.3, b, embed_info_state(in, layout).amps());
  Vector proj(3);
  for (int s = 0; s < 3; ++s) proj[s] = out[s * 120 + 1];
  proj.normalize();
  EXPECT_GE(std::norm(proj.dot(d.amps())), 1.0 - 1e-10);
  const double w1 = std::sinh(0.6), w2 = std::sinh(1.2), nrm = std::hypot(w1, w2);
  EXPECT_NEAR(std::abs(d.amp(1)), w1 / nrm, 1e-12);
  EXPECT_NEAR(std::abs(d.amp(2)), w2 / nrm, 1e-12);
  // Collapse norm bookkeeping: |b U psi|^2 = sum_n |psi_n|^2 sinh^2(2 gamma n).
  const auto r = run_protocol(layout, in, c, LossEvent::ancilla(1));
  EXPECT_NEAR(r.collapse_norm * r.collapse_norm, 0.5 * (w1 * w1 + w2 * w2), 1e-9);
  const auto pipeline = project_counts(r.state, std::vector<std::size_t>{1}).first;
  EXPECT_GE(fidelity(pipeline, d), 1.0 - 1e-12);
  EXPECT_THROW(info_distortion_after_ancilla_loss(info_state({3}, {1.0, 0.0, 0.0}), c, 0), ImpossibleEventError);
  const auto two = info_distortion_after_ancilla_loss(info_state({3}, {0.0, 0.0, 1.0}), c, 0);
  EXPECT_NEAR(std::abs(two.amp(2)), 1.0, 1e-15);
}

TEST(Protocol, info_loss_bookkeeping_matches_dense_pipeline) {
  const auto layout = make_layout({3}, {100});
  const auto in = info_state({3}, {0.3, Complex(0.5, 0.2), -0.7});
  const auto r = run_protocol(layout, in, CodingSpec::ecs(mat({{0.25}})), LossEvent::info(1));
  const Matrix a = embed_dense(layout, 0, single_mode::annihilation(3));
  const Vector out = dense_ecs_pipeline(layout, 0.25, a, embed_info_state(in, layout).amps());
  EXPECT_NEAR(r.collapse_norm, out.norm(), 1e-12);
  EXPECT_GE(std::norm(out.normalized().dot(r.state.amps())), 1.0 - 1e-10);
  // <n> = 0.25 + 0.49*2 over the normalised input.
  const double nbar = (0.29 * 1.0 + 0.49 * 2.0) / (0.09 + 0.29 + 0.49);
  EXPECT_NEAR(r.collapse_norm * r.collapse_norm, nbar, 1e-12);
  EXPECT_THROW(run_protocol(layout, info_state({3}, {1.0, 0.0, 0.0}), CodingSpec::ecs(mat({{0.25}})),
                            LossEvent::info(1)),
               ImpossibleEventError);
}

TEST(Protocol, pcs_recovery_on_full_space) {
  const auto layout = make_layout({4, 3}, {60, 60});
  const auto c = CodingSpec::pcs(mat({{1, 0}, {1, 1}}), 0.45);
  std::mt19937_64 rng(19);
  for (int k = 0; k < 5; ++k) {
    const auto in = random_state(layout.info_layout(), rng);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto r = run_protocol(layout, in, c, LossEvent::ancilla_mode(2, j));
      EXPECT_TRUE(r.recovery_applied);
      EXPECT_EQ(r.heralded_class.mode, j);
      EXPECT_GE(*r.fidelity, 1.0 - 1e-10);
    }
  }
}

TEST(Protocol, ecs_symmetric_coupling_preserves_code_space) {
  const auto layout = make_layout({2, 2, 2}, {80});
  const auto c = CodingSpec::ecs(mat({{0.3}, {0.3}, {0.3}}));
  const auto words = code_words(3);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n;
  std::vector<StateVector> inputs = words;
  for (int k = 0; k < 3; ++k) {
    StateVector s = Complex(n(rng), n(rng)) * words[0];
    s = s + Complex(n(rng), n(rng)) * words[1];
    s = s + Complex(n(rng), n(rng)) * words[2];
    inputs.push_back(normalize(s).first);
  }
  for (const auto& in : inputs) {
    const auto r = run_protocol(layout, in, c, LossEvent::ancilla(1));
    EXPECT_GE(*r.fidelity, 1.0 - 1e-10);
    EXPECT_FALSE(r.recovery_applied);
  }
}

TEST(Protocol, one_to_one_coupling_localizes_info_loss) {
  const auto layout = make_layout({3, 3}, {100, 100});
  const auto c = CodingSpec::ecs(mat({{0.4, 0.0}, {0.0, 0.4}}));
  const auto in = info_state({3, 3}, {0, 1, 0, 1, 0, 0, 0, 0, 0});
  for (std::size_t i = 0; i < 2; ++i) {
    const auto r = run_protocol(layout, in, c, LossEvent::info_mode(2, i));
    double even_on_i = 0.0, clicks = 0.0;
    for (const auto& rec : r.distribution) {
      const std::size_t other = rec.counts[1 - i];
      if (rec.counts[i] == 0 && other == 0) continue;
      clicks += rec.probability;
      if (other == 0 && rec.counts[i] % 2 == 0) even_on_i += rec.probability;
    }
    EXPECT_GE(even_on_i / clicks, 1.0 - 1e-8);
    EXPECT_NEAR(r.classes.info_loss_detected, clicks, 1e-8);
  }
}

TEST(Protocol, parity_correction) {
  const auto c = CodingSpec::pcs(mat({{1}}), 0.3);
  const auto minus = info_state({3}, {1.0, -1.0, 0.0});
  const auto plus = parity_correction(minus, c, 0);
  EXPECT_NEAR(std::abs(plus.amp(1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_EQ(parity_correction(plus, c, 0).amps(), minus.amps());
  EXPECT_THROW(parity_correction(minus, CodingSpec::ecs(mat({{0.3}})), 0), UnsupportedRecoveryError);
  const auto pcs = info_distortion_after_ancilla_loss(info_state({3}, {1.0, 1.0, 1.0}), c, 0);
  EXPECT_GE(fidelity(pcs, info_state({3}, {1.0, -1.0, 1.0})), 1.0 - 1e-15);
}

TEST(Protocol, code_words) {
  const auto w = code_words(2);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0].amp(std::vector<std::size_t>{1, 0}), Complex(1.0));
  EXPECT_EQ(w[1].amp(std::vector<std::size_t>{0, 1}), Complex(1.0));
  const auto w3 = code_words(3);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(std::abs(inner(w3[a], w3[b])), a == b ? 1.0 : 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto n = number_op(w3[a].layout(), ModeId::info(i)).apply(w3[a]);
      total += inner(w3[a], n).real();
    }
    EXPECT_EQ(total, 1.0);
  }
  EXPECT_THROW(code_words(0), InvalidArgumentError);
}

TEST(Protocol, rejects_layout_mismatch) {
  const auto layout = make_layout({3}, {20});
  EXPECT_THROW(run_protocol(layout, info_state({2}, {1.0, 0.0}), CodingSpec::ecs(mat({{0.1}})), LossEvent::none()),
               LayoutMismatchError);
}
