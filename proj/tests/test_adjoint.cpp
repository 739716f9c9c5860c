// Copyright 2026 The sfqopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sfqopt/adjoint.hpp"
#include "sfqopt/errors.hpp"

using namespace sfqopt;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

struct Fixture {
  SystemConfig cfg;
  PropagatorSet props;
  GateTarget target;
  explicit Fixture(double theta) {
    cfg.theta = theta;
    props = precompute_propagators(cfg);
    target = GateTarget::embed(hadamard(), cfg.n_levels);
  }
};

const Fixture& fixture300() {
  static const Fixture f(kPi / 300);
  return f;
}

const Fixture& fixture100() {
  static const Fixture f(kPi / 100);
  return f;
}

double relative_error(double adj, double fd, double floor) {
  const double diff = std::abs(adj - fd);
  return diff <= floor ? 0.0 : diff / std::abs(fd);
}

// Least-squares slope of log(t) against log(p).
double loglog_slope(const std::vector<double>& p, const std::vector<double>& t) {
  double mx = 0, my = 0;
  const double n = static_cast<double>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    mx += std::log(p[i]) / n;
    my += std::log(t[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sxy += (std::log(p[i]) - mx) * (std::log(t[i]) - my);
    sxx += (std::log(p[i]) - mx) * (std::log(p[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST_SUITE("adjoint") {

TEST_CASE("gradient matches central differences on random sequences") {
  const double h = 1e-5, floor = 1e-10;
  std::mt19937_64 rng(2026);
  for (const Fixture* f : {&fixture300(), &fixture100()}) {
    for (std::size_t p : {1u, 2u, 5u, 16u, 16u, 16u, 32u}) {
      const PulseSequence a = testing::random_sequence(rng, p);
      const auto fd = testing::relaxed_fd_gradient(a, f->target.v_essential, f->cfg, h);
      const ForwardTrajectory traj = propagate(a, f->props, true);
      const GradientVector g1 = grad_infidelity(traj, a, f->props, f->target);
      const GradientVector g2 = grad_leakage(traj, a, f->props, guard_weight_diagonal(f->cfg), 2);
      const GradientVector g = grad_total(a, f->props, f->target, f->cfg);
      double worst = 0.0, worst1 = 0.0, worst2 = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        worst = std::max(worst, relative_error(g[k], fd[k].j, floor));
        worst1 = std::max(worst1, relative_error(g1[k], fd[k].j1, floor));
        worst2 = std::max(worst2, relative_error(g2[k], fd[k].j2, floor));
      }
      CAPTURE(f->cfg.theta);
      CAPTURE(p);
      CHECK(worst < 1e-5);
      CHECK(worst1 < 1e-5);
      CHECK(worst2 < 1e-5);
    }
  }
}

TEST_CASE("single-step infidelity gradient") {
  const Fixture& f = fixture100();
  for (bool bit : {false, true}) {
    PulseSequence a(1, bit);
    const ComplexMatrix& d = f.props.d(bit);
    const ComplexMatrix& b = f.props.b(bit);
    Complex s = 0.0, inner = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 2; ++c) {
        s += std::conj(d(r, c)) * f.target.embedded(r, c);
        inner += std::conj(b(r, c)) * f.target.embedded(r, c);
      }
    const double expected = -(2.0 / 4.0) * (std::conj(s) * inner).real();
    const GradientVector g = grad_infidelity(propagate(a, f.props, true), a, f.props, f.target);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("single-step leakage gradient") {
  const Fixture& f = fixture100();
  const Eigen::VectorXd w = guard_weight_diagonal(f.cfg);
  for (bool bit : {false, true}) {
    PulseSequence a(1, bit);
    const ComplexMatrix& d = f.props.d(bit);
    const ComplexMatrix& b = f.props.b(bit);
    Complex inner = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 2; ++c) inner += std::conj(b(r, c)) * 0.5 * w[r] * d(r, c);
    const double expected = 2.0 * inner.real();
    const GradientVector g = grad_leakage(propagate(a, f.props, true), a, f.props, w, 2);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("zero weights give a zero leakage gradient") {
  const Fixture& f = fixture300();
  std::mt19937_64 rng(1);
  const PulseSequence a = testing::random_sequence(rng, 64);
  const GradientVector g = grad_leakage(propagate(a, f.props, true), a, f.props, Eigen::VectorXd::Zero(4), 2);
  for (double x : g) CHECK(x == 0.0);
}

TEST_CASE("undriven system aimed at its own free evolution") {
  SystemConfig cfg;
  cfg.theta = 0.0;
  const PropagatorSet props = precompute_propagators(cfg);
  const int p = 12;
  ComplexMatrix free = ComplexMatrix::Identity(4, 4);
  for (int j = 0; j < p; ++j) free = props.d0 * free;
  const GateTarget t = GateTarget::embed(free.topLeftCorner(2, 2), 4, 1e-10);
  std::mt19937_64 rng(7);
  const PulseSequence a = testing::random_sequence(rng, p);
  const ForwardTrajectory traj = propagate(a, props, true);
  CHECK(std::abs(std::abs(gate_overlap(traj.final(), t)) - 2.0) < 1e-10);
  const GradientVector g = grad_infidelity(traj, a, props, t);
  const auto fd = testing::relaxed_fd_gradient(a, t.v_essential, cfg, 1e-5);
  for (int k = 0; k < p; ++k) {
    CHECK(std::abs(g[k]) < 1e-12);
    CHECK(std::abs(fd[k].j1) < 1e-9);
  }
}

TEST_CASE("gradients need the full trajectory") {
  const Fixture& f = fixture300();
  const PulseSequence a(4);
  const ForwardTrajectory last = propagate(a, f.props, false);
  CHECK_THROWS_AS(grad_infidelity(last, a, f.props, f.target), MissingSnapshots);
  CHECK_THROWS_AS(grad_leakage(last, a, f.props, Eigen::VectorXd::Zero(4), 2), MissingSnapshots);
}

TEST_CASE("adjoint recursion telescopes to the direct product") {
  const Fixture& f = fixture100();
  std::mt19937_64 rng(17);
  for (std::size_t p : {1u, 2u, 6u, 10u}) {
    const PulseSequence a = testing::random_sequence(rng, p);
    const std::vector<ComplexMatrix> lambdas = infidelity_adjoints(a, f.props, f.target);
    REQUIRE(lambdas.size() == p);
    for (std::size_t k = 1; k <= p; ++k) {
      ComplexMatrix direct = f.target.embedded;
      for (std::size_t j = p; j > k; --j) direct = f.props.d(a[j - 1]).adjoint() * direct;
      CHECK((lambdas[k - 1] - direct).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("fused and separate sweeps agree") {
  const Fixture& f = fixture100();
  std::mt19937_64 rng(99);
  for (std::size_t p : {1u, 3u, 100u, 1600u}) {
    const PulseSequence a = testing::random_sequence(rng, p);
    const ValueAndGradient vg = value_and_gradient(a, f.props, f.target, f.cfg);
    const GradientVector sep = grad_total_separate(a, f.props, f.target, f.cfg);
    const ObjectiveValue v = total_objective(a, f.props, f.target, f.cfg);
    REQUIRE(vg.gradient.size() == p);
    for (std::size_t k = 0; k < p; ++k) CHECK(std::abs(vg.gradient[k] - sep[k]) <= 1e-13);
    CHECK(vg.value.j == doctest::Approx(v.j).epsilon(1e-14));
    CHECK(vg.value.j1 == doctest::Approx(v.j1).epsilon(1e-14));
    CHECK(vg.value.j2 == doctest::Approx(v.j2).epsilon(1e-14));
  }
}

TEST_CASE("total gradient is linear in the leakage weight") {
  Fixture f(kPi / 300);
  std::mt19937_64 rng(5);
  const PulseSequence a = testing::random_sequence(rng, 200);
  f.cfg.c1 = 0.0;
  const GradientVector g0 = grad_total(a, f.props, f.target, f.cfg);
  const GradientVector only_j1 = grad_infidelity(propagate(a, f.props, true), a, f.props, f.target);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(g0[k] == only_j1[k]);
  f.cfg.c1 = 1.0;
  const GradientVector g1 = grad_total(a, f.props, f.target, f.cfg);
  for (double c : {0.01, 0.3, 2.5}) {
    f.cfg.c1 = c;
    const GradientVector gc = grad_total(a, f.props, f.target, f.cfg);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(gc[k] - g0[k] - c * (g1[k] - g0[k])) < 1e-12);
  }
}

TEST_CASE("derivative of the product matches differences of the relaxed product") {
  const Fixture& f = fixture100();
  const double h = 1e-3;
  ComplexMatrix plus[2], minus[2];
  for (int b = 0; b < 2; ++b) {
    plus[b] = integrate_step(f.cfg, b + h, false).propagator;
    minus[b] = integrate_step(f.cfg, b - h, false).propagator;
  }
  std::mt19937_64 rng(31);
  for (std::size_t p = 1; p <= 6; ++p) {
    const PulseSequence a = testing::random_sequence(rng, p);
    for (std::size_t k = 0; k < p; ++k) {
      // A_p ... A_{k+1} B_k A_{k-1} ... A_1
      ComplexMatrix analytic = ComplexMatrix::Identity(4, 4), up = analytic, down = analytic;
      for (std::size_t j = 0; j < p; ++j) {
        const bool bit = a[j];
        analytic = (j == k ? f.props.b(bit) : f.props.d(bit)) * analytic;
        up = (j == k ? plus[bit] : f.props.d(bit)) * up;
        down = (j == k ? minus[bit] : f.props.d(bit)) * down;
      }
      const ComplexMatrix fd = (up - down) / (2 * h);
      CAPTURE(p);
      CAPTURE(k);
      CHECK((analytic - fd).cwiseAbs().maxCoeff() < 1e-5 * fd.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("gradient cost grows linearly in p") {
  const Fixture& f = fixture300();
  std::mt19937_64 rng(1);
  const std::vector<double> ps = {200, 400, 800, 1600};
  std::vector<double> times;
  for (double p : ps) {
    const PulseSequence a = testing::random_sequence(rng, static_cast<std::size_t>(p));
    const int reps = static_cast<int>(160000 / p);
    double best = 1e300;
    for (int trial = 0; trial < 5; ++trial) {
      const auto t0 = std::chrono::steady_clock::now();
      double sink = 0.0;
      for (int r = 0; r < reps; ++r) sink += value_and_gradient(a, f.props, f.target, f.cfg).gradient[0];
      const auto t1 = std::chrono::steady_clock::now();
      CHECK(std::isfinite(sink));
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count() / reps);
    }
    times.push_back(best);
  }
  const double slope = loglog_slope(ps, times);
  CAPTURE(slope);
  CHECK(slope >= 0.8);
  CHECK(slope <= 1.2);
}

}  // TEST_SUITE
