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

// Serial reference vs OpenMP kernels: restarts, finite-difference
// gradients and duration sweeps.
#include <benchmark/benchmark.h>

#include <numbers>

#include "sfqopt/experiment.hpp"
#include "sfqopt/finite_difference.hpp"
#include "sfqopt/restart.hpp"

namespace {

using namespace sfqopt;

struct Setup {
  SystemConfig cfg;
  PropagatorSet props;
  GateTarget target;
  Setup() {
    cfg.theta = std::numbers::pi / 300;
    props = precompute_propagators(cfg);
    target = GateTarget::embed(builtin_gate(GateKind::H), cfg.n_levels);
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void BM_RestartsSerial(benchmark::State& state) {
  const Setup& s = setup();
  const GateObjective obj(s.props, s.target, s.cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::multi_restart(obj, state.range(0), 8, 1).best.value.j);
  }
}

void BM_RestartsParallel(benchmark::State& state) {
  const Setup& s = setup();
  const GateObjective obj(s.props, s.target, s.cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multi_restart(obj, state.range(0), 8, 1).best.value.j);
  }
}

void BM_FiniteDifferenceSerial(benchmark::State& state) {
  const Setup& s = setup();
  const FiniteDifferenceGradient fd(s.cfg, s.target, 1e-5);
  const PulseSequence a = random_initial_guesses(1, state.range(0), 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(fd.serial(a).j.data());
}

void BM_FiniteDifferenceParallel(benchmark::State& state) {
  const Setup& s = setup();
  const FiniteDifferenceGradient fd(s.cfg, s.target, 1e-5);
  const PulseSequence a = random_initial_guesses(1, state.range(0), 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(fd(a).j.data());
}

ExperimentSpec sweep_spec() {
  ExperimentSpec spec;
  spec.system.theta = std::numbers::pi / 100;
  spec.n_restarts = 2;
  spec.system.substeps = 1000;  // keep the per-call propagator setup out of the way
  return spec;
}

const std::vector<int> kSweepGrid = SweepRange{8, 408, 80}.grid();

void BM_SweepSerial(benchmark::State& state) {
  const ExperimentSpec spec = sweep_spec();
  for (auto _ : state) benchmark::DoNotOptimize(serial::sweep_points(spec, kSweepGrid).back().best.j);
}

void BM_SweepParallel(benchmark::State& state) {
  const ExperimentSpec spec = sweep_spec();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_points(spec, kSweepGrid).back().best.j);
}

}  // namespace

BENCHMARK(BM_RestartsSerial)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RestartsParallel)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FiniteDifferenceSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiniteDifferenceParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
