#include <benchmark/benchmark.h>

#include <cmath>

#include "chemoreact/integrator.hpp"
#include "chemoreact/platform.hpp"
#include "chemoreact/run_config.hpp"
#include "chemoreact/spectral.hpp"

namespace {

using namespace chemoreact;

ScalarField bump(int n) {
  InitialCondition ic;
  ic.width = 0.5;
  return make_initial_condition(ic, GridSpec{n, 16.0});
}

void BM_ForwardInverse(benchmark::State& state) {
  retain_field_allocations();
  const ScalarField f = bump(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ScalarField back = inverse_transform(forward_transform(f));
    benchmark::DoNotOptimize(back.values().data());
  }
}
BENCHMARK(BM_ForwardInverse)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

void BM_Nonlinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ScalarField rho = bump(n);
  ModelParams p;
  p.chi = 10.0;
  p.epsilon = 1.0;
  FlowSpec flow;
  flow.kind = FlowKind::kCellular;
  flow.amplitude = 1.0;
  const RhsEvaluator rhs(rho.grid(), p, flow, 1e-6);
  const Spectrum rho_hat = forward_transform(rho);
  for (auto _ : state) {
    Spectrum out = rhs.nonlinear(rho_hat, rho, 0.0);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Nonlinear)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Scheme scheme = state.range(1) == 0 ? Scheme::kIfHeun : Scheme::kIfRk4;
  ModelParams p;
  p.chi = 10.0;
  p.epsilon = 1.0;
  StepperConfig c;
  c.scheme = scheme;
  c.dt_max = 1e-4;
  RunState s = RunState::initial(bump(n));
  const Integrator integrator(s.rho.grid(), p, FlowSpec{}, c, s.reference_max);
  for (auto _ : state) integrator.advance(s);
  state.SetLabel(to_string(scheme));
}
BENCHMARK(BM_Step)->ArgsProduct({{128, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
