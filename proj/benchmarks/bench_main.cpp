#include <benchmark/benchmark.h>

#include "equitrot/ansatz.hpp"
#include "equitrot/extrapolate.hpp"
#include "equitrot/gates.hpp"
#include "equitrot/heisenberg.hpp"
#include "equitrot/trotter.hpp"

using namespace equitrot;

static void BM_ApplyTwoQubitGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  StateVector psi = haar_random_state(n, rng);
  const CMatrix g = gates::su2_block(0.7);
  const std::array<int, 2> targets{n / 2, 0};
  for (auto _ : state) {
    apply_gate(psi, g, targets);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}
BENCHMARK(BM_ApplyTwoQubitGate)->DenseRange(8, 14, 2);

static void BM_ApplySingleQubitGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  StateVector psi = haar_random_state(n, rng);
  const CMatrix g = random_su2(rng).matrix();
  const std::array<int, 1> target{n - 1};
  for (auto _ : state) {
    apply_gate(psi, g, target);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}
BENCHMARK(BM_ApplySingleQubitGate)->DenseRange(8, 14, 2);

static void BM_TrotterState(benchmark::State& state) {
  SpinChainSpec spec;
  spec.n_qubits = static_cast<int>(state.range(0));
  const auto init = singlet_initial_state(spec.n_qubits);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trotter_state(spec, TrotterScheme::optimized_first_order(), 18, init));
  }
}
BENCHMARK(BM_TrotterState)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_ExactEvolve(benchmark::State& state) {
  SpinChainSpec spec;
  spec.n_qubits = static_cast<int>(state.range(0));
  const auto init = singlet_initial_state(spec.n_qubits);
  for (auto _ : state) benchmark::DoNotOptimize(exact_evolve(spec, init));
}
BENCHMARK(BM_ExactEvolve)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_AnsatzPrepare(benchmark::State& state) {
  const AnsatzSpec spec{static_cast<int>(state.range(0)), 5};
  const Ansatz ansatz(spec);
  std::vector<double> p(ansatz.param_count(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(ansatz.prepare(p));
}
BENCHMARK(BM_AnsatzPrepare)->DenseRange(8, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_DmdFitForecast(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int m = 14;
  Rng rng(3);
  std::normal_distribution<double> g;
  ParamTrajectory traj;
  traj.params.resize(p, m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < p; ++i) traj.params(i, k) = std::sin(0.3 * (k + 1) + i) + 0.01 * g(rng);
    traj.r_values.push_back(k + 1);
  }
  for (auto _ : state) {
    const DmdModel model = dmd_fit(traj);
    benchmark::DoNotOptimize(dmd_forecast_at(model, 18));
  }
}
BENCHMARK(BM_DmdFitForecast)->Arg(35)->Arg(140)->Arg(264)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
