#include <benchmark/benchmark.h>

#include <cqed/dynamics.hpp>
#include <cqed/experiments.hpp>

namespace {

using namespace cqed;

void BM_VacuumPropagatorBuild(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Operator h = vacuum_sector_hamiltonian(n, 1.0);
  for (auto _ : state) {
    Propagator prop(h);
    benchmark::DoNotOptimize(prop.eigenvalues());
  }
}
BENCHMARK(BM_VacuumPropagatorBuild)->DenseRange(2, 6);

void BM_VacuumEvolve(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Propagator prop(vacuum_sector_hamiltonian(n, 1.0));
  StateVector psi = basis_state(BasisDescriptor(n), std::string(n - 1, '0') + "1");
  double t = 0.37;
  for (auto _ : state) {
    StateVector out = prop.evolve(psi, t);
    benchmark::DoNotOptimize(out.amplitudes());
    t += 0.01;
  }
}
BENCHMARK(BM_VacuumEvolve)->DenseRange(2, 6);

void BM_TimeDependentEvolution(benchmark::State& state) {
  ModelParams params(2, 1.0, 10.0);
  StateVector psi = attach_cavity(basis_state(BasisDescriptor(2), "10"), params.fock_cutoff, 0);
  for (auto _ : state) {
    StateVector out = evolve_timedep(params, psi, 0.1, 0.005);
    benchmark::DoNotOptimize(out.amplitudes());
  }
}
BENCHMARK(BM_TimeDependentEvolution);

void BM_PartialTracePair(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  StateVector w = analytic_w_evolution(n, 0.8);
  std::vector<int> keep{0, 1};
  for (auto _ : state) {
    DensityMatrix rho = partial_trace(w, keep);
    benchmark::DoNotOptimize(rho.matrix());
  }
}
BENCHMARK(BM_PartialTracePair)->DenseRange(3, 6);

void BM_CollisionMixturePoint(benchmark::State& state) {
  CollisionMixture mixture;
  double x = 0.0;
  for (auto _ : state) {
    CollisionProbabilities p = collision_probabilities_mixture(mixture, x);
    benchmark::DoNotOptimize(p);
    x += 0.01;
  }
}
BENCHMARK(BM_CollisionMixturePoint);

void BM_Figure1Series(benchmark::State& state) {
  std::vector<double> grid = linspace(0.0, 6.283185307179586, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SweepSeries series = figure1_series(grid);
    benchmark::DoNotOptimize(series.columns());
  }
}
BENCHMARK(BM_Figure1Series)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
