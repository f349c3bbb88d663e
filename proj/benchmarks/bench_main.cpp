#include <benchmark/benchmark.h>

#include <cmath>

#include "darboux_lab/darboux_lab.hpp"

using namespace dlab;

namespace {

void BM_Kummer1F1(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(specfun::kummer_1f1(-1.3, 6.8, z));
}
BENCHMARK(BM_Kummer1F1)->Arg(1)->Arg(30)->Arg(300);

void BM_Gauss2F1(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::gauss_2f1(1.75, 1.25, 0.5, z));
        z = z < 0.95 ? z + 0.01 : 0.0;
    }
}
BENCHMARK(BM_Gauss2F1);

void BM_SeedEval(benchmark::State& state) {
    const PotentialSpec spec = state.range(0) == 0 ? make_morse(1.0, 0.4, 2) : make_pt(1.0, 3.0);
    const SeedPair pair = make_seed_pair(spec, state.range(0) == 0 ? 0.0 : 0.25, seed_window(spec));
    const Window w = pair.window();
    double x = w.lo;
    const double step = w.width() / 997.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair.eval(x));
        x = x + step < w.hi ? x + step : w.lo;
    }
}
BENCHMARK(BM_SeedEval)->Arg(0)->Arg(1);

void BM_ComplexPotential(benchmark::State& state) {
    const PotentialSpec spec = make_morse(1.0, 0.4, 2);
    const AlphaFunction a = make_alpha(make_seed_pair(spec, 0.0, seed_window(spec)), 1.0, 1.0, 1.0);
    const auto grid = interior_grid(spec.default_window(), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(complex_potential(a, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComplexPotential)->Arg(1200)->Arg(8001)->Unit(benchmark::kMillisecond);

FdHamiltonian pt_hamiltonian(int n) {
    const PotentialSpec spec = make_pt(1.0, 3.0);
    const AlphaFunction a = make_alpha(make_seed_pair(spec, 8.075, seed_window(spec)), std::sqrt(1.34), 1.34, -2.13);
    return build_fd(complex_potential(a, interior_grid(fd_window(spec), n)));
}

void BM_EigTridiagonal(benchmark::State& state) {
    const FdHamiltonian h = pt_hamiltonian(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eig_complex(h, {EigMode::Tridiagonal}));
}
BENCHMARK(BM_EigTridiagonal)->Arg(300)->Arg(1200)->Arg(2401)->Unit(benchmark::kMillisecond);

void BM_EigDense(benchmark::State& state) {
    const FdHamiltonian h = pt_hamiltonian(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eig_complex(h, {EigMode::Dense}));
}
BENCHMARK(BM_EigDense)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_VerifySpectrum(benchmark::State& state) {
    const PotentialSpec spec = make_morse(1.0, 0.4, 2);
    const AlphaFunction a = make_alpha(make_seed_pair(spec, 0.0, seed_window(spec)), 1.0, 1.0, 1.0);
    const SpectrumPrediction pred = predict_spectrum(spec, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_spectrum([&a](double x) { return potential_at(a, x); }, fd_window(spec), pred,
                                                 spectrum_cutoff(spec, pred)));
    }
}
BENCHMARK(BM_VerifySpectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
