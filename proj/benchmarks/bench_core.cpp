#include <benchmark/benchmark.h>

#include "vdwmix/config.hpp"
#include "vdwmix/inversion.hpp"
#include "vdwmix/scheme.hpp"

namespace {

vdwmix::MixtureParams params() { return vdwmix::preset_config(vdwmix::CaseId::I).params; }

void BM_Pressure(benchmark::State& state) {
    const auto p = params();
    const std::vector<double> c{0.2, 0.3};
    for (auto _ : state) benchmark::DoNotOptimize(vdwmix::pressure(p, c));
}
BENCHMARK(BM_Pressure);

void BM_ChemicalPotentials(benchmark::State& state) {
    const auto p = params();
    const std::vector<double> c{0.2, 0.3};
    std::vector<double> mu(2);
    for (auto _ : state) {
        vdwmix::chemical_potentials_into(p, c, mu);
        benchmark::DoNotOptimize(mu.data());
    }
}
BENCHMARK(BM_ChemicalPotentials);

void BM_Hessian(benchmark::State& state) {
    const auto p = params();
    const std::vector<double> c{0.2, 0.3};
    std::vector<double> h(4);
    for (auto _ : state) {
        vdwmix::hessian_into(p, c, h);
        benchmark::DoNotOptimize(h.data());
    }
}
BENCHMARK(BM_Hessian);

void BM_PhiInverse(benchmark::State& state) {
    const auto p = params();
    const vdwmix::State target{{0.2, 0.3}};
    const auto mu = vdwmix::chemical_potentials(p, target);
    const vdwmix::State guess = vdwmix::default_inversion_guess(p);
    const vdwmix::InversionSettings settings{};
    for (auto _ : state) benchmark::DoNotOptimize(vdwmix::phi_inverse(p, mu, guess, settings));
}
BENCHMARK(BM_PhiInverse);

void BM_ImplicitStep(benchmark::State& state) {
    const auto p = params();
    const auto N = static_cast<int>(state.range(0));
    const auto grid = vdwmix::make_grid(N, vdwmix::BoundaryKind::Neumann);
    const auto init = vdwmix::initial_profile(p, vdwmix::default_recipe(2), grid);
    const vdwmix::InversionSettings newton{};
    for (auto _ : state)
        benchmark::DoNotOptimize(vdwmix::solve_timestep(p, grid, init, 1e-5, newton));
}
BENCHMARK(BM_ImplicitStep)->Arg(51)->Arg(201)->Arg(401);

void BM_HessianMinScan(benchmark::State& state) {
    const auto p = params();
    for (auto _ : state)
        benchmark::DoNotOptimize(vdwmix::hessian_min_scan(p, static_cast<int>(state.range(0)), 1e-3));
}
BENCHMARK(BM_HessianMinScan)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
