#include <benchmark/benchmark.h>

#include "epgw/spectral.hpp"

namespace {

using namespace epgw;

void BM_EigenvaluesGeneral(benchmark::State& state) {
    const auto modes = spectral::mode_parameters(reference_device());
    for (auto _ : state) benchmark::DoNotOptimize(spectral::eigenvalues_general(modes));
}
BENCHMARK(BM_EigenvaluesGeneral);

void BM_EigenvaluesNumeric(benchmark::State& state) {
    const auto modes = spectral::mode_parameters(reference_device());
    for (auto _ : state) benchmark::DoNotOptimize(spectral::eigenvalues_numeric(modes));
}
BENCHMARK(BM_EigenvaluesNumeric);

void BM_EpClosedForm(benchmark::State& state) {
    const auto s = reference_device();
    for (auto _ : state) benchmark::DoNotOptimize(spectral::ep_photon_number(s));
}
BENCHMARK(BM_EpClosedForm);

void BM_EpBracketed(benchmark::State& state) {
    auto s = reference_device();
    s.cavity_2.length *= 1.05;
    for (auto _ : state) benchmark::DoNotOptimize(spectral::ep_photon_number(s));
}
BENCHMARK(BM_EpBracketed)->Unit(benchmark::kMillisecond);

void BM_SweepPhotonNumber(benchmark::State& state) {
    const auto s = reference_device();
    const auto points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral::sweep_photon_number(s, 1e11, 5e12, points, spectral::GridSpacing::Log));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SweepPhotonNumber)->Arg(500)->Arg(5000);

void BM_SweepStrain(benchmark::State& state) {
    const auto s = reference_device();
    const double n0 = spectral::ep_photon_number(s).n0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral::sweep_strain(s, n0, 1e-26, 1e-20, 100, spectral::GridSpacing::Log));
    }
}
BENCHMARK(BM_SweepStrain);

}  // namespace
