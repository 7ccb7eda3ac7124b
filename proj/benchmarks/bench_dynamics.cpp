#include <benchmark/benchmark.h>

#include "epgw/dynamics.hpp"

namespace {

using namespace epgw;

struct Setup {
    spectral::Matrix2c matrix;
    double frame;
    double dt;
};

Setup below_ep(double n_fraction) {
    const auto base = reference_device();
    const auto s = base.with_photon_number(n_fraction * spectral::ep_photon_number(base).n0);
    const auto m = spectral::system_matrix(spectral::mode_parameters(s));
    const double frame = s.resonator_1.omega_m;
    return {m, frame, 0.5 * dynamics::max_time_step(m, frame)};
}

void BM_PropagateExact(benchmark::State& state) {
    const auto setup = below_ep(0.5);
    const double duration = static_cast<double>(state.range(0)) * setup.dt;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dynamics::propagate_exact(setup.matrix, {1.0, 0.0}, duration, setup.dt, setup.frame));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagateExact)->Arg(8192)->Arg(1 << 16);

void BM_PropagateJordan(benchmark::State& state) {
    const auto setup = below_ep(1.0);
    const double duration = 8192.0 * setup.dt;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dynamics::propagate_exact(setup.matrix, {1.0, 0.0}, duration, setup.dt, setup.frame));
    }
}
BENCHMARK(BM_PropagateJordan);

void BM_PropagateRk(benchmark::State& state) {
    const auto setup = below_ep(0.5);
    const double duration = static_cast<double>(state.range(0)) * setup.dt;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dynamics::propagate_rk(setup.matrix, {1.0, 0.0}, duration, setup.dt, setup.frame));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagateRk)->Arg(8192)->Arg(1 << 16);

void BM_EstimateSpectrum(benchmark::State& state) {
    const auto setup = below_ep(0.5);
    const auto tr = dynamics::propagate_exact(setup.matrix, {1.0, 0.0},
                                              static_cast<double>(state.range(0) - 1) * setup.dt, setup.dt,
                                              setup.frame);
    for (auto _ : state) benchmark::DoNotOptimize(dynamics::estimate_spectrum(tr));
}
BENCHMARK(BM_EstimateSpectrum)->Arg(8192)->Arg(1 << 16);

}  // namespace
