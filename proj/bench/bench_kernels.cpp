// Serial reference against the OpenMP paths.
//
//   ./vaxeff_bench --benchmark_filter=Posterior

#include "vaxeff/efficacy.hpp"
#include "vaxeff/kernels.hpp"
#include "vaxeff/sample_size.hpp"
#include "vaxeff/simulator.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace vaxeff;

namespace {

const TrialCounts kPfizer{18198, 8, 18325, 162};

Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void label(benchmark::State& state) {
    state.SetLabel(state.range(0) == 0 ? "serial" : "openmp x" + std::to_string(max_threads()));
}

void BM_LogKernel(benchmark::State& state) {
    const Grid axis = Grid::uniform(0.0, 1.0, static_cast<std::size_t>(state.range(1)));
    std::vector<double> out(axis.size());
    for (auto _ : state) {
        kernels::binomial_log_kernel(axis.points(), 170.0 / 36523.0, 36523, 162, out,
                                     exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
    label(state);
}
BENCHMARK(BM_LogKernel)->ArgsProduct({{0, 1}, {20001, 200001, 2000001}});

void BM_Posterior(benchmark::State& state) {
    for (auto _ : state) {
        auto post = posterior(kPfizer, default_prevalence(kPfizer), DiagnosticProfile::perfect(),
                              static_cast<std::size_t>(state.range(1)), exec_of(state));
        benchmark::DoNotOptimize(post.cdf().back());
    }
    label(state);
}
BENCHMARK(BM_Posterior)->ArgsProduct({{0, 1}, {20001, 200001}})->Unit(benchmark::kMillisecond);

void BM_Marginalize(benchmark::State& state) {
    for (auto _ : state) {
        auto post = marginalize_over_diagnostics(kPfizer, default_prevalence(kPfizer),
                                                 {0.95, 1.0}, {0.999, 1.0}, 20001, 11,
                                                 exec_of(state));
        benchmark::DoNotOptimize(post.cdf().back());
    }
    label(state);
}
BENCHMARK(BM_Marginalize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SampleSizeTable(benchmark::State& state) {
    std::vector<double> ve, delta, pi;
    for (int i = 0; i < 50; ++i) ve.push_back(0.018 * i);
    for (int i = 1; i <= 20; ++i) delta.push_back(0.02 * i);
    for (int i = 1; i <= 200; ++i) pi.push_back(0.0025 * i);
    for (auto _ : state) {
        auto table = sample_size_table(ve, delta, pi, 0.05, 0.2, SizeMethod::cramer_rao,
                                       ZMode::paper_rounded, exec_of(state));
        benchmark::DoNotOptimize(table.data());
    }
    label(state);
}
BENCHMARK(BM_SampleSizeTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CoverageStudy(benchmark::State& state) {
    SimulationConfig cfg;
    cfg.n_per_arm = 25000;
    cfg.control_prevalence = 0.004;
    cfg.efficacy = 0.9;
    cfg.replicates = 500;
    for (auto _ : state) {
        auto report = coverage_study(cfg, exec_of(state));
        benchmark::DoNotOptimize(report.methods.data());
    }
    label(state);
}
BENCHMARK(BM_CoverageStudy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
