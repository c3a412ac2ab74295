#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaxeff/efficacy.hpp"
#include "vaxeff/kernels.hpp"
#include "vaxeff/sample_size.hpp"
#include "vaxeff/simulator.hpp"

#include <cmath>
#include <vector>

using namespace vaxeff;

// The OpenMP paths must reproduce the serial reference bit for bit.

TEST_CASE("binomial log kernel: parallel equals serial") {
    const Grid axis = Grid::uniform(0.0, 1.0, 20001);
    std::vector<double> serial(axis.size()), parallel(axis.size());
    kernels::binomial_log_kernel(axis.points(), 170.0 / 36523.0, 36523, 162, serial, Exec::serial);
    for (int threads : {1, 2, 4}) {
        set_threads(threads);
        kernels::binomial_log_kernel(axis.points(), 170.0 / 36523.0, 36523, 162, parallel,
                                     Exec::parallel);
        CHECK(serial == parallel);
    }
}

TEST_CASE("binomial log kernel handles zero-count terms") {
    const std::vector<double> alpha = {0.0, 0.5, 1.0};
    std::vector<double> out(3);
    // rate 1 with every participant a control case: 1 - p term has zero weight.
    kernels::binomial_log_kernel(alpha, 1.0, 10, 10, out, Exec::serial);
    CHECK(out[2] == 0.0);
    // rate 1 and some non-cases: density vanishes at alpha = 1.
    kernels::binomial_log_kernel(alpha, 1.0, 10, 7, out, Exec::serial);
    CHECK(std::isinf(out[2]));
    CHECK(out[2] < 0.0);
}

TEST_CASE("exp_shifted: parallel equals serial and peak maps to one") {
    std::vector<double> logs(5003);
    for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = -std::pow(double(i) - 2500.0, 2) / 1e4;
    std::vector<double> a(logs.size()), b(logs.size());
    const double pa = kernels::exp_shifted(logs, a, Exec::serial);
    const double pb = kernels::exp_shifted(logs, b, Exec::parallel);
    CHECK(pa == pb);
    CHECK(a == b);
    CHECK(a[2500] == 1.0);
}

TEST_CASE("posterior: parallel equals serial") {
    const TrialCounts az{5807, 30, 5829, 101};
    const auto s = posterior(az, default_prevalence(az), DiagnosticProfile::perfect(),
                             kDefaultGridSize, Exec::serial);
    const auto p = posterior(az, default_prevalence(az), DiagnosticProfile::perfect(),
                             kDefaultGridSize, Exec::parallel);
    CHECK(std::vector<double>(s.density().values().begin(), s.density().values().end()) ==
          std::vector<double>(p.density().values().begin(), p.density().values().end()));
}

TEST_CASE("diagnostic marginalization: parallel equals serial") {
    const TrialCounts az{5807, 30, 5829, 101};
    const auto s = marginalize_over_diagnostics(az, default_prevalence(az), {0.95, 1.0},
                                                {0.999, 1.0}, 4001, 5, Exec::serial);
    const auto p = marginalize_over_diagnostics(az, default_prevalence(az), {0.95, 1.0},
                                                {0.999, 1.0}, 4001, 5, Exec::parallel);
    CHECK(std::vector<double>(s.density().values().begin(), s.density().values().end()) ==
          std::vector<double>(p.density().values().begin(), p.density().values().end()));
}

TEST_CASE("sample size table: parallel equals serial") {
    const std::vector<double> ve = {0.0, 0.3, 0.6, 0.9, 1.2};
    const std::vector<double> delta = {0.1, 0.2};
    const std::vector<double> pi = {0.5, 0.01, 0.0005};
    for (SizeMethod m : {SizeMethod::wald, SizeMethod::cramer_rao}) {
        const auto s = sample_size_table(ve, delta, pi, 0.05, 0.2, m, ZMode::paper_rounded,
                                         Exec::serial);
        const auto p = sample_size_table(ve, delta, pi, 0.05, 0.2, m, ZMode::paper_rounded,
                                         Exec::parallel);
        REQUIRE(s.size() == p.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s[i].n == p[i].n);
            CHECK(s[i].error == p[i].error);
        }
    }
}

TEST_CASE("coverage study: parallel equals serial for any thread count") {
    SimulationConfig cfg;
    cfg.n_per_arm = 2000;
    cfg.control_prevalence = 0.05;
    cfg.efficacy = 0.6;
    cfg.replicates = 60;
    cfg.grid_size = 2001;
    cfg.methods = {Method::conditional, Method::wald, Method::cramer_rao, Method::fisher_rr};
    const auto serial = to_json(coverage_study(cfg, Exec::serial)).dump();
    for (int threads : {1, 3}) {
        set_threads(threads);
        CHECK(to_json(coverage_study(cfg, Exec::parallel)).dump() == serial);
    }
}
