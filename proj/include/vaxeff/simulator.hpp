#pragma once

#include "vaxeff/efficacy.hpp"
#include "vaxeff/kernels.hpp"
#include "vaxeff/types.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include <json.hpp>

namespace vaxeff {

/// Two-arm trial generator and interval-coverage study.
struct SimulationConfig {
    std::int64_t n_per_arm = 25000;
    double control_prevalence = 0.5;  // true attack rate in the control arm
    double efficacy = 0.7;            // true VE; vaccinated rate is (1 - VE) * pi_c
    DiagnosticProfile truth = DiagnosticProfile::perfect();     // assay generating the data
    DiagnosticProfile analysis = DiagnosticProfile::perfect();  // assay assumed by the analysis
    std::int64_t replicates = 10000;
    std::uint64_t seed = 20201231;
    std::vector<Method> methods = {Method::conditional, Method::wald};
    double level = 0.95;
    std::size_t grid_size = kDefaultGridSize;
    /// When set, each replicate is redrawn until t_v + t_c equals this value.
    std::optional<std::int64_t> fixed_total_cases;
    std::int64_t max_redraws = 1000000;

    void validate() const;
};

using ReplicateEngine = std::mt19937_64;

/// Independent substream for one replicate, derived from (seed, replicate).
ReplicateEngine replicate_engine(std::uint64_t seed, std::uint64_t replicate);

/// One trial: true cases per arm, then per-individual misclassification
/// (true cases kept with probability Se, non-cases flagged with 1 - Sp).
TrialCounts simulate_trial(const SimulationConfig& config, ReplicateEngine& rng);

struct MethodOutcome {
    bool evaluated = false;
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool covered = false;
};

struct ReplicateRecord {
    std::int64_t replicate = 0;
    TrialCounts counts;
    bool drawn = true;  // false when the fixed-t redraw budget ran out
    std::vector<MethodOutcome> outcomes;  // parallel to config.methods
};

struct MethodCoverage {
    Method method = Method::conditional;
    std::int64_t evaluated = 0;
    std::int64_t failures = 0;  // replicates where the method was undefined
    std::int64_t covered = 0;
    double coverage = 0.0;      // covered / evaluated
    double mean_width = 0.0;
    double mean_point = 0.0;
};

struct CoverageReport {
    SimulationConfig config;
    std::int64_t replicates = 0;
    std::int64_t undrawn = 0;  // fixed-t replicates that never hit the target
    std::vector<MethodCoverage> methods;

    const MethodCoverage& at(Method m) const;
};

/// Runs every replicate and reduces in replicate order, so the report is
/// bit-identical for a given seed whatever the thread count.
CoverageReport coverage_study(const SimulationConfig& config, Exec exec = Exec::parallel,
                              std::vector<ReplicateRecord>* records = nullptr);

nlohmann::json to_json(const SimulationConfig& config);
nlohmann::json to_json(const CoverageReport& report);

/// Columns replicate,t_v,t_c,method,lower,upper,covered.
void write_replicate_csv(std::ostream& out, const SimulationConfig& config,
                         const std::vector<ReplicateRecord>& records);

}  // namespace vaxeff
