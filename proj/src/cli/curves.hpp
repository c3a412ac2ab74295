#pragma once

#include "vaxeff/types.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vaxeff::cli {

// Data behind the four figures, as CSV. Each writer is deterministic.

/// Posterior curves over a prevalence sweep. Panel "n" holds the population
/// fixed, panel "t" holds the total case count fixed.
/// Columns alpha,density,pi,wald_lower,wald_upper.
struct PrevalenceSweep {
    char panel = 'n';
    std::int64_t population = 50000;
    std::int64_t total_cases = 2000;
    double efficacy = 0.7;
    std::vector<double> prevalences;
    std::size_t grid = 2001;
};
void write_prevalence_sweep(std::ostream& out, const PrevalenceSweep& sweep);

/// Conditional posterior of a trial next to the n = t posterior.
/// Columns alpha,density,curve,lower,upper.
void write_trial_curves(std::ostream& out, const TrialCounts& counts, std::size_t grid);

/// Posteriors from error-free expected counts analysed under an imperfect
/// assay. Columns alpha,density,pi,se,sp.
struct MisclassificationSweep {
    std::int64_t population = 50000;
    double efficacy = 0.7;
    DiagnosticProfile test{1.0, 0.999};
    std::vector<double> prevalences;
    std::size_t grid = 2001;
};
void write_misclassification_sweep(std::ostream& out, const MisclassificationSweep& sweep);

/// Sample sizes from both formulas over a prevalence sweep.
/// Columns ve,delta,pi,method,n.
struct SampleSizeSweep {
    std::vector<double> efficacies;
    double delta = 0.1;
    std::vector<double> prevalences;
    double alpha = 0.05;
    double beta = 0.2;
    bool exact_z = false;
};
void write_sample_size_sweep(std::ostream& out, const SampleSizeSweep& sweep);

/// Expected counts for a balanced trial: t = round(pi n),
/// t_c = round(t / (2 - VE)), arms of n/2.
TrialCounts expected_counts(std::int64_t population, double prevalence, double efficacy);

std::vector<double> default_sample_size_prevalences();

}  // namespace vaxeff::cli
