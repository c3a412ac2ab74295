#pragma once

#include "vaxeff/kernels.hpp"
#include "vaxeff/numerics.hpp"
#include "vaxeff/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vaxeff {

// Conditional-binomial model of efficacy.
//
// Control-arm cases are modelled as t_c ~ Bin(n, T / (2 - alpha)) where n is
// the pooled population, alpha the efficacy and T = c1 + c2 * pi the rate at
// which participants test positive given prevalence pi and an imperfect assay.
// With a uniform prior on alpha over [0, 1] the posterior is proportional to
// that binomial likelihood.

/// The three numbers the likelihood depends on. Decoupled from TrialCounts so
/// that hypothetical populations (e.g. n = t) can be analysed without arm
/// sizes.
struct PooledCounts {
    std::int64_t population = 0;     // n
    std::int64_t total_cases = 0;    // t = t_v + t_c
    std::int64_t control_cases = 0;  // t_c

    static PooledCounts from(const TrialCounts& counts) noexcept {
        return {counts.population(), counts.cases(), counts.t_c};
    }

    void validate() const;
    double pooled_rate() const noexcept { return double(total_cases) / double(population); }
};

inline constexpr std::size_t kDefaultGridSize = 20001;
inline constexpr std::size_t kMinGridSize = 2001;
inline constexpr double kArmImbalanceWarning = 0.02;
inline constexpr double kArmImbalanceLimit = 0.10;

/// T = c1 + c2 * pi.
double observed_rate(double prevalence, const DiagnosticProfile& test);

/// pi = t / n, the prevalence the Table-1 style analysis plugs in.
double default_prevalence(const TrialCounts& counts) noexcept;

/// Checks |n_v - n_c| / n against the warning and hard limits. Returns the
/// warning text when the arms are only roughly balanced.
std::optional<std::string> check_arm_balance(const TrialCounts& counts);

/// ln[C(n, t_c) p^t_c (1 - p)^(n - t_c)] with p = T / (2 - alpha).
double log_likelihood(double alpha, const PooledCounts& data, double prevalence,
                      const DiagnosticProfile& test);
double log_likelihood(double alpha, const TrialCounts& counts, double prevalence,
                      const DiagnosticProfile& test);

/// Normalized posterior density of efficacy on a uniform grid over [0, 1].
class PosteriorGrid {
public:
    PosteriorGrid(Grid density, PooledCounts data, double prevalence, DiagnosticProfile test,
                  std::vector<std::string> warnings);

    const Grid& density() const noexcept { return density_; }
    const std::vector<double>& cdf() const noexcept { return cdf_; }
    const PooledCounts& data() const noexcept { return data_; }
    double prevalence() const noexcept { return prevalence_; }
    const DiagnosticProfile& test() const noexcept { return test_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    double quantile(double q) const;
    /// Grid argmax refined by a parabola through the log density.
    double mode() const;

private:
    Grid density_;
    std::vector<double> cdf_;
    PooledCounts data_;
    double prevalence_;
    DiagnosticProfile test_;
    std::vector<std::string> warnings_;
};

PosteriorGrid posterior(const PooledCounts& data, double prevalence, const DiagnosticProfile& test,
                        std::size_t grid_size = kDefaultGridSize, Exec exec = Exec::parallel);

/// Validates the counts and arm balance, then evaluates the pooled posterior.
PosteriorGrid posterior(const TrialCounts& counts, double prevalence, const DiagnosticProfile& test,
                        std::size_t grid_size = kDefaultGridSize, Exec exec = Exec::parallel);

struct MapEstimate {
    double mode = 0.0;       // clamped to [0, 1]
    double unclamped = 0.0;  // 2 - n T / t_c
    bool clamped = false;
};

MapEstimate map_estimate(const PooledCounts& data, double prevalence, const DiagnosticProfile& test);
MapEstimate map_estimate(const TrialCounts& counts, double prevalence, const DiagnosticProfile& test);

/// I(alpha) = n T / ((2 - alpha)^2 (2 - alpha - T)).
double fisher_information(double alpha, std::int64_t n, double prevalence,
                          const DiagnosticProfile& test);

/// mode +- z / sqrt(I(mode)); bounds are not clamped to [0, 1].
EfficacyEstimate cramer_rao_interval(const PooledCounts& data, double prevalence,
                                     const DiagnosticProfile& test, double level = 0.95);
EfficacyEstimate cramer_rao_interval(const TrialCounts& counts, double prevalence,
                                     const DiagnosticProfile& test, double level = 0.95);

enum class IntervalRule { equal_tailed, highest_density };

EfficacyEstimate credible_interval(const PosteriorGrid& post, double level = 0.95,
                                   IntervalRule rule = IntervalRule::equal_tailed);

struct MarginalLikelihood {
    double value = 0.0;
    double log_value = 0.0;
    bool analytic = true;
    std::vector<std::string> warnings;
};

/// Integral over alpha in [0, 1] of the likelihood kernel, via incomplete beta
/// functions. Falls back to quadrature when t_c < 2.
MarginalLikelihood marginal_likelihood(const PooledCounts& data, double prevalence,
                                       const DiagnosticProfile& test);
MarginalLikelihood marginal_likelihood(const TrialCounts& counts, double prevalence,
                                       const DiagnosticProfile& test);

struct ProbabilityRange {
    double lo = 1.0;
    double hi = 1.0;
};

/// Averages normalized posteriors over a uniform (Se, Sp) lattice. Lattice
/// points where the data fall under the false positive floor are skipped
/// with a warning.
PosteriorGrid marginalize_over_diagnostics(const TrialCounts& counts, double prevalence,
                                           ProbabilityRange sensitivity,
                                           ProbabilityRange specificity,
                                           std::size_t grid_size = kDefaultGridSize,
                                           std::size_t lattice = 21, Exec exec = Exec::parallel);

}  // namespace vaxeff
