#pragma once

#include "vaxeff/kernels.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vaxeff {

/// How critical values are obtained. `paper_rounded` takes the exact normal
/// quantile and rounds it to two decimals (1.96, 0.84 for the usual design),
/// which is how published design tables are built.
enum class ZMode { exact, paper_rounded };

struct ZScores {
    double two_sided = 0.0;  // z_{1 - alpha/2}
    double power = 0.0;      // z_{1 - beta}
    double sum() const noexcept { return two_sided + power; }
};

ZScores z_scores(double alpha, double beta, ZMode mode = ZMode::paper_rounded);

/// Design inputs for an efficacy trial.
struct SampleSizeSpec {
    double efficacy = 0.0;    // anticipated VE in [0, 1)
    double delta = 0.1;       // absolute VE difference in (0, 1]
    double prevalence = 0.5;  // event rate in (0, 1]
    double alpha = 0.05;
    double beta = 0.2;
    ZMode z_mode = ZMode::paper_rounded;

    void validate() const;
};

/// Per-group size for a two-sample comparison of means, 2 sigma^2 / delta^2 (z sum)^2.
double generic_two_sample_raw(double sigma, double delta, double alpha, double beta,
                              ZMode mode = ZMode::paper_rounded);
/// Rounded up, never below one.
std::int64_t generic_two_sample(double sigma, double delta, double alpha, double beta,
                                ZMode mode = ZMode::paper_rounded);

/// Total size from the pooled Wald variance of ln RR.
double wald_sample_size_raw(const SampleSizeSpec& spec);
std::int64_t wald_sample_size(const SampleSizeSpec& spec);

/// Total size from the Cramer-Rao bound of the conditional-binomial model.
double cramer_rao_sample_size_raw(const SampleSizeSpec& spec);
std::int64_t cramer_rao_sample_size(const SampleSizeSpec& spec);

enum class SizeMethod { wald, cramer_rao };

std::string_view to_string(SizeMethod m) noexcept;
SizeMethod parse_size_method(std::string_view name);

struct SampleSizeCell {
    double efficacy = 0.0;
    double delta = 0.0;
    double prevalence = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    SizeMethod method = SizeMethod::cramer_rao;
    std::optional<std::int64_t> n;  // empty when the cell is outside the domain
    std::string error;
};

/// Full VE x delta x pi grid in that nesting order. Invalid cells carry their
/// error instead of aborting the table.
std::vector<SampleSizeCell> sample_size_table(std::span<const double> efficacies,
                                              std::span<const double> deltas,
                                              std::span<const double> prevalences, double alpha,
                                              double beta, SizeMethod method,
                                              ZMode mode = ZMode::paper_rounded,
                                              Exec exec = Exec::parallel);

/// Columns ve,delta,pi,alpha,beta,method,n; invalid cells print n as NA.
void write_sample_size_csv(std::ostream& out, std::span<const SampleSizeCell> table);

}  // namespace vaxeff
