#pragma once

#include <cstdint>
#include <span>

namespace vaxeff {

// Every data-parallel loop in the library has a serial reference path and an
// OpenMP path. Both produce bit-identical results; tests hold them to that.
enum class Exec { serial, parallel };

int max_threads() noexcept;
void set_threads(int count) noexcept;

namespace kernels {

/// Binomial log-kernel t_c ln p + (n - t_c) ln(1 - p) with p = rate / (2 - alpha),
/// evaluated at each alpha. Zero-count terms contribute zero; ln 0 otherwise
/// yields -inf.
void binomial_log_kernel(std::span<const double> alpha, double rate, std::int64_t n,
                         std::int64_t control_cases, std::span<double> out, Exec exec);

/// out[i] = exp(log_values[i] - max(log_values)). Returns the max.
double exp_shifted(std::span<const double> log_values, std::span<double> out, Exec exec);

}  // namespace kernels
}  // namespace vaxeff
