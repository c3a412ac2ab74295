#include "vaxeff/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include <omp.h>

namespace vaxeff {

int max_threads() noexcept { return omp_get_max_threads(); }

void set_threads(int count) noexcept {
    if (count > 0) omp_set_num_threads(count);
}

namespace kernels {

namespace {

inline double log_kernel_at(double alpha, double rate, double cases, double rest) {
    const double p = rate / (2.0 - alpha);
    const double hit = cases > 0.0 ? cases * std::log(p) : 0.0;
    const double miss = rest > 0.0 ? rest * std::log1p(-p) : 0.0;
    return hit + miss;
}

}  // namespace

void binomial_log_kernel(std::span<const double> alpha, double rate, std::int64_t n,
                         std::int64_t control_cases, std::span<double> out, Exec exec) {
    const double cases = static_cast<double>(control_cases);
    const double rest = static_cast<double>(n - control_cases);
    const auto size = static_cast<std::ptrdiff_t>(alpha.size());
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < size; ++i) {
            out[i] = log_kernel_at(alpha[i], rate, cases, rest);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        out[i] = log_kernel_at(alpha[i], rate, cases, rest);
    }
}

double exp_shifted(std::span<const double> log_values, std::span<double> out, Exec exec) {
    const auto size = static_cast<std::ptrdiff_t>(log_values.size());
    double peak = -std::numeric_limits<double>::infinity();
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < size; ++i) peak = std::fmax(peak, log_values[i]);
        for (std::ptrdiff_t i = 0; i < size; ++i) out[i] = std::exp(log_values[i] - peak);
        return peak;
    }
#pragma omp parallel for schedule(static) reduction(max : peak)
    for (std::ptrdiff_t i = 0; i < size; ++i) peak = std::fmax(peak, log_values[i]);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) out[i] = std::exp(log_values[i] - peak);
    return peak;
}

}  // namespace kernels
}  // namespace vaxeff
