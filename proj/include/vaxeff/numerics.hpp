#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vaxeff {

/// A tabulated density over an ordered set of abscissae.
///
/// The grid owns its samples. Construction validates the invariants:
/// strictly increasing points, finite non-negative values, equal lengths
/// and at least two samples.
class Grid {
public:
    Grid(std::vector<double> points, std::vector<double> values);

    /// `size` equally spaced points on [lo, hi] with all values zero.
    static Grid uniform(double lo, double hi, std::size_t size);

    std::span<const double> points() const noexcept { return points_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return points_.size(); }

    double trapezoid() const noexcept;

    /// Cumulative trapezoid sums; front() == 0, back() == trapezoid().
    std::vector<double> cumulative() const;

private:
    std::vector<double> points_;
    std::vector<double> values_;
};

/// ln C(n, k). Throws DomainError unless 0 <= k <= n.
double log_binomial_coefficient(std::int64_t n, std::int64_t k);

/// ln B(a, b) without the cancellation that plain lgamma differences suffer
/// for large arguments.
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double x, double a, double b);

/// Standard normal CDF.
double normal_cdf(double z) noexcept;

/// Inverse of the standard normal CDF. Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

/// Rescales `g` so that its trapezoid integral is one.
/// Throws DomainError when the integral is zero.
Grid grid_normalize(const Grid& g);

/// Abscissa at which the piecewise-linear CDF of a normalized grid reaches q.
double grid_quantile(const Grid& g, double q);

/// Same as grid_quantile but reuses a precomputed, normalized CDF.
double grid_quantile(std::span<const double> points, std::span<const double> cdf, double q);

}  // namespace vaxeff
