#include "vaxeff/numerics.hpp"

#include "vaxeff/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace vaxeff {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// lgamma(x) - [(x - 1/2) ln x - x + ln(2 pi) / 2]
double stirling_correction(double x) {
    if (x < 10.0) {
        return std::lgamma(x) - ((x - 0.5) * std::log(x) - x + kHalfLog2Pi);
    }
    const double r = 1.0 / x;
    const double r2 = r * r;
    return r * (1.0 / 12.0 -
                r2 * (1.0 / 360.0 -
                      r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0)))));
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double x, double a, double b) {
    constexpr int kMaxIterations = 100000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    // Convergence takes O(sqrt(max(a, b))) steps; reaching here means the
    // arguments are far outside anything this library produces.
    throw DomainError("incomplete beta continued fraction did not converge");
}

// Acklam's rational approximation to the normal quantile (|rel err| < 1.2e-9).
double acklam_quantile(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double kLow = 0.02425;

    if (p < kLow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - kLow) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

Grid::Grid(std::vector<double> points, std::vector<double> values)
    : points_(std::move(points)), values_(std::move(values)) {
    if (points_.size() != values_.size()) {
        throw DomainError("grid points and values differ in length");
    }
    if (points_.size() < 2) {
        throw DomainError("grid needs at least two points");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i] > points_[i - 1])) {
            throw DomainError("grid points must be strictly increasing");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("grid values must be finite and non-negative");
        }
    }
}

Grid Grid::uniform(double lo, double hi, std::size_t size) {
    if (size < 2 || !(hi > lo)) {
        throw DomainError("uniform grid needs size >= 2 and hi > lo");
    }
    std::vector<double> pts(size);
    const double step = (hi - lo) / static_cast<double>(size - 1);
    for (std::size_t i = 0; i < size; ++i) {
        pts[i] = lo + step * static_cast<double>(i);
    }
    pts.back() = hi;
    return Grid(std::move(pts), std::vector<double>(size, 0.0));
}

double Grid::trapezoid() const noexcept {
    double sum = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        sum += 0.5 * (values_[i] + values_[i - 1]) * (points_[i] - points_[i - 1]);
    }
    return sum;
}

std::vector<double> Grid::cumulative() const {
    std::vector<double> cdf(points_.size(), 0.0);
    for (std::size_t i = 1; i < points_.size(); ++i) {
        cdf[i] = cdf[i - 1] + 0.5 * (values_[i] + values_[i - 1]) * (points_[i] - points_[i - 1]);
    }
    return cdf;
}

double log_binomial_coefficient(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("log_binomial_coefficient requires 0 <= k <= n, got n=" +
                          std::to_string(n) + " k=" + std::to_string(k));
    }
    const std::int64_t m = std::min(k, n - k);
    if (m == 0) return 0.0;
    if (m <= 30) {
        const double rest = static_cast<double>(n - m);
        double sum = 0.0;
        for (std::int64_t i = 1; i <= m; ++i) {
            sum += std::log1p(rest / static_cast<double>(i));
        }
        return sum;
    }
    const double dn = static_cast<double>(n);
    return -std::log1p(dn) - log_beta(static_cast<double>(k) + 1.0, static_cast<double>(n - k) + 1.0);
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("log_beta requires a > 0 and b > 0");
    }
    if (a > b) std::swap(a, b);
    if (b < 10.0) {
        return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    }
    const double s = a + b;
    if (a < 10.0) {
        // lgamma(b) - lgamma(a + b) via Stirling with a small shift a.
        const double ratio = -(b - 0.5) * std::log1p(a / b) - a * std::log(s) + a +
                             stirling_correction(b) - stirling_correction(s);
        return std::lgamma(a) + ratio;
    }
    return kHalfLog2Pi - 0.5 * std::log(s) - (a - 0.5) * std::log1p(b / a) -
           (b - 0.5) * std::log1p(a / b) + stirling_correction(a) + stirling_correction(b) -
           stirling_correction(s);
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw DomainError("regularized_incomplete_beta requires x in [0,1], a > 0, b > 0");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - std::exp(log_front) * beta_continued_fraction(1.0 - x, b, a) / b;
}

double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("normal_quantile requires 0 < p < 1");
    }
    double x = acklam_quantile(p);
    // One Halley step on the CDF.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

Grid grid_normalize(const Grid& g) {
    const double total = g.trapezoid();
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw DomainError("cannot normalize a degenerate density (zero integral)");
    }
    std::vector<double> values(g.values().begin(), g.values().end());
    for (double& v : values) v /= total;
    return Grid(std::vector<double>(g.points().begin(), g.points().end()), std::move(values));
}

double grid_quantile(std::span<const double> points, std::span<const double> cdf, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw DomainError("grid_quantile requires q in [0,1]");
    }
    const double total = cdf.back();
    const double target = q * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.begin()) return points.front();
    if (it == cdf.end()) return points.back();
    const auto i = static_cast<std::size_t>(it - cdf.begin());
    const double span = cdf[i] - cdf[i - 1];
    if (span <= 0.0) return points[i];
    const double t = (target - cdf[i - 1]) / span;
    return points[i - 1] + t * (points[i] - points[i - 1]);
}

double grid_quantile(const Grid& g, double q) {
    const auto cdf = g.cumulative();
    return grid_quantile(g.points(), cdf, q);
}

}  // namespace vaxeff
