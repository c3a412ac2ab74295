#pragma once

// Test-only reference computations. None of these share code with the
// library paths they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Arbitrary-precision unsigned integer, base 2^32, enough for exact binomials.
class BigUint {
public:
    explicit BigUint(std::uint32_t v = 0) : limbs_{v} {}

    void mul(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& l : limbs_) {
            const std::uint64_t cur = std::uint64_t(l) * m + carry;
            l = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }

    /// Exact division assumed (remainder discarded).
    void div(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            const std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
    }

    long double log() const {
        // Top two limbs carry ~64 significant bits.
        const std::size_t n = limbs_.size();
        long double top = limbs_[n - 1];
        if (n >= 2) top = top * 4294967296.0L + limbs_[n - 2];
        if (n >= 3) top = top * 4294967296.0L + limbs_[n - 3];
        const std::size_t shift = n >= 3 ? n - 3 : 0;
        return std::log(top) + static_cast<long double>(shift) * 32.0L * std::log(2.0L);
    }

private:
    std::vector<std::uint32_t> limbs_;
};

/// ln C(n, k) from exact big-integer arithmetic.
inline long double exact_log_binomial(std::uint32_t n, std::uint32_t k) {
    BigUint c(1);
    for (std::uint32_t i = 1; i <= k; ++i) {
        c.mul(n - k + i);
        c.div(i);
    }
    return c.log();
}

/// I_x(a, b) by the hypergeometric series
///   B_x(a, b) = x^a sum_n (1 - b)_n x^n / (n! (a + n)),
/// summed until terms vanish, divided by the complete beta function.
inline long double incomplete_beta_series(long double x, long double a, long double b) {
    long double term = 1.0L;  // (1 - b)_n / n!
    long double sum = 0.0L;
    for (int n = 0; n < 100000; ++n) {
        const long double add = term / (a + n);
        sum += add;
        if (std::fabs(add) < 1e-22L * std::fabs(sum) && n > 5) break;
        term *= (n + 1 - b) * x / (n + 1);
    }
    const long double log_b = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    return std::exp(a * std::log(x) - log_b) * sum;
}

/// Composite trapezoid rule for f on [lo, hi] with `points` samples.
inline double trapezoid(const std::function<double(double)>& f, double lo, double hi,
                        std::size_t points) {
    const double h = (hi - lo) / double(points - 1);
    double sum = 0.5 * (f(lo) + f(hi));
    for (std::size_t i = 1; i + 1 < points; ++i) sum += f(lo + h * double(i));
    return sum * h;
}

/// Root of a decreasing function on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
