#include "vaxeff/efficacy.hpp"

#include "vaxeff/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace vaxeff {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0,1], got " + fmt(p));
    }
}

double z_for_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("level must lie in (0,1), got " + fmt(level));
    }
    return normal_quantile(0.5 * (1.0 + level));
}

// Rate T with the checks every likelihood-based routine needs.
double checked_rate(const PooledCounts& data, double prevalence, const DiagnosticProfile& test) {
    data.validate();
    test.validate();
    require_probability(prevalence, "prevalence");
    if (data.control_cases == 0) {
        throw DegenerateDataError("no control-arm cases; efficacy is unidentifiable");
    }
    if (!(data.pooled_rate() > test.c1())) {
        throw FalsePositiveParadoxError("observed positive rate " + fmt(data.pooled_rate()) +
                                        " does not exceed the false positive rate " +
                                        fmt(test.c1()));
    }
    const double rate = observed_rate(prevalence, test);
    if (!(rate > 0.0)) {
        throw DomainError("test-positive rate c1 + c2*pi must be positive");
    }
    return rate;
}

}  // namespace

void TrialCounts::validate() const {
    if (n_v <= 0 || n_c <= 0) throw DomainError("each arm needs at least one participant");
    if (t_v < 0 || t_c < 0) throw DomainError("case counts must be non-negative");
    if (t_v > n_v) throw DomainError("vaccinated cases exceed vaccinated participants");
    if (t_c > n_c) throw DomainError("control cases exceed control participants");
}

void DiagnosticProfile::validate() const {
    require_probability(sensitivity, "sensitivity");
    require_probability(specificity, "specificity");
    if (!(c2() > 0.0)) {
        throw DomainError("Se + Sp - 1 must be positive (test no better than chance)");
    }
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::conditional: return "conditional";
        case Method::cramer_rao: return "cramer-rao";
        case Method::wald: return "wald";
        case Method::fisher_rr: return "fisher-rr";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::conditional, Method::cramer_rao, Method::wald, Method::fisher_rr}) {
        if (name == to_string(m)) return m;
    }
    throw DomainError("unknown method '" + std::string(name) + "'");
}

void PooledCounts::validate() const {
    if (population <= 0) throw DomainError("population must be positive");
    if (control_cases < 0 || total_cases < control_cases) {
        throw DomainError("need 0 <= t_c <= t");
    }
    if (total_cases > population) throw DomainError("cases exceed population");
}

double observed_rate(double prevalence, const DiagnosticProfile& test) {
    require_probability(prevalence, "prevalence");
    return test.c1() + test.c2() * prevalence;
}

double default_prevalence(const TrialCounts& counts) noexcept { return counts.pooled_rate(); }

std::optional<std::string> check_arm_balance(const TrialCounts& counts) {
    const double imbalance =
        std::fabs(double(counts.n_v - counts.n_c)) / double(counts.population());
    if (imbalance > kArmImbalanceLimit) {
        throw DomainError("arms are unbalanced by " + fmt(100.0 * imbalance) +
                          "%; the conditional model assumes equal allocation");
    }
    if (imbalance > kArmImbalanceWarning) {
        return "arm sizes differ by " + fmt(100.0 * imbalance) +
               "% of the population; the conditional model assumes equal allocation";
    }
    return std::nullopt;
}

double log_likelihood(double alpha, const PooledCounts& data, double prevalence,
                      const DiagnosticProfile& test) {
    const double rate = checked_rate(data, prevalence, test);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("efficacy must lie in [0,1], got " + fmt(alpha));
    }
    const double p = rate / (2.0 - alpha);
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("binomial success probability " + fmt(p) + " outside (0,1)");
    }
    const double cases = double(data.control_cases);
    const double rest = double(data.population - data.control_cases);
    return log_binomial_coefficient(data.population, data.control_cases) + cases * std::log(p) +
           rest * std::log1p(-p);
}

double log_likelihood(double alpha, const TrialCounts& counts, double prevalence,
                      const DiagnosticProfile& test) {
    counts.validate();
    return log_likelihood(alpha, PooledCounts::from(counts), prevalence, test);
}

PosteriorGrid::PosteriorGrid(Grid density, PooledCounts data, double prevalence,
                             DiagnosticProfile test, std::vector<std::string> warnings)
    : density_(std::move(density)),
      cdf_(density_.cumulative()),
      data_(data),
      prevalence_(prevalence),
      test_(test),
      warnings_(std::move(warnings)) {}

double PosteriorGrid::quantile(double q) const {
    return grid_quantile(density_.points(), cdf_, q);
}

double PosteriorGrid::mode() const {
    const auto x = density_.points();
    const auto f = density_.values();
    const auto it = std::max_element(f.begin(), f.end());
    const auto i = static_cast<std::size_t>(it - f.begin());
    if (i == 0 || i + 1 == f.size()) return x[i];
    if (!(f[i - 1] > 0.0 && f[i + 1] > 0.0)) return x[i];
    const double lm = std::log(f[i - 1]);
    const double l0 = std::log(f[i]);
    const double lp = std::log(f[i + 1]);
    const double curvature = lm - 2.0 * l0 + lp;
    if (!(curvature < 0.0)) return x[i];
    const double h = x[i + 1] - x[i];
    const double shift = 0.5 * h * (lm - lp) / curvature;
    return std::clamp(x[i] + shift, x[i - 1], x[i + 1]);
}

PosteriorGrid posterior(const PooledCounts& data, double prevalence, const DiagnosticProfile& test,
                        std::size_t grid_size, Exec exec) {
    if (grid_size < kMinGridSize) {
        throw DomainError("posterior grid needs at least " + std::to_string(kMinGridSize) +
                          " points");
    }
    const double rate = checked_rate(data, prevalence, test);

    Grid axis = Grid::uniform(0.0, 1.0, grid_size);
    std::vector<double> log_density(grid_size);
    kernels::binomial_log_kernel(axis.points(), rate, data.population, data.control_cases,
                                 log_density, exec);
    std::vector<double> density(grid_size);
    const double peak = kernels::exp_shifted(log_density, density, exec);
    if (!std::isfinite(peak)) {
        throw DegenerateDataError("likelihood vanishes on the whole efficacy grid");
    }
    Grid unnormalized(std::vector<double>(axis.points().begin(), axis.points().end()),
                      std::move(density));
    return PosteriorGrid(grid_normalize(unnormalized), data, prevalence, test, {});
}

PosteriorGrid posterior(const TrialCounts& counts, double prevalence, const DiagnosticProfile& test,
                        std::size_t grid_size, Exec exec) {
    counts.validate();
    auto balance = check_arm_balance(counts);
    PosteriorGrid post = posterior(PooledCounts::from(counts), prevalence, test, grid_size, exec);
    if (!balance) return post;
    auto warnings = post.warnings();
    warnings.push_back(std::move(*balance));
    return PosteriorGrid(post.density(), post.data(), post.prevalence(), post.test(),
                         std::move(warnings));
}

MapEstimate map_estimate(const PooledCounts& data, double prevalence,
                         const DiagnosticProfile& test) {
    const double rate = checked_rate(data, prevalence, test);
    MapEstimate est;
    est.unclamped = 2.0 - double(data.population) * rate / double(data.control_cases);
    est.mode = std::clamp(est.unclamped, 0.0, 1.0);
    est.clamped = est.mode != est.unclamped;
    return est;
}

MapEstimate map_estimate(const TrialCounts& counts, double prevalence,
                         const DiagnosticProfile& test) {
    counts.validate();
    return map_estimate(PooledCounts::from(counts), prevalence, test);
}

double fisher_information(double alpha, std::int64_t n, double prevalence,
                          const DiagnosticProfile& test) {
    if (n < 1) throw DomainError("fisher_information needs n >= 1");
    test.validate();
    const double rate = observed_rate(prevalence, test);
    const double shifted = 2.0 - alpha;
    const double slack = shifted - rate;
    if (!(slack > 0.0) || !(rate > 0.0)) {
        throw DomainError("fisher_information needs 0 < T < 2 - alpha");
    }
    return double(n) * rate / (shifted * shifted * slack);
}

EfficacyEstimate cramer_rao_interval(const PooledCounts& data, double prevalence,
                                     const DiagnosticProfile& test, double level) {
    const double z = z_for_level(level);
    const MapEstimate map = map_estimate(data, prevalence, test);
    const double info = fisher_information(map.mode, data.population, prevalence, test);
    const double half = z / std::sqrt(info);

    EfficacyEstimate est;
    est.method = Method::cramer_rao;
    est.level = level;
    est.point = map.mode;
    est.lower = map.mode - half;
    est.upper = map.mode + half;
    if (map.clamped) {
        est.warnings.push_back("closed-form mode " + fmt(map.unclamped) +
                               " lies outside [0,1] and was clamped");
    }
    if (est.lower < 0.0 || est.upper > 1.0) {
        est.warnings.emplace_back("interval extends outside [0,1]");
    }
    return est;
}

EfficacyEstimate cramer_rao_interval(const TrialCounts& counts, double prevalence,
                                     const DiagnosticProfile& test, double level) {
    counts.validate();
    auto est = cramer_rao_interval(PooledCounts::from(counts), prevalence, test, level);
    if (auto w = check_arm_balance(counts)) est.warnings.push_back(std::move(*w));
    return est;
}

EfficacyEstimate credible_interval(const PosteriorGrid& post, double level, IntervalRule rule) {
    if (!(level >= 0.0 && level < 1.0)) {
        throw DomainError("credible level must lie in [0,1), got " + fmt(level));
    }
    EfficacyEstimate est;
    est.method = Method::conditional;
    est.level = level;
    est.point = post.mode();
    est.warnings = post.warnings();

    if (rule == IntervalRule::equal_tailed) {
        est.lower = post.quantile(0.5 * (1.0 - level));
        est.upper = post.quantile(0.5 * (1.0 + level));
        return est;
    }

    // Highest-density set: take grid cells in decreasing density until the
    // requested mass is covered, then report its hull.
    const auto x = post.density().points();
    const auto f = post.density().values();
    const auto& cdf = post.cdf();
    std::vector<std::size_t> order(x.size() - 1);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return f[a] + f[a + 1] > f[b] + f[b + 1];
    });
    double mass = 0.0;
    std::size_t lo = x.size();
    std::size_t hi = 0;
    for (std::size_t cell : order) {
        if (mass >= level * cdf.back() && lo <= hi) break;
        mass += cdf[cell + 1] - cdf[cell];
        lo = std::min(lo, cell);
        hi = std::max(hi, cell + 1);
    }
    est.lower = x[lo];
    est.upper = x[hi];
    if (level == 0.0) est.lower = est.upper = est.point;
    return est;
}

MarginalLikelihood marginal_likelihood(const PooledCounts& data, double prevalence,
                                       const DiagnosticProfile& test) {
    const double rate = checked_rate(data, prevalence, test);
    MarginalLikelihood out;
    const std::int64_t n = data.population;
    const std::int64_t tc = data.control_cases;

    if (tc < 2) {
        // Substituting p = T / (2 - alpha) leaves p^(t_c - 2) under the
        // integral, which has no incomplete-beta form for t_c = 1.
        out.analytic = false;
        out.warnings.emplace_back("t_c < 2: marginal likelihood computed by quadrature");
        constexpr std::size_t kPoints = 400001;
        Grid axis = Grid::uniform(0.0, 1.0, kPoints);
        std::vector<double> logs(kPoints);
        kernels::binomial_log_kernel(axis.points(), rate, n, tc, logs, Exec::serial);
        std::vector<double> vals(kPoints);
        const double peak = kernels::exp_shifted(logs, vals, Exec::serial);
        const double integral =
            Grid(std::vector<double>(axis.points().begin(), axis.points().end()), std::move(vals))
                .trapezoid();
        out.log_value = log_binomial_coefficient(n, tc) + peak + std::log(integral);
        out.value = std::exp(out.log_value);
        return out;
    }

    const double a = double(tc - 1);
    const double b = double(n - tc + 1);
    // I_T(a, b) - I_{T/2}(a, b), taken from the complementary tail when the
    // lower tail is close to one so the difference keeps its precision.
    double diff = 0.0;
    const double upper_lower_tail = regularized_incomplete_beta(rate, a, b);
    if (upper_lower_tail < 0.5) {
        diff = upper_lower_tail - regularized_incomplete_beta(0.5 * rate, a, b);
    } else {
        diff = regularized_incomplete_beta(1.0 - 0.5 * rate, b, a) -
               regularized_incomplete_beta(1.0 - rate, b, a);
    }
    if (!(diff > 0.0)) {
        throw DegenerateDataError("marginal likelihood underflows");
    }
    out.log_value =
        log_binomial_coefficient(n, tc) + std::log(rate) + log_beta(a, b) + std::log(diff);
    out.value = std::exp(out.log_value);
    return out;
}

MarginalLikelihood marginal_likelihood(const TrialCounts& counts, double prevalence,
                                       const DiagnosticProfile& test) {
    counts.validate();
    return marginal_likelihood(PooledCounts::from(counts), prevalence, test);
}

PosteriorGrid marginalize_over_diagnostics(const TrialCounts& counts, double prevalence,
                                           ProbabilityRange sensitivity,
                                           ProbabilityRange specificity, std::size_t grid_size,
                                           std::size_t lattice, Exec exec) {
    counts.validate();
    for (const auto& r : {sensitivity, specificity}) {
        require_probability(r.lo, "range bound");
        require_probability(r.hi, "range bound");
        if (r.lo > r.hi) throw DomainError("range lower bound exceeds upper bound");
    }
    if (lattice < 1) throw DomainError("lattice needs at least one point per axis");
    if (grid_size < kMinGridSize) {
        throw DomainError("posterior grid needs at least " + std::to_string(kMinGridSize) +
                          " points");
    }
    const PooledCounts data = PooledCounts::from(counts);

    auto axis_values = [lattice](ProbabilityRange r) {
        if (r.lo == r.hi || lattice == 1) return std::vector<double>{r.lo};
        std::vector<double> v(lattice);
        for (std::size_t i = 0; i < lattice; ++i) {
            v[i] = r.lo + (r.hi - r.lo) * double(i) / double(lattice - 1);
        }
        v.back() = r.hi;
        return v;
    };
    const auto se_axis = axis_values(sensitivity);
    const auto sp_axis = axis_values(specificity);

    // Rows are summed independently and then combined in order so the
    // result does not depend on the thread count.
    std::vector<std::vector<double>> row_sums(se_axis.size(), std::vector<double>(grid_size, 0.0));
    std::vector<int> row_used(se_axis.size(), 0);
    std::vector<int> row_skipped(se_axis.size(), 0);
    const auto rows = static_cast<std::ptrdiff_t>(se_axis.size());

    auto process_row = [&](std::ptrdiff_t r) {
        for (double sp : sp_axis) {
            const DiagnosticProfile test{se_axis[r], sp};
            if (!(test.c2() > 0.0) || !(data.pooled_rate() > test.c1())) {
                ++row_skipped[r];
                continue;
            }
            const PosteriorGrid post = posterior(data, prevalence, test, grid_size, Exec::serial);
            const auto f = post.density().values();
            for (std::size_t i = 0; i < grid_size; ++i) row_sums[r][i] += f[i];
            ++row_used[r];
        }
    };
    if (exec == Exec::serial) {
        for (std::ptrdiff_t r = 0; r < rows; ++r) process_row(r);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t r = 0; r < rows; ++r) process_row(r);
    }

    std::vector<double> total(grid_size, 0.0);
    int used = 0;
    int skipped = 0;
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < grid_size; ++i) total[i] += row_sums[r][i];
        used += row_used[r];
        skipped += row_skipped[r];
    }
    if (used == 0) {
        throw FalsePositiveParadoxError(
            "every (Se, Sp) lattice point puts the false positive rate at or above the "
            "observed positive rate");
    }
    for (double& v : total) v /= double(used);

    std::vector<std::string> warnings;
    if (skipped > 0) {
        warnings.push_back(std::to_string(skipped) +
                           " (Se, Sp) lattice points excluded: false positive rate at or above "
                           "the observed positive rate");
    }
    if (auto w = check_arm_balance(counts)) warnings.push_back(std::move(*w));

    Grid axis = Grid::uniform(0.0, 1.0, grid_size);
    Grid mixed(std::vector<double>(axis.points().begin(), axis.points().end()), std::move(total));
    // The centre of the lattice stands in as the profile of the mixture.
    const DiagnosticProfile centre{0.5 * (sensitivity.lo + sensitivity.hi),
                                   0.5 * (specificity.lo + specificity.hi)};
    return PosteriorGrid(grid_normalize(mixed), data, prevalence, centre, std::move(warnings));
}

}  // namespace vaxeff
