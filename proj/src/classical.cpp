#include "vaxeff/classical.hpp"

#include "vaxeff/error.hpp"
#include "vaxeff/numerics.hpp"

#include <cmath>

namespace vaxeff {

namespace {

double z_for_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0,1)");
    return normal_quantile(0.5 * (1.0 + level));
}

void require_log_defined(const TrialCounts& counts) {
    counts.validate();
    if (counts.t_v == 0) {
        throw UndefinedLogError(
            "zero cases in vaccinated arm; ln RR is undefined, use the conditional-binomial "
            "method");
    }
    if (counts.t_c == 0) {
        throw UndefinedLogError(
            "zero cases in control arm; ln RR is undefined, use the conditional-binomial method");
    }
}

double risk_ratio(const TrialCounts& counts) {
    return counts.vaccinated_rate() / counts.control_rate();
}

}  // namespace

double wald_log_variance(const TrialCounts& counts) {
    require_log_defined(counts);
    return (1.0 - counts.vaccinated_rate()) / double(counts.t_v) +
           (1.0 - counts.control_rate()) / double(counts.t_c);
}

RiskRatioInterval wald_rr_interval(const TrialCounts& counts, double level) {
    const double z = z_for_level(level);
    const double sd = std::sqrt(wald_log_variance(counts));
    const double log_rr = std::log(risk_ratio(counts));

    RiskRatioInterval out;
    out.level = level;
    out.ratio = std::exp(log_rr);
    out.lower = std::exp(log_rr - z * sd);
    out.upper = std::exp(log_rr + z * sd);
    out.efficacy.method = Method::wald;
    out.efficacy.level = level;
    out.efficacy.point = 1.0 - out.ratio;
    out.efficacy.lower = 1.0 - out.upper;
    out.efficacy.upper = 1.0 - out.lower;
    return out;
}

EfficacyEstimate wald_efficacy_interval(const TrialCounts& counts, double level) {
    return wald_rr_interval(counts, level).efficacy;
}

RiskRatioInterval fisher_rr_interval(const TrialCounts& counts, double level) {
    counts.validate();
    if (counts.t_c == 0) {
        throw DegenerateDataError("zero cases in control arm; risk ratio is undefined");
    }
    const double z = z_for_level(level);
    const double case_ratio = double(counts.t_v) / double(counts.t_c);
    const double pi = counts.pooled_rate();
    const double arm_ratio = double(counts.n_c) / double(counts.n_v);
    const double half = z * arm_ratio * (1.0 + case_ratio) *
                        std::sqrt((1.0 + case_ratio - pi) / double(counts.cases()));

    RiskRatioInterval out;
    out.level = level;
    out.ratio = arm_ratio * case_ratio;
    out.lower = out.ratio - half;
    out.upper = out.ratio + half;
    out.lower_undetermined = out.lower < 0.0;

    auto& eff = out.efficacy;
    eff.method = Method::fisher_rr;
    eff.level = level;
    eff.point = 1.0 - out.ratio;
    eff.lower = 1.0 - out.upper;
    eff.upper = 1.0 - out.lower;
    if (out.lower_undetermined) {
        eff.warnings.emplace_back(
            "risk-ratio lower bound is negative and undetermined; efficacy upper bound exceeds 1");
    }
    return out;
}

}  // namespace vaxeff
