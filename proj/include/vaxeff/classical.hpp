#pragma once

#include "vaxeff/types.hpp"

namespace vaxeff {

/// (1 - pi_v) / t_v + (1 - pi_c) / t_c, the delta-method variance of ln RR.
double wald_log_variance(const TrialCounts& counts);

/// Pooled Wald interval on efficacy: 1 - exp(ln RR -+ z * sqrt(var)).
/// Throws UndefinedLogError when either arm has no cases.
EfficacyEstimate wald_efficacy_interval(const TrialCounts& counts, double level = 0.95);

/// An interval on the risk-ratio scale together with its efficacy transform.
struct RiskRatioInterval {
    double ratio = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    /// Lower bound fell below zero and carries no information.
    bool lower_undetermined = false;
    EfficacyEstimate efficacy;
};

/// The pooled Wald interval expressed on the RR scale.
RiskRatioInterval wald_rr_interval(const TrialCounts& counts, double level = 0.95);

/// RR -+ z (n_c / n_v)(1 + t_v/t_c) sqrt((1 + t_v/t_c - pi) / t) with
/// pi = t / n. Negative lower bounds are kept and flagged, not clamped.
RiskRatioInterval fisher_rr_interval(const TrialCounts& counts, double level = 0.95);

}  // namespace vaxeff
