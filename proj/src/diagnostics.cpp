#include "vaxeff/diagnostics.hpp"

#include "vaxeff/error.hpp"

#include <cmath>

namespace vaxeff {

namespace {

void check_inputs(double prevalence, const DiagnosticProfile& test) {
    if (!(prevalence >= 0.0 && prevalence <= 1.0)) {
        throw DomainError("prevalence must lie in [0,1]");
    }
    if (!(test.sensitivity >= 0.0 && test.sensitivity <= 1.0) ||
        !(test.specificity >= 0.0 && test.specificity <= 1.0)) {
        throw DomainError("sensitivity and specificity must lie in [0,1]");
    }
}

}  // namespace

double ppv(double prevalence, const DiagnosticProfile& test) {
    check_inputs(prevalence, test);
    const double true_pos = test.sensitivity * prevalence;
    const double denom = true_pos + test.c1() * (1.0 - prevalence);
    if (!(denom > 0.0)) throw DomainError("PPV undefined: no positive tests expected");
    return true_pos / denom;
}

double npv(double prevalence, const DiagnosticProfile& test) {
    check_inputs(prevalence, test);
    const double true_neg = test.specificity * (1.0 - prevalence);
    const double denom = true_neg + (1.0 - test.sensitivity) * prevalence;
    if (!(denom > 0.0)) throw DomainError("NPV undefined: no negative tests expected");
    return true_neg / denom;
}

double prevalence_threshold(const DiagnosticProfile& test) {
    check_inputs(0.0, test);
    const double c2 = test.c2();
    if (!(c2 > 0.0)) throw DomainError("prevalence threshold needs Se + Sp - 1 > 0");
    return (std::sqrt(test.sensitivity * test.c1()) - test.c1()) / c2;
}

}  // namespace vaxeff
