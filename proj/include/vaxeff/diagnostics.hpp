#pragma once

#include "vaxeff/types.hpp"

namespace vaxeff {

/// P(diseased | positive test) at prevalence pi.
double ppv(double prevalence, const DiagnosticProfile& test);

/// P(healthy | negative test) at prevalence pi.
double npv(double prevalence, const DiagnosticProfile& test);

/// Prevalence at which dPPV/dpi = 1; below it PPV collapses quickly.
/// Closed form (sqrt(Se (1 - Sp)) + Sp - 1) / (Se + Sp - 1).
double prevalence_threshold(const DiagnosticProfile& test);

}  // namespace vaxeff
