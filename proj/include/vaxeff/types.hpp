#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vaxeff {

/// Participants and cases in each arm of a two-arm trial.
struct TrialCounts {
    std::int64_t n_v = 0;  // vaccinated participants
    std::int64_t t_v = 0;  // vaccinated cases
    std::int64_t n_c = 0;  // control participants
    std::int64_t t_c = 0;  // control cases

    /// Throws DomainError if any count is negative, an arm is empty or an
    /// arm has more cases than participants.
    void validate() const;

    std::int64_t population() const noexcept { return n_v + n_c; }
    std::int64_t cases() const noexcept { return t_v + t_c; }
    double vaccinated_rate() const noexcept { return double(t_v) / double(n_v); }
    double control_rate() const noexcept { return double(t_c) / double(n_c); }
    double pooled_rate() const noexcept { return double(cases()) / double(population()); }
};

/// Sensitivity and specificity of the case-confirming assay.
struct DiagnosticProfile {
    double sensitivity = 1.0;
    double specificity = 1.0;

    static constexpr DiagnosticProfile perfect() noexcept { return {1.0, 1.0}; }

    /// False positive rate 1 - Sp.
    double c1() const noexcept { return 1.0 - specificity; }
    /// Se + Sp - 1; positive when the test beats chance.
    double c2() const noexcept { return sensitivity + specificity - 1.0; }

    void validate() const;
};

enum class Method { conditional, cramer_rao, wald, fisher_rr };

std::string_view to_string(Method m) noexcept;
/// Accepts the names produced by to_string ("conditional", "cramer-rao", ...).
Method parse_method(std::string_view name);

/// Point estimate and interval for efficacy (1 - RR).
struct EfficacyEstimate {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    Method method = Method::conditional;
    std::vector<std::string> warnings;
};

}  // namespace vaxeff
