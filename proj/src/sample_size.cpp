#include "vaxeff/sample_size.hpp"

#include "vaxeff/error.hpp"
#include "vaxeff/format.hpp"
#include "vaxeff/numerics.hpp"

#include <cmath>
#include <limits>

namespace vaxeff {

namespace {

void require_open_unit(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(what) + " must lie in (0,1)");
}

std::int64_t nearest(double n) {
    if (!std::isfinite(n) || n > 9.0e18) throw DomainError("sample size overflows");
    return std::llround(n);
}

}  // namespace

ZScores z_scores(double alpha, double beta, ZMode mode) {
    require_open_unit(alpha, "alpha");
    require_open_unit(beta, "beta");
    ZScores z{normal_quantile(1.0 - 0.5 * alpha), normal_quantile(1.0 - beta)};
    if (mode == ZMode::paper_rounded) {
        z.two_sided = std::round(z.two_sided * 100.0) / 100.0;
        z.power = std::round(z.power * 100.0) / 100.0;
    }
    return z;
}

void SampleSizeSpec::validate() const {
    if (!(efficacy >= 0.0 && efficacy < 1.0)) throw DomainError("VE must lie in [0,1)");
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0,1]");
    if (!(prevalence > 0.0 && prevalence <= 1.0)) throw DomainError("pi must lie in (0,1]");
    require_open_unit(alpha, "alpha");
    require_open_unit(beta, "beta");
}

double generic_two_sample_raw(double sigma, double delta, double alpha, double beta, ZMode mode) {
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    if (delta == 0.0 || !std::isfinite(delta)) {
        throw DomainError("zero mean difference needs an infinite sample");
    }
    const double z = z_scores(alpha, beta, mode).sum();
    return 2.0 * sigma * sigma / (delta * delta) * z * z;
}

std::int64_t generic_two_sample(double sigma, double delta, double alpha, double beta,
                                ZMode mode) {
    const double raw = generic_two_sample_raw(sigma, delta, alpha, beta, mode);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
}

double wald_sample_size_raw(const SampleSizeSpec& spec) {
    spec.validate();
    const double z = z_scores(spec.alpha, spec.beta, spec.z_mode).sum();
    const double ve = spec.efficacy;
    const double half = spec.delta / (2.0 * (1.0 - ve));
    const double d = std::asinh(half);  // ln(h + sqrt(h^2 + 1))
    const double shape = (2.0 - ve) * (2.0 - ve) / (spec.prevalence * (1.0 - ve)) - 2.0;
    return 2.0 * z * z / (d * d) * shape;
}

std::int64_t wald_sample_size(const SampleSizeSpec& spec) {
    return nearest(wald_sample_size_raw(spec));
}

double cramer_rao_sample_size_raw(const SampleSizeSpec& spec) {
    spec.validate();
    const double slack = 2.0 - spec.efficacy - spec.prevalence;
    if (!(slack > 0.0)) throw DomainError("Cramer-Rao sample size needs 2 - VE - pi > 0");
    const double z = z_scores(spec.alpha, spec.beta, spec.z_mode).sum();
    const double shifted = 2.0 - spec.efficacy;
    return 4.0 * z * z / (spec.prevalence * spec.delta * spec.delta) * shifted * shifted * slack;
}

std::int64_t cramer_rao_sample_size(const SampleSizeSpec& spec) {
    return nearest(cramer_rao_sample_size_raw(spec));
}

std::string_view to_string(SizeMethod m) noexcept {
    return m == SizeMethod::wald ? "wald" : "cramer-rao";
}

SizeMethod parse_size_method(std::string_view name) {
    if (name == "wald") return SizeMethod::wald;
    if (name == "cramer-rao") return SizeMethod::cramer_rao;
    throw DomainError("unknown sample-size method '" + std::string(name) + "'");
}

std::vector<SampleSizeCell> sample_size_table(std::span<const double> efficacies,
                                              std::span<const double> deltas,
                                              std::span<const double> prevalences, double alpha,
                                              double beta, SizeMethod method, ZMode mode,
                                              Exec exec) {
    std::vector<SampleSizeCell> cells;
    cells.reserve(efficacies.size() * deltas.size() * prevalences.size());
    for (double ve : efficacies) {
        for (double delta : deltas) {
            for (double pi : prevalences) {
                cells.push_back({ve, delta, pi, alpha, beta, method, std::nullopt, {}});
            }
        }
    }

    auto evaluate = [mode](SampleSizeCell& cell) {
        const SampleSizeSpec spec{cell.efficacy, cell.delta, cell.prevalence,
                                  cell.alpha,    cell.beta,  mode};
        try {
            cell.n = cell.method == SizeMethod::wald ? wald_sample_size(spec)
                                                     : cramer_rao_sample_size(spec);
        } catch (const DomainError& e) {
            cell.error = e.what();
        }
    };
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < count; ++i) evaluate(cells[i]);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) evaluate(cells[i]);
    }
    return cells;
}

void write_sample_size_csv(std::ostream& out, std::span<const SampleSizeCell> table) {
    out << "ve,delta,pi,alpha,beta,method,n\n";
    for (const auto& c : table) {
        out << format_number(c.efficacy) << ',' << format_number(c.delta) << ','
            << format_number(c.prevalence) << ',' << format_number(c.alpha) << ','
            << format_number(c.beta) << ',' << to_string(c.method) << ',';
        if (c.n) {
            out << *c.n;
        } else {
            out << "NA";
        }
        out << '\n';
    }
}

}  // namespace vaxeff
