#include "cli/curves.hpp"

#include "vaxeff/classical.hpp"
#include "vaxeff/efficacy.hpp"
#include "vaxeff/error.hpp"
#include "vaxeff/format.hpp"
#include "vaxeff/sample_size.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vaxeff::cli {

namespace {

void write_density_rows(std::ostream& out, const PosteriorGrid& post, const std::string& tail) {
    const auto x = post.density().points();
    const auto f = post.density().values();
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << format_number(x[i]) << ',' << format_number(f[i]) << ',' << tail << '\n';
    }
}

}  // namespace

TrialCounts expected_counts(std::int64_t population, double prevalence, double efficacy) {
    TrialCounts c;
    c.n_v = population / 2;
    c.n_c = population - c.n_v;
    const auto t = static_cast<std::int64_t>(std::llround(prevalence * double(population)));
    c.t_c = static_cast<std::int64_t>(std::llround(double(t) / (2.0 - efficacy)));
    c.t_v = t - c.t_c;
    return c;
}

void write_prevalence_sweep(std::ostream& out, const PrevalenceSweep& sweep) {
    out << "alpha,density,pi,wald_lower,wald_upper\n";
    for (double pi : sweep.prevalences) {
        const std::int64_t n = sweep.panel == 't'
                                   ? static_cast<std::int64_t>(std::llround(double(sweep.total_cases) / pi))
                                   : sweep.population;
        const TrialCounts counts = expected_counts(n, pi, sweep.efficacy);
        const PooledCounts data = PooledCounts::from(counts);
        const auto post =
            posterior(data, data.pooled_rate(), DiagnosticProfile::perfect(), sweep.grid);
        std::string wald = "NA,NA";
        try {
            const auto w = wald_efficacy_interval(counts);
            wald = format_number(w.lower) + ',' + format_number(w.upper);
        } catch (const DomainError&) {
        }
        write_density_rows(out, post, format_number(pi) + ',' + wald);
    }
}

void write_trial_curves(std::ostream& out, const TrialCounts& counts, std::size_t grid) {
    counts.validate();
    out << "alpha,density,curve,lower,upper\n";
    const PooledCounts full = PooledCounts::from(counts);
    const PooledCounts cases_only{counts.cases(), counts.cases(), counts.t_c};
    const std::pair<const char*, PooledCounts> curves[] = {{"conditional", full},
                                                           {"pooled", cases_only}};
    for (const auto& [name, data] : curves) {
        const auto post = posterior(data, data.pooled_rate(), DiagnosticProfile::perfect(), grid);
        const auto ci = credible_interval(post, 0.95);
        write_density_rows(out, post,
                           std::string(name) + ',' + format_number(ci.lower) + ',' +
                               format_number(ci.upper));
    }
}

void write_misclassification_sweep(std::ostream& out, const MisclassificationSweep& sweep) {
    out << "alpha,density,pi,se,sp\n";
    for (double pi : sweep.prevalences) {
        const TrialCounts counts = expected_counts(sweep.population, pi, sweep.efficacy);
        const PooledCounts data = PooledCounts::from(counts);
        const auto post = posterior(data, data.pooled_rate(), sweep.test, sweep.grid);
        write_density_rows(out, post,
                           format_number(pi) + ',' + format_number(sweep.test.sensitivity) + ',' +
                               format_number(sweep.test.specificity));
    }
}

void write_sample_size_sweep(std::ostream& out, const SampleSizeSweep& sweep) {
    out << "ve,delta,pi,method,n\n";
    const ZMode mode = sweep.exact_z ? ZMode::exact : ZMode::paper_rounded;
    const double deltas[] = {sweep.delta};
    for (SizeMethod method : {SizeMethod::cramer_rao, SizeMethod::wald}) {
        const auto table = sample_size_table(sweep.efficacies, deltas, sweep.prevalences,
                                             sweep.alpha, sweep.beta, method, mode);
        for (const auto& c : table) {
            out << format_number(c.efficacy) << ',' << format_number(c.delta) << ','
                << format_number(c.prevalence) << ',' << to_string(method) << ',';
            if (c.n) {
                out << *c.n;
            } else {
                out << "NA";
            }
            out << '\n';
        }
    }
}

std::vector<double> default_sample_size_prevalences() {
    std::vector<double> pis = {0.5, 0.1, 0.05, 0.01, 0.005, 0.001, 0.0005};
    // 40 log-spaced steps from 1e-4 up to 0.5 for smooth curves.
    const double lo = std::log10(1e-4);
    const double hi = std::log10(0.5);
    for (int i = 0; i < 40; ++i) {
        pis.push_back(std::pow(10.0, lo + (hi - lo) * i / 40.0));
    }
    std::sort(pis.begin(), pis.end());
    pis.erase(std::unique(pis.begin(), pis.end()), pis.end());
    return pis;
}

}  // namespace vaxeff::cli
