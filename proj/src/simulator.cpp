#include "vaxeff/simulator.hpp"

#include "vaxeff/classical.hpp"
#include "vaxeff/error.hpp"
#include "vaxeff/format.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace vaxeff {

namespace {

std::int64_t draw_binomial(std::int64_t trials, double p, ReplicateEngine& rng) {
    if (trials <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    std::binomial_distribution<std::int64_t> dist(trials, p);
    return dist(rng);
}

std::int64_t observe(std::int64_t population, std::int64_t true_cases,
                     const DiagnosticProfile& test, ReplicateEngine& rng) {
    return draw_binomial(true_cases, test.sensitivity, rng) +
           draw_binomial(population - true_cases, test.c1(), rng);
}

MethodOutcome evaluate(Method method, const TrialCounts& counts, const SimulationConfig& config) {
    MethodOutcome out;
    try {
        EfficacyEstimate est;
        switch (method) {
            case Method::conditional: {
                const auto post = posterior(counts, default_prevalence(counts), config.analysis,
                                            config.grid_size, Exec::serial);
                est = credible_interval(post, config.level);
                break;
            }
            case Method::cramer_rao:
                est = cramer_rao_interval(counts, default_prevalence(counts), config.analysis,
                                          config.level);
                break;
            case Method::wald:
                est = wald_efficacy_interval(counts, config.level);
                break;
            case Method::fisher_rr:
                est = fisher_rr_interval(counts, config.level).efficacy;
                break;
        }
        out.evaluated = true;
        out.point = est.point;
        out.lower = est.lower;
        out.upper = est.upper;
        out.covered = est.lower <= config.efficacy && config.efficacy <= est.upper;
    } catch (const DomainError&) {
        out.evaluated = false;
    } catch (const DegenerateDataError&) {
        out.evaluated = false;
    }
    return out;
}

ReplicateRecord run_replicate(const SimulationConfig& config, std::int64_t index) {
    ReplicateRecord rec;
    rec.replicate = index;
    ReplicateEngine rng = replicate_engine(config.seed, static_cast<std::uint64_t>(index));
    rec.counts = simulate_trial(config, rng);
    if (config.fixed_total_cases) {
        std::int64_t attempts = 1;
        while (rec.counts.cases() != *config.fixed_total_cases && attempts < config.max_redraws) {
            rec.counts = simulate_trial(config, rng);
            ++attempts;
        }
        rec.drawn = rec.counts.cases() == *config.fixed_total_cases;
    }
    rec.outcomes.resize(config.methods.size());
    if (!rec.drawn) return rec;
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        rec.outcomes[m] = evaluate(config.methods[m], rec.counts, config);
    }
    return rec;
}

}  // namespace

void SimulationConfig::validate() const {
    if (n_per_arm < 1) throw DomainError("n per arm must be positive");
    if (!(control_prevalence >= 0.0 && control_prevalence <= 1.0)) {
        throw DomainError("control prevalence must lie in [0,1]");
    }
    if (!(efficacy >= 0.0 && efficacy <= 1.0)) throw DomainError("efficacy must lie in [0,1]");
    truth.validate();
    analysis.validate();
    if (replicates < 1) throw DomainError("need at least one replicate");
    if (methods.empty()) throw DomainError("need at least one interval method");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0,1)");
    if (grid_size < kMinGridSize) throw DomainError("grid size below minimum");
    if (fixed_total_cases && (*fixed_total_cases < 1 || *fixed_total_cases > 2 * n_per_arm)) {
        throw DomainError("fixed total cases must lie in [1, 2 n]");
    }
    if (max_redraws < 1) throw DomainError("max redraws must be positive");
}

ReplicateEngine replicate_engine(std::uint64_t seed, std::uint64_t replicate) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate),
                      static_cast<std::uint32_t>(replicate >> 32)};
    return ReplicateEngine(seq);
}

TrialCounts simulate_trial(const SimulationConfig& config, ReplicateEngine& rng) {
    const std::int64_t n = config.n_per_arm;
    const double vaccinated_prevalence = (1.0 - config.efficacy) * config.control_prevalence;
    const std::int64_t true_c = draw_binomial(n, config.control_prevalence, rng);
    const std::int64_t true_v = draw_binomial(n, vaccinated_prevalence, rng);
    TrialCounts counts;
    counts.n_v = n;
    counts.n_c = n;
    counts.t_c = observe(n, true_c, config.truth, rng);
    counts.t_v = observe(n, true_v, config.truth, rng);
    return counts;
}

const MethodCoverage& CoverageReport::at(Method m) const {
    for (const auto& mc : methods) {
        if (mc.method == m) return mc;
    }
    throw std::out_of_range("method not part of this coverage report");
}

CoverageReport coverage_study(const SimulationConfig& config, Exec exec,
                              std::vector<ReplicateRecord>* records) {
    config.validate();
    std::vector<ReplicateRecord> recs(static_cast<std::size_t>(config.replicates));
    const auto count = static_cast<std::ptrdiff_t>(config.replicates);
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < count; ++i) recs[i] = run_replicate(config, i);
    } else {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < count; ++i) recs[i] = run_replicate(config, i);
    }

    CoverageReport report;
    report.config = config;
    report.replicates = config.replicates;
    for (Method m : config.methods) report.methods.push_back({.method = m});

    std::vector<double> width_sum(config.methods.size(), 0.0);
    std::vector<double> point_sum(config.methods.size(), 0.0);
    for (const auto& rec : recs) {
        if (!rec.drawn) ++report.undrawn;
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            auto& mc = report.methods[m];
            const auto& o = rec.outcomes[m];
            if (!o.evaluated) {
                ++mc.failures;
                continue;
            }
            ++mc.evaluated;
            mc.covered += o.covered ? 1 : 0;
            width_sum[m] += o.upper - o.lower;
            point_sum[m] += o.point;
        }
    }
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        auto& mc = report.methods[m];
        if (mc.evaluated > 0) {
            const double e = double(mc.evaluated);
            mc.coverage = double(mc.covered) / e;
            mc.mean_width = width_sum[m] / e;
            mc.mean_point = point_sum[m] / e;
        }
    }
    if (records) *records = std::move(recs);
    return report;
}

nlohmann::json to_json(const SimulationConfig& config) {
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : config.methods) methods.push_back(std::string(to_string(m)));
    nlohmann::json j = {
        {"n_per_arm", config.n_per_arm},
        {"control_prevalence", config.control_prevalence},
        {"efficacy", config.efficacy},
        {"truth", {{"se", config.truth.sensitivity}, {"sp", config.truth.specificity}}},
        {"analysis", {{"se", config.analysis.sensitivity}, {"sp", config.analysis.specificity}}},
        {"replicates", config.replicates},
        {"seed", config.seed},
        {"methods", methods},
        {"level", config.level},
        {"grid", config.grid_size},
    };
    j["fixed_total_cases"] =
        config.fixed_total_cases ? nlohmann::json(*config.fixed_total_cases) : nlohmann::json();
    return j;
}

nlohmann::json to_json(const CoverageReport& report) {
    nlohmann::json methods = nlohmann::json::array();
    for (const auto& mc : report.methods) {
        methods.push_back({
            {"method", std::string(to_string(mc.method))},
            {"coverage", mc.coverage},
            {"mean_width", mc.mean_width},
            {"mean_point", mc.mean_point},
            {"evaluated", mc.evaluated},
            {"failures", mc.failures},
            {"failure_rate", double(mc.failures) / double(report.replicates)},
        });
    }
    return {{"replicates", report.replicates},
            {"undrawn", report.undrawn},
            {"config", to_json(report.config)},
            {"methods", methods}};
}

void write_replicate_csv(std::ostream& out, const SimulationConfig& config,
                         const std::vector<ReplicateRecord>& records) {
    out << "replicate,t_v,t_c,method,lower,upper,covered\n";
    for (const auto& rec : records) {
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            const auto& o = rec.outcomes[m];
            out << rec.replicate << ',' << rec.counts.t_v << ',' << rec.counts.t_c << ','
                << to_string(config.methods[m]) << ',';
            if (o.evaluated) {
                out << format_number(o.lower) << ',' << format_number(o.upper) << ','
                    << (o.covered ? 1 : 0);
            } else {
                out << "NA,NA,NA";
            }
            out << '\n';
        }
    }
}

}  // namespace vaxeff
