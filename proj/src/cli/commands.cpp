#include "cli/commands.hpp"

#include "cli/curves.hpp"
#include "cli/output.hpp"
#include "vaxeff/classical.hpp"
#include "vaxeff/diagnostics.hpp"
#include "vaxeff/efficacy.hpp"
#include "vaxeff/error.hpp"
#include "vaxeff/format.hpp"
#include "vaxeff/sample_size.hpp"
#include "vaxeff/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

namespace vaxeff::cli {

namespace {

using nlohmann::json;

const std::map<std::string, TrialCounts> kTrialPresets = {
    {"az", {5807, 30, 5829, 101}},
    {"pfizer", {18198, 8, 18325, 162}},
    {"moderna", {14134, 11, 14073, 185}},
};

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : kTrialPresets) names.push_back(name);
    return names;
}

void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json counts_json(const TrialCounts& c) {
    return {{"n_v", c.n_v}, {"t_v", c.t_v}, {"n_c", c.n_c}, {"t_c", c.t_c}};
}

// Counts given on the command line, optionally seeded from a preset.
struct CountsArgs {
    std::string trial;
    std::int64_t tv = -1, nv = -1, tc = -1, nc = -1;

    void add(CLI::App& cmd) {
        cmd.add_option("--trial", trial, "Published trial preset")
            ->check(CLI::IsMember(preset_names()));
        cmd.add_option("--tv", tv, "Cases in the vaccinated arm");
        cmd.add_option("--nv", nv, "Participants in the vaccinated arm");
        cmd.add_option("--tc", tc, "Cases in the control arm");
        cmd.add_option("--nc", nc, "Participants in the control arm");
    }

    bool given() const { return !trial.empty() || tv >= 0 || nv >= 0 || tc >= 0 || nc >= 0; }

    TrialCounts resolve() const {
        TrialCounts c{-1, -1, -1, -1};
        if (!trial.empty()) c = kTrialPresets.at(trial);
        if (tv >= 0) c.t_v = tv;
        if (nv >= 0) c.n_v = nv;
        if (tc >= 0) c.t_c = tc;
        if (nc >= 0) c.n_c = nc;
        if (c.t_v < 0 || c.n_v < 0 || c.t_c < 0 || c.n_c < 0) {
            throw DomainError("counts required: --tv --nv --tc --nc or --trial");
        }
        c.validate();
        return c;
    }
};

std::pair<double, double> parse_range(const std::vector<double>& v, const char* name) {
    if (v.size() != 2) throw DomainError(std::string(name) + " expects lo,hi");
    return {v[0], v[1]};
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    CountsArgs counts;
    double se = 1.0, sp = 1.0;
    double pi = -1.0;
    std::int64_t population = -1;
    std::string method = "all";
    std::string interval = "equal-tailed";
    double level = 0.95;
    std::size_t grid = kDefaultGridSize;
    std::vector<double> se_range, sp_range;
    std::size_t lattice = 21;
};

void add_estimate(CLI::App& app, EstimateArgs& a) {
    auto* cmd = app.add_subcommand("estimate", "Efficacy point estimate and intervals");
    a.counts.add(*cmd);
    cmd->add_option("--se", a.se, "Assay sensitivity")->capture_default_str();
    cmd->add_option("--sp", a.sp, "Assay specificity")->capture_default_str();
    cmd->add_option("--pi", a.pi,
                    "Prevalence; unless --population is given the population is taken as t/pi");
    cmd->add_option("--population", a.population, "Population n used by the conditional model");
    cmd->add_option("--method", a.method)
        ->check(CLI::IsMember({"conditional", "wald", "cramer-rao", "fisher-rr", "all"}))
        ->capture_default_str();
    cmd->add_option("--interval", a.interval, "Credible interval rule")
        ->check(CLI::IsMember({"equal-tailed", "hpd"}))
        ->capture_default_str();
    cmd->add_option("--level", a.level)->capture_default_str();
    cmd->add_option("--grid", a.grid, "Posterior grid points")->capture_default_str();
    cmd->add_option("--se-range", a.se_range, "Marginalize sensitivity over lo,hi")
        ->delimiter(',');
    cmd->add_option("--sp-range", a.sp_range, "Marginalize specificity over lo,hi")
        ->delimiter(',');
    cmd->add_option("--lattice", a.lattice, "Points per axis when marginalizing")
        ->capture_default_str();
}

int run_estimate(const EstimateArgs& a, std::ostream& out) {
    const TrialCounts counts = a.counts.resolve();
    const DiagnosticProfile test{a.se, a.sp};
    test.validate();
    if (a.grid < kMinGridSize) {
        throw DomainError("--grid must be at least " + std::to_string(kMinGridSize));
    }

    PooledCounts data = PooledCounts::from(counts);
    double prevalence = default_prevalence(counts);
    bool hypothetical = false;
    if (a.population >= 0) {
        data.population = a.population;
        prevalence = data.pooled_rate();
        hypothetical = a.population != counts.population();
    }
    if (a.pi >= 0.0) {
        if (!(a.pi > 0.0 && a.pi <= 1.0)) throw DomainError("--pi must lie in (0,1]");
        prevalence = a.pi;
        if (a.population < 0) {
            data.population = static_cast<std::int64_t>(std::llround(double(data.total_cases) / a.pi));
            hypothetical = data.population != counts.population();
        }
    }
    data.validate();

    const bool marginalize = !a.se_range.empty() || !a.sp_range.empty();
    const IntervalRule rule =
        a.interval == "hpd" ? IntervalRule::highest_density : IntervalRule::equal_tailed;

    json inputs = counts_json(counts);
    inputs["se"] = a.se;
    inputs["sp"] = a.sp;
    inputs["pi"] = prevalence;
    inputs["population"] = data.population;
    inputs["level"] = a.level;
    inputs["grid"] = a.grid;
    inputs["interval"] = a.interval;

    json warnings = json::array();
    if (hypothetical) {
        warnings.push_back("conditional and cramer-rao use hypothetical population n=" +
                           std::to_string(data.population));
    }

    std::vector<std::string> methods;
    if (a.method == "all") {
        methods = {"conditional", "cramer-rao", "wald", "fisher-rr"};
    } else {
        methods = {a.method};
    }

    auto run_method = [&](const std::string& name) -> json {
        if (name == "conditional") {
            if (marginalize) {
                const auto se = a.se_range.empty() ? std::pair{a.se, a.se}
                                                   : parse_range(a.se_range, "--se-range");
                const auto sp = a.sp_range.empty() ? std::pair{a.sp, a.sp}
                                                   : parse_range(a.sp_range, "--sp-range");
                const auto post = marginalize_over_diagnostics(
                    counts, prevalence, {se.first, se.second}, {sp.first, sp.second}, a.grid,
                    a.lattice);
                return to_json(credible_interval(post, a.level, rule));
            }
            if (hypothetical) {
                return to_json(credible_interval(posterior(data, prevalence, test, a.grid), a.level, rule));
            }
            return to_json(credible_interval(posterior(counts, prevalence, test, a.grid), a.level, rule));
        }
        if (name == "cramer-rao") {
            if (hypothetical) return to_json(cramer_rao_interval(data, prevalence, test, a.level));
            return to_json(cramer_rao_interval(counts, prevalence, test, a.level));
        }
        if (name == "wald") return to_json(wald_efficacy_interval(counts, a.level));
        return to_json(fisher_rr_interval(counts, a.level));
    };

    json results = json::array();
    for (const auto& name : methods) {
        if (methods.size() == 1) {
            results.push_back(run_method(name));
            continue;
        }
        // With several methods a failing one is reported in place.
        try {
            results.push_back(run_method(name));
        } catch (const std::exception& e) {
            results.push_back({{"method", name}, {"error", e.what()}, {"warnings", json::array()}});
            warnings.push_back(name + ": " + e.what());
        }
    }
    emit_json(out, {{"command", "estimate"},
                    {"method", a.method},
                    {"inputs", inputs},
                    {"results", results},
                    {"warnings", warnings}});
    return kOk;
}

// ------------------------------------------------------------- sample-size

struct SampleSizeArgs {
    std::vector<double> ve, delta, pi;
    double alpha = 0.05, beta = 0.2;
    std::string method = "cramer-rao";
    bool table = false;
    bool exact_z = false;
    std::string output;
};

void add_sample_size(CLI::App& app, SampleSizeArgs& a) {
    auto* cmd = app.add_subcommand("sample-size", "Total trial size for an efficacy margin");
    cmd->add_option("--ve", a.ve, "Anticipated efficacy (comma list with --table)")->delimiter(',');
    cmd->add_option("--delta", a.delta, "Absolute efficacy difference")->delimiter(',');
    cmd->add_option("--pi", a.pi, "Event rate")->delimiter(',');
    cmd->add_option("--alpha", a.alpha)->capture_default_str();
    cmd->add_option("--beta", a.beta)->capture_default_str();
    cmd->add_option("--method", a.method)
        ->check(CLI::IsMember({"wald", "cramer-rao"}))
        ->capture_default_str();
    cmd->add_flag("--table", a.table, "Emit the full grid as CSV");
    cmd->add_flag("--exact-z", a.exact_z, "Use unrounded normal quantiles");
    cmd->add_option("--output", a.output, "Write CSV here instead of stdout");
}

int run_sample_size(SampleSizeArgs a, std::ostream& out) {
    const SizeMethod method = parse_size_method(a.method);
    const ZMode mode = a.exact_z ? ZMode::exact : ZMode::paper_rounded;
    if (a.table) {
        if (a.ve.empty()) a.ve = {0.0, 0.3, 0.6, 0.9};
        if (a.delta.empty()) a.delta = {0.1, 0.2, 0.3, 0.4};
        if (a.pi.empty()) a.pi = {0.5, 0.1, 0.05, 0.01, 0.005, 0.001, 0.0005};
        const auto table =
            sample_size_table(a.ve, a.delta, a.pi, a.alpha, a.beta, method, mode);
        OutputSink sink(out, a.output.empty() ? std::nullopt : std::optional(a.output));
        write_sample_size_csv(sink.stream(), table);
        return kOk;
    }
    if (a.ve.size() != 1 || a.delta.size() != 1 || a.pi.size() != 1) {
        throw DomainError("--ve, --delta and --pi each need exactly one value (or use --table)");
    }
    const SampleSizeSpec spec{a.ve[0], a.delta[0], a.pi[0], a.alpha, a.beta, mode};
    const double raw = method == SizeMethod::wald ? wald_sample_size_raw(spec)
                                                  : cramer_rao_sample_size_raw(spec);
    const std::int64_t n =
        method == SizeMethod::wald ? wald_sample_size(spec) : cramer_rao_sample_size(spec);
    const ZScores z = z_scores(a.alpha, a.beta, mode);
    emit_json(out, {{"command", "sample-size"},
                    {"method", a.method},
                    {"inputs",
                     {{"ve", spec.efficacy},
                      {"delta", spec.delta},
                      {"pi", spec.prevalence},
                      {"alpha", spec.alpha},
                      {"beta", spec.beta},
                      {"z_mode", a.exact_z ? "exact" : "paper-rounded"}}},
                    {"z", {{"two_sided", z.two_sided}, {"power", z.power}}},
                    {"n", n},
                    {"n_raw", raw},
                    {"warnings", json::array()}});
    return kOk;
}

// ------------------------------------------------------------------- curve

struct CurveArgs {
    int figure = 0;
    CountsArgs counts;
    std::string panel = "n";
    std::vector<double> pi_list;
    std::int64_t n = -1;
    std::int64_t t = -1;
    double ve = -1.0;
    double se = -1.0, sp = -1.0;
    std::vector<double> ve_list;
    double delta = 0.1;
    bool exact_z = false;
    std::size_t grid = 2001;
    std::string output;
};

void add_curve(CLI::App& app, CurveArgs& a) {
    auto* cmd = app.add_subcommand("curve", "CSV data for the posterior and sample-size figures");
    cmd->add_option("--figure", a.figure, "1 prevalence sweep, 2 trial posteriors, "
                                          "3 misclassification, 4 sample sizes; omit to dump one posterior")
        ->check(CLI::IsMember({1, 2, 3, 4}));
    a.counts.add(*cmd);
    cmd->add_option("--panel", a.panel, "Figure 1/3 panel")
        ->check(CLI::IsMember({"n", "t", "specificity", "sensitivity"}));
    cmd->add_option("--pi-list", a.pi_list)->delimiter(',');
    cmd->add_option("--n", a.n, "Population (figures 1, 3)");
    cmd->add_option("--t", a.t, "Total cases (figure 1 panel t)");
    cmd->add_option("--ve", a.ve, "True efficacy (figures 1, 3)");
    cmd->add_option("--se", a.se, "Assay sensitivity (figure 3)");
    cmd->add_option("--sp", a.sp, "Assay specificity (figure 3)");
    cmd->add_option("--ve-list", a.ve_list, "Figure 4 efficacies")->delimiter(',');
    cmd->add_option("--delta", a.delta, "Figure 4 margin")->capture_default_str();
    cmd->add_flag("--exact-z", a.exact_z);
    cmd->add_option("--grid", a.grid)->capture_default_str();
    cmd->add_option("--output", a.output);
}

int run_curve(const CurveArgs& a, std::ostream& out) {
    OutputSink sink(out, a.output.empty() ? std::nullopt : std::optional(a.output));
    std::ostream& os = sink.stream();
    switch (a.figure) {
        case 0: {
            if (!a.counts.given()) {
                throw DomainError("curve needs --figure or trial counts");
            }
            const auto counts = a.counts.resolve();
            const DiagnosticProfile test{a.se < 0 ? 1.0 : a.se, a.sp < 0 ? 1.0 : a.sp};
            const auto post = posterior(counts, default_prevalence(counts), test, a.grid);
            os << "alpha,density\n";
            const auto x = post.density().points();
            const auto f = post.density().values();
            for (std::size_t i = 0; i < x.size(); ++i) {
                os << format_number(x[i]) << ',' << format_number(f[i]) << '\n';
            }
            return kOk;
        }
        case 1: {
            PrevalenceSweep sweep;
            sweep.panel = a.panel == "t" ? 't' : 'n';
            sweep.grid = a.grid;
            if (sweep.panel == 't') {
                sweep.efficacy = 0.9;
                sweep.prevalences = {0.5, 0.1, 0.05, 0.01, 0.005};
            } else {
                sweep.efficacy = 0.7;
                sweep.prevalences = {0.1, 0.05, 0.02, 0.01, 0.005};
            }
            if (a.n > 0) sweep.population = a.n;
            if (a.t > 0) sweep.total_cases = a.t;
            if (a.ve >= 0) sweep.efficacy = a.ve;
            if (!a.pi_list.empty()) sweep.prevalences = a.pi_list;
            write_prevalence_sweep(os, sweep);
            return kOk;
        }
        case 2: {
            const TrialCounts counts =
                a.counts.given() ? a.counts.resolve() : kTrialPresets.at("pfizer");
            write_trial_curves(os, counts, a.grid);
            return kOk;
        }
        case 3: {
            MisclassificationSweep sweep;
            sweep.grid = a.grid;
            sweep.test = a.panel == "sensitivity" ? DiagnosticProfile{0.95, 1.0}
                                                  : DiagnosticProfile{1.0, 0.999};
            if (a.se >= 0) sweep.test.sensitivity = a.se;
            if (a.sp >= 0) sweep.test.specificity = a.sp;
            sweep.prevalences = {0.05, 0.02, 0.01, 0.005};
            if (a.n > 0) sweep.population = a.n;
            if (a.ve >= 0) sweep.efficacy = a.ve;
            if (!a.pi_list.empty()) sweep.prevalences = a.pi_list;
            write_misclassification_sweep(os, sweep);
            return kOk;
        }
        case 4: {
            SampleSizeSweep sweep;
            sweep.efficacies = a.ve_list.empty() ? std::vector<double>{0.0, 0.3, 0.6, 0.9} : a.ve_list;
            sweep.delta = a.delta;
            sweep.prevalences = a.pi_list.empty() ? default_sample_size_prevalences() : a.pi_list;
            sweep.exact_z = a.exact_z;
            write_sample_size_sweep(os, sweep);
            return kOk;
        }
        default:
            throw DomainError("unknown figure id");
    }
}

// ---------------------------------------------------------------- coverage

struct CoverageArgs {
    SimulationConfig config;
    std::vector<std::string> methods = {"conditional", "wald"};
    double se = 1.0, sp = 1.0;
    double analysis_se = -1.0, analysis_sp = -1.0;
    std::int64_t fixed_t = -1;
    int threads = 0;
    std::string dump;
};

void add_coverage(CLI::App& app, CoverageArgs& a) {
    auto* cmd = app.add_subcommand("coverage", "Monte Carlo coverage of the interval methods");
    auto& c = a.config;
    cmd->add_option("--n-per-arm", c.n_per_arm)->capture_default_str();
    cmd->add_option("--pi-c", c.control_prevalence, "True control-arm attack rate")
        ->capture_default_str();
    cmd->add_option("--ve", c.efficacy, "True efficacy")->capture_default_str();
    cmd->add_option("--se", a.se, "Sensitivity of the generating assay")->capture_default_str();
    cmd->add_option("--sp", a.sp, "Specificity of the generating assay")->capture_default_str();
    cmd->add_option("--analysis-se", a.analysis_se, "Sensitivity assumed by the analysis (default 1)");
    cmd->add_option("--analysis-sp", a.analysis_sp, "Specificity assumed by the analysis (default 1)");
    cmd->add_option("--replicates", c.replicates)->capture_default_str();
    cmd->add_option("--seed", c.seed)->capture_default_str();
    cmd->add_option("--methods", a.methods)
        ->delimiter(',')
        ->check(CLI::IsMember({"conditional", "wald", "cramer-rao", "fisher-rr"}));
    cmd->add_option("--level", c.level)->capture_default_str();
    cmd->add_option("--grid", c.grid_size)->capture_default_str();
    cmd->add_option("--fixed-t", a.fixed_t, "Redraw each replicate until t_v + t_c equals this");
    cmd->add_option("--threads", a.threads, "OpenMP worker count (0 = runtime default)");
    cmd->add_option("--dump", a.dump, "Per-replicate CSV path");
}

int run_coverage(CoverageArgs a, std::ostream& out) {
    auto& c = a.config;
    c.truth = {a.se, a.sp};
    c.analysis = {a.analysis_se < 0 ? 1.0 : a.analysis_se, a.analysis_sp < 0 ? 1.0 : a.analysis_sp};
    c.methods.clear();
    for (const auto& m : a.methods) c.methods.push_back(parse_method(m));
    if (a.fixed_t >= 0) c.fixed_total_cases = a.fixed_t;
    c.validate();
    if (a.threads > 0) set_threads(a.threads);

    std::vector<ReplicateRecord> records;
    const auto report = coverage_study(c, Exec::parallel, a.dump.empty() ? nullptr : &records);
    if (!a.dump.empty()) {
        OutputSink sink(out, a.dump);
        write_replicate_csv(sink.stream(), c, records);
    }
    json warnings = json::array();
    for (const auto& mc : report.methods) {
        if (mc.failures > 0) {
            warnings.push_back(std::string(to_string(mc.method)) + ": " +
                               std::to_string(mc.failures) +
                               " replicates excluded (method undefined)");
        }
    }
    if (report.undrawn > 0) {
        warnings.push_back(std::to_string(report.undrawn) +
                           " replicates never reached the fixed case total");
    }
    json methods = json::array();
    for (const auto& m : a.methods) methods.push_back(m);
    emit_json(out, {{"command", "coverage"},
                    {"method", methods},
                    {"inputs", to_json(c)},
                    {"report", to_json(report)},
                    {"warnings", warnings}});
    return kOk;
}

// ------------------------------------------------------------- diagnostics

struct DiagnosticsArgs {
    double se = 1.0, sp = 1.0;
    double pi = -1.0;
    bool curve = false;
    std::string output;
};

void add_diagnostics(CLI::App& app, DiagnosticsArgs& a) {
    auto* cmd = app.add_subcommand("diagnostics", "Predictive values and prevalence threshold");
    cmd->add_option("--se", a.se)->required();
    cmd->add_option("--sp", a.sp)->required();
    cmd->add_option("--pi", a.pi, "Prevalence for a point evaluation");
    cmd->add_flag("--curve", a.curve, "Emit pi,ppv,npv CSV over a prevalence sweep");
    cmd->add_option("--output", a.output);
}

int run_diagnostics(const DiagnosticsArgs& a, std::ostream& out) {
    const DiagnosticProfile test{a.se, a.sp};
    const double threshold = prevalence_threshold(test);
    if (a.curve) {
        OutputSink sink(out, a.output.empty() ? std::nullopt : std::optional(a.output));
        std::ostream& os = sink.stream();
        os << "pi,ppv,npv\n";
        for (int i = 1; i < 1000; ++i) {
            const double pi = i / 1000.0;
            os << format_number(pi) << ',' << format_number(ppv(pi, test)) << ','
               << format_number(npv(pi, test)) << '\n';
        }
        return kOk;
    }
    json result = {{"command", "diagnostics"},
                   {"method", "predictive-values"},
                   {"inputs", {{"se", a.se}, {"sp", a.sp}}},
                   {"prevalence_threshold", threshold},
                   {"warnings", json::array()}};
    if (a.pi >= 0.0) {
        result["inputs"]["pi"] = a.pi;
        result["ppv"] = ppv(a.pi, test);
        result["npv"] = npv(a.pi, test);
    }
    emit_json(out, result);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vaccine efficacy under the conditional-binomial model", "vaxeff"};
    app.require_subcommand(1);

    EstimateArgs estimate;
    SampleSizeArgs sample_size;
    CurveArgs curve;
    CoverageArgs coverage;
    DiagnosticsArgs diagnostics;
    add_estimate(app, estimate);
    add_sample_size(app, sample_size);
    add_curve(app, curve);
    add_coverage(app, coverage);
    add_diagnostics(app, diagnostics);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error[usage]: " << e.what() << '\n';
        return kDomain;
    }

    const std::map<std::string, std::function<int()>> handlers = {
        {"estimate", [&] { return run_estimate(estimate, out); }},
        {"sample-size", [&] { return run_sample_size(sample_size, out); }},
        {"curve", [&] { return run_curve(curve, out); }},
        {"coverage", [&] { return run_coverage(coverage, out); }},
        {"diagnostics", [&] { return run_diagnostics(diagnostics, out); }},
    };
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return handlers.at(name)();
    } catch (const DegenerateDataError& e) {
        err << "error[degenerate]: " << e.what() << '\n';
        return kDegenerate;
    } catch (const DomainError& e) {
        err << "error[domain]: " << e.what() << '\n';
        return kDomain;
    }
}

}  // namespace vaxeff::cli
