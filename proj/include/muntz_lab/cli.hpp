#pragma once

// Command-line front end. All options live on the top-level app and fall
// through from the subcommands, so a flat key=value --config file can set any
// of them. Flags given on the command line override file values.
//
// Exit codes: 0 pass, 1 an asserted invariant failed, 2 usage error,
// 3 certification or estimation failure.

#include "muntz_lab/bernstein.hpp"
#include "muntz_lab/embedding.hpp"
#include "muntz_lab/error.hpp"
#include "muntz_lab/geometry.hpp"
#include "muntz_lab/io.hpp"
#include "muntz_lab/norm.hpp"
#include "muntz_lab/polynomial.hpp"
#include "muntz_lab/sequence.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace muntz::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2, kFailure = 3 };

struct RunConfig {
    std::vector<double> seq;
    std::string family;
    std::optional<std::size_t> n;
    bool constant = false;
    double eps = 0.1;
    double x = 0.9;
    std::optional<double> a;
    std::size_t m = 8;
    double safety = 1.25;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool json = false;
    std::string csv;
    std::vector<double> coef;
    std::vector<double> anchors;
    std::vector<double> constants;
    double lo = 0.0;
    double hi = 1.0;
    std::optional<std::size_t> tail;
};

namespace detail {

inline Family parse_family(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (kind == "explicit") return Family::explicit_list();
    muntz::detail::require(colon != std::string::npos, "--family " + kind + " needs a parameter, e.g. " + kind + ":2");
    double parameter = 0.0;
    try {
        parameter = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw PreconditionError("--family: cannot read parameter in '" + text + "'");
    }
    if (kind == "geometric") {
        muntz::detail::require(parameter > 1.0, "--family geometric:r needs r > 1");
        return Family::geometric(parameter);
    }
    if (kind == "power") {
        muntz::detail::require(parameter > 0.0, "--family power:s needs s > 0");
        return Family::power(parameter);
    }
    throw PreconditionError("--family must be explicit, power:s or geometric:r");
}

/// The stored sequence and the number N of positive exponents to use.
inline std::pair<MuntzSequence, std::size_t> resolve_sequence(const RunConfig& cfg, std::size_t default_n) {
    const bool have_seq = !cfg.seq.empty();
    const std::string family_text = cfg.family.empty() ? (have_seq ? "explicit" : "geometric:2") : cfg.family;
    const Family family = parse_family(family_text);
    if (have_seq) {
        MuntzSequence seq = validate_sequence(cfg.seq, family);
        const std::size_t n = cfg.n.value_or(seq.positive_count());
        muntz::detail::require(n <= seq.positive_count(), "--n exceeds the positive exponents of --seq");
        return {std::move(seq), n};
    }
    muntz::detail::require(family.kind != FamilyKind::explicit_list, "--family explicit needs --seq");
    const std::size_t n = cfg.n.value_or(default_n);
    muntz::detail::require(n >= 1, "--n must be at least 1");
    return {make_family_sequence(family, n, cfg.constant), n};
}

inline std::uint64_t require_seed(const RunConfig& cfg) {
    muntz::detail::require(cfg.seed.has_value(), "--seed is required for randomized commands");
    return *cfg.seed;
}

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_csv(const RunConfig& cfg, std::ostream& out, const std::string& body) {
    if (cfg.csv.empty()) return;
    if (cfg.csv == "-") {
        out << body;
        return;
    }
    std::ofstream file(cfg.csv, std::ios::binary);
    if (!file) throw PreconditionError("--csv: cannot open '" + cfg.csv + "' for writing");
    file << body;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline int cmd_bernstein(const RunConfig& cfg, std::ostream& out) {
    const auto [seq, n] = resolve_sequence(cfg, 5);
    BernsteinConfig config;
    if (cfg.tol) config.rel_gap = *cfg.tol;
    const BernsteinEstimate est = bernstein_constant(seq, n, cfg.a.value_or(0.5), config);
    if (cfg.json)
        out << json(est).dump(2) << "\n";
    else
        out << "N=" << est.n << "\na=" << num(est.a) << "\nlower=" << num(est.lower)
            << "\nupper_heuristic=" << num(est.upper_heuristic) << "\nconverged=" << (est.converged ? "true" : "false")
            << "\n";
    write_csv(cfg, out, csv::bernstein_header() + "\n" + csv::row(est) + "\n");
    return kPass;
}

inline int cmd_grid(const RunConfig& cfg, std::ostream& out) {
    SamplingGrid grid;
    const std::vector<double> anchors = cfg.anchors.empty() ? default_anchors(cfg.m) : cfg.anchors;
    std::optional<MuntzSequence> seq;
    if (!cfg.constants.empty()) {
        grid = build_grid(cfg.eps, anchors, cfg.constants);
    } else {
        auto [s, n] = resolve_sequence(cfg, 5);
        muntz::detail::require(cfg.eps > 0.0 && cfg.eps < 1.0, "--eps must lie in (0,1)");
        grid = build_grid(s, n, cfg.eps, anchors, cfg.safety);
        seq = s.span_prefix(n);
    }
    const std::size_t bad = first_spacing_violation(grid);
    const bool clean = bad == grid.points.size();
    if (cfg.json)
        out << json(grid).dump(2) << "\n";
    else
        out << "points=" << grid.points.size() << "\nbands=" << grid.constants.size()
            << "\nspacing=" << (clean ? "ok" : "violated at index " + std::to_string(bad)) << "\n";
    if (!cfg.coef.empty()) {
        muntz::detail::require(seq.has_value() || !cfg.seq.empty(), "--coef with --constants needs --seq");
        const MuntzSequence base = seq ? *seq : validate_sequence(cfg.seq, parse_family(cfg.family.empty() ? "explicit" : cfg.family));
        write_csv(cfg, out, csv::embedded_sequence(MuntzPolynomial(base, cfg.coef), grid));
    } else {
        write_csv(cfg, out, csv::grid_points(grid));
    }
    return clean ? kPass : kViolation;
}

inline int cmd_verify_embedding(const RunConfig& cfg, std::ostream& out) {
    const std::uint64_t seed = require_seed(cfg);
    muntz::detail::require(cfg.eps > 0.0 && cfg.eps < 1.0, "--eps must lie in (0,1)");
    const auto [seq, n] = resolve_sequence(cfg, 5);
    SandwichOptions options;
    options.anchors = cfg.m;
    options.safety = cfg.safety;
    if (cfg.tol) options.tolerance = *cfg.tol;
    const EmbeddingReport report = verify_sandwich(seq, n, cfg.eps, cfg.trials.value_or(1000), seed, options);
    if (cfg.json)
        out << json(report).dump(2) << "\n";
    else
        out << "trials=" << report.trials << "\nmin_ratio=" << num(report.min_ratio)
            << "\nmax_ratio=" << num(report.max_ratio) << "\nviolations=" << report.violations
            << "\nband_violations=" << report.band_violations << "\ngrid_points=" << report.grid_points << "\n";
    write_csv(cfg, out, csv::embedding_header() + "\n" + csv::row(report) + "\n");
    return report.passed() ? kPass : kViolation;
}

inline void print_defect(const RunConfig& cfg, const DefectReport& report, std::ostream& out) {
    if (cfg.json)
        out << json(report).dump(2) << "\n";
    else
        out << "kind=" << to_string(report.kind) << "\nN=" << report.n << "\na=" << num(report.a)
            << "\nepsilon_star=" << num(report.threshold_epsilon_star) << "\nextremal_value=" << num(report.extremal_value)
            << "\nviolations=" << report.violations << "\ntrials=" << report.trials << "\n";
    write_csv(cfg, out, csv::defect_header() + "\n" + csv::row(report) + "\n");
}

inline int cmd_lasq(const RunConfig& cfg, std::ostream& out) {
    const std::uint64_t seed = require_seed(cfg);
    const std::size_t trials = cfg.trials.value_or(10000);
    muntz::detail::require(trials >= 1, "--trials must be positive");
    const auto [seq, n] = resolve_sequence(cfg, 3);
    LasqOptions options;
    options.safety = cfg.safety;
    const DefectReport report = cfg.tail ? lasq_tail_defect(seq, n, *cfg.tail, cfg.x, trials, seed, options)
                                         : lasq_empirical_defect(seq, n, cfg.x, trials, seed, options);
    print_defect(cfg, report, out);
    return report.passed() ? kPass : kViolation;
}

inline int cmd_half_ball(const RunConfig& cfg, std::ostream& out) {
    const std::uint64_t seed = require_seed(cfg);
    const std::size_t trials = cfg.trials.value_or(10000);
    muntz::detail::require(trials >= 1, "--trials must be positive");
    const auto [seq, n] = resolve_sequence(cfg, 3);
    SmallBallRadius radius;
    if (cfg.a)
        radius.a = *cfg.a;
    else
        radius = small_ball_radius(seq, n, cfg.x, cfg.safety);
    DefectReport report = half_ball_check(seq, n, radius.a, trials, seed);
    report.x = cfg.a ? 0.0 : cfg.x;
    report.c_used = radius.c_used;
    print_defect(cfg, report, out);
    return report.passed() ? kPass : kViolation;
}

inline int cmd_oh_probe(const RunConfig& cfg, std::ostream& out) {
    const std::uint64_t seed = require_seed(cfg);
    const std::size_t trials = cfg.trials.value_or(10000);
    muntz::detail::require(trials >= 1, "--trials must be positive");
    const auto [seq, n] = resolve_sequence(cfg, 3);
    const MuntzSequence span = seq.span_prefix(n);
    MuntzPolynomial x_point = cfg.coef.empty() ? MuntzPolynomial::monomial(span, span.first_positive_index())
                                               : normalize(MuntzPolynomial(span, cfg.coef));
    const std::vector<MuntzPolynomial> x_points{x_point};
    const DefectReport report = oh_defect_probe(x_points, seq, n, trials, seed);
    print_defect(cfg, report, out);
    return kPass;
}

inline int cmd_norm(const RunConfig& cfg, std::ostream& out) {
    muntz::detail::require(!cfg.coef.empty(), "norm needs --coef");
    const auto [seq, n] = resolve_sequence(cfg, cfg.coef.size());
    const NormCertificate cert = sup_norm_certified(MuntzPolynomial(seq, cfg.coef), cfg.lo, cfg.hi, cfg.tol.value_or(1e-9));
    if (cfg.json)
        out << json(cert).dump(2) << "\n";
    else
        out << "lower=" << num(cert.lower) << "\nupper=" << num(cert.upper) << "\nwitness_t=" << num(cert.witness_t)
            << "\n";
    (void)n;
    return kPass;
}

inline int cmd_muntz_check(const RunConfig& cfg, std::ostream& out) {
    const auto [seq, n] = resolve_sequence(cfg, 5);
    const ConvergenceReport report = check_muntz_condition(seq.span_prefix(n));
    if (cfg.json)
        out << json(report).dump(2) << "\n";
    else
        out << "partial_sum=" << num(report.partial_sum) << "\nverdict=" << to_string(report.verdict)
            << "\nrationale=" << report.rationale << "\n";
    return kPass;
}

} // namespace detail

/// Parses argv and runs one subcommand; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical laboratory for Muntz polynomial systems", "muntz_lab"};
    app.set_config("--config", "", "Flat key=value file; command-line flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t tail = 0;
    double a = 0.0;
    double tol = 0.0;

    app.add_option("--seq", cfg.seq, "Exponent list, e.g. 0,1,2")->delimiter(',');
    app.add_option("--family", cfg.family, "explicit | power:s | geometric:r (default geometric:2)");
    auto* n_opt = app.add_option("--n", n, "Number of positive exponents used");
    app.add_flag("--constant", cfg.constant, "Prepend the constant exponent 0 to a generated family");
    app.add_option("--eps", cfg.eps, "Embedding tolerance epsilon in (0,1)")->capture_default_str();
    app.add_option("--x", cfg.x, "Right end of the Bernstein interval for the probes")->capture_default_str();
    auto* a_opt = app.add_option("--a", a, "Interval end a");
    app.add_option("--m", cfg.m, "Number of anchors a_i = 1 - 2^-i")->capture_default_str();
    app.add_option("--anchors", cfg.anchors, "Explicit anchor list")->delimiter(',');
    app.add_option("--constants", cfg.constants, "Explicit K list (grid only)")->delimiter(',');
    app.add_option("--safety", cfg.safety, "Safety factor on Bernstein estimates")->capture_default_str();
    auto* trials_opt = app.add_option("--trials", trials, "Number of random samples");
    auto* seed_opt = app.add_option("--seed", seed, "Master seed (required for randomized commands)");
    auto* tol_opt = app.add_option("--tol", tol, "Tolerance override");
    app.add_flag("--json", cfg.json, "Print the report as JSON");
    app.add_option("--csv", cfg.csv, "Write CSV to this path ('-' for standard output)");
    app.add_option("--coef", cfg.coef, "Coefficient list aligned with the exponents")->delimiter(',');
    app.add_option("--lo", cfg.lo, "Left end of the norm interval")->capture_default_str();
    app.add_option("--hi", cfg.hi, "Right end of the norm interval")->capture_default_str();
    auto* tail_opt = app.add_option("--tail", tail, "LASQ probe on the tail beyond this coefficient index");

    using Command = std::function<int(const RunConfig&, std::ostream&)>;
    const std::vector<std::tuple<std::string, std::string, Command>> commands{
        {"bernstein", "Two-sided Bernstein constant estimate on [0,a]", detail::cmd_bernstein},
        {"grid", "Sampling grid for the embedding", detail::cmd_grid},
        {"verify-embedding", "Empirical sandwich check of the sampling embedding", detail::cmd_verify_embedding},
        {"lasq", "Falsification search against local almost squareness", detail::cmd_lasq},
        {"half-ball", "Half-ball bound on [0,a]", detail::cmd_half_ball},
        {"oh-probe", "Exploratory octahedrality probe (reported only)", detail::cmd_oh_probe},
        {"norm", "Certified sup-norm of a polynomial", detail::cmd_norm},
        {"muntz-check", "Partial sum of 1/lambda and convergence verdict", detail::cmd_muntz_check},
    };
    for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    if (n_opt->count() > 0) cfg.n = n;
    if (a_opt->count() > 0) cfg.a = a;
    if (trials_opt->count() > 0) cfg.trials = trials;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (tol_opt->count() > 0) cfg.tol = tol;
    if (tail_opt->count() > 0) cfg.tail = tail;

    try {
        for (const auto& [name, help, fn] : commands)
            if (app.got_subcommand(name)) return fn(cfg, out);
    } catch (const PreconditionError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

} // namespace muntz::cli
