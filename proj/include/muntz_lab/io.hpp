#pragma once

// JSON (nlohmann) and CSV forms of every artifact the pipelines produce.
//
// Sequence / polynomial shape:
//   {"exponents": [1, 2, 4], "family": "geometric", "ratio": 2,
//    "includes_constant": false, "coefficients": [...]}
// "ratio" is present for geometric families, "power" for power families.

#include "muntz_lab/bernstein.hpp"
#include "muntz_lab/embedding.hpp"
#include "muntz_lab/geometry.hpp"
#include "muntz_lab/norm.hpp"
#include "muntz_lab/polynomial.hpp"
#include "muntz_lab/sequence.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace muntz {

using json = nlohmann::json;

namespace detail {

inline Family family_from_json(const json& j) {
    const std::string kind = j.value("family", std::string("explicit"));
    if (kind == "geometric") return Family::geometric(j.at("ratio").get<double>());
    if (kind == "power") return Family::power(j.at("power").get<double>());
    if (kind == "explicit") return Family::explicit_list();
    throw PreconditionError("unknown family '" + kind + "'");
}

} // namespace detail

inline void to_json(json& j, const MuntzSequence& seq) {
    j = json{{"exponents", seq.exponents()}, {"family", to_string(seq.family().kind)}};
    if (seq.family().kind == FamilyKind::geometric) j["ratio"] = seq.family().parameter;
    if (seq.family().kind == FamilyKind::power) j["power"] = seq.family().parameter;
    j["includes_constant"] = seq.includes_constant();
}

inline void from_json(const json& j, MuntzSequence& seq) {
    const auto exponents = j.at("exponents").get<std::vector<double>>();
    seq = validate_sequence(exponents, detail::family_from_json(j));
}

inline void to_json(json& j, const MuntzPolynomial& p) {
    to_json(j, p.sequence());
    j["coefficients"] = p.coefficients();
}

inline void from_json(const json& j, MuntzPolynomial& p) {
    MuntzSequence seq;
    from_json(j, seq);
    p = MuntzPolynomial(seq, j.at("coefficients").get<std::vector<double>>());
}

inline void to_json(json& j, const NormCertificate& c) {
    j = json{{"interval", {c.lo, c.hi}}, {"lower", c.lower},          {"upper", c.upper},
             {"witness_t", c.witness_t}, {"grid_step", c.grid_step}, {"modulus_bound", c.modulus_bound},
             {"evaluations", c.evaluations}};
}

inline void from_json(const json& j, NormCertificate& c) {
    c.lo = j.at("interval").at(0).get<double>();
    c.hi = j.at("interval").at(1).get<double>();
    j.at("lower").get_to(c.lower);
    j.at("upper").get_to(c.upper);
    j.at("witness_t").get_to(c.witness_t);
    j.at("grid_step").get_to(c.grid_step);
    j.at("modulus_bound").get_to(c.modulus_bound);
    j.at("evaluations").get_to(c.evaluations);
}

inline void to_json(json& j, const ConvergenceReport& r) {
    j = json{{"partial_sum", r.partial_sum}, {"verdict", to_string(r.verdict)}, {"rationale", r.rationale}};
}

inline void to_json(json& j, const BernsteinEstimate& e) {
    j = json{{"sequence", e.sequence},
             {"n", e.n},
             {"a", e.a},
             {"lower", e.lower},
             {"upper_heuristic", e.upper_heuristic},
             {"lp_max", e.lp_max},
             {"witness", e.witness},
             {"witness_t_star", e.witness_t_star},
             {"constraint_grid_size", e.constraint_grid_size},
             {"objective_grid_size", e.objective_grid_size},
             {"rounds", e.rounds},
             {"converged", e.converged}};
}

inline void from_json(const json& j, BernsteinEstimate& e) {
    j.at("sequence").get_to(e.sequence);
    j.at("n").get_to(e.n);
    j.at("a").get_to(e.a);
    j.at("lower").get_to(e.lower);
    j.at("upper_heuristic").get_to(e.upper_heuristic);
    j.at("lp_max").get_to(e.lp_max);
    j.at("witness").get_to(e.witness);
    j.at("witness_t_star").get_to(e.witness_t_star);
    j.at("constraint_grid_size").get_to(e.constraint_grid_size);
    j.at("objective_grid_size").get_to(e.objective_grid_size);
    j.at("rounds").get_to(e.rounds);
    j.at("converged").get_to(e.converged);
}

inline void to_json(json& j, const SamplingGrid& g) {
    j = json{{"epsilon", g.epsilon},         {"anchors", g.anchors},         {"constants", g.constants},
             {"points", g.points},           {"band_starts", g.band_starts}, {"includes_limit_point", g.includes_limit_point}};
}

inline void from_json(const json& j, SamplingGrid& g) {
    j.at("epsilon").get_to(g.epsilon);
    j.at("anchors").get_to(g.anchors);
    j.at("constants").get_to(g.constants);
    j.at("points").get_to(g.points);
    j.at("band_starts").get_to(g.band_starts);
    j.at("includes_limit_point").get_to(g.includes_limit_point);
}

inline void to_json(json& j, const EmbeddingReport& r) {
    j = json{{"trials", r.trials},
             {"epsilon", r.epsilon},
             {"min_ratio", r.min_ratio},
             {"max_ratio", r.max_ratio},
             {"violations", r.violations},
             {"min_band_ratio", r.min_band_ratio},
             {"band_violations", r.band_violations},
             {"n", r.n},
             {"anchors", r.anchors},
             {"grid_points", r.grid_points},
             {"constants", r.constants},
             {"seed", r.seed},
             {"passed", r.passed()}};
}

inline void from_json(const json& j, EmbeddingReport& r) {
    j.at("trials").get_to(r.trials);
    j.at("epsilon").get_to(r.epsilon);
    j.at("min_ratio").get_to(r.min_ratio);
    j.at("max_ratio").get_to(r.max_ratio);
    j.at("violations").get_to(r.violations);
    j.at("min_band_ratio").get_to(r.min_band_ratio);
    j.at("band_violations").get_to(r.band_violations);
    j.at("n").get_to(r.n);
    j.at("anchors").get_to(r.anchors);
    j.at("grid_points").get_to(r.grid_points);
    j.at("constants").get_to(r.constants);
    j.at("seed").get_to(r.seed);
}

inline void to_json(json& j, const DefectReport& r) {
    j = json{{"kind", to_string(r.kind)},
             {"n", r.n},
             {"x", r.x},
             {"a", r.a},
             {"c_used", r.c_used},
             {"epsilon_star", r.threshold_epsilon_star},
             {"trials", r.trials},
             {"refinement_evaluations", r.refinement_evaluations},
             {"extremal_value", r.extremal_value},
             {"violations", r.violations},
             {"seed", r.seed},
             {"passed", r.passed()}};
    j["witness_g"] = r.witness_g ? json(*r.witness_g) : json(nullptr);
}

inline void from_json(const json& j, DefectReport& r) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "half_ball")
        r.kind = DefectKind::half_ball;
    else if (kind == "lasq")
        r.kind = DefectKind::lasq;
    else if (kind == "oh_probe")
        r.kind = DefectKind::oh_probe;
    else
        throw PreconditionError("unknown defect kind '" + kind + "'");
    j.at("n").get_to(r.n);
    j.at("x").get_to(r.x);
    j.at("a").get_to(r.a);
    j.at("c_used").get_to(r.c_used);
    j.at("epsilon_star").get_to(r.threshold_epsilon_star);
    j.at("trials").get_to(r.trials);
    j.at("refinement_evaluations").get_to(r.refinement_evaluations);
    j.at("extremal_value").get_to(r.extremal_value);
    j.at("violations").get_to(r.violations);
    j.at("seed").get_to(r.seed);
    if (j.at("witness_g").is_null())
        r.witness_g.reset();
    else
        r.witness_g = j.at("witness_g").get<MuntzPolynomial>();
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace csv {

/// Shortest round-trip formatting is not needed here; 17 significant digits
/// make every row reproducible bit-for-bit.
inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string bernstein_header() { return "N,a,lower,upper_heuristic,converged"; }

inline std::string row(const BernsteinEstimate& e) {
    return std::to_string(e.n) + "," + num(e.a) + "," + num(e.lower) + "," + num(e.upper_heuristic) + "," +
           (e.converged ? "true" : "false");
}

inline std::string embedding_header() {
    return "trials,epsilon,min_ratio,max_ratio,violations,min_band_ratio,band_violations,N,anchors,grid_points,seed";
}

inline std::string row(const EmbeddingReport& r) {
    return std::to_string(r.trials) + "," + num(r.epsilon) + "," + num(r.min_ratio) + "," + num(r.max_ratio) + "," +
           std::to_string(r.violations) + "," + num(r.min_band_ratio) + "," + std::to_string(r.band_violations) + "," +
           std::to_string(r.n) + "," + std::to_string(r.anchors) + "," + std::to_string(r.grid_points) + "," +
           std::to_string(r.seed);
}

inline std::string defect_header() { return "kind,N,x,a,epsilon_star,extremal_value,violations,trials,seed"; }

inline std::string row(const DefectReport& r) {
    return to_string(r.kind) + "," + std::to_string(r.n) + "," + num(r.x) + "," + num(r.a) + "," +
           num(r.threshold_epsilon_star) + "," + num(r.extremal_value) + "," + std::to_string(r.violations) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.seed);
}

/// index,s,f(s) per grid point; the limit coordinate is written with s = 1.
inline std::string embedded_sequence(const MuntzPolynomial& f, const SamplingGrid& grid) {
    const std::vector<double> coords = apply_embedding(f, grid);
    std::ostringstream out;
    out << "index,s,f_s\n";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const double s = i < grid.points.size() ? grid.points[i] : 1.0;
        out << i << "," << num(s) << "," << num(coords[i]) << "\n";
    }
    return out.str();
}

inline std::string grid_points(const SamplingGrid& grid) {
    std::ostringstream out;
    out << "index,s\n";
    for (std::size_t i = 0; i < grid.points.size(); ++i) out << i << "," << num(grid.points[i]) << "\n";
    return out.str();
}

} // namespace csv
} // namespace muntz
