#pragma once

#include "muntz_lab/bernstein.hpp"
#include "muntz_lab/error.hpp"
#include "muntz_lab/norm.hpp"
#include "muntz_lab/polynomial.hpp"
#include "muntz_lab/random.hpp"
#include "muntz_lab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace muntz {

enum class DefectKind { half_ball, lasq, oh_probe };

inline std::string to_string(DefectKind kind) {
    switch (kind) {
    case DefectKind::half_ball: return "half_ball";
    case DefectKind::lasq: return "lasq";
    case DefectKind::oh_probe: break;
    }
    return "oh_probe";
}

struct DefectReport {
    DefectKind kind = DefectKind::half_ball;
    std::optional<MuntzPolynomial> witness_g;
    std::size_t n = 0;
    double x = 0.0;
    double a = 0.0;
    double c_used = 0.0;
    double threshold_epsilon_star = 0.0;
    std::size_t trials = 0;
    std::size_t refinement_evaluations = 0;
    double extremal_value = 0.0;
    std::size_t violations = 0;
    std::uint64_t seed = 0;

    bool passed() const noexcept { return violations == 0; }
};

/// Probe tolerances.
inline constexpr double kHalfBallTol = 1e-6;
inline constexpr double kLasqTol = 1e-4;
inline constexpr double kProbeNormTol = 1e-10;

namespace detail {

inline void require_probe_span(const MuntzSequence& seq, std::size_t n) {
    require(n >= 1, "geometry probe: N must be at least 1");
    require(n <= seq.positive_count(), "geometry probe: N exceeds the positive exponents");
    const MuntzSequence span = seq.span_prefix(n);
    for (double lambda : span.exponents())
        require(lambda == 0.0 || lambda >= 1.0, "geometry probe: positive exponents must be >= 1");
}

inline NormCertificate certify(const MuntzPolynomial& p, double lo, double hi) {
    return sup_norm_certified(p, lo, hi, scaled_tolerance(p, kProbeNormTol));
}

} // namespace detail

struct SmallBallRadius {
    double a = 0.0;
    double c_used = 0.0;
};

/// a = min(1 / (2c), x).
inline SmallBallRadius small_ball_radius_from_constant(double c_used, double x) {
    detail::require(c_used > 0.0, "small_ball_radius: c must be positive");
    detail::require(x > 0.0 && x < 1.0, "small_ball_radius: x must lie in (0,1)");
    return {std::min(1.0 / (2.0 * c_used), x), c_used};
}

/// Radius with c = safety * (heuristic upper Bernstein estimate on [0,x]).
inline SmallBallRadius small_ball_radius(const MuntzSequence& seq, std::size_t n, double x, double safety = 1.25,
                                         const BernsteinConfig& config = {}) {
    detail::require_probe_span(seq, n);
    detail::require(x > 0.0 && x < 1.0, "small_ball_radius: x must lie in (0,1)");
    detail::require(safety >= 1.0, "small_ball_radius: safety factor must be >= 1");
    const BernsteinEstimate est = bernstein_constant(seq, n, x, config);
    return small_ball_radius_from_constant(safety * est.upper_heuristic, x);
}

/// Samples the constant-free unit sphere and records the largest certified
/// ||f||_[0,a]; every sample must stay within 1/2 + 1e-6.
inline DefectReport half_ball_check(const MuntzSequence& seq, std::size_t n, double a, std::size_t trials,
                                    std::uint64_t seed) {
    detail::require_probe_span(seq, n);
    detail::require(a >= 0.0 && a <= 1.0, "half_ball_check: a must lie in [0,1]");
    detail::require(trials >= 1, "half_ball_check: trials must be positive");
    const MuntzSequence span = seq.span_prefix(n);

    std::vector<double> values(trials);
    parallel_for(trials, [&](std::size_t i) {
        const MuntzPolynomial f = random_unit_polynomial(span, n, derive_seed(seed, i));
        values[i] = detail::certify(f, 0.0, a).upper;
    });

    DefectReport report;
    report.kind = DefectKind::half_ball;
    report.n = n;
    report.a = a;
    report.trials = trials;
    report.seed = seed;
    for (double v : values) {
        report.extremal_value = std::max(report.extremal_value, v);
        if (v > 0.5 + kHalfBallTol) ++report.violations;
    }
    return report;
}

/// epsilon* = a^lambda / 2.
inline double lasq_epsilon_star(double a, double lambda) {
    detail::require(a >= 0.0 && a <= 1.0, "lasq_epsilon_star: a must lie in [0,1]");
    return 0.5 * std::pow(a, lambda);
}

struct LasqThreshold {
    double epsilon_star = 0.0;
    MuntzPolynomial g;
    double a = 0.0;
    double c_used = 0.0;
};

/// Witness g = t^{lambda_first} (the smallest positive exponent of the span)
/// and the threshold a^{lambda_first} / 2 with a from small_ball_radius.
inline LasqThreshold lasq_threshold(const MuntzSequence& seq, std::size_t n, double x, double safety = 1.25,
                                    const BernsteinConfig& config = {}) {
    const SmallBallRadius radius = small_ball_radius(seq, n, x, safety, config);
    const MuntzSequence span = seq.span_prefix(n);
    const std::size_t first = span.first_positive_index();
    LasqThreshold out;
    out.a = radius.a;
    out.c_used = radius.c_used;
    out.g = MuntzPolynomial::monomial(span, first);
    out.epsilon_star = lasq_epsilon_star(radius.a, span[first]);
    return out;
}

/// max(||g + h||, ||g - h||) from certified lower bounds. Swapping h for -h
/// only swaps the two norms.
inline double lasq_objective(const MuntzPolynomial& g, const MuntzPolynomial& h) {
    const double plus = detail::certify(combine(1.0, g, 1.0, h), 0.0, 1.0).lower;
    const double minus = detail::certify(combine(1.0, g, -1.0, h), 0.0, 1.0).lower;
    return std::max(plus, minus);
}

struct LasqOptions {
    double safety = 1.25;
    std::size_t refine_iterations = 200;
    double initial_step = 0.25;
    BernsteinConfig bernstein{};
};

namespace detail {

// Coordinate perturbation descent on the unit sphere: try +-step along each
// coefficient, renormalize, accept the best improvement, halve the step when
// nothing improves. Every evaluated candidate is reported to `visit`.
template <class Objective, class Visit>
MuntzPolynomial sphere_descent(MuntzPolynomial start, double start_value, std::size_t first, std::size_t iterations,
                               double step, Objective&& objective, Visit&& visit) {
    MuntzPolynomial best = std::move(start);
    double best_value = start_value;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::optional<MuntzPolynomial> improved;
        double improved_value = best_value;
        for (std::size_t i = first; i < best.size(); ++i) {
            for (double sign : {1.0, -1.0}) {
                std::vector<double> c = best.coefficients();
                c[i] += sign * step;
                const MuntzPolynomial raw(best.sequence(), std::move(c));
                if (raw.is_zero()) continue;
                const MuntzPolynomial candidate = normalize(raw);
                const double value = objective(candidate);
                visit(value);
                if (value < improved_value) {
                    improved_value = value;
                    improved = candidate;
                }
            }
        }
        if (improved) {
            best = std::move(*improved);
            best_value = improved_value;
        } else {
            step *= 0.5;
        }
    }
    return best;
}

} // namespace detail

/// Falsification attempt against the almost-square characterization: random
/// unit h, then descent from the best one. extremal_value is the smallest
/// max(||g+h||, ||g-h||) seen; any candidate below 1 + epsilon* - 1e-4 counts
/// as a violation.
inline DefectReport lasq_empirical_defect(const MuntzSequence& seq, std::size_t n, double x, std::size_t trials,
                                          std::uint64_t seed, const LasqOptions& options = {}) {
    detail::require(trials >= 1, "lasq_empirical_defect: trials must be positive");
    const LasqThreshold threshold = lasq_threshold(seq, n, x, options.safety, options.bernstein);
    const MuntzSequence span = seq.span_prefix(n);
    const double floor = 1.0 + threshold.epsilon_star - kLasqTol;

    std::vector<MuntzPolynomial> candidates(trials);
    std::vector<double> values(trials);
    parallel_for(trials, [&](std::size_t i) {
        candidates[i] = random_unit_polynomial(span, n, derive_seed(seed, i));
        values[i] = lasq_objective(threshold.g, candidates[i]);
    });

    DefectReport report;
    report.kind = DefectKind::lasq;
    report.witness_g = threshold.g;
    report.n = n;
    report.x = x;
    report.a = threshold.a;
    report.c_used = threshold.c_used;
    report.threshold_epsilon_star = threshold.epsilon_star;
    report.trials = trials;
    report.seed = seed;
    report.extremal_value = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        if (values[i] < floor) ++report.violations;
        if (values[i] < values[best]) best = i;
    }
    report.extremal_value = values[best];

    auto visit = [&](double value) {
        ++report.refinement_evaluations;
        if (value < floor) ++report.violations;
        report.extremal_value = std::min(report.extremal_value, value);
    };
    detail::sphere_descent(candidates[best], values[best], span.first_positive_index(), options.refine_iterations,
                           options.initial_step,
                           [&](const MuntzPolynomial& h) { return lasq_objective(threshold.g, h); }, visit);
    return report;
}

/// Finite-codimension reduction: the same probe on the span of the exponents
/// with index > head (the tail of a head/tail split of the first n positive terms).
inline DefectReport lasq_tail_defect(const MuntzSequence& seq, std::size_t n, std::size_t head, double x,
                                     std::size_t trials, std::uint64_t seed, const LasqOptions& options = {}) {
    detail::require_probe_span(seq, n);
    const MuntzSequence span = seq.span_prefix(n);
    detail::require(head + 1 < span.size(), "lasq_tail_defect: head leaves an empty tail");
    const MuntzSequence tail = span.tail(head);
    return lasq_empirical_defect(tail, tail.positive_count(), x, trials, seed, options);
}

/// min over x in x_points and both signs of ||x +- y||.
inline double oh_objective(std::span<const MuntzPolynomial> x_points, const MuntzPolynomial& y) {
    double value = std::numeric_limits<double>::infinity();
    for (const MuntzPolynomial& x : x_points) {
        value = std::min(value, detail::certify(combine(1.0, x, 1.0, y), 0.0, 1.0).lower);
        value = std::min(value, detail::certify(combine(1.0, x, -1.0, y), 0.0, 1.0).lower);
    }
    return value;
}

/// Exploratory octahedrality probe: largest sampled min_{x, +-} ||x +- y||.
/// Reported only; nothing here is asserted.
inline DefectReport oh_defect_probe(std::span<const MuntzPolynomial> x_points, const MuntzSequence& seq,
                                    std::size_t n, std::size_t trials, std::uint64_t seed) {
    detail::require(!x_points.empty(), "oh_defect_probe: x_points is empty");
    detail::require(trials >= 1, "oh_defect_probe: trials must be positive");
    detail::require(n >= 1 && n <= seq.positive_count(), "oh_defect_probe: N out of range");
    const MuntzSequence span = seq.span_prefix(n);
    for (const MuntzPolynomial& x : x_points) {
        detail::require(x.sequence() == span, "oh_defect_probe: x_points must live on the probed span");
        const NormCertificate c = detail::certify(x, 0.0, 1.0);
        detail::require(c.lower <= 1.0 + 1e-6 && c.upper >= 1.0 - 1e-6, "oh_defect_probe: x_points must be unit-norm");
    }

    std::vector<double> values(trials);
    parallel_for(trials, [&](std::size_t i) {
        values[i] = oh_objective(x_points, random_unit_polynomial(span, n, derive_seed(seed, i)));
    });

    DefectReport report;
    report.kind = DefectKind::oh_probe;
    report.witness_g = x_points.front();
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    report.extremal_value = *std::max_element(values.begin(), values.end());
    return report;
}

} // namespace muntz
