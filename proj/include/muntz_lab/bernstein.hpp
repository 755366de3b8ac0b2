#pragma once

#include "muntz_lab/error.hpp"
#include "muntz_lab/norm.hpp"
#include "muntz_lab/polynomial.hpp"
#include "muntz_lab/random.hpp"
#include "muntz_lab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace muntz {

/// Sum |a_i| lambda_i, an upper bound for ||p'||_[0,1] when every positive
/// exponent is >= 1.
inline double trivial_derivative_bound(const MuntzPolynomial& p) {
    double bound = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double lambda = p.exponent(i);
        if (lambda > 0.0 && lambda < 1.0 && p.coefficients()[i] != 0.0)
            throw PreconditionError("trivial_derivative_bound: exponent " + std::to_string(lambda) +
                                    " lies in (0,1), derivative unbounded");
        bound += std::abs(p.coefficients()[i]) * lambda;
    }
    return bound;
}

struct LpStepResult {
    lp::Status status = lp::Status::infeasible;
    double objective = 0.0;
    std::vector<double> coefficients; // aligned with the span's exponents
};

/// maximize p'(t_star) over p in span_prefix(n) subject to |p(t_j)| <= 1 on the
/// constraint grid.
///
/// The simplex runs on the dual, which has one row per coefficient instead of
/// one per grid point:
///     minimize sum_j (u_j + v_j)  s.t.  sum_j (u_j - v_j) t_j^lambda_i = g_i,  u, v >= 0,
/// with g_i = lambda_i t_star^(lambda_i - 1). Both optima coincide and the
/// coefficients are the simplex multipliers of the equality rows. An
/// infeasible dual means the sampled constraints leave p'(t_star) unbounded.
inline LpStepResult bernstein_lp_step(const MuntzSequence& seq, std::size_t n, double a, double t_star,
                                      std::span<const double> constraint_grid) {
    detail::require(t_star >= 0.0 && t_star <= a, "bernstein_lp_step: t_star must lie in [0, a]");
    detail::require(!constraint_grid.empty(), "bernstein_lp_step: empty constraint grid");
    for (double t : constraint_grid)
        detail::require(t >= 0.0 && t <= 1.0, "bernstein_lp_step: constraint point outside [0,1]");
    const MuntzSequence span = seq.span_prefix(n);
    const std::size_t k = span.size();
    const std::size_t m = constraint_grid.size();

    std::vector<double> gradient(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const double lambda = span[i];
        if (lambda == 0.0) continue;
        gradient[i] = lambda * detail::PowerTerm(lambda - 1.0)(t_star);
        detail::require(std::isfinite(gradient[i]), "bernstein_lp_step: derivative at t_star is unbounded");
    }

    std::vector<std::vector<double>> rows(k, std::vector<double>(2 * m));
    for (std::size_t i = 0; i < k; ++i) {
        const detail::PowerTerm term(span[i]);
        for (std::size_t j = 0; j < m; ++j) {
            const double v = term(constraint_grid[j]);
            rows[i][j] = v;
            rows[i][m + j] = -v;
        }
    }

    const lp::Solution sol = lp::DenseSimplex(std::move(rows), gradient, std::vector<double>(2 * m, 1.0)).solve();
    LpStepResult out;
    switch (sol.status) {
    case lp::Status::optimal: out.status = lp::Status::optimal; break;
    case lp::Status::infeasible: out.status = lp::Status::unbounded; return out;
    case lp::Status::unbounded: out.status = lp::Status::infeasible; return out; // a = 0 is always primal feasible
    case lp::Status::iteration_limit: out.status = lp::Status::iteration_limit; return out;
    }
    out.coefficients = sol.y;
    for (std::size_t i = 0; i < k; ++i) out.objective += gradient[i] * out.coefficients[i];
    return out;
}

/// Chebyshev-Lobatto points mapped to [0,1]; includes both endpoints.
inline std::vector<double> chebyshev_grid(std::size_t count) {
    detail::require(count >= 2, "chebyshev_grid: need at least two points");
    std::vector<double> pts(count);
    for (std::size_t j = 0; j < count; ++j)
        pts[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(count - 1)));
    pts.front() = 0.0;
    pts.back() = 1.0;
    return pts;
}

/// Points a*sin(pi k / (2(K-1))) on [0,a], clustered towards a; includes 0 and a.
inline std::vector<double> objective_grid(std::size_t count, double a) {
    if (count <= 1) return {a};
    std::vector<double> pts(count);
    for (std::size_t k = 0; k < count; ++k)
        pts[k] = a * std::sin(0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count - 1));
    pts.front() = 0.0;
    pts.back() = a;
    return pts;
}

struct BernsteinConfig {
    std::size_t constraint_points = 64;
    std::size_t objective_points = 16;
    std::size_t max_constraint_points = 4096;
    std::size_t max_objective_points = 64;
    std::size_t max_rounds = 7;
    double rel_gap = 1e-3;
    double norm_tol = 1e-11; // absolute, see scaled_tolerance
};

struct BernsteinEstimate {
    MuntzSequence sequence; // the span actually used: constant (if present) + n positive exponents
    std::size_t n = 0;
    double a = 0.0;
    double lower = 0.0;           // rigorous: ||w'||_[0,a].lower / ||w||_[0,1].upper
    double upper_heuristic = 0.0; // max(largest LP objective, lower)
    double lp_max = 0.0;          // largest LP objective of the final sweep
    double witness_t_star = 0.0;
    MuntzPolynomial witness;
    std::size_t constraint_grid_size = 0;
    std::size_t objective_grid_size = 0;
    std::size_t rounds = 0;
    bool converged = false;
};

/// Tolerance for certifying p: `base`, raised to 4x the evaluation roundoff
/// slack of sup_norm_certified when the coefficients are large.
inline double scaled_tolerance(const MuntzPolynomial& p, double base) {
    const double roundoff =
        8.0 * static_cast<double>(p.size() + 2) * std::numeric_limits<double>::epsilon() * p.coefficient_l1();
    return std::max(base, 4.0 * roundoff);
}

struct WitnessRatio {
    double ratio = 0.0;
    double derivative_argmax = 0.0; // where |w'| attains its sampled max on [0,a]
};

/// ||w'||_[0,a].lower / ||w||_[0,1].upper, a lower bound for the Bernstein
/// constant on [0,a] that holds for any non-zero w in the span.
inline WitnessRatio witness_ratio(const MuntzPolynomial& w, double a, double norm_tol) {
    const MuntzPolynomial dw = derivative(w).polynomial();
    const NormCertificate top = sup_norm_certified(dw, 0.0, a, scaled_tolerance(dw, norm_tol));
    const NormCertificate bottom = sup_norm_certified(w, 0.0, 1.0, scaled_tolerance(w, norm_tol));
    return {top.lower / bottom.upper, top.witness_t};
}

namespace detail {

inline void require_bernstein_span(const MuntzSequence& seq, std::size_t n, double a) {
    require(n >= 1, "bernstein_constant: N must be at least 1");
    require(n <= seq.positive_count(), "bernstein_constant: N exceeds the positive exponents");
    require(a > 0.0 && a < 1.0, "bernstein_constant: a must lie in (0,1)");
    const MuntzSequence span = seq.span_prefix(n);
    for (double lambda : span.exponents())
        require(lambda == 0.0 || lambda >= 1.0, "bernstein_constant: positive exponents must be >= 1");
}

} // namespace detail

/// Two-sided estimate of sup { ||p'||_[0,a] : p in span, ||p||_[0,1] <= 1 }.
/// Each round sweeps t_star over the objective grid, solves the sampled LP at
/// every t_star, and rescales each optimizer by its certified norm. The point
/// where the best witness has its largest slope joins the next sweep. Both
/// grids double until (upper - lower)/lower <= rel_gap or the budget runs out.
inline BernsteinEstimate bernstein_constant(const MuntzSequence& seq, std::size_t n, double a,
                                            const BernsteinConfig& config = {}) {
    detail::require_bernstein_span(seq, n, a);
    BernsteinEstimate est;
    est.sequence = seq.span_prefix(n);
    est.n = n;
    est.a = a;

    std::size_t m_constraints = std::max<std::size_t>(2, config.constraint_points);
    std::size_t m_objective = std::max<std::size_t>(1, config.objective_points);
    const std::size_t rounds = std::max<std::size_t>(1, config.max_rounds);
    std::vector<double> extra_targets;
    bool bounded_once = false;

    for (std::size_t round = 0; round < rounds; ++round) {
        est.rounds = round + 1;
        const std::vector<double> cgrid = chebyshev_grid(m_constraints);
        std::vector<double> ogrid = objective_grid(m_objective, a);
        ogrid.insert(ogrid.end(), extra_targets.begin(), extra_targets.end());

        std::vector<LpStepResult> steps(ogrid.size());
        parallel_for(ogrid.size(), [&](std::size_t k) { steps[k] = bernstein_lp_step(seq, n, a, ogrid[k], cgrid); });

        const bool failed = std::any_of(steps.begin(), steps.end(),
                                        [](const LpStepResult& s) { return s.status != lp::Status::optimal; });
        if (failed) {
            if (m_constraints >= config.max_constraint_points || round + 1 == rounds)
                throw EstimationError("bernstein_constant: LP unbounded or failed after grid refinement to " +
                                      std::to_string(m_constraints) + " constraint points");
            m_constraints = std::min(2 * m_constraints, config.max_constraint_points);
            continue;
        }
        bounded_once = true;

        std::vector<WitnessRatio> ratios(steps.size());
        parallel_for(steps.size(), [&](std::size_t k) {
            const MuntzPolynomial w(est.sequence, steps[k].coefficients);
            if (!w.is_zero() && steps[k].objective > 0.0) ratios[k] = witness_ratio(w, a, config.norm_tol);
        });

        double lp_max = 0.0;
        for (const LpStepResult& step : steps) lp_max = std::max(lp_max, step.objective);
        std::size_t best = 0;
        for (std::size_t k = 1; k < steps.size(); ++k)
            if (ratios[k].ratio > ratios[best].ratio) best = k;
        // Witnesses from earlier rounds remain valid lower bounds.
        if (ratios[best].ratio > est.lower) {
            est.lower = ratios[best].ratio;
            est.witness = MuntzPolynomial(est.sequence, steps[best].coefficients);
            est.witness_t_star = ogrid[best];
        }
        est.lp_max = lp_max;
        est.upper_heuristic = std::max(lp_max, est.lower);
        est.constraint_grid_size = cgrid.size();
        est.objective_grid_size = ogrid.size();
        est.converged = est.lower > 0.0 && lp_max >= est.lower &&
                        (est.upper_heuristic - est.lower) <= config.rel_gap * est.lower;
        if (est.converged) break;

        const double target = std::clamp(ratios[best].derivative_argmax, 0.0, a);
        if (std::find(ogrid.begin(), ogrid.end(), target) == ogrid.end()) extra_targets.push_back(target);
        const bool grids_maxed =
            m_constraints >= config.max_constraint_points && m_objective >= config.max_objective_points;
        m_constraints = std::min(2 * m_constraints, std::max(m_constraints, config.max_constraint_points));
        m_objective = std::min(2 * m_objective, std::max(m_objective, config.max_objective_points));
        if (grids_maxed && extra_targets.empty()) break;
    }
    if (!bounded_once) throw EstimationError("bernstein_constant: no bounded LP round");
    return est;
}

/// Upper Bernstein estimates on [0, a_i] times `safety`, made non-decreasing by a running max.
inline std::vector<double> k_sequence(const MuntzSequence& seq, std::size_t n, std::span<const double> anchors,
                                      double safety = 1.25, const BernsteinConfig& config = {}) {
    detail::require(!anchors.empty(), "k_sequence: no anchors");
    detail::require(safety >= 1.0, "k_sequence: safety factor must be >= 1");
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        detail::require(anchors[i] > 0.0 && anchors[i] < 1.0, "k_sequence: anchors must lie in (0,1)");
        detail::require(i == 0 || anchors[i] > anchors[i - 1], "k_sequence: anchors must be strictly increasing");
    }
    std::vector<double> ks(anchors.size());
    double running = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        running = std::max(running, safety * bernstein_constant(seq, n, anchors[i], config).upper_heuristic);
        ks[i] = running;
    }
    return ks;
}

} // namespace muntz
