#pragma once

#include "muntz_lab/error.hpp"
#include "muntz_lab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace muntz {

/// Two-sided enclosure lower <= sup_{[lo,hi]} |p| <= upper.
struct NormCertificate {
    double lo = 0.0;
    double hi = 1.0;
    double lower = 0.0;
    double upper = 0.0;
    double witness_t = 0.0;
    double grid_step = 0.0;     // width of the finest subinterval that was needed
    double modulus_bound = 0.0; // largest local modulus excess still open at termination
    std::size_t evaluations = 0;

    bool contains(double value) const noexcept { return lower <= value && value <= upper; }
};

struct NormOptions {
    std::size_t initial_subintervals = 64;
    std::size_t max_evaluations = 10'000'000;
};

namespace detail {

/// Bound on sup_{[u,v]} |p| - max(|p(u)|, |p(v)|). Takes the better of a
/// first-order estimate (Hoelder for lambda in (0,1), Lipschitz with the local
/// slope v^{lambda-1} otherwise) and the linear-interpolation estimate
/// M2 h^2 / 8 when p is C^2 on [u,v].
inline double local_excess(const MuntzPolynomial& p, double u, double v) {
    const double h = v - u;
    const double half = 0.5 * h;
    double holder = 0.0;
    double slope = 0.0;
    double curvature = 0.0;
    bool smooth = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double lambda = p.exponent(i);
        const double a = std::abs(p.coefficients()[i]);
        if (lambda == 0.0 || a == 0.0) continue;
        if (lambda < 1.0)
            holder += a * std::pow(half, lambda);
        else
            slope += a * lambda * (lambda == 1.0 ? 1.0 : std::pow(v, lambda - 1.0));
        if (lambda == 1.0) continue;
        if (lambda >= 2.0) {
            curvature += a * lambda * (lambda - 1.0) * (lambda == 2.0 ? 1.0 : std::pow(v, lambda - 2.0));
        } else if (u > 0.0) {
            curvature += a * lambda * std::abs(lambda - 1.0) * std::pow(u, lambda - 2.0);
        } else {
            smooth = false;
        }
    }
    const double first_order = holder + half * slope;
    if (!smooth) return first_order;
    return std::min(first_order, curvature * h * h / 8.0);
}

struct Cell {
    double u, v, fu, fv, bound;
    bool operator<(const Cell& other) const noexcept { return bound < other.bound; }
};

} // namespace detail

/// Certified sup-norm of p on [lo,hi] by adaptive bisection: the lower bound is
/// the best sampled |p|, the upper bound adds a local modulus on every open
/// cell, and cells are split until upper - lower <= tol.
inline NormCertificate sup_norm_certified(const MuntzPolynomial& p, double lo, double hi, double tol,
                                          const NormOptions& options = {}) {
    detail::require(tol > 0.0, "sup_norm_certified: tol must be positive");
    detail::require(0.0 <= lo && lo <= hi && hi <= 1.0, "sup_norm_certified: interval must satisfy 0 <= lo <= hi <= 1");

    NormCertificate cert;
    cert.lo = lo;
    cert.hi = hi;

    // Evaluation roundoff: each term carries a few ulps, summed over at most size() terms.
    const double roundoff = 8.0 * static_cast<double>(p.size() + 2) * std::numeric_limits<double>::epsilon() *
                            p.coefficient_l1();

    auto sample = [&](double t) {
        const double value = std::abs(p(t));
        ++cert.evaluations;
        if (value > cert.lower) {
            cert.lower = value;
            cert.witness_t = t;
        }
        return value;
    };

    cert.witness_t = lo;
    if (p.is_zero()) {
        sample(lo);
        return cert;
    }
    if (lo == hi) {
        sample(lo);
        // At t = 0 every term is exactly 0 or the constant coefficient.
        cert.upper = cert.lower + (lo == 0.0 ? 0.0 : roundoff);
        return cert;
    }

    const std::size_t n0 = std::max<std::size_t>(1, options.initial_subintervals);
    std::vector<double> nodes(n0 + 1);
    std::vector<double> values(n0 + 1);
    for (std::size_t j = 0; j <= n0; ++j) {
        nodes[j] = j == n0 ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n0);
        values[j] = sample(nodes[j]);
    }

    std::priority_queue<detail::Cell> open;
    cert.grid_step = (hi - lo) / static_cast<double>(n0);
    for (std::size_t j = 0; j < n0; ++j) {
        const double bound = std::max(values[j], values[j + 1]) + detail::local_excess(p, nodes[j], nodes[j + 1]);
        open.push({nodes[j], nodes[j + 1], values[j], values[j + 1], bound});
    }

    while (true) {
        const detail::Cell top = open.top();
        if (top.bound + roundoff <= cert.lower + tol) {
            cert.upper = std::max(top.bound, cert.lower) + roundoff;
            cert.modulus_bound = top.bound - std::max(top.fu, top.fv);
            return cert;
        }
        if (cert.evaluations >= options.max_evaluations)
            throw CertificationError("sup_norm_certified: tolerance " + std::to_string(tol) + " not reached within " +
                                     std::to_string(options.max_evaluations) + " evaluations");
        const double mid = 0.5 * (top.u + top.v);
        if (!(mid > top.u && mid < top.v))
            throw CertificationError("sup_norm_certified: cell width underflow before tolerance was met");
        open.pop();
        const double fm = sample(mid);
        cert.grid_step = std::min(cert.grid_step, mid - top.u);
        open.push({top.u, mid, top.fu, fm, std::max(top.fu, fm) + detail::local_excess(p, top.u, mid)});
        open.push({mid, top.v, fm, top.fv, std::max(fm, top.fv) + detail::local_excess(p, mid, top.v)});
    }
}

inline NormCertificate sup_norm_certified(const MuntzPolynomial& p, double tol) {
    return sup_norm_certified(p, 0.0, 1.0, tol);
}

} // namespace muntz
