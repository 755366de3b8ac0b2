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
#include <span>
#include <string>
#include <vector>

namespace muntz {

/// Sample points 0 = s_0 < ... < s_last = a_m of the sampling operator, with
/// spacing at most epsilon / K_{i+1} inside the band [a_i, a_{i+1}]. The
/// coordinate f(1) is appended by apply_embedding as the limit of the sequence.
struct SamplingGrid {
    double epsilon = 0.0;
    std::vector<double> anchors;   // a_0 = 0, a_1, ..., a_m
    std::vector<double> constants; // K_1, ..., K_m
    std::vector<double> points;
    std::vector<std::size_t> band_starts; // index of a_i in points, i = 0..m
    bool includes_limit_point = true;
};

/// a_i = 1 - 2^{-i}, i = 1..m.
inline std::vector<double> default_anchors(std::size_t m) {
    detail::require(m >= 1, "default_anchors: m must be at least 1");
    std::vector<double> anchors(m);
    for (std::size_t i = 0; i < m; ++i) anchors[i] = 1.0 - std::ldexp(1.0, -static_cast<int>(i + 1));
    return anchors;
}

/// Index of the first consecutive pair violating the band spacing rule, or
/// points.size() when the grid is clean. Comparison is exact in binary64.
inline std::size_t first_spacing_violation(const SamplingGrid& grid) {
    for (std::size_t band = 0; band + 1 < grid.band_starts.size(); ++band) {
        const double bound = grid.epsilon / grid.constants[band];
        for (std::size_t j = grid.band_starts[band]; j < grid.band_starts[band + 1]; ++j)
            if (!(grid.points[j + 1] - grid.points[j] <= bound)) return j;
    }
    return grid.points.size();
}

/// Uniform points on each band with the fewest subintervals that pass the
/// exact spacing scan (starting from ceil(width * K / epsilon)).
inline SamplingGrid build_grid(double epsilon, std::span<const double> anchors, std::span<const double> constants) {
    detail::require(epsilon > 0.0 && epsilon < 1.0, "build_grid: epsilon must lie in (0,1)");
    detail::require(!anchors.empty(), "build_grid: no anchors");
    detail::require(anchors.size() == constants.size(), "build_grid: anchors and constants differ in length");
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        detail::require(anchors[i] > 0.0 && anchors[i] < 1.0, "build_grid: anchors must lie in (0,1)");
        detail::require(i == 0 || anchors[i] > anchors[i - 1], "build_grid: anchors must be strictly increasing");
        detail::require(constants[i] > 0.0 && std::isfinite(constants[i]), "build_grid: constants must be positive");
        detail::require(i == 0 || constants[i] >= constants[i - 1], "build_grid: constants must be non-decreasing");
    }

    SamplingGrid grid;
    grid.epsilon = epsilon;
    grid.anchors.push_back(0.0);
    grid.anchors.insert(grid.anchors.end(), anchors.begin(), anchors.end());
    grid.constants.assign(constants.begin(), constants.end());
    grid.points.push_back(0.0);
    grid.band_starts.push_back(0);

    std::vector<double> band;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const double lo = grid.anchors[i];
        const double hi = grid.anchors[i + 1];
        const double bound = epsilon / constants[i];
        auto count = static_cast<std::size_t>(std::ceil((hi - lo) * constants[i] / epsilon));
        count = std::max<std::size_t>(count, 1);
        while (true) {
            band.assign(count + 1, 0.0);
            for (std::size_t j = 0; j <= count; ++j)
                band[j] = j == count ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count);
            bool clean = true;
            for (std::size_t j = 0; j < count && clean; ++j) clean = band[j + 1] - band[j] <= bound;
            if (clean) break;
            ++count;
        }
        grid.points.insert(grid.points.end(), band.begin() + 1, band.end());
        grid.band_starts.push_back(grid.points.size() - 1);
    }
    return grid;
}

/// Grid whose constants come from the Bernstein estimator on each anchor.
inline SamplingGrid build_grid(const MuntzSequence& seq, std::size_t n, double epsilon,
                               std::span<const double> anchors, double safety = 1.25,
                               const BernsteinConfig& config = {}) {
    detail::require(epsilon > 0.0 && epsilon < 1.0, "build_grid: epsilon must lie in (0,1)");
    const std::vector<double> ks = k_sequence(seq, n, anchors, safety, config);
    return build_grid(epsilon, anchors, ks);
}

/// (f(s_0), ..., f(s_last), f(1)).
inline std::vector<double> apply_embedding(const MuntzPolynomial& f, const SamplingGrid& grid) {
    std::vector<double> out;
    out.reserve(grid.points.size() + 1);
    for (double s : grid.points) out.push_back(f(s));
    if (grid.includes_limit_point) out.push_back(f(1.0));
    return out;
}

inline double sup_abs(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

struct EmbeddingReport {
    std::size_t trials = 0;
    double epsilon = 0.0;
    double min_ratio = 0.0; // min over trials of ||J f|| / ||f||_[0,1]
    double max_ratio = 0.0;
    std::size_t violations = 0; // ratio < (1 - epsilon) - 1e-6
    double min_band_ratio = 0.0; // min of ||J f|| / ||f||_[0,a_m] (the certified part)
    std::size_t band_violations = 0;
    std::size_t n = 0;
    std::size_t anchors = 0;
    std::size_t grid_points = 0;
    std::vector<double> constants;
    std::uint64_t seed = 0;

    bool passed() const noexcept { return violations == 0 && band_violations == 0 && max_ratio <= 1.0 + 1e-9; }
};

struct SandwichOptions {
    std::size_t anchors = 8;
    double safety = 1.25;
    double tolerance = 1e-6;
    BernsteinConfig bernstein{};
};

struct EmbeddingTrial {
    double ratio = 0.0;      // ||J f|| / ||f||_[0,1].lower
    double band_ratio = 0.0; // ||J f|| / ||f||_[0,a_m].lower
};

inline EmbeddingTrial embedding_trial(const MuntzPolynomial& f, const SamplingGrid& grid) {
    const std::vector<double> coords = apply_embedding(f, grid);
    const double j_norm = sup_abs(coords);
    const double tol = scaled_tolerance(f, 1e-10);
    const NormCertificate full = sup_norm_certified(f, 0.0, 1.0, tol);
    const NormCertificate band = sup_norm_certified(f, 0.0, grid.anchors.back(), tol);
    EmbeddingTrial t;
    t.ratio = full.lower > 0.0 ? j_norm / full.lower : 1.0;
    t.band_ratio = band.lower > 0.0 ? j_norm / band.lower : 1.0;
    return t;
}

/// Draws `trials` random unit polynomials over the first n positive exponents
/// and measures how much of their sup-norm the sampling operator preserves.
inline EmbeddingReport verify_sandwich(const MuntzSequence& seq, std::size_t n, double epsilon, std::size_t trials,
                                       std::uint64_t seed, const SandwichOptions& options = {}) {
    detail::require(epsilon > 0.0 && epsilon < 1.0, "verify_sandwich: epsilon must lie in (0,1)");
    detail::require(trials >= 1, "verify_sandwich: trials must be positive");
    const std::vector<double> anchors = default_anchors(options.anchors);
    const SamplingGrid grid = build_grid(seq, n, epsilon, anchors, options.safety, options.bernstein);
    const MuntzSequence span = seq.span_prefix(n);

    std::vector<EmbeddingTrial> results(trials);
    parallel_for(trials, [&](std::size_t i) {
        results[i] = embedding_trial(random_unit_polynomial(span, n, derive_seed(seed, i)), grid);
    });

    EmbeddingReport report;
    report.trials = trials;
    report.epsilon = epsilon;
    report.n = n;
    report.anchors = options.anchors;
    report.grid_points = grid.points.size();
    report.constants = grid.constants;
    report.seed = seed;
    report.min_ratio = results.front().ratio;
    report.max_ratio = results.front().ratio;
    report.min_band_ratio = results.front().band_ratio;
    const double floor = (1.0 - epsilon) - options.tolerance;
    for (const EmbeddingTrial& t : results) {
        report.min_ratio = std::min(report.min_ratio, t.ratio);
        report.max_ratio = std::max(report.max_ratio, t.ratio);
        report.min_band_ratio = std::min(report.min_band_ratio, t.band_ratio);
        if (t.ratio < floor) ++report.violations;
        if (t.band_ratio < floor) ++report.band_violations;
    }
    return report;
}

} // namespace muntz
