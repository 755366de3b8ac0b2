#pragma once

#include "muntz_lab/norm.hpp"
#include "muntz_lab/polynomial.hpp"
#include "muntz_lab/random.hpp"

#include <cstdint>
#include <vector>

namespace muntz {

/// Certification tolerance used when normalizing samples onto the unit sphere.
inline constexpr double kUnitNormTol = 1e-10;

/// Random element of the unit sphere of span{t^lambda : lambda among the first
/// n_positive positive exponents}; the constant coefficient (if any) stays 0.
/// Coefficients are drawn independently and uniformly on [-1,1), then divided
/// by the certified lower norm bound, so the true sup-norm lies in
/// [1, 1 + 1e-10/lower]. The zero vector is redrawn.
inline MuntzPolynomial random_unit_polynomial(const MuntzSequence& seq, std::size_t n_positive, std::uint64_t seed) {
    detail::require(n_positive >= 1, "random_unit_polynomial: N must be at least 1");
    detail::require(n_positive <= seq.positive_count(), "random_unit_polynomial: N exceeds the positive exponents");
    const std::size_t offset = seq.first_positive_index();
    Rng rng(seed);
    std::vector<double> coefficients(offset + n_positive, 0.0);
    bool all_zero = true;
    while (all_zero) {
        for (std::size_t i = 0; i < n_positive; ++i) {
            coefficients[offset + i] = rng.symmetric();
            if (coefficients[offset + i] != 0.0) all_zero = false;
        }
    }
    const MuntzPolynomial raw(seq, coefficients);
    const double norm = sup_norm_certified(raw, kUnitNormTol).lower;
    for (double& c : coefficients) c /= norm;
    return MuntzPolynomial(seq, std::move(coefficients));
}

/// Divides p by its certified lower norm bound (p must be non-zero).
inline MuntzPolynomial normalize(const MuntzPolynomial& p) {
    const double norm = sup_norm_certified(p, kUnitNormTol).lower;
    detail::require(norm > 0.0, "normalize: zero polynomial");
    std::vector<double> c = p.coefficients();
    for (double& v : c) v /= norm;
    return MuntzPolynomial(p.sequence(), std::move(c));
}

} // namespace muntz
