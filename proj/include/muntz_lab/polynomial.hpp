#pragma once

#include "muntz_lab/error.hpp"
#include "muntz_lab/sequence.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace muntz {

namespace detail {

/// Power with 0^0 = 1. Small integral exponents go through repeated squaring,
/// which is faster than std::pow and accurate to a few ulps.
struct PowerTerm {
    double exponent = 0.0;
    int integral = -1; // exponent as int when it is a small non-negative integer, else -1

    explicit PowerTerm(double e) : exponent(e) {
        if (e >= 0.0 && e <= 64.0 && e == std::floor(e)) integral = static_cast<int>(e);
    }

    double operator()(double t) const noexcept {
        if (integral >= 0) {
            double result = 1.0;
            double base = t;
            for (int n = integral; n > 0; n >>= 1) {
                if (n & 1) result *= base;
                base *= base;
            }
            return result;
        }
        if (t == 0.0) return exponent == 0.0 ? 1.0 : (exponent > 0.0 ? 0.0 : HUGE_VAL);
        return std::pow(t, exponent);
    }
};

} // namespace detail

/// p(t) = sum_i a_i t^{lambda_i}, coefficients aligned with the leading exponents of its sequence.
class MuntzPolynomial {
public:
    MuntzPolynomial() = default;

    MuntzPolynomial(MuntzSequence sequence, std::vector<double> coefficients)
        : sequence_(std::move(sequence)), coefficients_(std::move(coefficients)) {
        detail::require(coefficients_.size() <= sequence_.size(),
                        "MuntzPolynomial: " + std::to_string(coefficients_.size()) + " coefficients exceed " +
                            std::to_string(sequence_.size()) + " exponents");
        for (double c : coefficients_) detail::require(std::isfinite(c), "MuntzPolynomial: non-finite coefficient");
        terms_.reserve(coefficients_.size());
        for (std::size_t i = 0; i < coefficients_.size(); ++i) terms_.emplace_back(sequence_[i]);
    }

    /// Polynomial over the full sequence with one unit coefficient at `index`.
    static MuntzPolynomial monomial(const MuntzSequence& sequence, std::size_t index, double coefficient = 1.0) {
        detail::require(index < sequence.size(), "monomial: index out of range");
        std::vector<double> coefficients(sequence.size(), 0.0);
        coefficients[index] = coefficient;
        return MuntzPolynomial(sequence, std::move(coefficients));
    }

    const MuntzSequence& sequence() const noexcept { return sequence_; }
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }
    std::size_t size() const noexcept { return coefficients_.size(); }
    double exponent(std::size_t i) const { return sequence_[i]; }

    /// Unchecked evaluation; callers guarantee t in [0,1].
    double operator()(double t) const noexcept {
        double sum = 0.0;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (coefficients_[i] != 0.0) sum += coefficients_[i] * terms_[i](t);
        return sum;
    }

    /// Sum of |a_i|; bounds |p| on [0,1] and scales evaluation roundoff.
    double coefficient_l1() const noexcept {
        double s = 0.0;
        for (double c : coefficients_) s += std::abs(c);
        return s;
    }

    bool is_zero() const noexcept {
        for (double c : coefficients_)
            if (c != 0.0) return false;
        return true;
    }

    MuntzPolynomial scaled(double factor) const {
        std::vector<double> c = coefficients_;
        for (double& v : c) v *= factor;
        return MuntzPolynomial(sequence_, std::move(c));
    }

    friend bool operator==(const MuntzPolynomial& a, const MuntzPolynomial& b) {
        return a.sequence_ == b.sequence_ && a.coefficients_ == b.coefficients_;
    }

private:
    MuntzSequence sequence_;
    std::vector<double> coefficients_;
    std::vector<detail::PowerTerm> terms_;
};

/// Coefficient-wise a*p + b*q. Both must share a sequence; the shorter
/// coefficient list is zero-padded.
inline MuntzPolynomial combine(double a, const MuntzPolynomial& p, double b, const MuntzPolynomial& q) {
    detail::require(p.sequence() == q.sequence(), "combine: polynomials live on different sequences");
    std::vector<double> c(std::max(p.size(), q.size()), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) c[i] += a * p.coefficients()[i];
    for (std::size_t i = 0; i < q.size(); ++i) c[i] += b * q.coefficients()[i];
    return MuntzPolynomial(p.sequence(), std::move(c));
}

/// Checked evaluation: rejects t outside [0,1].
inline double evaluate(const MuntzPolynomial& p, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("evaluate: t = " + std::to_string(t) + " outside [0,1]");
    return p(t);
}

/// Term-wise derivative. When some positive exponent lies in (0,1) the result
/// is unbounded at 0 and cannot be represented as a MuntzPolynomial.
struct Derivative {
    std::vector<double> exponents;
    std::vector<double> coefficients;
    bool unbounded_at_zero = false;

    double operator()(double t) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (coefficients[i] != 0.0) sum += coefficients[i] * detail::PowerTerm(exponents[i])(t);
        return sum;
    }

    /// The derivative as a polynomial on the shifted sequence (lambda_i - 1).
    MuntzPolynomial polynomial() const {
        if (unbounded_at_zero) throw PreconditionError("derivative: exponent in (0,1) makes p' unbounded at 0");
        if (exponents.empty()) return MuntzPolynomial(validate_sequence({0.0}), {0.0});
        return MuntzPolynomial(validate_sequence(exponents), coefficients);
    }
};

inline Derivative derivative(const MuntzPolynomial& p) {
    Derivative d;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double lambda = p.exponent(i);
        if (lambda == 0.0) continue;
        if (lambda < 1.0) d.unbounded_at_zero = true;
        d.exponents.push_back(lambda - 1.0);
        d.coefficients.push_back(p.coefficients()[i] * lambda);
    }
    return d;
}

/// Uniform modulus of continuity on [0,1]:
/// omega(h) = sum_{0<lambda<1} |a| h^lambda + h * sum_{lambda>=1} |a| lambda.
inline double continuity_modulus(const MuntzPolynomial& p, double h) {
    detail::require(h > 0.0, "continuity_modulus: h must be positive");
    double holder = 0.0;
    double lipschitz = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double lambda = p.exponent(i);
        const double a = std::abs(p.coefficients()[i]);
        if (lambda == 0.0 || a == 0.0) continue;
        if (lambda < 1.0)
            holder += a * std::pow(h, lambda);
        else
            lipschitz += a * lambda;
    }
    return holder + h * lipschitz;
}

/// Direct-sum split: head keeps indices <= n, tail indices > n.
/// Both halves keep the full coefficient length so head + tail == p exactly.
inline std::pair<MuntzPolynomial, MuntzPolynomial> split_head_tail(const MuntzPolynomial& p, std::size_t n) {
    detail::require(n <= p.size(), "split_head_tail: N exceeds the coefficient count");
    std::vector<double> head(p.size(), 0.0);
    std::vector<double> tail(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) (i <= n ? head : tail)[i] = p.coefficients()[i];
    return {MuntzPolynomial(p.sequence(), std::move(head)), MuntzPolynomial(p.sequence(), std::move(tail))};
}

} // namespace muntz
