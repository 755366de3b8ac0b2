#pragma once

#include "muntz_lab/error.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace muntz {

enum class FamilyKind { explicit_list, power, geometric };

/// How a finite exponent list would continue. `parameter` is s for power(s)
/// (exponents k^s, k = 1, 2, ...) and r for geometric(r) (exponents r^k,
/// k = 0, 1, ...). Either may be preceded by the constant exponent 0.
struct Family {
    FamilyKind kind = FamilyKind::explicit_list;
    double parameter = 0.0;

    static constexpr Family explicit_list() { return {}; }
    static constexpr Family power(double s) { return {FamilyKind::power, s}; }
    static constexpr Family geometric(double r) { return {FamilyKind::geometric, r}; }

    friend bool operator==(const Family&, const Family&) = default;
};

inline std::string to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::power: return "power";
    case FamilyKind::geometric: return "geometric";
    case FamilyKind::explicit_list: break;
    }
    return "explicit";
}

/// A finite prefix of a strictly increasing sequence of non-negative exponents.
/// Immutable once constructed; construct through validate_sequence() or the
/// family generators.
class MuntzSequence {
public:
    MuntzSequence() = default;

    const std::vector<double>& exponents() const noexcept { return exponents_; }
    double operator[](std::size_t i) const { return exponents_.at(i); }
    std::size_t size() const noexcept { return exponents_.size(); }
    const Family& family() const noexcept { return family_; }
    bool includes_constant() const noexcept { return !exponents_.empty() && exponents_.front() == 0.0; }

    /// Number of strictly positive exponents.
    std::size_t positive_count() const noexcept { return size() - (includes_constant() ? 1 : 0); }

    /// Index of the first strictly positive exponent.
    std::size_t first_positive_index() const noexcept { return includes_constant() ? 1 : 0; }

    /// The constant term (when present) followed by the first `n_positive` positive exponents.
    MuntzSequence span_prefix(std::size_t n_positive) const {
        detail::require(n_positive <= positive_count(),
                        "span_prefix: requested " + std::to_string(n_positive) + " positive exponents, only " +
                            std::to_string(positive_count()) + " available");
        return MuntzSequence(
            std::vector<double>(exponents_.begin(),
                                exponents_.begin() + static_cast<std::ptrdiff_t>(first_positive_index() + n_positive)),
            family_);
    }

    /// The strictly positive exponents only (the constant-free subspace).
    MuntzSequence constant_free() const {
        return MuntzSequence(
            std::vector<double>(exponents_.begin() + static_cast<std::ptrdiff_t>(first_positive_index()),
                                exponents_.end()),
            family_);
    }

    /// Exponents with index > head, keeping the family tag (the tail span of a head/tail split).
    MuntzSequence tail(std::size_t head) const {
        detail::require(head < size(), "tail: head index out of range");
        return MuntzSequence(std::vector<double>(exponents_.begin() + static_cast<std::ptrdiff_t>(head + 1),
                                                 exponents_.end()),
                             family_);
    }

    friend bool operator==(const MuntzSequence&, const MuntzSequence&) = default;

private:
    friend MuntzSequence validate_sequence(std::span<const double>, Family);

    MuntzSequence(std::vector<double> exponents, Family family)
        : exponents_(std::move(exponents)), family_(family) {}

    std::vector<double> exponents_;
    Family family_;
};

namespace detail {

inline double family_term(const Family& family, std::size_t k) {
    if (family.kind == FamilyKind::power) return std::pow(static_cast<double>(k + 1), family.parameter);
    return std::pow(family.parameter, static_cast<double>(k));
}

inline bool close_relative(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

} // namespace detail

/// Checks monotonicity, sign and family consistency. The diagnostic names the
/// first offending index.
inline MuntzSequence validate_sequence(std::span<const double> raw, Family family = Family::explicit_list()) {
    detail::require(!raw.empty(), "validate_sequence: exponent list is empty");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i]))
            throw PreconditionError("validate_sequence: exponent at index " + std::to_string(i) + " is not finite");
        if (raw[i] < 0.0)
            throw PreconditionError("validate_sequence: exponent at index " + std::to_string(i) + " is negative");
        if (i > 0 && !(raw[i] > raw[i - 1]))
            throw PreconditionError("validate_sequence: exponents not strictly increasing at index " +
                                    std::to_string(i));
    }
    if (family.kind == FamilyKind::power)
        detail::require(family.parameter > 0.0, "validate_sequence: power family needs s > 0");
    if (family.kind == FamilyKind::geometric)
        detail::require(family.parameter > 1.0, "validate_sequence: geometric family needs r > 1");
    if (family.kind != FamilyKind::explicit_list) {
        const std::size_t offset = raw.front() == 0.0 ? 1 : 0;
        for (std::size_t i = offset; i < raw.size(); ++i) {
            if (!detail::close_relative(raw[i], detail::family_term(family, i - offset), 1e-12))
                throw PreconditionError("validate_sequence: exponent at index " + std::to_string(i) +
                                        " does not match the " + to_string(family.kind) + " family");
        }
    }
    return MuntzSequence(std::vector<double>(raw.begin(), raw.end()), family);
}

inline MuntzSequence validate_sequence(std::initializer_list<double> raw, Family family = Family::explicit_list()) {
    return validate_sequence(std::span<const double>(raw.begin(), raw.size()), family);
}

/// First `n_positive` terms of a power or geometric family, optionally preceded by 0.
inline MuntzSequence make_family_sequence(Family family, std::size_t n_positive, bool with_constant) {
    detail::require(family.kind != FamilyKind::explicit_list, "make_family_sequence: explicit family has no generator");
    detail::require(n_positive + (with_constant ? 1 : 0) > 0, "make_family_sequence: empty sequence");
    std::vector<double> raw;
    if (with_constant) raw.push_back(0.0);
    for (std::size_t k = 0; k < n_positive; ++k) raw.push_back(detail::family_term(family, k));
    return validate_sequence(raw, family);
}

enum class Verdict { convergent, divergent, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::convergent: return "convergent";
    case Verdict::divergent: return "divergent";
    case Verdict::inconclusive: break;
    }
    return "inconclusive";
}

struct ConvergenceReport {
    double partial_sum = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::string rationale;
};

/// Partial sum of 1/lambda over the stored positive exponents, classified by
/// the family the prefix belongs to.
inline ConvergenceReport check_muntz_condition(const MuntzSequence& seq) {
    ConvergenceReport report;
    for (double lambda : seq.exponents())
        if (lambda > 0.0) report.partial_sum += 1.0 / lambda;

    switch (seq.family().kind) {
    case FamilyKind::geometric:
        report.verdict = Verdict::convergent;
        report.rationale = "geometric-series";
        break;
    case FamilyKind::power:
        if (seq.family().parameter > 1.0) {
            report.verdict = Verdict::convergent;
            report.rationale = "p-series-s>1";
        } else {
            report.verdict = Verdict::divergent;
            report.rationale = "p-series-s<=1";
        }
        break;
    case FamilyKind::explicit_list:
        report.verdict = Verdict::inconclusive;
        report.rationale = "finite-explicit-prefix";
        break;
    }
    return report;
}

} // namespace muntz
