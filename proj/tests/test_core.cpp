#include "muntz_lab/polynomial.hpp"
#include "muntz_lab/random.hpp"
#include "muntz_lab/sampling.hpp"
#include "muntz_lab/sequence.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace muntz;

namespace {

oracle::Raw raw(const MuntzPolynomial& p) {
    return {std::vector<double>(p.sequence().exponents().begin(), p.sequence().exponents().begin() + p.size()),
            p.coefficients()};
}

} // namespace

TEST(Sequence, ExplicitWithConstant) {
    const MuntzSequence s = validate_sequence({0, 1, 2, 4, 8});
    EXPECT_TRUE(s.includes_constant());
    EXPECT_EQ(s.size(), 5u);
    EXPECT_EQ(s.positive_count(), 4u);
    EXPECT_EQ(s.family().kind, FamilyKind::explicit_list);
}

TEST(Sequence, RejectsNonMonotoneNamingIndex) {
    try {
        validate_sequence({0, 2, 1});
        FAIL() << "expected a precondition error";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos) << e.what();
    }
}

TEST(Sequence, RejectsNegativeAndEmpty) {
    EXPECT_THROW(validate_sequence({-1, 2}), PreconditionError);
    EXPECT_THROW(validate_sequence(std::span<const double>{}), PreconditionError);
    EXPECT_THROW(validate_sequence({1, 1}), PreconditionError);
}

TEST(Sequence, GeometricFamily) {
    const MuntzSequence s = validate_sequence({1, 2, 4, 8, 16}, Family::geometric(2));
    EXPECT_FALSE(s.includes_constant());
    EXPECT_EQ(s.family().kind, FamilyKind::geometric);
    EXPECT_THROW(validate_sequence({1, 2, 5}, Family::geometric(2)), PreconditionError);
    EXPECT_EQ(make_family_sequence(Family::geometric(2), 5, false), s);
}

TEST(Sequence, PowerFamilyWithConstant) {
    const MuntzSequence s = make_family_sequence(Family::power(2), 4, true);
    EXPECT_EQ(s.exponents(), (std::vector<double>{0, 1, 4, 9, 16}));
    EXPECT_NO_THROW(validate_sequence({0, 1, 4, 9}, Family::power(2)));
    EXPECT_THROW(validate_sequence({1, 4, 10}, Family::power(2)), PreconditionError);
}

TEST(Sequence, PrefixAndTail) {
    const MuntzSequence s = make_family_sequence(Family::geometric(2), 5, true);
    EXPECT_EQ(s.span_prefix(2).exponents(), (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(s.constant_free().exponents(), (std::vector<double>{1, 2, 4, 8, 16}));
    EXPECT_EQ(s.tail(2).exponents(), (std::vector<double>{4, 8, 16}));
    EXPECT_THROW(s.span_prefix(6), PreconditionError);
}

TEST(MuntzCondition, GeometricPartialSum) {
    const ConvergenceReport r = check_muntz_condition(validate_sequence({1, 2, 4, 8, 16}, Family::geometric(2)));
    EXPECT_DOUBLE_EQ(r.partial_sum, 1.9375);
    EXPECT_EQ(r.verdict, Verdict::convergent);
}

TEST(MuntzCondition, HarmonicDiverges) {
    const ConvergenceReport r = check_muntz_condition(make_family_sequence(Family::power(1), 5, false));
    EXPECT_EQ(r.verdict, Verdict::divergent);
}

TEST(MuntzCondition, PowerTwoPartialSum) {
    const ConvergenceReport r = check_muntz_condition(validate_sequence({1, 4, 9, 16}, Family::power(2)));
    EXPECT_NEAR(r.partial_sum, 1.0 + 1.0 / 4 + 1.0 / 9 + 1.0 / 16, 1e-15);
    EXPECT_NEAR(r.partial_sum, 1.4236, 1e-4);
    EXPECT_EQ(r.verdict, Verdict::convergent);
}

TEST(MuntzCondition, ExplicitIsInconclusiveAndSkipsConstant) {
    const ConvergenceReport r = check_muntz_condition(validate_sequence({0, 1, 2}));
    EXPECT_EQ(r.verdict, Verdict::inconclusive);
    EXPECT_DOUBLE_EQ(r.partial_sum, 1.5);
}

TEST(Evaluate, Examples) {
    const MuntzSequence s = validate_sequence({0, 1, 2});
    EXPECT_DOUBLE_EQ(evaluate(MuntzPolynomial(s, {0, 1}), 0.5), 0.5);
    EXPECT_DOUBLE_EQ(evaluate(MuntzPolynomial(s, {1, -8, 8}), 0.0), 1.0);
    const MuntzPolynomial zero(s, {0, 0, 0});
    for (double t : {0.0, 0.3, 1.0}) EXPECT_EQ(evaluate(zero, t), 0.0);
    EXPECT_THROW(evaluate(zero, 1.5), PreconditionError);
    EXPECT_THROW(evaluate(zero, -0.1), PreconditionError);
}

TEST(Evaluate, RejectsOverlongCoefficients) {
    EXPECT_THROW(MuntzPolynomial(validate_sequence({1, 2}), {1, 2, 3}), PreconditionError);
}

TEST(Evaluate, MatchesPowOracleAndCoefficientSumAtOne) {
    const MuntzSequence s = validate_sequence({0, 0.5, 1, 2.5, 7, 16});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        std::vector<double> c(s.size());
        double sum = 0.0;
        for (double& v : c) sum += v = rng.symmetric();
        const MuntzPolynomial p(s, c);
        const oracle::Raw o = raw(p);
        for (int k = 0; k < 20; ++k) {
            const double t = rng.uniform01();
            EXPECT_NEAR(p(t), o(t), 1e-14 * std::max(1.0, p.coefficient_l1()));
        }
        EXPECT_NEAR(p(1.0), sum, 1e-12 * std::max(1.0, std::abs(sum)));
    }
}

TEST(Derivative, Examples) {
    const MuntzSequence s = validate_sequence({0, 1, 2});
    const Derivative d = derivative(MuntzPolynomial::monomial(s, 2));
    EXPECT_DOUBLE_EQ(d(0.3), 0.6);
    EXPECT_FALSE(d.unbounded_at_zero);
    const Derivative d2 = derivative(MuntzPolynomial(s, {3, 1}));
    EXPECT_DOUBLE_EQ(d2(0.0), 1.0);
    EXPECT_DOUBLE_EQ(d2(0.9), 1.0);

    const Derivative root = derivative(MuntzPolynomial(validate_sequence({0.5}), {1}));
    EXPECT_TRUE(root.unbounded_at_zero);
    EXPECT_DOUBLE_EQ(root(0.25), 1.0);
    EXPECT_THROW(root.polynomial(), PreconditionError);
}

TEST(Derivative, CentralDifferencesConvergeQuadratically) {
    const MuntzSequence s = validate_sequence({0, 1, 1.5, 3, 6.5});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed + 100);
        std::vector<double> c(s.size());
        for (double& v : c) v = rng.symmetric();
        const MuntzPolynomial p(s, c);
        const Derivative d = derivative(p);
        const oracle::Raw o = raw(p);
        const double t = 0.2 + 0.6 * rng.uniform01();
        const double e3 = std::abs(oracle::central_difference(o, t, 1e-3) - d(t));
        const double e4 = std::abs(oracle::central_difference(o, t, 1e-4) - d(t));
        if (e3 < 1e-11) continue; // roundoff floor, nothing to compare
        const double gain = e3 / e4;
        EXPECT_GT(gain, 50.0) << "t=" << t;
        EXPECT_LT(gain, 200.0) << "t=" << t;
    }
}

TEST(ContinuityModulus, Examples) {
    const MuntzSequence s = validate_sequence({0.5, 1, 2});
    EXPECT_DOUBLE_EQ(continuity_modulus(MuntzPolynomial(s, {0, 1}), 0.01), 0.01);
    EXPECT_NEAR(continuity_modulus(MuntzPolynomial(s, {0, 2, 1}), 0.1), 0.4, 1e-15);
    EXPECT_NEAR(continuity_modulus(MuntzPolynomial(s, {1}), 0.01), 0.1, 1e-15);
    EXPECT_THROW(continuity_modulus(MuntzPolynomial(s, {1}), 0.0), PreconditionError);
}

TEST(Split, Examples) {
    const MuntzSequence s = validate_sequence({0, 1, 2});
    const MuntzPolynomial p(s, {1, 1, 1});
    const auto [head, tail] = split_head_tail(p, 0);
    EXPECT_EQ(head.coefficients(), (std::vector<double>{1, 0, 0}));
    EXPECT_EQ(tail.coefficients(), (std::vector<double>{0, 1, 1}));
    const auto [whole, none] = split_head_tail(p, 3);
    EXPECT_EQ(whole, p);
    EXPECT_TRUE(none.is_zero());
}

TEST(Split, ReassemblesRandomPolynomials) {
    const MuntzSequence s = make_family_sequence(Family::geometric(2), 6, true);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        std::vector<double> c(s.size());
        for (double& v : c) v = rng.symmetric();
        const MuntzPolynomial p(s, c);
        const std::size_t n = rng.index(s.size() + 1);
        const auto [head, tail] = split_head_tail(p, n);
        EXPECT_EQ(combine(1.0, head, 1.0, tail), p);
        for (int k = 0; k < 100; ++k) {
            const double t = rng.uniform01();
            EXPECT_NEAR(head(t) + tail(t), p(t), 1e-12);
        }
    }
}

TEST(Random, DeterministicPerSeed) {
    const MuntzSequence s = make_family_sequence(Family::geometric(2), 5, false);
    EXPECT_EQ(random_unit_polynomial(s, 5, 9), random_unit_polynomial(s, 5, 9));
    EXPECT_NE(random_unit_polynomial(s, 5, 9), random_unit_polynomial(s, 5, 10));
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(Random, SingleTermIsSignedMonomial) {
    const MuntzSequence s = make_family_sequence(Family::geometric(2), 3, true);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MuntzPolynomial p = random_unit_polynomial(s, 1, seed);
        ASSERT_EQ(p.size(), 2u);
        EXPECT_EQ(p.coefficients()[0], 0.0);
        EXPECT_NEAR(std::abs(p.coefficients()[1]), 1.0, 1e-12);
    }
}

TEST(Random, ThousandSamplesAreUnitNorm) {
    const MuntzSequence s = make_family_sequence(Family::geometric(2), 5, false);
    std::vector<double> worst(1000);
    parallel_for(1000, [&](std::size_t i) {
        const MuntzPolynomial p = random_unit_polynomial(s, 5, derive_seed(3, i));
        const NormCertificate c = sup_norm_certified(p, 1e-12);
        worst[i] = std::max(std::abs(c.lower - 1.0), std::abs(c.upper - 1.0));
    });
    for (double w : worst) EXPECT_LE(w, 1e-9);
}

TEST(Random, ParallelForPropagatesExceptions) {
    EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                     if (i == 7) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}
