#include "muntz_lab/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace muntz;

namespace {

const MuntzSequence kProbe = make_family_sequence(Family::geometric(2), 3, false); // t, t^2, t^4

} // namespace

TEST(SmallBall, FromConstant) {
    const SmallBallRadius r = small_ball_radius_from_constant(2.0, 0.9);
    EXPECT_DOUBLE_EQ(r.a, 0.25);
    EXPECT_DOUBLE_EQ(small_ball_radius_from_constant(0.5, 0.3).a, 0.3);
    EXPECT_THROW(small_ball_radius_from_constant(0.0, 0.5), PreconditionError);
    EXPECT_THROW(small_ball_radius_from_constant(1.0, 1.0), PreconditionError);
}

TEST(SmallBall, IdentitySpan) {
    const SmallBallRadius r = small_ball_radius(validate_sequence({1}), 1, 0.9);
    EXPECT_NEAR(r.c_used, 1.25, 1e-9);
    EXPECT_NEAR(r.a, 0.4, 1e-9);
}

TEST(SmallBall, MonotoneInX) {
    const MuntzSequence s = validate_sequence({1});
    double previous = 0.0;
    for (double x : {0.1, 0.2, 0.3, 0.5, 0.9}) {
        const double a = small_ball_radius(s, 1, x).a;
        EXPECT_GE(a, previous);
        previous = a;
    }
}

TEST(HalfBall, MonomialAndZeroRadius) {
    const MuntzSequence s = validate_sequence({1});
    const DefectReport r = half_ball_check(s, 1, 0.25, 5, 3);
    EXPECT_NEAR(r.extremal_value, 0.25, 1e-9);
    EXPECT_TRUE(r.passed());
    const DefectReport zero = half_ball_check(kProbe, 3, 0.0, 20, 3);
    EXPECT_EQ(zero.extremal_value, 0.0);
}

TEST(HalfBall, SmallRun) {
    const SmallBallRadius radius = small_ball_radius(kProbe, 3, 0.9);
    const DefectReport r = half_ball_check(kProbe, 3, radius.a, 500, 17);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_LE(r.extremal_value, 0.5 + 1e-6);
}

TEST(HalfBall, RejectsFractionalExponent) {
    EXPECT_THROW(half_ball_check(validate_sequence({0.5, 1}), 2, 0.1, 5, 1), PreconditionError);
}

TEST(Lasq, EpsilonStar) {
    EXPECT_DOUBLE_EQ(lasq_epsilon_star(0.25, 1), 0.125);
    EXPECT_DOUBLE_EQ(lasq_epsilon_star(0.5, 2), 0.125);
    EXPECT_DOUBLE_EQ(lasq_epsilon_star(0.9, 1), 0.45);
    EXPECT_THROW(lasq_epsilon_star(1.5, 1), PreconditionError);
    double previous = 0.0;
    for (double a : {0.0, 0.1, 0.4, 0.8}) {
        EXPECT_GE(lasq_epsilon_star(a, 2), previous);
        previous = lasq_epsilon_star(a, 2);
    }
}

TEST(Lasq, ThresholdUsesFirstPositiveExponent) {
    const MuntzSequence with_constant = make_family_sequence(Family::geometric(2), 3, true);
    const LasqThreshold t = lasq_threshold(with_constant, 3, 0.9);
    EXPECT_EQ(t.g, MuntzPolynomial::monomial(with_constant, 1));
    EXPECT_NEAR(t.epsilon_star, t.a / 2.0, 1e-15);
    EXPECT_GT(t.epsilon_star, 0.0);
}

TEST(Lasq, ObjectiveExamplesAndSymmetry) {
    const MuntzPolynomial g = MuntzPolynomial::monomial(kProbe, 0);
    EXPECT_NEAR(lasq_objective(g, g), 2.0, 1e-9);
    EXPECT_NEAR(lasq_objective(g, g.scaled(-1.0)), 2.0, 1e-9);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const MuntzPolynomial h = random_unit_polynomial(kProbe, 3, seed);
        EXPECT_EQ(lasq_objective(g, h), lasq_objective(g, h.scaled(-1.0)));
    }
}

TEST(Lasq, SmallRun) {
    const DefectReport r = lasq_empirical_defect(kProbe, 3, 0.9, 300, 5);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GE(r.extremal_value, 1.0 + r.threshold_epsilon_star - 1e-4);
    EXPECT_GT(r.refinement_evaluations, 0u);
    ASSERT_TRUE(r.witness_g.has_value());
    EXPECT_TRUE(r.passed());
}

TEST(Lasq, TailReduction) {
    const MuntzSequence s = make_family_sequence(Family::geometric(2), 5, false);
    const DefectReport r = lasq_tail_defect(s, 5, 1, 0.9, 100, 2);
    EXPECT_EQ(r.n, 3u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_THROW(lasq_tail_defect(s, 5, 4, 0.9, 10, 2), PreconditionError);
}

TEST(Lasq, Rejections) {
    EXPECT_THROW(lasq_empirical_defect(kProbe, 3, 0.9, 0, 1), PreconditionError);
    EXPECT_THROW(lasq_empirical_defect(kProbe, 3, 1.2, 10, 1), PreconditionError);
}

TEST(OhProbe, Examples) {
    const MuntzPolynomial g = MuntzPolynomial::monomial(kProbe, 0);
    const std::vector<MuntzPolynomial> xs{g};
    EXPECT_NEAR(oh_objective(xs, g), 0.0, 1e-12);
    const DefectReport r = oh_defect_probe(xs, kProbe, 3, 200, 4);
    EXPECT_EQ(r.kind, DefectKind::oh_probe);
    EXPECT_GT(r.extremal_value, 0.0);
    EXPECT_LE(r.extremal_value, 2.0 + 1e-9);
    const std::vector<MuntzPolynomial> none;
    EXPECT_THROW(oh_defect_probe(none, kProbe, 3, 10, 1), PreconditionError);
    const std::vector<MuntzPolynomial> not_unit{g.scaled(3.0)};
    EXPECT_THROW(oh_defect_probe(not_unit, kProbe, 3, 10, 1), PreconditionError);
}
