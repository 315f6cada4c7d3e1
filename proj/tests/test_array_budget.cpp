#include <cmath>

#include <gtest/gtest.h>

#include <rydberg/array_budget.hpp>

using namespace rydberg;

TEST(VacuumLifetime, Checkpoint) {
    EXPECT_EQ(required_vacuum_lifetime(20, 2e-3, 1e-4), 400.0);
    EXPECT_DOUBLE_EQ(LossBudget::default_t_qec(20), 2e-3);
}

TEST(ReloadRate, Checkpoint) { EXPECT_EQ(required_reload_rate(2000, 400.0, 1e-4), 5e4); }

TEST(VacuumLifetime, LinearInNAndTime) {
    for (int n : {1, 7, 20, 49})
        for (double t : {1e-4, 2e-3, 0.3})
            for (double eps : {1e-6, 1e-4, 0.5}) {
                const double base = required_vacuum_lifetime(n, t, eps);
                EXPECT_DOUBLE_EQ(required_vacuum_lifetime(2 * n, t, eps), 2 * base);
                EXPECT_DOUBLE_EQ(required_vacuum_lifetime(n, 3 * t, eps), 3 * base);
                EXPECT_DOUBLE_EQ(required_vacuum_lifetime(n, t, eps / 2), 2 * base);
            }
}

TEST(VacuumLifetime, RejectsInvalidBudgets) {
    EXPECT_THROW(required_vacuum_lifetime(20, 2e-3, 0.0), DomainError);
    EXPECT_THROW(required_vacuum_lifetime(20, 2e-3, 1.0), DomainError);
    EXPECT_THROW(required_vacuum_lifetime(0, 2e-3, 1e-4), DomainError);
    EXPECT_THROW(required_vacuum_lifetime(20, 0.0, 1e-4), DomainError);
    EXPECT_THROW(required_reload_rate(2000, 0.0, 1e-4), DomainError);
    EXPECT_THROW(required_reload_rate(0, 400.0, 1e-4), DomainError);
}

TEST(LossProbability, MatchesBoundaryAndFlagsInvalidity) {
    const auto p = loss_probability(20, 2e-3, 400.0);
    EXPECT_NEAR(p.value, 1e-4, 1e-9);
    EXPECT_FALSE(p.exceeds_unity);
    const auto q = loss_probability(100, 10.0, 1.0);
    EXPECT_GT(q.value, 1.0);
    EXPECT_TRUE(q.exceeds_unity);
}

TEST(LossProbability, UpperBoundsExactSurvival) {
    for (int n : {1, 3, 20, 100, 1000})
        for (double x : {1e-8, 1e-4, 0.01, 0.5, 3.0}) {
            const double exact = -std::expm1(-n * x);
            EXPECT_GE(loss_probability(n, x, 1.0).value, exact * (1 - 1e-15));
        }
}

TEST(MonteCarlo, DeterministicForSeedAndIndependentOfWorkers) {
    const auto a = simulate_loss(20, 1.0, 0.01, 20000, 42, 1);
    const auto b = simulate_loss(20, 1.0, 0.01, 20000, 42, 1);
    const auto c = simulate_loss(20, 1.0, 0.01, 20000, 42, 4);
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_EQ(a.hits, c.hits);
    const auto d = simulate_loss(20, 1.0, 0.01, 20000, 43, 1);
    EXPECT_NE(a.hits, d.hits);
}

TEST(MonteCarlo, AgreesWithExactSurvival) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto mc = simulate_loss(20, 1.0, 0.01, 100000, seed);
        const double exact = -std::expm1(-20 * 0.01);
        EXPECT_LT(std::abs(mc.estimate - exact), 3 * mc.standard_error);
    }
}

TEST(MonteCarlo, StandardErrorHalvesWithFourTimesTrials) {
    const auto a = simulate_loss(10, 1.0, 0.05, 25000, 11);
    const auto b = simulate_loss(10, 1.0, 0.05, 100000, 11);
    EXPECT_NEAR(b.standard_error / a.standard_error, 0.5, 0.03);
}

TEST(MonteCarlo, RejectsTooFewTrials) {
    EXPECT_THROW(simulate_loss(20, 1.0, 0.01, 999, 1), DomainError);
    EXPECT_THROW(simulate_loss(20, 0.0, 0.01, 1000, 1), DomainError);
}

TEST(Crosstalk, WorkedPoint) {
    const double lambda = 852e-9;
    const auto x = measurement_crosstalk(lambda, 5 * lambda, 0.5, 0.5);
    EXPECT_NEAR(x.cross_section_m2, 3 * lambda * lambda / two_pi, 1e-27);
    EXPECT_NEAR(x.eta_abs, 3.0 / (200.0 * std::numbers::pi * std::numbers::pi), 1e-15);
    EXPECT_NEAR(x.eta_det, 0.25 * (1 - std::sqrt(0.75)), 1e-15);
    EXPECT_NEAR(x.ratio, x.eta_abs / x.eta_det, 1e-15);
}

TEST(Crosstalk, ScalesAsInverseSquareSpacing) {
    const double lambda = 780e-9;
    for (double k : {1.0, 2.0, 5.0, 20.0}) {
        const auto a = measurement_crosstalk(lambda, k * lambda, 0.4, 0.3);
        const auto b = measurement_crosstalk(lambda, 2 * k * lambda, 0.4, 0.3);
        EXPECT_NEAR(b.eta_abs / a.eta_abs, 0.25, 1e-14);
        EXPECT_DOUBLE_EQ(a.eta_det, b.eta_det);
    }
}

TEST(Crosstalk, DetectionFractionIncreasesWithAperture) {
    double prev = 0.0;
    for (double na = 0.05; na < 1.0; na += 0.05) {
        const double f = collection_fraction(na);
        EXPECT_GT(f, prev);
        prev = f;
    }
    EXPECT_DOUBLE_EQ(collection_fraction(1.0), 0.5);
}

TEST(Crosstalk, DomainChecks) {
    EXPECT_THROW(measurement_crosstalk(852e-9, 400e-9, 0.5, 0.5), DomainError);
    EXPECT_THROW(measurement_crosstalk(852e-9, 4e-6, 1.0, 0.5), DomainError);
    EXPECT_THROW(measurement_crosstalk(852e-9, 4e-6, 0.0, 0.5), DomainError);
    EXPECT_THROW(measurement_crosstalk(852e-9, 4e-6, 0.5, 0.0), DomainError);
    EXPECT_THROW(measurement_crosstalk(852e-9, 4e-6, 0.5, 1.5), DomainError);
}
