#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <rydberg/dressing.hpp>

using namespace rydberg;

namespace {

void expect_rel(double actual, double expected, double tol) {
    EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected)) << actual << " vs " << expected;
}

Frequency ang(double w) { return Frequency::from_angular(w); }

DressingParams worked_example() {
    return {Frequency::from_mhz(20), Frequency::from_mhz(-100),
            PairInteraction::from_crossover(Frequency::from_mhz(-200), 8.1e-6), 320e-6, 1e-6};
}

}  // namespace

TEST(PairShift, LimitsAndSign) {
    const Frequency delta = Frequency::from_mhz(200);
    const double rc = 5e-6;
    for (double r = 2.0 * rc; r < 50 * rc; r *= 1.3) {
        const double full = dipole_dipole_shift(r, delta, rc).angular();
        const double vdw = vdw_shift(r, delta, rc).angular();
        EXPECT_LT(full, 0.0);
        EXPECT_LE(std::abs(full), std::abs(vdw));
        expect_rel(full, vdw, 0.26 * std::pow(rc / r, 6));
    }
    // resonant limit: -|delta|/2 (R_c/R)^3 sign(delta)
    const double r = rc / 50;
    expect_rel(dipole_dipole_shift(r, delta, rc).angular(), -0.5 * delta.angular() * std::pow(rc / r, 3), 1e-4);
    EXPECT_GT(dipole_dipole_shift(r, -delta, rc).angular(), 0.0);
    EXPECT_THROW(dipole_dipole_shift(0.0, delta, rc), DomainError);
}

TEST(PairShift, MatchesDirectFormula) {
    const Frequency delta = Frequency::from_mhz(-37);
    const double rc = 3e-6;
    for (double r = 0.1 * rc; r < 3 * rc; r *= 1.2) {
        const double direct = 0.5 * delta.angular() * (1 - std::sqrt(1 + std::pow(rc / r, 6)));
        expect_rel(dipole_dipole_shift(r, delta, rc).angular(), direct, 1e-12);
    }
}

TEST(Crossover, UnitConventionsAgree) {
    const double x = 3.2, y = 0.15, dkl = 12.0;
    const double rc = crossover_radius(C3Coefficient::from_ghz_um3(x), Frequency::from_ghz(y), dkl);
    expect_rel(rc, std::pow(4 * dkl * x * x / (y * y), 1.0 / 6.0) * 1e-6, 1e-14);
    const auto c3 = c3_for_crossover(rc, Frequency::from_ghz(y), dkl);
    expect_rel(c3.ghz_um3(), x, 1e-14);
}

TEST(Crossover, PairInteractionConsistency) {
    const Frequency delta = Frequency::from_mhz(-200);
    const auto c3 = c3_for_crossover(8.1e-6, delta, 12);
    const auto p = PairInteraction::from_c3(delta, c3, 12);
    expect_rel(p.rc_m, 8.1e-6, 1e-14);
    PairInteraction bad{delta, 12, 8.2e-6, c3};
    EXPECT_THROW(bad.validate(), DomainError);
    EXPECT_THROW(PairInteraction::from_crossover(Frequency{}, 8e-6), DomainError);
    EXPECT_THROW(PairInteraction::from_crossover(delta, 8e-6, 0.0), DomainError);
    EXPECT_THROW(C3Coefficient::from_angular_m3(0.0), DomainError);
}

TEST(BlockadeRadius, Identities) {
    const double rc = 7e-6;
    for (double d : {1e5, 3e7, 2e9}) {
        expect_rel(blockade_radius(ang(d), ang(d), rc), rc / std::sqrt(2.0), 1e-12);
        expect_rel(blockade_radius(ang(-d), ang(-d), rc), rc / std::sqrt(2.0), 1e-12);
        expect_rel(soft_core_length(ang(d), ang(d), rc), blockade_radius(ang(d), ang(d), rc), 1e-12);
    }
}

TEST(BlockadeRadius, RoundTripOnRandomPoints) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> l(std::log(1e5), std::log(1e10));
    for (int i = 0; i < 500; ++i) {
        const double s = i % 2 ? 1.0 : -1.0;
        const Frequency d = ang(s * std::exp(l(rng)));
        const Frequency delta = ang(s * std::exp(l(rng)));
        const double rb = blockade_radius(d, delta, 4e-6);
        expect_rel(std::abs(dipole_dipole_shift(rb, delta, 4e-6).angular()), std::abs(d.angular()), 1e-9);
    }
}

TEST(BlockadeRadius, OppositeSignsExcluded) {
    EXPECT_THROW(blockade_radius(Frequency::from_mhz(10), Frequency::from_mhz(-20), 1e-6), DomainError);
    EXPECT_THROW(soft_core_length(Frequency::from_mhz(-10), Frequency::from_mhz(20), 1e-6), DomainError);
    EXPECT_THROW(blockade_radius(Frequency{}, Frequency::from_mhz(20), 1e-6), DomainError);
}

TEST(DressedEnergy, OracleValues) {
    // extended-precision symmetric eigensolve
    expect_rel(dressed_ground_energy_exact(ang(1), ang(3), ang(-0.7)).angular(), 0.16186477118742588, 1e-13);
    expect_rel(dressed_ground_energy_exact(ang(2), ang(-5), ang(40)).angular(), -0.37487099778521606, 1e-13);
}

TEST(DressedEnergy, ClosedFormMatchesEigensolver) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ld(std::log(1e-1), std::log(1e2));
    std::uniform_real_distribution<double> lw(std::log(1e-2), std::log(2.0));
    std::uniform_real_distribution<double> lv(std::log(1e-3), std::log(1e3));
    for (int i = 0; i < 10000; ++i) {
        const double d = (i % 2 ? 1 : -1) * std::exp(ld(rng));
        const double v = ((i / 2) % 2 ? 1 : -1) * std::abs(d) * std::exp(lv(rng));
        const Frequency w = ang(std::abs(d) * std::exp(lw(rng)));
        const auto cf = dressed_ground_energy_closed_form(w, ang(d), ang(v));
        const double ev = dressed_ground_energy_exact(w, ang(d), ang(v)).angular();
        EXPECT_TRUE(cf.branch_ok);
        expect_rel(cf.energy.angular(), ev, 1e-9);
    }
}

TEST(DressedEnergy, ClosedFormDegradesGracefullyWhenIllConditioned) {
    // Omega << Delta << Delta_dd: the discriminant cancels
    const auto cf = dressed_ground_energy_closed_form(ang(0.010692055843371771), ang(10.927670831451254),
                                                      ang(-8897.7893435309707));
    expect_rel(cf.energy.angular(), 5.2307580117683784e-06, 1e-6);
    expect_rel(dressed_ground_energy_exact(ang(0.010692055843371771), ang(10.927670831451254), ang(-8897.7893435309707))
                   .angular(),
               5.2307580117683784e-06, 1e-12);
}

TEST(DressedEnergy, LimitsMatchClosedForms) {
    for (double d : {-50.0, -3.0, 2.0, 40.0})
        for (double w : {0.1, 1.0, 5.0}) {
            const double inf = dressed_ground_energy_exact(ang(w), ang(d), ang(-d * 1e9)).angular();
            expect_rel(inf, dressed_energy_blockaded(ang(w), ang(d)).angular(), 1e-5);
            const double zero = dressed_ground_energy_exact(ang(w), ang(d), Frequency{}).angular();
            expect_rel(zero, dressed_energy_unblockaded(ang(w), ang(d)).angular(), 1e-12);
            expect_rel(dressed_energy_unblockaded(ang(w), ang(d)).angular(),
                       -d + std::copysign(std::sqrt(d * d + w * w), d), 1e-10);
        }
}

TEST(DressedEnergy, ContinuousAlongPhysicalBranch) {
    for (double d : {-10.0, 10.0})
        for (double w : {0.5, 3.0, 9.0}) {
            double prev = dressed_ground_energy_exact(ang(w), ang(d), Frequency{}).angular();
            for (double x = 1e-4; x < 1e6; x *= 1.05) {
                const auto s = dressed_ground_state(ang(w), ang(d), ang(-std::copysign(x, d)));
                EXPECT_GT(s.ground_overlap, 1.0 / std::sqrt(3.0));
                EXPECT_LE(std::abs(s.energy.angular() - prev), 0.06 * std::abs(w * w / d) + 1e-12);
                prev = s.energy.angular();
            }
        }
}

TEST(DressedEnergy, OffsetIsConsistent) {
    const auto s = dressed_ground_state(ang(1), ang(3), ang(-0.7));
    expect_rel(s.offset.angular(), s.energy.angular() - dressed_energy_blockaded(ang(1), ang(3)).angular(), 1e-12);
}

TEST(Depth, PerturbativeBoundsExactInWeakDressing) {
    for (double d : {-100.0, -7.0, 7.0, 100.0})
        for (double ratio = 0.01; ratio < 1.0; ratio += 0.07) {
            const Frequency w = ang(ratio * std::abs(d));
            const double exact = dressing_depth_exact(w, ang(d)).angular();
            const double pert = dressing_depth_perturbative(w, ang(d)).angular();
            EXPECT_EQ(std::signbit(exact), std::signbit(pert));
            EXPECT_LE(std::abs(exact), std::abs(pert));
        }
    expect_rel(dressing_depth_exact(ang(1e-3), ang(1)).angular(), dressing_depth_perturbative(ang(1e-3), ang(1)).angular(),
               1e-5);
}

TEST(Potential, ShapeProperties) {
    const PotentialParams p{ang(1), ang(10), ang(20), 1.5};
    for (auto kind : {PotentialKind::Full, PotentialKind::VanDerWaals, PotentialKind::SingleTerm}) {
        EXPECT_NEAR(std::abs(normalized_potential(1.5e-3, p, kind)), 1.0, 1e-4);
        EXPECT_NEAR(normalized_potential(1.5e3, p, kind), 0.0, 1e-12);
        double prev = normalized_potential(1.5e-2, p, kind);
        for (double r = 1.5e-2; r < 15; r *= 1.02) {
            const double v = normalized_potential(r, p, kind);
            EXPECT_GE(v, prev - 1e-15);
            prev = v;
        }
    }
}

TEST(Potential, VdwAndSingleTermAgreeWhenDetuningEqualsDefect) {
    const PotentialParams p{ang(0.01), ang(10), ang(10), 1.5};
    for (double r = 0.05; r < 10; r *= 1.1)
        EXPECT_NEAR(normalized_potential(r, p, PotentialKind::VanDerWaals),
                    normalized_potential(r, p, PotentialKind::SingleTerm), 1e-3);
}

TEST(Potential, NearOriginExponents) {
    const PotentialParams p{ang(1), ang(10), ang(20), 1.5};
    auto slope = [&](PotentialKind kind) {
        const double r1 = 0.015, r2 = 0.03;
        const double a = 1 - std::abs(normalized_potential(r1, p, kind));
        const double b = 1 - std::abs(normalized_potential(r2, p, kind));
        return std::log(b / a) / std::log(r2 / r1);
    };
    EXPECT_NEAR(slope(PotentialKind::Full), 3.0, 0.3);
    EXPECT_NEAR(slope(PotentialKind::VanDerWaals), 6.0, 0.3);
    EXPECT_NEAR(slope(PotentialKind::SingleTerm), 6.0, 0.3);
}

TEST(FigureOfMerit, WorkedExample) {
    const auto r = figures_of_merit(worked_example());
    expect_rel(r.depth_perturbative.to_khz(), 20.0, 1e-12);
    expect_rel(r.tau_dr_s, 16e-3, 1e-12);
    expect_rel(r.ops_per_atom, 320.0, 1e-12);
    expect_rel(r.f_prime, 640.0, 1e-12);
    expect_rel(r.blockade_radius_m, 6.744733739010395e-6, 1e-12);
    EXPECT_EQ(r.records[0].atoms_floor, 6);
    EXPECT_EQ(r.records[1].atoms_floor, 35);
    EXPECT_EQ(r.records[2].atoms_floor, 160);
    expect_rel(r.records[0].f_closed, 2158.314796483326, 1e-12);
    expect_rel(r.records[1].f_closed, 11433.24418994102, 1e-12);
    expect_rel(r.records[2].f_closed, 51409.45855615985, 1e-12);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(FigureOfMerit, ClosedFormEqualsComposition) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double s = i % 2 ? 1.0 : -1.0;
        DressingParams p{Frequency::from_mhz(1 + 30 * u(rng)), Frequency::from_mhz(s * (50 + 500 * u(rng))),
                         PairInteraction::from_crossover(Frequency::from_mhz(s * (10 + 1000 * u(rng))), (2 + 10 * u(rng)) * 1e-6),
                         (10 + 1000 * u(rng)) * 1e-6, (0.5 + 3 * u(rng)) * 1e-6};
        for (const auto& rec : figures_of_merit(p).records) expect_rel(rec.f_closed, rec.f_composed, 1e-12);
    }
}

TEST(FigureOfMerit, WarnsOutsideWeakDressingAndRejectsOppositeSigns) {
    auto p = worked_example();
    p.rabi = Frequency::from_mhz(150);
    EXPECT_FALSE(figures_of_merit(p).warnings.empty());
    p = worked_example();
    p.detuning = Frequency::from_mhz(100);
    EXPECT_THROW(figures_of_merit(p), DomainError);
    EXPECT_THROW(atoms_in_blockade(4, 1e-6, 1e-6), DomainError);
}

TEST(Scaling, Exponents) {
    const ScalingModel m;
    EXPECT_NEAR(scaling_exponent(m, ScalingQuantity::F1D, 300, 600), 19.0 / 3, 0.05);
    EXPECT_NEAR(scaling_exponent(m, ScalingQuantity::F2D, 300, 600), 20.0 / 3, 0.05);
    EXPECT_NEAR(scaling_exponent(m, ScalingQuantity::F3D, 300, 600), 7.0, 0.05);
    EXPECT_NEAR(scaling_exponent(m, ScalingQuantity::FPrime, 300, 600), 6.0, 1e-12);
    EXPECT_NEAR(scaling_exponent(m, ScalingQuantity::FPrimePrinted, 300, 600), 7.0, 1e-12);
    EXPECT_THROW(scaling_exponent(m, ScalingQuantity::F1D, 40, 600), DomainError);
    EXPECT_THROW(scaling_exponent(m, ScalingQuantity::F1D, 600, 300), DomainError);
}
