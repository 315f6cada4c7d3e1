#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "units.hpp"

namespace rydberg {

// ---------------------------------------------------------------------------
// Pair interaction

/// Resonant dipole-dipole coefficient C3/hbar, stored as (rad/s) m^3.
class C3Coefficient {
public:
    static C3Coefficient from_angular_m3(double value) { return C3Coefficient(value); }
    /// C3/h quoted as an ordinary frequency, GHz um^3.
    static C3Coefficient from_ghz_um3(double value) { return C3Coefficient(two_pi * value * 1e9 * 1e-18); }

    double angular_m3() const { return value_; }
    double ghz_um3() const { return value_ / (two_pi * 1e9 * 1e-18); }

private:
    explicit C3Coefficient(double v) : value_(v) {
        require(std::isfinite(v) && v != 0.0, "C3 must be finite and nonzero");
    }
    double value_;
};

/// Crossover length between the resonant 1/R^3 and van der Waals 1/R^6
/// regimes: (4 D_kl C3^2 / (hbar^2 delta^2))^(1/6).
inline double crossover_radius(C3Coefficient c3, Frequency defect, double angular_factor) {
    require(defect.angular() != 0.0, "Foerster defect must be nonzero");
    require(angular_factor > 0.0, "angular factor D_kl must be positive");
    const double c = c3.angular_m3();
    const double d = defect.angular();
    return std::pow(4.0 * angular_factor * c * c / (d * d), 1.0 / 6.0);
}

/// C3 that yields crossover radius `rc_m` for the given defect and angular factor.
inline C3Coefficient c3_for_crossover(double rc_m, Frequency defect, double angular_factor) {
    require(rc_m > 0.0, "crossover radius must be positive");
    require(angular_factor > 0.0, "angular factor D_kl must be positive");
    return C3Coefficient::from_angular_m3(std::abs(defect.angular()) * rc_m * rc_m * rc_m /
                                          (2.0 * std::sqrt(angular_factor)));
}

struct PairInteraction {
    Frequency defect;            // Foerster defect delta, signed
    double angular_factor = 12;  // D_kl
    double rc_m = 0.0;           // crossover radius R_c
    std::optional<C3Coefficient> c3;

    static PairInteraction from_crossover(Frequency defect, double rc_m, double angular_factor = 12.0) {
        PairInteraction p{defect, angular_factor, rc_m, std::nullopt};
        p.validate();
        return p;
    }

    static PairInteraction from_c3(Frequency defect, C3Coefficient c3, double angular_factor = 12.0) {
        PairInteraction p{defect, angular_factor, crossover_radius(c3, defect, angular_factor), c3};
        p.validate();
        return p;
    }

    void validate() const {
        require(defect.angular() != 0.0, "Foerster defect must be nonzero");
        require(angular_factor > 0.0, "angular factor D_kl must be positive");
        require(rc_m > 0.0 && std::isfinite(rc_m), "crossover radius must be positive");
        if (c3) {
            const double implied = crossover_radius(*c3, defect, angular_factor);
            require(std::abs(implied - rc_m) <= 1e-6 * rc_m,
                    "C3 and R_c are inconsistent for the given defect and D_kl");
        }
    }
};

/// Pair shift (delta/2)(1 - sqrt(1 + (R_c/R)^6)).
inline Frequency dipole_dipole_shift(double r_m, Frequency defect, double rc_m) {
    require(r_m > 0.0, "pair separation must be positive");
    const double u = std::pow(rc_m / r_m, 6);
    // 1 - sqrt(1+u) written without cancellation for small u
    return Frequency::from_angular(-0.5 * defect.angular() * u / (1.0 + std::sqrt(1.0 + u)));
}

/// Long-range limit -(delta/4)(R_c/R)^6.
inline Frequency vdw_shift(double r_m, Frequency defect, double rc_m) {
    require(r_m > 0.0, "pair separation must be positive");
    return Frequency::from_angular(-0.25 * defect.angular() * std::pow(rc_m / r_m, 6));
}

inline void require_same_sign(Frequency detuning, Frequency defect) {
    require(detuning.angular() != 0.0, "dressing detuning must be nonzero");
    require(std::signbit(detuning.angular()) == std::signbit(defect.angular()),
            "detuning and Foerster defect of opposite sign give an excitation resonance at finite R "
            "(excluded case)");
}

/// Separation where |dipole_dipole_shift| equals |Delta|.
inline double blockade_radius(Frequency detuning, Frequency defect, double rc_m) {
    require_same_sign(detuning, defect);
    const double d = detuning.angular();
    const double f = defect.angular();
    return rc_m * std::cbrt(std::abs(f)) / (std::cbrt(2.0) * std::pow(std::abs(d) * std::abs(d + f), 1.0 / 6.0));
}

/// Length xi = R_c (delta/(8 Delta))^(1/6) of the single-term soft-core approximation.
inline double soft_core_length(Frequency detuning, Frequency defect, double rc_m) {
    require_same_sign(detuning, defect);
    return rc_m * std::pow(defect / (8.0 * detuning), 1.0 / 6.0);
}

// ---------------------------------------------------------------------------
// Dressed ground state

namespace detail {

inline double sign_of(double x) { return std::signbit(x) ? -1.0 : 1.0; }

// -Delta + sign(Delta) sqrt(Delta^2 + w2) without cancellation.
inline double light_shift(double detuning, double w2) {
    const double a = std::abs(detuning);
    const double root = std::sqrt(a * a + w2);
    return w2 == 0.0 ? 0.0 : sign_of(detuning) * w2 / (a + root);
}

}  // namespace detail

/// Two-atom light shift without interaction, Delta_dr(R -> infinity).
inline Frequency dressed_energy_unblockaded(Frequency rabi, Frequency detuning) {
    const double w = rabi.angular();
    return Frequency::from_angular(detail::light_shift(detuning.angular(), w * w));
}

/// Light shift of the blockaded pair, Delta_dr(R -> 0).
inline Frequency dressed_energy_blockaded(Frequency rabi, Frequency detuning) {
    const double w = rabi.angular();
    return Frequency::from_angular(0.5 * detail::light_shift(detuning.angular(), 2.0 * w * w));
}

/// Delta_dr(0) - Delta_dr(infinity).
inline Frequency dressing_depth_exact(Frequency rabi, Frequency detuning) {
    return dressed_energy_blockaded(rabi, detuning) - dressed_energy_unblockaded(rabi, detuning);
}

/// Weak-dressing limit -Omega^4/(8 Delta^3).
inline Frequency dressing_depth_perturbative(Frequency rabi, Frequency detuning) {
    require(detuning.angular() != 0.0, "dressing detuning must be nonzero");
    const double w = rabi.angular();
    const double d = detuning.angular();
    return Frequency::from_angular(-std::pow(w, 4) / (8.0 * d * d * d));
}

struct DressedState {
    Frequency energy;           // Delta_dr
    Frequency offset;           // Delta_dr - Delta_dr(0), free of cancellation
    double ground_overlap = 1;  // |<gg|psi>|
};

namespace detail {

// Symmetric-basis Hamiltonian {|gg>, |+>, |rr>} in units of hbar:
// [[0, a, 0], [a, -Delta, a], [0, a, D]], a = Omega/sqrt2, D = -2 Delta + Delta_dd.
// Eigenvalues lambda obey, with lambda0 = Delta_dr(0) (lambda0 (Delta + lambda0) = a^2)
// and eta = lambda - lambda0,
//   h(eta) = eta (Delta + 2 lambda0 + eta) + (lambda0 + eta) a^2 / (D - lambda0 - eta) = 0.
inline DressedState dressed_state_eigen(double rabi, double detuning, double interaction) {
    const double a = rabi / std::sqrt(2.0);
    const double rr = -2.0 * detuning + interaction;
    const double lambda0 = 0.5 * light_shift(detuning, 2.0 * rabi * rabi);

    if (a == 0.0) return {Frequency{}, Frequency::from_angular(-lambda0), 1.0};

    Eigen::Matrix3d h;
    h << 0.0, a, 0.0,
         a, -detuning, a,
         0.0, a, rr;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(h);
    const auto& vectors = solver.eigenvectors();
    int branch = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(vectors(0, i)) > std::abs(vectors(0, branch))) branch = i;
    const double lambda = solver.eigenvalues()(branch);
    const double overlap = std::abs(vectors(0, branch));

    // Newton polish of eta on the secular equation; the Eigen value carries an
    // absolute error of order eps * |Delta_dd|, which swamps the core offset
    // when Delta_dd is large.
    const double a2 = a * a;
    double eta = lambda - lambda0;
    const double scale = std::abs(detuning) + std::abs(rabi) + std::abs(interaction);
    for (int iter = 0; iter < 8; ++iter) {
        const double gap = rr - lambda0 - eta;
        if (std::abs(gap) < 1e-9 * scale) break;
        const double value = eta * (detuning + 2.0 * lambda0 + eta) + (lambda0 + eta) * a2 / gap;
        const double slope = detuning + 2.0 * lambda0 + 2.0 * eta + a2 / gap + (lambda0 + eta) * a2 / (gap * gap);
        if (slope == 0.0) break;
        const double step = value / slope;
        if (!std::isfinite(step) || std::abs(step) > 1e-6 * scale) break;
        eta -= step;
        if (std::abs(step) <= 1e-17 * (std::abs(eta) + std::abs(lambda0))) break;
    }
    return {Frequency::from_angular(lambda0 + eta), Frequency::from_angular(eta), overlap};
}

}  // namespace detail

/// Dressed ground state of the interacting pair from a direct 3x3 symmetric
/// eigensolve, selecting the eigenvector with the largest |gg> overlap.
inline DressedState dressed_ground_state(Frequency rabi, Frequency detuning, Frequency interaction) {
    return detail::dressed_state_eigen(rabi.angular(), detuning.angular(), interaction.angular());
}

inline Frequency dressed_ground_energy_exact(Frequency rabi, Frequency detuning, Frequency interaction) {
    return dressed_ground_state(rabi, detuning, interaction).energy;
}

struct ClosedFormEnergy {
    Frequency energy;
    double imaginary_residue = 0.0;
    bool branch_ok = true;  // false when |Im| > 1e-9 |Re|
    int branch = 0;         // cube-root branch used, 0..2
};

/// Cubic-root (Cardano) expression for the dressed ground energy:
///   -Delta + Delta_dd/3 + 2^(2/3) P / f + 2^(1/3) f / 6,
///   P = Delta^2 - Delta Delta_dd + Delta_dd^2/3 + Omega^2,
///   f = [A + sqrt(A^2 - 16 (3P)^3)]^(1/3),
///   A = Delta_dd (18 Delta^2 - 18 Delta Delta_dd + 4 Delta_dd^2 - 9 Omega^2).
/// All three cube roots are evaluated; the branch whose eigenvector has the
/// largest |gg> component is returned, matching dressed_ground_state().
inline ClosedFormEnergy dressed_ground_energy_closed_form(Frequency rabi, Frequency detuning,
                                                          Frequency interaction) {
    // Extended precision: the root is a small difference of O(Delta) terms in
    // the weak-dressing regime.
    using real = long double;
    using cplx = std::complex<real>;
    const real w2 = static_cast<real>(rabi.angular()) * rabi.angular();
    const real d = detuning.angular();
    const real v = interaction.angular();

    if (w2 == 0.0L) return {Frequency{}, 0.0, true, 0};

    const real p = d * d - d * v + v * v / 3.0L + w2;
    const real a_term = v * (18.0L * d * d - 18.0L * d * v + 4.0L * v * v - 9.0L * w2);
    const real p3 = 3.0L * p;
    const real disc = a_term * a_term - 16.0L * p3 * p3 * p3;
    cplx root = std::sqrt(cplx(disc, 0.0L));
    // Either sign of the square root yields the same three eigenvalues; take
    // the one that avoids cancellation in A + sqrt(disc).
    if (std::real(std::conj(cplx(a_term, 0.0L)) * root) < 0.0L) root = -root;
    const cplx f0 = std::pow(cplx(a_term, 0.0L) + root, 1.0L / 3.0L);

    const real c23 = std::cbrt(4.0L);  // 2^(2/3)
    const real c13 = std::cbrt(2.0L);
    const real a = std::sqrt(w2 / 2.0L);
    const real rr = -2.0L * d + v;
    const real tau = 2.0L * std::numbers::pi_v<real>;

    ClosedFormEnergy best;
    real best_overlap = -1.0L;
    real best_re = 0.0L;
    for (int k = 0; k < 3; ++k) {
        const cplx fk = f0 * std::polar(1.0L, tau * k / 3.0L);
        const cplx lambda = -d + v / 3.0L + c23 * p / fk + c13 * fk / 6.0L;
        const real re = lambda.real();
        // Tridiagonal eigenvector (1, lambda/a, -lambda/(D - lambda)).
        const real v2 = re / a;
        const real gap = rr - re;
        const real v3 = gap == 0.0L ? INFINITY : -re / gap;
        const real overlap = 1.0L / std::sqrt(1.0L + v2 * v2 + v3 * v3);
        if (overlap > best_overlap) {
            best_overlap = overlap;
            best_re = re;
            best.imaginary_residue = static_cast<double>(std::abs(lambda.imag()));
            best.branch = k;
        }
    }
    best.energy = Frequency::from_angular(static_cast<double>(best_re));
    best.branch_ok = best.imaginary_residue <= 1e-9 * std::abs(static_cast<double>(best_re));
    return best;
}

// ---------------------------------------------------------------------------
// Soft-core potentials

enum class PotentialKind {
    Full,        // dipole-dipole pair shift in the exact dressed energy
    VanDerWaals, // 1/R^6 pair shift in the exact dressed energy
    SingleTerm,  // -xi^6/(R^6 + xi^6)
};

struct PotentialParams {
    Frequency rabi;
    Frequency detuning;
    Frequency defect;
    double rc_m = 0.0;
};

/// [Delta_dr(R) - Delta_dr(inf)] / |Delta_dr(0) - Delta_dr(inf)|; tends to
/// -sign(Delta) at the origin and to 0 at large R.
inline double normalized_potential(double r_m, const PotentialParams& p, PotentialKind kind) {
    require(r_m > 0.0, "pair separation must be positive");
    const Frequency depth = dressing_depth_exact(p.rabi, p.detuning);
    require(depth.angular() != 0.0, "dressing depth vanishes (Omega = 0)");
    if (kind == PotentialKind::SingleTerm) {
        const double xi = soft_core_length(p.detuning, p.defect, p.rc_m);
        const double x6 = std::pow(xi, 6);
        return detail::sign_of(depth.angular()) * x6 / (std::pow(r_m, 6) + x6);
    }
    const Frequency interaction = kind == PotentialKind::Full ? dipole_dipole_shift(r_m, p.defect, p.rc_m)
                                                              : vdw_shift(r_m, p.defect, p.rc_m);
    const DressedState s = dressed_ground_state(p.rabi, p.detuning, interaction);
    // Delta_dr(R) - Delta_dr(inf) = depth + (Delta_dr(R) - Delta_dr(0))
    return (depth.angular() + s.offset.angular()) / std::abs(depth.angular());
}

// ---------------------------------------------------------------------------
// Figures of merit

struct DressingParams {
    Frequency rabi;
    Frequency detuning;  // signed
    PairInteraction pair;
    double tau_s = 0.0;
    double spacing_m = 0.0;  // lattice period d
};

struct FigureOfMerit {
    int dimension = 3;
    Frequency depth;        // |Omega|^4 / (8 |Delta|^3)
    double tau_dr_s = 0.0;  // 2 Delta^2 tau / |Omega|^2
    double atoms = 0.0;     // atoms inside the blockade region
    long atoms_floor = 0;
    double f_closed = 0.0;    // explicit closed form
    double f_composed = 0.0;  // depth tau_dr N / 2pi
    double f_prime = 0.0;
    double f_prime_per_atom = 0.0;
};

struct FigureOfMeritReport {
    std::array<FigureOfMerit, 3> records;
    double blockade_radius_m = 0.0;
    Frequency depth_perturbative;
    Frequency depth_exact;
    double tau_dr_s = 0.0;
    double ops_per_atom = 0.0;  // depth tau_dr / 2pi
    double f_prime = 0.0;       // (2/2pi) depth tau_dr = |Omega|^2 tau / (4 pi |Delta|)
    double f_prime_printed = 0.0;  // |Omega|^2 tau / (4 pi |delta|), kept for comparison
    std::vector<std::string> warnings;
};

/// Atoms of a lattice with period d inside a blockade region of diameter R_b.
inline double atoms_in_blockade(int dimension, double blockade_radius_m, double spacing_m) {
    require(spacing_m > 0.0, "lattice spacing must be positive");
    const double x = blockade_radius_m / (2.0 * spacing_m);
    switch (dimension) {
        case 1: return blockade_radius_m / spacing_m;
        case 2: return std::numbers::pi * x * x;
        case 3: return 4.0 * std::numbers::pi / 3.0 * x * x * x;
        default: throw DomainError("dimension must be 1, 2 or 3");
    }
}

/// Explicit closed forms of F_1D, F_2D, F_3D in terms of magnitudes.
inline double figure_of_merit_closed_form(int dimension, double rabi, double detuning, double defect,
                                          double tau_s, double rc_m, double spacing_m) {
    const double w2 = rabi * rabi;
    const double d = std::abs(detuning);
    const double f = std::abs(defect);
    const double sum = std::abs(detuning + defect);
    const double ratio = rc_m / spacing_m;
    switch (dimension) {
        case 1:
            return w2 * std::cbrt(f) / (std::cbrt(2.0) * 8.0 * std::numbers::pi * std::pow(d, 7.0 / 6.0) *
                                        std::pow(sum, 1.0 / 6.0)) * tau_s * ratio;
        case 2:
            return w2 * std::pow(f, 2.0 / 3.0) / (std::cbrt(4.0) * 32.0 * std::pow(d, 4.0 / 3.0) *
                                                  std::cbrt(sum)) * tau_s * ratio * ratio;
        case 3:
            return w2 * f / (96.0 * std::pow(d, 1.5) * std::sqrt(sum)) * tau_s * ratio * ratio * ratio;
        default: throw DomainError("dimension must be 1, 2 or 3");
    }
}

inline FigureOfMeritReport figures_of_merit(const DressingParams& p) {
    p.pair.validate();
    require(p.tau_s > 0.0, "Rydberg lifetime must be positive");
    require(p.spacing_m > 0.0, "lattice spacing must be positive");
    require(p.rabi.angular() != 0.0, "Rabi frequency must be nonzero");
    require_same_sign(p.detuning, p.pair.defect);

    FigureOfMeritReport out;
    const double w = std::abs(p.rabi.angular());
    const double d = std::abs(p.detuning.angular());
    if (w >= d) out.warnings.push_back("|Omega| >= |Delta|: outside the weak-dressing regime");

    out.blockade_radius_m = blockade_radius(p.detuning, p.pair.defect, p.pair.rc_m);
    out.depth_perturbative = Frequency::from_angular(std::pow(w, 4) / (8.0 * d * d * d));
    out.depth_exact = dressing_depth_exact(p.rabi, p.detuning).abs();
    out.tau_dr_s = 2.0 * d * d / (w * w) * p.tau_s;
    out.ops_per_atom = out.depth_perturbative.angular() * out.tau_dr_s / two_pi;
    out.f_prime = 2.0 * out.ops_per_atom;
    out.f_prime_printed = w * w * p.tau_s / (4.0 * std::numbers::pi * std::abs(p.pair.defect.angular()));

    for (int dim = 1; dim <= 3; ++dim) {
        FigureOfMerit& r = out.records[dim - 1];
        r.dimension = dim;
        r.depth = out.depth_perturbative;
        r.tau_dr_s = out.tau_dr_s;
        r.atoms = atoms_in_blockade(dim, out.blockade_radius_m, p.spacing_m);
        r.atoms_floor = static_cast<long>(std::floor(r.atoms));
        r.f_closed = figure_of_merit_closed_form(dim, w, p.detuning.angular(), p.pair.defect.angular(),
                                                 p.tau_s, p.pair.rc_m, p.spacing_m);
        r.f_composed = out.ops_per_atom * r.atoms;
        r.f_prime = out.f_prime;
        r.f_prime_per_atom = out.f_prime / r.atoms;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Asymptotic n scaling

/// Power-law exponents in n for the dressing parameters (unit prefactors, Omega fixed).
struct ScalingModel {
    double defect = -4.0;
    double lifetime = 3.0;
    double crossover = 8.0 / 3.0;
    double spacing = 2.0;
    double detuning = -3.0;
};

enum class ScalingQuantity { F1D, F2D, F3D, FPrime, FPrimePrinted };

inline double scaled_figure_of_merit(const ScalingModel& m, ScalingQuantity q, double n) {
    const double rabi = 1.0;
    const double defect = std::pow(n, m.defect);
    const double detuning = std::pow(n, m.detuning);
    const double tau = std::pow(n, m.lifetime);
    const double rc = std::pow(n, m.crossover);
    const double spacing = std::pow(n, m.spacing);
    switch (q) {
        case ScalingQuantity::F1D: return figure_of_merit_closed_form(1, rabi, detuning, defect, tau, rc, spacing);
        case ScalingQuantity::F2D: return figure_of_merit_closed_form(2, rabi, detuning, defect, tau, rc, spacing);
        case ScalingQuantity::F3D: return figure_of_merit_closed_form(3, rabi, detuning, defect, tau, rc, spacing);
        case ScalingQuantity::FPrime: return rabi * rabi * tau / (4.0 * std::numbers::pi * detuning);
        case ScalingQuantity::FPrimePrinted: return rabi * rabi * tau / (4.0 * std::numbers::pi * defect);
    }
    throw DomainError("unknown scaling quantity");
}

/// d ln F / d ln n as a log-log secant between n_lo and n_hi.
inline double scaling_exponent(const ScalingModel& m, ScalingQuantity q, double n_lo, double n_hi) {
    require(n_lo >= 50.0 && n_hi > n_lo, "scaling_exponent needs n_hi > n_lo >= 50");
    return std::log(scaled_figure_of_merit(m, q, n_hi) / scaled_figure_of_merit(m, q, n_lo)) /
           std::log(n_hi / n_lo);
}

}  // namespace rydberg
