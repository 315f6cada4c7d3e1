#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <random>
#include <vector>

#include "units.hpp"

namespace rydberg {

/// Symbols of the atom-loss budget. t_qec defaults to 0.1 ms per code qubit.
struct LossBudget {
    int n_code = 1;
    int n_phys = 1;
    double t_qec_s = 0.0;
    double epsilon = 0.0;
    double tau_vac_s = 0.0;

    static double default_t_qec(int n_code) { return 0.1e-3 * n_code; }

    void validate() const {
        require(n_code >= 1 && n_phys >= 1, "qubit counts must be >= 1");
        require(t_qec_s > 0.0, "t_qec must be positive");
        require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
        require(tau_vac_s > 0.0, "tau_vac must be positive");
    }
};

struct LossProbability {
    double value = 0.0;
    /// Set when the linearized N(1 - e^{-t/tau}) exceeds 1, i.e. the budget
    /// model has left its regime of validity.
    bool exceeds_unity = false;
};

inline LossProbability loss_probability(int n_code, double t_s, double tau_vac_s) {
    require(n_code >= 1, "n_code must be >= 1");
    require(t_s >= 0.0 && std::isfinite(t_s), "time must be non-negative");
    require(tau_vac_s > 0.0 && std::isfinite(tau_vac_s), "tau_vac must be positive");
    const double p = -n_code * std::expm1(-t_s / tau_vac_s);
    return {p, p > 1.0};
}

/// Vacuum lifetime at which N_code atoms survive one QEC cycle with loss probability epsilon.
inline double required_vacuum_lifetime(int n_code, double t_qec_s, double epsilon) {
    require(epsilon != 0.0, "epsilon = 0 requires an infinite vacuum lifetime");
    require(n_code >= 1, "n_code must be >= 1");
    require(t_qec_s > 0.0, "t_qec must be positive");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    return n_code * t_qec_s / epsilon;
}

/// Reload rate (1/s) needed to replace lost atoms in an array of N_phys sites.
inline double required_reload_rate(int n_phys, double tau_vac_s, double epsilon) {
    require(n_phys >= 1, "n_phys must be >= 1");
    require(tau_vac_s > 0.0, "tau_vac must be positive");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    return n_phys / (tau_vac_s * epsilon);
}

struct MonteCarloEstimate {
    long trials = 0;
    long hits = 0;
    double estimate = 0.0;
    double standard_error = 0.0;
};

namespace detail {

// Uniform on [0, 1) from the top 53 bits; fixed across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline long count_losses(int n_code, double tau_vac_s, double t_s, long trials,
                         std::uint64_t seed, std::uint64_t partition) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(partition)};
    std::mt19937_64 rng(seq);
    long hits = 0;
    for (long trial = 0; trial < trials; ++trial) {
        bool lost = false;
        for (int atom = 0; atom < n_code; ++atom) {
            const double lifetime = -tau_vac_s * std::log1p(-unit_uniform(rng));
            lost = lost || lifetime < t_s;
        }
        hits += lost ? 1 : 0;
    }
    return hits;
}

}  // namespace detail

/// Fraction of trials in which at least one of N_code atoms (i.i.d. exponential
/// lifetimes) is lost before t. Trials are split into fixed partitions seeded
/// from (seed, partition index), so the result does not depend on `workers`.
inline MonteCarloEstimate simulate_loss(int n_code, double tau_vac_s, double t_s, long trials,
                                        std::uint64_t seed, int workers = 1) {
    require(n_code >= 1, "n_code must be >= 1");
    require(tau_vac_s > 0.0, "tau_vac must be positive");
    require(t_s >= 0.0, "time must be non-negative");
    require(trials >= 1000, "simulate_loss needs at least 1000 trials");
    require(workers >= 1, "workers must be >= 1");

    constexpr long partitions = 16;
    std::vector<long> sizes(partitions, trials / partitions);
    for (long i = 0; i < trials % partitions; ++i) ++sizes[i];

    std::vector<long> hits(partitions, 0);
    if (workers == 1) {
        for (long p = 0; p < partitions; ++p)
            hits[p] = detail::count_losses(n_code, tau_vac_s, t_s, sizes[p], seed, p);
    } else {
        std::vector<std::future<long>> jobs;
        for (long p = 0; p < partitions; ++p)
            jobs.push_back(std::async(std::launch::async, detail::count_losses, n_code, tau_vac_s,
                                      t_s, sizes[p], seed, static_cast<std::uint64_t>(p)));
        for (long p = 0; p < partitions; ++p) hits[p] = jobs[p].get();
    }

    MonteCarloEstimate out;
    out.trials = trials;
    for (long h : hits) out.hits += h;
    out.estimate = static_cast<double>(out.hits) / trials;
    out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / trials);
    return out;
}

struct CrosstalkEstimate {
    double wavelength_m = 0.0;
    double spacing_m = 0.0;
    double numerical_aperture = 0.0;
    double efficiency = 0.0;
    double cross_section_m2 = 0.0;
    double eta_abs = 0.0;  // probability a scattered photon is absorbed by a neighbour
    double eta_det = 0.0;  // probability it is detected
    double ratio = 0.0;
};

/// Solid-angle fraction (1 - cos theta)/2 collected by a lens with sin theta = NA.
inline double collection_fraction(double numerical_aperture) {
    require(numerical_aperture > 0.0 && numerical_aperture <= 1.0,
            "numerical aperture must lie in (0, 1]");
    return (1.0 - std::sqrt(1.0 - numerical_aperture * numerical_aperture)) / 2.0;
}

inline CrosstalkEstimate measurement_crosstalk(double wavelength_m, double spacing_m,
                                               double numerical_aperture, double efficiency) {
    require(wavelength_m > 0.0, "wavelength must be positive");
    require(numerical_aperture < 1.0, "numerical aperture must be < 1");
    require(efficiency > 0.0 && efficiency <= 1.0, "efficiency must lie in (0, 1]");
    require(spacing_m > wavelength_m / 2.0, "qubit spacing must exceed half a wavelength");

    CrosstalkEstimate x;
    x.wavelength_m = wavelength_m;
    x.spacing_m = spacing_m;
    x.numerical_aperture = numerical_aperture;
    x.efficiency = efficiency;
    x.cross_section_m2 = 3.0 / two_pi * wavelength_m * wavelength_m;
    x.eta_abs = x.cross_section_m2 / (2.0 * two_pi * spacing_m * spacing_m);
    x.eta_det = efficiency * collection_fraction(numerical_aperture);
    x.ratio = x.eta_abs / x.eta_det;
    return x;
}

}  // namespace rydberg
