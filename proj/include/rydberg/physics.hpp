#pragma once

#include <cmath>

#include "units.hpp"

namespace rydberg {

/// Blackbody-induced depopulation rate (1/s) of a level with effective
/// principal quantum number n, using the universal 4 alpha^3 k_B T / (3 n^2)
/// atomic-unit rate.
inline double blackbody_rate(double n, double temperature_k) {
    require_finite(n, "n");
    require_finite(temperature_k, "temperature");
    require(temperature_k >= 0.0, "temperature must be non-negative");
    require(n > 0.0, "n must be positive");
    using C = PhysConstants;
    const double kt_hartree = C::k_B * temperature_k / C::hartree;
    const double rate_au = 4.0 * std::pow(C::alpha_fs, 3) * kt_hartree / (3.0 * n * n);
    return rate_au / C::atomic_time;
}

/// Rydberg level lifetime 1/(1/(tau0 n^3) + Gamma_BBR(n, T)), seconds.
inline double rydberg_lifetime(double n, double temperature_k, double tau0_s) {
    require_finite(n, "n");
    require_finite(temperature_k, "temperature");
    require_finite(tau0_s, "tau0");
    require(n >= 10.0, "rydberg_lifetime requires n >= 10");
    require(temperature_k >= 0.0, "temperature must be non-negative");
    require(tau0_s > 0.0, "tau0 must be positive");
    const double radiative = tau0_s * n * n * n;
    if (temperature_k == 0.0) return radiative;
    return 1.0 / (1.0 / radiative + blackbody_rate(n, temperature_k));
}

/// Ponderomotive (free-electron) polarizability -e^2/(m_e omega^2), in atomic units.
inline double free_electron_polarizability(Frequency omega) {
    const double w = omega.angular();
    require(w > 0.0, "free-electron polarizability is singular at omega = 0");
    using C = PhysConstants;
    return -(C::e * C::e) / (C::m_e * w * w) / C::polarizability_au;
}

/// Peak field (T) for a magnetic trap of depth `depth_k` holding a moment `moment_j_per_t`.
inline double magnetic_trap_field(double depth_k, double moment_j_per_t) {
    require(depth_k > 0.0 && std::isfinite(depth_k), "trap depth must be positive");
    require(moment_j_per_t > 0.0 && std::isfinite(moment_j_per_t), "magnetic moment must be positive");
    return PhysConstants::k_B * depth_k / moment_j_per_t;
}

}  // namespace rydberg
