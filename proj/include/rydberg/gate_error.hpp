#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "units.hpp"
#include "numerics.hpp"

namespace rydberg {

/// A gate error together with the terms that make it up.
struct GateErrorBudget {
    struct Term {
        std::string name;
        double value = 0.0;
    };

    double total = 0.0;
    std::vector<Term> terms;
    std::vector<std::string> warnings;

    void add(std::string name, double value) {
        terms.push_back({std::move(name), value});
        total += value;
    }

    /// Name of the largest term, empty when there are none.
    std::string dominant() const {
        auto it = std::max_element(terms.begin(), terms.end(),
                                   [](const Term& a, const Term& b) { return a.value < b.value; });
        return it == terms.end() ? std::string{} : it->name;
    }
};

namespace detail {
inline void require_positive(Frequency f, const char* what) {
    require(f.angular() > 0.0, std::string(what) + " must be positive");
}
inline void require_positive(double x, const char* what) {
    require(x > 0.0 && std::isfinite(x), std::string(what) + " must be positive");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Blockade gate

/// Two-term error model of the pi-2pi-pi blockade gate at Rabi frequency Omega:
/// spontaneous emission 7pi/(4 Omega tau) plus blockade leakage Omega^2/(8 B^2).
/// Its minimum over Omega reproduces optimal_rabi() and blockade_gate_error().
inline double blockade_error_at_rabi(Frequency rabi, Frequency blockade, double tau_s) {
    const double w = rabi.angular();
    const double b = blockade.angular();
    return 7.0 * std::numbers::pi / (4.0 * w * tau_s) + w * w / (8.0 * b * b);
}

inline Frequency optimal_rabi(Frequency blockade, double tau_s) {
    detail::require_positive(blockade, "blockade shift");
    detail::require_positive(tau_s, "lifetime");
    const double b = blockade.angular();
    return Frequency::from_angular(std::cbrt(7.0 * std::numbers::pi * b * b / tau_s));
}

inline double blockade_gate_error(Frequency blockade, double tau_s) {
    detail::require_positive(blockade, "blockade shift");
    detail::require_positive(tau_s, "lifetime");
    const double coefficient = 3.0 * std::pow(7.0 * std::numbers::pi, 2.0 / 3.0) / 8.0;
    return coefficient * std::pow(blockade.angular() * tau_s, -2.0 / 3.0);
}

/// Blockade gate error split into its spontaneous-emission and leakage parts
/// at the optimal Rabi frequency (2/3 and 1/3 of the total).
inline GateErrorBudget blockade_gate_budget(Frequency blockade, double tau_s) {
    const Frequency rabi = optimal_rabi(blockade, tau_s);
    GateErrorBudget budget;
    budget.add("spontaneous", 7.0 * std::numbers::pi / (4.0 * rabi.angular() * tau_s));
    const double ratio = rabi / blockade;
    budget.add("blockade_leakage", ratio * ratio / 8.0);
    if (blockade.angular() * tau_s < 10.0)
        budget.warnings.push_back("B*tau < 10: outside the strong-blockade regime of the model");
    return budget;
}

/// Lower bound 2/(B tau) on any gate creating one unit of entanglement.
inline double entanglement_error_bound(Frequency blockade, double tau_s) {
    detail::require_positive(blockade, "blockade shift");
    detail::require_positive(tau_s, "lifetime");
    return 2.0 / (blockade.angular() * tau_s);
}

/// n-independent blockade floor reached when B = E_H/(2 hbar n^3) and tau = tau0 n^3.
inline double asymptotic_blockade_floor(double tau0_s) {
    detail::require_positive(tau0_s, "tau0");
    const double coefficient = 3.0 * std::pow(14.0 * std::numbers::pi, 2.0 / 3.0) / 8.0;
    return coefficient * std::pow(PhysConstants::atomic_time / tau0_s, 2.0 / 3.0);
}

// ---------------------------------------------------------------------------
// Interaction gate

inline double interaction_gate_error(Frequency vdd, double tau_s, Frequency qubit_freq) {
    detail::require_positive(vdd, "dipolar interaction");
    detail::require_positive(tau_s, "lifetime");
    detail::require_positive(qubit_freq, "qubit frequency");
    return std::numbers::pi / (vdd.angular() * tau_s) +
           5.0 * vdd.angular() / (std::sqrt(3.0) * qubit_freq.angular());
}

/// V_dd minimizing interaction_gate_error(): sqrt(pi sqrt3 omega_q / (5 tau)).
inline Frequency interaction_optimal_vdd(double tau_s, Frequency qubit_freq) {
    detail::require_positive(tau_s, "lifetime");
    detail::require_positive(qubit_freq, "qubit frequency");
    return Frequency::from_angular(
        std::sqrt(std::numbers::pi * std::sqrt(3.0) * qubit_freq.angular() / (5.0 * tau_s)));
}

inline double interaction_gate_error_min(double tau_s, Frequency qubit_freq) {
    detail::require_positive(tau_s, "lifetime");
    detail::require_positive(qubit_freq, "qubit frequency");
    return 2.0 * std::sqrt(5.0 * std::numbers::pi / (std::sqrt(3.0) * qubit_freq.angular() * tau_s));
}

inline GateErrorBudget interaction_gate_budget(Frequency vdd, double tau_s, Frequency qubit_freq) {
    GateErrorBudget budget;
    budget.add("spontaneous", std::numbers::pi / (vdd.angular() * tau_s));
    budget.add("qubit_frequency_leakage", interaction_gate_error(vdd, tau_s, qubit_freq) - budget.total);
    return budget;
}

// ---------------------------------------------------------------------------
// Dressing gate

/// Spontaneous emission 8 pi Delta/(Omega^2 tau) plus leakage Omega^2/Delta^2.
inline double dressing_error_at_rabi(Frequency rabi, Frequency detuning, double tau_s) {
    const double w2 = rabi.angular() * rabi.angular();
    const double d = std::abs(detuning.angular());
    return 8.0 * std::numbers::pi * d / (w2 * tau_s) + w2 / (d * d);
}

inline double dressing_gate_error(Frequency detuning, double tau_s) {
    detail::require_positive(detuning.abs(), "dressing detuning");
    detail::require_positive(tau_s, "lifetime");
    return std::pow(2.0, 2.5) * std::sqrt(std::numbers::pi) /
           std::sqrt(std::abs(detuning.angular()) * tau_s);
}

inline GateErrorBudget dressing_gate_budget(Frequency detuning, double tau_s) {
    const double e = dressing_gate_error(detuning, tau_s);
    GateErrorBudget budget;
    // The two terms are equal at the optimum.
    budget.add("spontaneous", e / 2.0);
    budget.add("blockade_leakage", e / 2.0);
    return budget;
}

/// Minimum Rydberg lifetime keeping the spontaneous-emission error of a Bell
/// state CNOT below epsilon: the integrated Rydberg population is 7 t_pi / 4.
inline double spontaneous_budget(double t_pi_s, double epsilon) {
    detail::require_positive(t_pi_s, "pi-pulse time");
    detail::require_positive(epsilon, "spontaneous-emission error");
    return 1.75 * t_pi_s / epsilon;
}

// ---------------------------------------------------------------------------
// Doppler dephasing

struct DopplerInputs {
    double wavevector = 0.0;  // 1/m
    double temperature_k = 0.0;
    double time_s = 0.0;
    double mass_kg = 0.0;

    void validate() const {
        require(wavevector >= 0.0 && temperature_k >= 0.0 && time_s >= 0.0,
                "Doppler inputs must be non-negative");
        require(mass_kg > 0.0, "mass must be positive");
        require(std::isfinite(wavevector) && std::isfinite(temperature_k) && std::isfinite(time_s) &&
                    std::isfinite(mass_kg),
                "Doppler inputs must be finite");
    }

    double exponent() const {
        return wavevector * wavevector * PhysConstants::k_B * temperature_k * time_s * time_s /
               (2.0 * mass_kg);
    }
};

/// 1 - F_D, evaluated without cancellation.
inline double doppler_infidelity(const DopplerInputs& in) {
    in.validate();
    return -std::expm1(-in.exponent()) / 2.0;
}

inline double doppler_fidelity(const DopplerInputs& in) {
    in.validate();
    return (1.0 + std::exp(-in.exponent())) / 2.0;
}

// ---------------------------------------------------------------------------
// Stark budgets

/// Population left in the ground state after a nominal pi pulse detuned by
/// Delta: 1 - (Omega^2/Omega'^2) sin^2(pi Omega'/(2 Omega)), Omega'^2 = Omega^2 + Delta^2.
inline double pi_pulse_error(Frequency rabi, Frequency detuning) {
    detail::require_positive(rabi, "Rabi frequency");
    const double x = detuning / rabi;
    const double root = std::sqrt(1.0 + x * x);
    // sin^2(pi root/2) = 1 - sin^2(theta), theta = pi (root - 1)/2
    const double s = std::sin(std::numbers::pi * x * x / (2.0 * (root + 1.0)));
    return (x * x + s * s) / (1.0 + x * x);
}

/// Largest detuning (Delta > 0) keeping the pi-pulse error at epsilon, from
/// exact inversion of pi_pulse_error().
inline Frequency detuning_budget(Frequency rabi, double epsilon) {
    detail::require_positive(rabi, "Rabi frequency");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    // pi_pulse_error rises monotonically from 0 at Delta = 0 to 1 at Delta = sqrt(3) Omega.
    auto residual = [&](double x) {
        return pi_pulse_error(rabi, Frequency::from_angular(x * rabi.angular())) - epsilon;
    };
    const double x = numerics::find_root(residual, 0.0, std::sqrt(3.0), 1e-13);
    return Frequency::from_angular(x * rabi.angular());
}

enum class StarkConvention {
    FullQuadratic,  // shift = alpha0 E^2
    HalfQuadratic,  // shift = alpha0 E^2 / 2
};

/// Field (V/cm) at which a scalar Stark shift reaches the detuning budget.
/// `alpha0_ghz` is in GHz/(V/cm)^2 with the shift in ordinary frequency.
inline double field_budget(Frequency max_detuning, double alpha0_ghz,
                           StarkConvention convention = StarkConvention::FullQuadratic) {
    require(alpha0_ghz != 0.0 && std::isfinite(alpha0_ghz), "alpha0 must be nonzero");
    detail::require_positive(max_detuning, "detuning budget");
    const double shift_hz = max_detuning.to_hz();
    const double alpha_hz = std::abs(alpha0_ghz) * 1e9;
    const double factor = convention == StarkConvention::HalfQuadratic ? 2.0 : 1.0;
    return std::sqrt(factor * shift_hz / alpha_hz);
}

struct StarkBudget {
    Frequency rabi;
    double epsilon = 0.0;
    double alpha0_ghz = 0.0;
    Frequency max_detuning;
    double max_field_v_per_cm = 0.0;
};

inline StarkBudget stark_budget(Frequency rabi, double epsilon, double alpha0_ghz,
                                StarkConvention convention = StarkConvention::FullQuadratic) {
    StarkBudget b;
    b.rabi = rabi;
    b.epsilon = epsilon;
    b.alpha0_ghz = alpha0_ghz;
    b.max_detuning = detuning_budget(rabi, epsilon);
    b.max_field_v_per_cm = field_budget(b.max_detuning, alpha0_ghz, convention);
    return b;
}

}  // namespace rydberg
