#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rydberg {

/// Raised when an input lies outside an operation's domain (singular point,
/// excluded sign combination, non-finite value, empty bracket).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw DomainError(message);
}

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Angular frequency in rad/s.
///
/// Everything inside the library is angular. Quantities quoted as "X/2pi"
/// enter through from_hz()/from_mhz() and leave through to_hz()/to_mhz().
/// Signed values are allowed (detunings, Foerster defects).
class Frequency {
public:
    constexpr Frequency() = default;

    static Frequency from_angular(double rad_per_s) { return Frequency(rad_per_s); }
    static Frequency from_hz(double hz) { return Frequency(two_pi * hz); }
    static Frequency from_khz(double khz) { return from_hz(khz * 1e3); }
    static Frequency from_mhz(double mhz) { return from_hz(mhz * 1e6); }
    static Frequency from_ghz(double ghz) { return from_hz(ghz * 1e9); }

    constexpr double angular() const { return value_; }
    double to_hz() const { return value_ / two_pi; }
    double to_khz() const { return to_hz() * 1e-3; }
    double to_mhz() const { return to_hz() * 1e-6; }

    Frequency abs() const { return Frequency(std::abs(value_)); }

    friend Frequency operator-(Frequency f) { return Frequency(-f.value_); }
    friend Frequency operator+(Frequency a, Frequency b) { return Frequency(a.value_ + b.value_); }
    friend Frequency operator-(Frequency a, Frequency b) { return Frequency(a.value_ - b.value_); }
    friend Frequency operator*(double s, Frequency f) { return Frequency(s * f.value_); }
    friend Frequency operator*(Frequency f, double s) { return Frequency(s * f.value_); }
    friend Frequency operator/(Frequency f, double s) { return Frequency(f.value_ / s); }
    friend double operator/(Frequency a, Frequency b) { return a.value_ / b.value_; }
    friend auto operator<=>(const Frequency&, const Frequency&) = default;

private:
    explicit Frequency(double v) : value_(v) { require_finite(v, "frequency"); }

    double value_ = 0.0;
};

/// CODATA 2018 values, SI units.
struct PhysConstants {
    static constexpr double k_B = 1.380649e-23;              // J/K (exact)
    static constexpr double hbar = 1.054571817e-34;          // J s
    static constexpr double hartree = 4.3597447222071e-18;   // J
    static constexpr double atomic_time = hbar / hartree;    // s
    static constexpr double mu_B = 9.2740100783e-24;         // J/T
    static constexpr double c = 299792458.0;                 // m/s (exact)
    static constexpr double e = 1.602176634e-19;             // C (exact)
    static constexpr double m_e = 9.1093837015e-31;          // kg
    static constexpr double alpha_fs = 7.2973525693e-3;
    static constexpr double bohr_radius = 5.29177210903e-11; // m
    static constexpr double amu = 1.66053906660e-27;         // kg
    // e^2 a0^2 / E_H
    static constexpr double polarizability_au = e * e * bohr_radius * bohr_radius / hartree;
};

/// Angular frequency of light with vacuum wavelength `lambda_m`.
inline Frequency optical_frequency(double lambda_m) {
    require(lambda_m > 0.0, "wavelength must be positive");
    return Frequency::from_angular(two_pi * PhysConstants::c / lambda_m);
}

/// Half the Rydberg level spacing at principal quantum number n, E_H/(2 hbar n^3),
/// which caps both the usable blockade shift and the dressing detuning.
inline Frequency half_level_spacing(double n) {
    require(n > 0.0, "principal quantum number must be positive");
    return Frequency::from_angular(1.0 / (2.0 * PhysConstants::atomic_time * n * n * n));
}

}  // namespace rydberg
