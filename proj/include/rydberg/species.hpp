#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "units.hpp"

namespace rydberg {

/// One laser leg of a Rydberg excitation path. `sign` is +1 for a beam
/// co-propagating with the first leg and -1 for a counter-propagating one.
struct ExcitationLeg {
    double wavelength_m = 0.0;
    int sign = 1;
};

class ExcitationScheme {
public:
    ExcitationScheme(std::string label, std::vector<ExcitationLeg> legs)
        : label_(std::move(label)), legs_(std::move(legs)) {
        require(!legs_.empty(), "excitation scheme '" + label_ + "' has no wavelengths");
        for (const auto& leg : legs_) {
            require(leg.wavelength_m > 0.0 && std::isfinite(leg.wavelength_m),
                    "excitation wavelength must be positive");
            require(leg.sign == 1 || leg.sign == -1, "propagation sign must be +1 or -1");
        }
    }

    const std::string& label() const { return label_; }
    const std::vector<ExcitationLeg>& legs() const { return legs_; }

    /// |sum_i sign_i 2pi/lambda_i| in 1/m.
    double effective_k() const {
        double k = 0.0;
        for (const auto& leg : legs_) k += leg.sign * two_pi / leg.wavelength_m;
        return std::abs(k);
    }

private:
    std::string label_;
    std::vector<ExcitationLeg> legs_;
};

/// Static polarizability of a named Rydberg state, GHz/(V/cm)^2.
struct StatePolarizability {
    std::string state;
    double alpha0 = 0.0;
    double alpha2 = 0.0;
};

struct Species {
    std::string name;
    double mass_kg = 0.0;
    double tau0_s = 0.0;  // low-l lifetime coefficient, tau = tau0 n^3
    Frequency qubit_freq;
    std::vector<ExcitationScheme> schemes;
    std::vector<StatePolarizability> polarizabilities;

    void validate() const {
        require(!name.empty(), "species name must be non-empty");
        require(mass_kg > 0.0 && std::isfinite(mass_kg), "species mass must be positive");
        require(tau0_s > 0.0 && std::isfinite(tau0_s), "species tau0 must be positive");
    }

    const ExcitationScheme& scheme(const std::string& label) const {
        for (const auto& s : schemes)
            if (s.label() == label) return s;
        throw DomainError("species " + name + " has no excitation scheme '" + label + "'");
    }

    std::optional<StatePolarizability> polarizability(const std::string& state) const {
        for (const auto& p : polarizabilities)
            if (p.state == state) return p;
        return std::nullopt;
    }
};

inline Species cesium() {
    Species cs;
    cs.name = "Cs";
    cs.mass_kg = 132.905451961 * PhysConstants::amu;
    cs.tau0_s = 3.3e-9;
    cs.qubit_freq = Frequency::from_ghz(9.192631770);
    cs.schemes = {
        ExcitationScheme("one-photon", {{319.0e-9, 1}}),
        ExcitationScheme("two-photon-6p1/2", {{894.6e-9, 1}, {495.8e-9, -1}}),
    };
    cs.polarizabilities = {{"100p3/2", 205.0, -17.8}};
    cs.validate();
    return cs;
}

inline Species rubidium() {
    Species rb;
    rb.name = "Rb";
    rb.mass_kg = 86.909180531 * PhysConstants::amu;
    rb.tau0_s = 2.76e-9;
    rb.qubit_freq = Frequency::from_ghz(6.834682611);
    rb.schemes = {
        ExcitationScheme("one-photon", {{297.0e-9, 1}}),
        ExcitationScheme("two-photon-5p3/2", {{780.2e-9, 1}, {479.8e-9, -1}}),
    };
    rb.validate();
    return rb;
}

/// Parse a species record. Keys: name, mass_kg, tau0_ns, qubit_freq_ghz,
/// schemes[] {label, wavelengths_nm[], signs[]}, polarizabilities[]
/// {state, alpha0, alpha2}. `schemes` and `polarizabilities` are optional.
inline Species species_from_json(const nlohmann::json& j) {
    try {
        Species s;
        s.name = j.at("name").get<std::string>();
        s.mass_kg = j.at("mass_kg").get<double>();
        s.tau0_s = j.at("tau0_ns").get<double>() * 1e-9;
        s.qubit_freq = Frequency::from_ghz(j.at("qubit_freq_ghz").get<double>());
        for (const auto& js : j.value("schemes", nlohmann::json::array())) {
            auto wavelengths = js.at("wavelengths_nm").get<std::vector<double>>();
            auto signs = js.contains("signs") ? js.at("signs").get<std::vector<int>>()
                                              : std::vector<int>(wavelengths.size(), 1);
            require(signs.size() == wavelengths.size(),
                    "scheme signs and wavelengths_nm differ in length");
            std::vector<ExcitationLeg> legs;
            for (std::size_t i = 0; i < wavelengths.size(); ++i)
                legs.push_back({wavelengths[i] * 1e-9, signs[i]});
            s.schemes.emplace_back(js.at("label").get<std::string>(), std::move(legs));
        }
        for (const auto& jp : j.value("polarizabilities", nlohmann::json::array())) {
            s.polarizabilities.push_back({jp.at("state").get<std::string>(),
                                          jp.at("alpha0").get<double>(),
                                          jp.value("alpha2", 0.0)});
        }
        s.validate();
        return s;
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError(std::string("malformed species record: ") + ex.what());
    }
}

inline Species load_species(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open species file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError("cannot parse " + path + ": " + ex.what());
    }
    return species_from_json(j.contains("species") ? j.at("species") : j);
}

/// Built-in species by case-insensitive name ("cs", "rb").
inline Species builtin_species(std::string name) {
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (name == "cs" || name == "cesium" || name == "caesium") return cesium();
    if (name == "rb" || name == "rubidium") return rubidium();
    throw DomainError("unknown species '" + name + "' (built-ins: cs, rb)");
}

}  // namespace rydberg
