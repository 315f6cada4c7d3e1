#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "array_budget.hpp"
#include "dressing.hpp"
#include "gate_error.hpp"
#include "numerics.hpp"
#include "physics.hpp"
#include "scan.hpp"
#include "species.hpp"

namespace rydberg {

struct ReproductionEntry {
    std::string label;
    double computed = 0.0;
    double reference = 0.0;  // published value, or the target of a property check
    double lower = 0.0;      // accepted band
    double upper = 0.0;
    bool pass = false;

    double relative_deviation() const {
        return reference == 0.0 ? computed : (computed - reference) / std::abs(reference);
    }
};

struct ReproductionReport {
    std::vector<ReproductionEntry> entries;

    bool pass() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
    }

    const ReproductionEntry& entry(const std::string& label) const {
        for (const auto& e : entries)
            if (e.label == label) return e;
        throw DomainError("no report entry '" + label + "'");
    }

    void add(std::string label, double computed, double reference, double lower, double upper) {
        const bool ok = std::isfinite(computed) && computed >= lower && computed <= upper;
        entries.push_back({std::move(label), computed, reference, lower, upper, ok});
    }

    /// Band given as relative tolerance around the reference.
    void add_relative(std::string label, double computed, double reference, double rel_tol) {
        const double span = std::abs(reference) * rel_tol;
        add(std::move(label), computed, reference, reference - span, reference + span);
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : entries) {
            j["entries"].push_back({{"label", e.label},
                                    {"computed", e.computed},
                                    {"paper_value", e.reference},
                                    {"relative_deviation", e.relative_deviation()},
                                    {"tolerance", {{"lower", e.lower}, {"upper", e.upper}}},
                                    {"pass", e.pass}});
        }
        j["pass"] = pass();
        return j;
    }
};

struct ReproduceOptions {
    Species species = cesium();
    std::uint64_t seed = 20161216;
};

namespace detail {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace detail

/// The Cs n = 100 dressing parameters, both detunings taken red (negative).
inline DressingParams cs_worked_dressing_example() {
    return DressingParams{Frequency::from_mhz(20.0), Frequency::from_mhz(-100.0),
                          PairInteraction::from_crossover(Frequency::from_mhz(-200.0), 8.1e-6, 12.0),
                          320e-6, 1e-6};
}

/// Soft-core comparison point: Omega : Delta : delta = 1 : 10 : 20, R_c = 1.5. Only ratios matter.
inline PotentialParams soft_core_example() {
    return {Frequency::from_angular(two_pi * 1.0), Frequency::from_angular(two_pi * 10.0),
            Frequency::from_angular(two_pi * 20.0), 1.5};
}

/// Least-squares slope of ln(1 - |V|) against ln R over [R_c/100, R_c/20].
inline double core_exponent(const PotentialParams& p, PotentialKind kind) {
    constexpr int points = 24;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < points; ++i) {
        const double r = p.rc_m / 100.0 * std::pow(5.0, static_cast<double>(i) / (points - 1));
        const double x = std::log(r);
        const double y = std::log(1.0 - std::abs(normalized_potential(r, p, kind)));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

inline ReproductionReport reproduce(const ReproduceOptions& opt = {}) {
    ReproductionReport rep;
    const Species& sp = opt.species;
    std::mt19937_64 rng(opt.seed);

    // Loss and reload budgets
    rep.add_relative("vacuum lifetime N_code=20, t_qec=2 ms, eps=1e-4 (s)",
                     required_vacuum_lifetime(20, 2e-3, 1e-4), 400.0, 1e-12);
    rep.add_relative("reload rate N_phys=2000, tau_vac=400 s, eps=1e-4 (1/s)",
                     required_reload_rate(2000, 400.0, 1e-4), 5e4, 1e-12);

    // Crosstalk
    const auto xt = measurement_crosstalk(852e-9, 5 * 852e-9, 0.5, 0.5);
    rep.add("crosstalk eta_abs (d=5 lambda)", xt.eta_abs, 0.0015, 0.0014, 0.0016);
    rep.add("crosstalk eta_det (NA=0.5, eff=0.5)", xt.eta_det, 0.034, 0.033, 0.035);
    rep.add("crosstalk ratio eta_abs/eta_det", xt.ratio, 0.04, 0.040, 0.050);

    // Gate-error floors
    rep.add("asymptotic blockade floor", asymptotic_blockade_floor(sp.tau0_s), 2e-5, 1.5e-5, 2.5e-5);
    const auto dressing_floor = [&](double n) {
        return dressing_gate_error(half_level_spacing(n), sp.tau0_s * n * n * n);
    };
    rep.add("dressing gate floor", dressing_floor(100), 0.0013, 1.2e-3, 1.4e-3);
    {
        double spread_b = 0, spread_d = 0;
        const double ref_b = asymptotic_blockade_floor(sp.tau0_s);
        const double ref_d = dressing_floor(100);
        for (double n : {50.0, 100.0, 200.0}) {
            const double eb = blockade_gate_error(half_level_spacing(n), sp.tau0_s * n * n * n);
            spread_b = std::max(spread_b, detail::rel_diff(eb, ref_b));
            spread_d = std::max(spread_d, detail::rel_diff(dressing_floor(n), ref_d));
        }
        rep.add("blockade floor n-independence (max rel. variation)", spread_b, 0.0, 0.0, 1e-10);
        rep.add("dressing floor n-independence (max rel. variation)", spread_d, 0.0, 0.0, 1e-10);
    }

    // Minimizer oracle
    {
        double worst_rabi = 0, worst_error = 0, worst_dress = 0;
        for (int i = 0; i < 100; ++i) {
            const Frequency b = Frequency::from_angular(std::pow(10.0, detail::uniform(rng, 6.0, 12.0)));
            const double tau = std::pow(10.0, detail::uniform(rng, -6.0, -2.0));
            auto cost = [&](double w) { return blockade_error_at_rabi(Frequency::from_angular(w), b, tau); };
            const auto m = numerics::minimize_log(cost, 1e-3 / tau, 1e3 * b.angular());
            worst_rabi = std::max(worst_rabi, detail::rel_diff(m.x, optimal_rabi(b, tau).angular()));
            worst_error = std::max(worst_error, detail::rel_diff(m.value, blockade_gate_error(b, tau)));

            const Frequency d = Frequency::from_angular(std::pow(10.0, detail::uniform(rng, 6.0, 12.0)));
            auto dcost = [&](double w) { return dressing_error_at_rabi(Frequency::from_angular(w), d, tau); };
            const auto md = numerics::minimize_log(dcost, 1e-3 / tau, 1e3 * d.angular());
            worst_dress = std::max(worst_dress, detail::rel_diff(md.value, dressing_gate_error(d, tau)));
        }
        rep.add("minimizer vs optimal Rabi frequency (max rel. dev.)", worst_rabi, 0.0, 0.0, 1e-6);
        rep.add("minimizer vs blockade gate error (max rel. dev.)", worst_error, 0.0, 0.0, 1e-6);
        rep.add("minimizer vs dressing gate error (max rel. dev.)", worst_dress, 0.0, 0.0, 1e-6);
    }

    // Magnetic trap
    rep.add("magnetic trap field, 4 K depth (T)", magnetic_trap_field(4.0, PhysConstants::mu_B), 6.0, 5.8, 6.1);
    rep.add("magnetic trap field, 10 mK depth (mT)", 1e3 * magnetic_trap_field(0.010, PhysConstants::mu_B),
            15.0, 14.5, 15.2);

    // Stark field budget
    rep.add("field budget, 90 kHz and alpha0=205 GHz/(V/cm)^2 (V/cm)",
            field_budget(Frequency::from_khz(90.0), 205.0), 6.6e-4, 6.5e-4, 6.7e-4);

    // Dressing worked example
    {
        const auto fom = figures_of_merit(cs_worked_dressing_example());
        rep.add_relative("dressing depth/2pi (kHz)", fom.depth_perturbative.to_khz(), 20.0, 0.02);
        rep.add_relative("tau_dr (ms)", fom.tau_dr_s * 1e3, 16.0, 0.01);
        rep.add_relative("operations per atom", fom.ops_per_atom, 320.0, 0.03);
        const double n_ref[3] = {6, 35, 160};
        const double f_ref[3] = {2200, 11000, 51000};
        const double fn_ref[3] = {95, 18, 4};
        for (int k = 0; k < 3; ++k) {
            const auto& r = fom.records[k];
            const std::string dim = std::to_string(k + 1) + "D";
            rep.add("N_" + dim + " (floored)", static_cast<double>(r.atoms_floor), n_ref[k], n_ref[k], n_ref[k]);
            rep.add_relative("F_" + dim, r.f_closed, f_ref[k], 0.05);
        }
        rep.add_relative("F'", fom.f_prime, 640.0, 0.02);
        for (int k = 0; k < 3; ++k)
            rep.add_relative("F'/N_" + std::to_string(k + 1) + "D", fom.records[k].f_prime_per_atom, fn_ref[k], 0.10);
    }

    // Blockade radius identities
    {
        const double rc = 8.1e-6;
        const Frequency d = Frequency::from_mhz(-150.0);
        rep.add("R_b(Delta=delta) * sqrt2 / R_c - 1", blockade_radius(d, d, rc) * std::sqrt(2.0) / rc - 1.0,
                0.0, -1e-12, 1e-12);
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const double sign = i % 2 ? 1.0 : -1.0;
            const Frequency det = Frequency::from_mhz(sign * detail::uniform(rng, 10.0, 1000.0));
            const Frequency def = Frequency::from_mhz(sign * detail::uniform(rng, 10.0, 2000.0));
            const double rb = blockade_radius(det, def, rc);
            worst = std::max(worst, detail::rel_diff(dipole_dipole_shift(rb, def, rc).abs().angular(),
                                                     det.abs().angular()));
        }
        rep.add("|Delta_dd(R_b)| = |Delta| round trip (max rel. dev.)", worst, 0.0, 0.0, 1e-9);
    }

    // Eigensolver vs closed form
    {
        double worst = 0;
        bool branches_ok = true;
        for (int i = 0; i < 10000; ++i) {
            const double sign = i % 2 ? 1.0 : -1.0;
            const double d = sign * two_pi * 1e8;
            const Frequency rabi = Frequency::from_angular(std::abs(d) * detail::uniform(rng, 0.01, 2.0));
            const Frequency det = Frequency::from_angular(d);
            const Frequency vdd = Frequency::from_angular(d * detail::uniform(rng, -10.0, 10.0));
            const double exact = dressed_ground_energy_exact(rabi, det, vdd).angular();
            const auto closed = dressed_ground_energy_closed_form(rabi, det, vdd);
            branches_ok = branches_ok && closed.branch_ok;
            worst = std::max(worst, detail::rel_diff(closed.energy.angular(), exact));
        }
        rep.add("closed-form vs eigensolver dressed energy (max rel. dev.)", worst, 0.0, 0.0, 1e-9);
        rep.add("closed-form branch flags clear (1 = all clear)", branches_ok ? 1.0 : 0.0, 1.0, 1.0, 1.0);

        const Frequency rabi = Frequency::from_mhz(20.0);
        const Frequency det = Frequency::from_mhz(100.0);
        const double w = rabi.angular(), dd = det.angular();
        const double far = dressed_ground_energy_exact(rabi, det, Frequency{}).angular();
        rep.add("Delta_dr(inf) vs -Delta + sqrt(Delta^2+Omega^2) (rel. dev.)",
                detail::rel_diff(far, -dd + std::sqrt(dd * dd + w * w)), 0.0, 0.0, 1e-5);
        const double near = dressed_ground_energy_exact(rabi, det, Frequency::from_angular(1e6 * dd)).angular();
        rep.add("Delta_dr(0) vs -Delta/2 + sqrt(Delta^2+2 Omega^2)/2 (rel. dev.)",
                detail::rel_diff(near, -dd / 2 + std::sqrt(dd * dd + 2 * w * w) / 2), 0.0, 0.0, 1e-5);
    }

    // Soft-core shape
    {
        const PotentialParams p = soft_core_example();
        rep.add("|V(R_c/1000)| (full)", std::abs(normalized_potential(p.rc_m / 1000, p, PotentialKind::Full)),
                1.0, 1.0 - 1e-4, 1.0 + 1e-4);
        rep.add("V(1000 R_c) (full)", normalized_potential(1000 * p.rc_m, p, PotentialKind::Full), 0.0, -1e-12, 1e-12);
        bool monotone = true;
        double prev = normalized_potential(p.rc_m / 100, p, PotentialKind::Full);
        for (int i = 1; i <= 400; ++i) {
            const double r = p.rc_m / 100 * std::pow(1e4, i / 400.0);
            const double v = normalized_potential(r, p, PotentialKind::Full);
            monotone = monotone && v >= prev;
            prev = v;
        }
        rep.add("V(R) monotone (1 = yes)", monotone ? 1.0 : 0.0, 1.0, 1.0, 1.0);
        rep.add("near-origin exponent (full)", core_exponent(p, PotentialKind::Full), 3.0, 2.7, 3.3);
        rep.add("near-origin exponent (vdW)", core_exponent(p, PotentialKind::VanDerWaals), 6.0, 5.7, 6.3);
        const Frequency d = p.detuning;
        rep.add("xi / R_b at delta = Delta, minus 1",
                soft_core_length(d, d, p.rc_m) / blockade_radius(d, d, p.rc_m) - 1.0, 0.0, -1e-12, 1e-12);
    }

    // Asymptotic scaling
    {
        const ScalingModel m;
        rep.add_relative("F_1D exponent", scaling_exponent(m, ScalingQuantity::F1D, 300, 600), 19.0 / 3.0,
                         0.05 / (19.0 / 3.0));
        rep.add_relative("F_2D exponent", scaling_exponent(m, ScalingQuantity::F2D, 300, 600), 20.0 / 3.0,
                         0.05 / (20.0 / 3.0));
        rep.add_relative("F_3D exponent", scaling_exponent(m, ScalingQuantity::F3D, 300, 600), 7.0, 0.05 / 7.0);
        rep.add("F' exponent (from depth * tau_dr)", scaling_exponent(m, ScalingQuantity::FPrime, 300, 600), 6.0,
                5.95, 6.05);
        // The printed |delta| form scales as n^7, not the quoted n^6.
        rep.add("F' exponent (printed |delta| form; quoted n^6)",
                scaling_exponent(m, ScalingQuantity::FPrimePrinted, 300, 600), 6.0, 6.95, 7.05);
    }

    // Monte Carlo loss oracle
    {
        const auto mc = simulate_loss(20, 400.0, 2e-3, 100000, opt.seed);
        const double exact = -std::expm1(20.0 * -2e-3 / 400.0);
        rep.add("Monte Carlo loss |z-score| vs exact survival", std::abs(mc.estimate - exact) / mc.standard_error,
                0.0, 0.0, 3.0);
        double margin = INFINITY;
        for (int n : {1, 5, 20, 100})
            for (double t : {1e-3, 0.1, 10.0})
                for (double tau : {1.0, 400.0}) {
                    const double bound = loss_probability(n, t, tau).value;
                    margin = std::min(margin, bound - (-std::expm1(-n * t / tau)));
                }
        rep.add("linearized loss minus exact loss (min over grid)", margin, 0.0, 0.0, 1.0);
    }

    // Doppler
    {
        const double k = sp.scheme("one-photon").effective_k();
        const double zero_cases = doppler_fidelity({k, 0.0, 1e-7, sp.mass_kg}) +
                                  doppler_fidelity({k, 5e-6, 0.0, sp.mass_kg}) +
                                  doppler_fidelity({0.0, 5e-6, 1e-7, sp.mass_kg});
        rep.add("F_D at T=0, t=0, k=0 (sum of three)", zero_cases, 3.0, 3.0, 3.0);
        const double a = doppler_infidelity({k, 5e-6, 2e-7, sp.mass_kg});
        const double b = doppler_infidelity({k, 2e-5, 1e-7, sp.mass_kg});
        double f_min = 1.0, f_max = 0.0;
        for (double t_uk : {0.1, 5.0, 100.0, 1e3})
            for (double t_ns : {1.0, 100.0, 1e3}) {
                const double f = doppler_fidelity({k, t_uk * 1e-6, t_ns * 1e-9, sp.mass_kg});
                f_min = std::min(f_min, f);
                f_max = std::max(f_max, f);
            }
        rep.add("F_D in (1/2, 1] (1 = yes)", (f_min > 0.5 && f_max <= 1.0) ? 1.0 : 0.0, 1.0, 1.0, 1.0);
        rep.add("Doppler grouping (T,2t) vs (4T,t) (rel. dev.)", detail::rel_diff(a, b), 0.0, 0.0, 1e-14);
        const auto grid = scan("doppler_log_infidelity", Axis::make("temperature", "uK", 5.0, 5.0, 1, Spacing::Log),
                               Axis::make("rydberg_time", "ns", 100.0, 100.0, 1, Spacing::Linear),
                               {{"wavevector_per_m", k}, {"mass_kg", sp.mass_kg}});
        rep.add("log10(1-F_D) at 5 uK, 100 ns, one photon", grid.cells.at(0), std::log10(3.0e-4), -3.53, -3.50);
    }

    // Lifetime ordering
    {
        const double t300 = rydberg_lifetime(100, 300, sp.tau0_s);
        const double t77 = rydberg_lifetime(100, 77, sp.tau0_s);
        const double t4 = rydberg_lifetime(100, 4, sp.tau0_s);
        rep.add("lifetime ordering tau(300 K) < tau(77 K) < tau(4 K) (1 = yes)",
                (t300 < t77 && t77 < t4) ? 1.0 : 0.0, 1.0, 1.0, 1.0);
    }
    return rep;
}

}  // namespace rydberg
