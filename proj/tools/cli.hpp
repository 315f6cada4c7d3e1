#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <rydberg/array_budget.hpp>
#include <rydberg/dressing.hpp>
#include <rydberg/gate_error.hpp>
#include <rydberg/physics.hpp>
#include <rydberg/reproduce.hpp>
#include <rydberg/scan.hpp>
#include <rydberg/species.hpp>

namespace rydberg::cli {

enum ExitCode : int { Success = 0, UsageError = 1, DomainFailure = 2, ReproductionFailure = 3 };

using json = nlohmann::ordered_json;

/// Reads flag defaults from a JSON document. Nested objects map onto
/// subcommands ({"gate-error": {"blockade": {"tau-us": 320}}}); the top-level
/// "species" record is reserved for species data and skipped here.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& ex) {
            throw CLI::ConfigError(std::string("config is not valid JSON: ") + ex.what());
        }
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static void collect(const nlohmann::json& j, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : j.items()) {
            if (parents.empty() && key == "species") continue;
            if (value.is_object()) {
                auto next = parents;
                next.push_back(key);
                collect(value, next, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }

    static std::string scalar(const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }
};

namespace detail {

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline json budget_json(const GateErrorBudget& b) {
    json terms = json::object();
    for (const auto& t : b.terms) terms[t.name] = t.value;
    return json{{"total", b.total}, {"terms", terms}, {"dominant", b.dominant()}, {"warnings", b.warnings}};
}

inline Species resolve_species(const std::string& name, const std::string& config_path) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        nlohmann::json j;
        if (in) {
            try {
                in >> j;
            } catch (const nlohmann::json::exception&) {
                j = nullptr;
            }
        }
        if (j.is_object() && j.contains("species")) {
            const auto& s = j.at("species");
            const auto records = s.is_array() ? s : nlohmann::json::array({s});
            for (const auto& r : records) {
                Species candidate = species_from_json(r);
                std::string a = candidate.name, b = name;
                for (auto& c : a) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                for (auto& c : b) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                if (a == b) return candidate;
            }
        }
    }
    return builtin_species(name);
}

}  // namespace detail

/// Runs the command line `args` (args[0] is the program name). Output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Error budgets and interaction models for Rydberg-atom qubit arrays", "rydberg-budget"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with flag defaults and an optional species record");
    app.require_subcommand(1);
    std::string species_name = "cs";
    app.add_option("--species", species_name, "Species: cs, rb, or a name defined in the config file")
        ->capture_default_str();

    auto species = [&]() {
        const auto* opt = app.get_config_ptr();
        const std::string path = opt && opt->count() > 0 ? opt->as<std::string>() : std::string{};
        return detail::resolve_species(species_name, path);
    };

    // ---- lifetime
    auto* lifetime = app.add_subcommand("lifetime", "Rydberg lifetime with blackbody depopulation");
    double lt_n = 100, lt_temp = 300;
    std::optional<double> lt_tau0_ns;
    lifetime->add_option("--n", lt_n, "Effective principal quantum number")->capture_default_str();
    lifetime->add_option("--temperature-k", lt_temp, "Environment temperature")->capture_default_str();
    lifetime->add_option("--tau0-ns", lt_tau0_ns, "Lifetime coefficient (default: species value)");
    lifetime->callback([&] {
        const double tau0 = lt_tau0_ns ? *lt_tau0_ns * 1e-9 : species().tau0_s;
        const double tau = rydberg_lifetime(lt_n, lt_temp, tau0);
        detail::emit(out, json{{"n", lt_n},
                               {"temperature_k", lt_temp},
                               {"tau0_ns", tau0 * 1e9},
                               {"radiative_lifetime_s", tau0 * lt_n * lt_n * lt_n},
                               {"blackbody_rate_per_s", blackbody_rate(lt_n, lt_temp)},
                               {"lifetime_s", tau}});
    });

    // ---- budget
    auto* budget = app.add_subcommand("budget", "Atom-loss, reload and crosstalk budgets");
    budget->require_subcommand(1);

    int vl_n = 20;
    std::optional<double> vl_tqec_ms;
    double vl_eps = 1e-4;
    auto* vac = budget->add_subcommand("vacuum-lifetime", "Vacuum lifetime needed for a loss budget");
    vac->add_option("--n-code", vl_n, "Qubits per code block")->capture_default_str();
    vac->add_option("--t-qec-ms", vl_tqec_ms, "QEC cycle time (default 0.1 ms per code qubit)");
    vac->add_option("--epsilon", vl_eps, "Loss probability per cycle")->capture_default_str();
    vac->callback([&] {
        const double t = vl_tqec_ms ? *vl_tqec_ms * 1e-3 : LossBudget::default_t_qec(vl_n);
        detail::emit(out, json{{"n_code", vl_n}, {"t_qec_s", t}, {"epsilon", vl_eps},
                               {"tau_vac_s", required_vacuum_lifetime(vl_n, t, vl_eps)}});
    });

    int rr_n = 2000;
    double rr_tau = 400, rr_eps = 1e-4;
    auto* reload = budget->add_subcommand("reload-rate", "Reload rate needed to replace lost atoms");
    reload->add_option("--n-phys", rr_n, "Physical qubits in the array")->capture_default_str();
    reload->add_option("--tau-vac-s", rr_tau, "Vacuum lifetime")->capture_default_str();
    reload->add_option("--epsilon", rr_eps, "Loss probability per cycle")->capture_default_str();
    reload->callback([&] {
        detail::emit(out, json{{"n_phys", rr_n}, {"tau_vac_s", rr_tau}, {"epsilon", rr_eps},
                               {"reload_rate_per_s", required_reload_rate(rr_n, rr_tau, rr_eps)}});
    });

    int lp_n = 20;
    double lp_t_ms = 2, lp_tau = 400;
    auto* loss = budget->add_subcommand("loss", "Linearized probability of losing an atom");
    loss->add_option("--n-code", lp_n, "Qubits per code block")->capture_default_str();
    loss->add_option("--time-ms", lp_t_ms, "Elapsed time")->capture_default_str();
    loss->add_option("--tau-vac-s", lp_tau, "Vacuum lifetime")->capture_default_str();
    loss->callback([&] {
        const auto p = loss_probability(lp_n, lp_t_ms * 1e-3, lp_tau);
        detail::emit(out, json{{"n_code", lp_n}, {"time_s", lp_t_ms * 1e-3}, {"tau_vac_s", lp_tau},
                               {"loss_probability", p.value}, {"exceeds_unity", p.exceeds_unity}});
    });

    int mc_n = 20, mc_workers = 1;
    double mc_t_ms = 2, mc_tau = 400;
    long mc_trials = 100000;
    std::uint64_t mc_seed = 0;
    auto* sim = budget->add_subcommand("simulate", "Monte Carlo estimate of the loss probability");
    sim->add_option("--n-code", mc_n, "Qubits per code block")->capture_default_str();
    sim->add_option("--time-ms", mc_t_ms, "Elapsed time")->capture_default_str();
    sim->add_option("--tau-vac-s", mc_tau, "Vacuum lifetime")->capture_default_str();
    sim->add_option("--trials", mc_trials, "Number of trials (>= 1000)")->capture_default_str();
    sim->add_option("--seed", mc_seed, "Random seed")->required();
    sim->add_option("--workers", mc_workers, "Worker threads (result is independent of this)")->capture_default_str();
    sim->callback([&] {
        const auto mc = simulate_loss(mc_n, mc_tau, mc_t_ms * 1e-3, mc_trials, mc_seed, mc_workers);
        detail::emit(out, json{{"trials", mc.trials}, {"hits", mc.hits}, {"estimate", mc.estimate},
                               {"standard_error", mc.standard_error},
                               {"exact", -std::expm1(-mc_n * mc_t_ms * 1e-3 / mc_tau)},
                               {"linearized", loss_probability(mc_n, mc_t_ms * 1e-3, mc_tau).value}});
    });

    double xt_lambda_nm = 852, xt_na = 0.5, xt_eff = 0.5;
    std::optional<double> xt_spacing_um;
    double xt_spacing_wl = 5;
    auto* xt = budget->add_subcommand("crosstalk", "Measurement crosstalk from scattered photons");
    xt->add_option("--wavelength-nm", xt_lambda_nm, "Scattered-light wavelength")->capture_default_str();
    xt->add_option("--spacing-um", xt_spacing_um, "Qubit spacing (overrides --spacing-wavelengths)");
    xt->add_option("--spacing-wavelengths", xt_spacing_wl, "Qubit spacing in wavelengths")->capture_default_str();
    xt->add_option("--na", xt_na, "Numerical aperture of the collection lens")->capture_default_str();
    xt->add_option("--efficiency", xt_eff, "Combined optical and detector efficiency")->capture_default_str();
    xt->callback([&] {
        const double lambda = xt_lambda_nm * 1e-9;
        const double d = xt_spacing_um ? *xt_spacing_um * 1e-6 : xt_spacing_wl * lambda;
        const auto x = measurement_crosstalk(lambda, d, xt_na, xt_eff);
        detail::emit(out, json{{"wavelength_m", x.wavelength_m}, {"spacing_m", x.spacing_m},
                               {"numerical_aperture", x.numerical_aperture}, {"efficiency", x.efficiency},
                               {"cross_section_m2", x.cross_section_m2}, {"eta_abs", x.eta_abs},
                               {"eta_det", x.eta_det}, {"ratio", x.ratio}});
    });

    double tf_depth = 4, tf_moment = 1;
    auto* trap = budget->add_subcommand("trap-field", "Peak field of a magnetic trap of given depth");
    trap->add_option("--depth-k", tf_depth, "Trap depth")->capture_default_str();
    trap->add_option("--moment-bohr", tf_moment, "Magnetic moment in Bohr magnetons")->capture_default_str();
    trap->callback([&] {
        detail::emit(out, json{{"depth_k", tf_depth}, {"moment_bohr", tf_moment},
                               {"peak_field_t", magnetic_trap_field(tf_depth, tf_moment * PhysConstants::mu_B)}});
    });

    double pol_nm = 1064;
    auto* pol = budget->add_subcommand("polarizability", "Free-electron polarizability of a Rydberg atom");
    pol->add_option("--wavelength-nm", pol_nm, "Trap wavelength")->capture_default_str();
    pol->callback([&] {
        detail::emit(out, json{{"wavelength_nm", pol_nm},
                               {"polarizability_au", free_electron_polarizability(optical_frequency(pol_nm * 1e-9))}});
    });

    // ---- gate-error
    auto* gate = app.add_subcommand("gate-error", "Rydberg gate error models");
    gate->require_subcommand(1);

    double gb_b_mhz = 500, gb_tau_us = 320;
    std::optional<double> gb_rabi_mhz;
    auto* blk = gate->add_subcommand("blockade", "Blockade gate error at the optimal Rabi frequency");
    blk->add_option("--blockade-mhz", gb_b_mhz, "Blockade shift B/2pi")->capture_default_str();
    blk->add_option("--tau-us", gb_tau_us, "Rydberg lifetime")->capture_default_str();
    blk->add_option("--rabi-mhz", gb_rabi_mhz, "Also evaluate the error model at this Rabi frequency");
    blk->callback([&] {
        const Frequency b = Frequency::from_mhz(gb_b_mhz);
        const double tau = gb_tau_us * 1e-6;
        json j{{"blockade_mhz", gb_b_mhz}, {"tau_s", tau},
               {"optimal_rabi_mhz", optimal_rabi(b, tau).to_mhz()},
               {"error", blockade_gate_error(b, tau)},
               {"entanglement_bound", entanglement_error_bound(b, tau)},
               {"budget", detail::budget_json(blockade_gate_budget(b, tau))}};
        if (gb_rabi_mhz) j["error_at_rabi"] = blockade_error_at_rabi(Frequency::from_mhz(*gb_rabi_mhz), b, tau);
        detail::emit(out, j);
    });

    std::optional<double> gf_tau0_ns;
    auto* floor = gate->add_subcommand("floor", "n-independent blockade and dressing error floors");
    floor->add_option("--tau0-ns", gf_tau0_ns, "Lifetime coefficient (default: species value)");
    floor->callback([&] {
        const double tau0 = gf_tau0_ns ? *gf_tau0_ns * 1e-9 : species().tau0_s;
        const double n = 100;
        detail::emit(out, json{{"tau0_ns", tau0 * 1e9},
                               {"blockade_floor", asymptotic_blockade_floor(tau0)},
                               {"dressing_floor", dressing_gate_error(half_level_spacing(n), tau0 * n * n * n)}});
    });

    double gi_vdd = 1, gi_tau_us = 320;
    std::optional<double> gi_qubit_ghz;
    auto* inter = gate->add_subcommand("interaction", "Interaction (weak dipolar) gate error");
    inter->add_option("--vdd-mhz", gi_vdd, "Dipolar interaction V_dd/2pi")->capture_default_str();
    inter->add_option("--tau-us", gi_tau_us, "Rydberg lifetime")->capture_default_str();
    inter->add_option("--qubit-ghz", gi_qubit_ghz, "Qubit splitting (default: species value)");
    inter->callback([&] {
        const Frequency wq = gi_qubit_ghz ? Frequency::from_ghz(*gi_qubit_ghz) : species().qubit_freq;
        const double tau = gi_tau_us * 1e-6;
        const Frequency v = Frequency::from_mhz(gi_vdd);
        detail::emit(out, json{{"vdd_mhz", gi_vdd}, {"tau_s", tau}, {"qubit_ghz", wq.to_hz() * 1e-9},
                               {"error", interaction_gate_error(v, tau, wq)},
                               {"optimal_vdd_mhz", interaction_optimal_vdd(tau, wq).to_mhz()},
                               {"error_at_optimal_vdd", interaction_gate_error_min(tau, wq)},
                               {"budget", detail::budget_json(interaction_gate_budget(v, tau, wq))}});
    });

    double gd_det = 100, gd_tau_us = 320;
    auto* dress_gate = gate->add_subcommand("dressing", "Dressing gate error at the optimal Rabi frequency");
    dress_gate->add_option("--detuning-mhz", gd_det, "Dressing detuning Delta/2pi")->capture_default_str();
    dress_gate->add_option("--tau-us", gd_tau_us, "Rydberg lifetime")->capture_default_str();
    dress_gate->callback([&] {
        const Frequency d = Frequency::from_mhz(gd_det);
        const double tau = gd_tau_us * 1e-6;
        detail::emit(out, json{{"detuning_mhz", gd_det}, {"tau_s", tau}, {"error", dressing_gate_error(d, tau)},
                               {"budget", detail::budget_json(dressing_gate_budget(d, tau))}});
    });

    double gs_tpi = 25, gs_eps = 1e-4;
    auto* spont = gate->add_subcommand("spontaneous", "Minimum lifetime for a spontaneous-emission budget");
    spont->add_option("--t-pi-ns", gs_tpi, "Pi-pulse duration")->capture_default_str();
    spont->add_option("--epsilon", gs_eps, "Spontaneous-emission error target")->capture_default_str();
    spont->callback([&] {
        detail::emit(out, json{{"t_pi_s", gs_tpi * 1e-9}, {"epsilon", gs_eps},
                               {"min_lifetime_s", spontaneous_budget(gs_tpi * 1e-9, gs_eps)}});
    });

    double st_rabi = 20, st_eps = 1e-5;
    std::optional<double> st_alpha0, st_detuning_khz;
    std::string st_state = "100p3/2";
    bool st_half = false;
    auto* stark = gate->add_subcommand("stark", "Detuning and background-field budgets");
    stark->add_option("--rabi-mhz", st_rabi, "Rabi frequency Omega/2pi")->capture_default_str();
    stark->add_option("--epsilon", st_eps, "Allowed pi-pulse error")->capture_default_str();
    stark->add_option("--alpha0", st_alpha0, "Scalar polarizability, GHz/(V/cm)^2 (default: species state)");
    stark->add_option("--state", st_state, "Species state supplying alpha0")->capture_default_str();
    stark->add_option("--detuning-khz", st_detuning_khz, "Use this detuning budget instead of the exact inversion");
    stark->add_flag("--half-convention", st_half, "Use shift = alpha0 E^2 / 2");
    stark->callback([&] {
        double alpha0 = 0;
        if (st_alpha0) {
            alpha0 = *st_alpha0;
        } else {
            const auto p = species().polarizability(st_state);
            require(p.has_value(), "species has no polarizability for state '" + st_state + "'");
            alpha0 = p->alpha0;
        }
        const auto conv = st_half ? StarkConvention::HalfQuadratic : StarkConvention::FullQuadratic;
        const Frequency exact = detuning_budget(Frequency::from_mhz(st_rabi), st_eps);
        const Frequency used = st_detuning_khz ? Frequency::from_khz(*st_detuning_khz) : exact;
        detail::emit(out, json{{"rabi_mhz", st_rabi}, {"epsilon", st_eps}, {"alpha0", alpha0},
                               {"convention", st_half ? "half" : "full"},
                               {"detuning_budget_khz", exact.to_khz()},
                               {"detuning_used_khz", used.to_khz()},
                               {"field_limit_v_per_cm", field_budget(used, alpha0, conv)}});
    });

    // ---- doppler
    auto* doppler = app.add_subcommand("doppler", "Doppler-limited Bell fidelity");
    double dp_temp_uk = 5, dp_time_ns = 100;
    std::string dp_scheme = "one-photon";
    std::optional<double> dp_k_per_um;
    bool dp_scan = false;
    double dp_tmin = 0.1, dp_tmax = 100, dp_time_min = 10, dp_time_max = 1000;
    int dp_tpts = 31, dp_time_pts = 34;
    doppler->add_option("--temperature-uk", dp_temp_uk, "Atom temperature")->capture_default_str();
    doppler->add_option("--time-ns", dp_time_ns, "Time spent in the Rydberg state")->capture_default_str();
    doppler->add_option("--scheme", dp_scheme, "Species excitation scheme")->capture_default_str();
    doppler->add_option("--wavevector-per-um", dp_k_per_um, "Effective wavevector (overrides --scheme)");
    doppler->add_flag("--scan", dp_scan, "Emit a temperature x time grid of log10(1 - F_D) as CSV");
    doppler->add_option("--t-min-uk", dp_tmin, "Scan: lowest temperature")->capture_default_str();
    doppler->add_option("--t-max-uk", dp_tmax, "Scan: highest temperature")->capture_default_str();
    doppler->add_option("--t-points", dp_tpts, "Scan: temperatures (log spaced)")->capture_default_str();
    doppler->add_option("--time-min-ns", dp_time_min, "Scan: shortest Rydberg time")->capture_default_str();
    doppler->add_option("--time-max-ns", dp_time_max, "Scan: longest Rydberg time")->capture_default_str();
    doppler->add_option("--time-points", dp_time_pts, "Scan: Rydberg times (linear)")->capture_default_str();
    doppler->callback([&] {
        const Species sp = species();
        const double k = dp_k_per_um ? *dp_k_per_um * 1e6 : sp.scheme(dp_scheme).effective_k();
        if (dp_scan) {
            const auto grid = scan("doppler_log_infidelity",
                                   Axis::make("temperature", "uK", dp_tmin, dp_tmax, dp_tpts, Spacing::Log),
                                   Axis::make("rydberg_time", "ns", dp_time_min, dp_time_max, dp_time_pts,
                                              Spacing::Linear),
                                   {{"wavevector_per_m", k}, {"mass_kg", sp.mass_kg}});
            write_csv(out, grid);
            return;
        }
        const DopplerInputs in{k, dp_temp_uk * 1e-6, dp_time_ns * 1e-9, sp.mass_kg};
        detail::emit(out, json{{"species", sp.name}, {"wavevector_per_m", k}, {"temperature_k", in.temperature_k},
                               {"time_s", in.time_s}, {"exponent", in.exponent()},
                               {"fidelity", doppler_fidelity(in)}, {"infidelity", doppler_infidelity(in)}});
    });

    // ---- dressing
    auto* dressing = app.add_subcommand("dressing", "Rydberg dressing potentials and figures of merit");
    dressing->require_subcommand(1);

    double dc_rabi = 1, dc_det = 10, dc_def = 20, dc_rc = 1.5, dc_rmin = 0.05, dc_rmax = 6;
    int dc_points = 120;
    bool dc_log = false;
    auto* curve = dressing->add_subcommand("curve", "Normalized soft-core potentials as CSV");
    curve->add_option("--rabi-mhz", dc_rabi, "Omega/2pi")->capture_default_str();
    curve->add_option("--detuning-mhz", dc_det, "Delta/2pi")->capture_default_str();
    curve->add_option("--defect-mhz", dc_def, "Foerster defect delta/2pi")->capture_default_str();
    curve->add_option("--rc-um", dc_rc, "Crossover radius")->capture_default_str();
    curve->add_option("--r-min-um", dc_rmin, "Smallest separation")->capture_default_str();
    curve->add_option("--r-max-um", dc_rmax, "Largest separation")->capture_default_str();
    curve->add_option("--points", dc_points, "Number of separations")->capture_default_str();
    curve->add_flag("--log", dc_log, "Log-spaced separations");
    curve->callback([&] {
        const PotentialParams p{Frequency::from_mhz(dc_rabi), Frequency::from_mhz(dc_det),
                                Frequency::from_mhz(dc_def), dc_rc * 1e-6};
        const Axis r = Axis::make("R", "um", dc_rmin, dc_rmax, dc_points, dc_log ? Spacing::Log : Spacing::Linear);
        out << "R_um,V_full,V_vdw,V_single\n";
        for (double x : r.values) {
            const double m = x * 1e-6;
            out << format_number(x) << ',' << format_number(normalized_potential(m, p, PotentialKind::Full)) << ','
                << format_number(normalized_potential(m, p, PotentialKind::VanDerWaals)) << ','
                << format_number(normalized_potential(m, p, PotentialKind::SingleTerm)) << '\n';
        }
    });

    double df_rabi = 20, df_det = -100, df_def = -200, df_rc = 8.1, df_dkl = 12, df_tau = 320, df_d = 1;
    std::optional<double> df_c3;
    auto* fom = dressing->add_subcommand("fom", "Dressing figures of merit as JSON");
    fom->add_option("--rabi-mhz", df_rabi, "Omega/2pi")->capture_default_str();
    fom->add_option("--detuning-mhz", df_det, "Delta/2pi (signed)")->capture_default_str();
    fom->add_option("--defect-mhz", df_def, "Foerster defect delta/2pi (signed)")->capture_default_str();
    fom->add_option("--rc-um", df_rc, "Crossover radius")->capture_default_str();
    fom->add_option("--c3-ghz-um3", df_c3, "C3/h; when given, R_c is derived from it");
    fom->add_option("--angular-factor", df_dkl, "Angular factor D_kl")->capture_default_str();
    fom->add_option("--tau-us", df_tau, "Rydberg lifetime")->capture_default_str();
    fom->add_option("--spacing-um", df_d, "Lattice period d")->capture_default_str();
    fom->callback([&] {
        const Frequency defect = Frequency::from_mhz(df_def);
        const PairInteraction pair =
            df_c3 ? PairInteraction::from_c3(defect, C3Coefficient::from_ghz_um3(*df_c3), df_dkl)
                  : PairInteraction::from_crossover(defect, df_rc * 1e-6, df_dkl);
        const DressingParams params{Frequency::from_mhz(df_rabi), Frequency::from_mhz(df_det), pair,
                                    df_tau * 1e-6, df_d * 1e-6};
        const auto r = figures_of_merit(params);
        json records = json::array();
        for (const auto& f : r.records) {
            records.push_back({{"dimension", f.dimension},
                               {"depth_khz", f.depth.to_khz()},
                               {"tau_dr_s", f.tau_dr_s},
                               {"atoms", f.atoms},
                               {"atoms_floor", f.atoms_floor},
                               {"f", f.f_closed},
                               {"f_composed", f.f_composed},
                               {"f_prime", f.f_prime},
                               {"f_prime_per_atom", f.f_prime_per_atom}});
        }
        detail::emit(out, json{{"rc_m", pair.rc_m},
                               {"blockade_radius_m", r.blockade_radius_m},
                               {"depth_perturbative_khz", r.depth_perturbative.to_khz()},
                               {"depth_exact_khz", r.depth_exact.to_khz()},
                               {"tau_dr_s", r.tau_dr_s},
                               {"ops_per_atom", r.ops_per_atom},
                               {"f_prime", r.f_prime},
                               {"f_prime_printed", r.f_prime_printed},
                               {"records", records},
                               {"warnings", r.warnings}});
    });

    double sc_lo = 300, sc_hi = 600;
    auto* scaling = dressing->add_subcommand("scaling", "Asymptotic n exponents of the figures of merit");
    scaling->add_option("--n-lo", sc_lo, "Lower principal quantum number")->capture_default_str();
    scaling->add_option("--n-hi", sc_hi, "Upper principal quantum number")->capture_default_str();
    scaling->callback([&] {
        const ScalingModel m;
        detail::emit(out, json{{"n_lo", sc_lo}, {"n_hi", sc_hi},
                               {"F_1D", scaling_exponent(m, ScalingQuantity::F1D, sc_lo, sc_hi)},
                               {"F_2D", scaling_exponent(m, ScalingQuantity::F2D, sc_lo, sc_hi)},
                               {"F_3D", scaling_exponent(m, ScalingQuantity::F3D, sc_lo, sc_hi)},
                               {"F_prime", scaling_exponent(m, ScalingQuantity::FPrime, sc_lo, sc_hi)},
                               {"F_prime_printed", scaling_exponent(m, ScalingQuantity::FPrimePrinted, sc_lo, sc_hi)}});
    });

    // ---- scan
    auto* scan_cmd = app.add_subcommand("scan", "Evaluate a registered quantity on a rectangular grid (CSV)");
    std::string sq_name;
    double sx_min = 0, sx_max = 0, sy_min = 0, sy_max = 0;
    int sx_pts = 1, sy_pts = 1, sq_workers = 1;
    bool sx_log = false, sy_log = false, sq_list = false;
    std::vector<std::string> sq_params;
    scan_cmd->add_flag("--list", sq_list, "List registered quantities and their parameters");
    scan_cmd->add_option("--quantity", sq_name, "Quantity to evaluate");
    scan_cmd->add_option("--x-min", sx_min, "First x value");
    scan_cmd->add_option("--x-max", sx_max, "Last x value");
    scan_cmd->add_option("--x-points", sx_pts, "Number of x values")->capture_default_str();
    scan_cmd->add_flag("--x-log", sx_log, "Log-spaced x axis");
    scan_cmd->add_option("--y-min", sy_min, "First y value");
    scan_cmd->add_option("--y-max", sy_max, "Last y value");
    scan_cmd->add_option("--y-points", sy_pts, "Number of y values")->capture_default_str();
    scan_cmd->add_flag("--y-log", sy_log, "Log-spaced y axis");
    scan_cmd->add_option("--param", sq_params, "Fixed parameter override, key=value (repeatable)");
    scan_cmd->add_option("--workers", sq_workers, "Worker threads (output order is fixed)")->capture_default_str();
    scan_cmd->callback([&] {
        if (sq_list) {
            json j = json::array();
            for (const auto& q : scan_quantities()) {
                json params = json::object();
                for (const auto& [k, v] : q.defaults) params[k] = v;
                j.push_back({{"name", q.name}, {"description", q.description},
                             {"x", q.x_name + (q.x_unit.empty() ? "" : " [" + q.x_unit + "]")},
                             {"y", q.y_name + (q.y_unit.empty() ? "" : " [" + q.y_unit + "]")},
                             {"parameters", params}});
            }
            detail::emit(out, j);
            return;
        }
        if (sq_name.empty()) throw CLI::RequiredError("--quantity");
        const ScanQuantity& q = find_scan_quantity(sq_name);
        FixedParams overrides;
        for (const auto& kv : sq_params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
            try {
                overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--param", "value of '" + kv + "' is not a number");
            }
        }
        const auto grid = scan(q.name,
                               Axis::make(q.x_name, q.x_unit, sx_min, sx_max, sx_pts, sx_log ? Spacing::Log : Spacing::Linear),
                               Axis::make(q.y_name, q.y_unit, sy_min, sy_max, sy_pts, sy_log ? Spacing::Log : Spacing::Linear),
                               overrides, sq_workers);
        write_csv(out, grid);
    });

    // ---- reproduce
    auto* repro = app.add_subcommand("reproduce", "Recompute every published checkpoint and report pass/fail");
    std::optional<double> rp_tau0_ns;
    std::uint64_t rp_seed = ReproduceOptions{}.seed;
    repro->add_option("--tau0-ns", rp_tau0_ns, "Override the species lifetime coefficient");
    repro->add_option("--seed", rp_seed, "Seed for randomized checks")->capture_default_str();
    int repro_status = Success;
    repro->callback([&] {
        ReproduceOptions opt;
        opt.species = species();
        if (rp_tau0_ns) opt.species.tau0_s = *rp_tau0_ns * 1e-9;
        opt.seed = rp_seed;
        const auto report = reproduce(opt);
        out << report.to_json().dump(2) << '\n';
        repro_status = report.pass() ? Success : ReproductionFailure;
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : UsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return DomainFailure;
    }
    return repro_status;
}

}  // namespace rydberg::cli
