#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "array_budget.hpp"
#include "dressing.hpp"
#include "gate_error.hpp"
#include "physics.hpp"
#include "species.hpp"
#include "units.hpp"

namespace rydberg {

enum class Spacing { Linear, Log };

inline std::string to_string(Spacing s) { return s == Spacing::Log ? "log" : "linear"; }

inline Spacing spacing_from_string(const std::string& s) {
    if (s == "linear") return Spacing::Linear;
    if (s == "log") return Spacing::Log;
    throw DomainError("unknown axis spacing '" + s + "' (linear|log)");
}

struct Axis {
    std::string name;
    std::string unit;
    std::vector<double> values;
    Spacing spacing = Spacing::Linear;

    static Axis make(std::string name, std::string unit, double lo, double hi, int points, Spacing spacing) {
        require(points >= 1, "axis needs at least one point");
        require(std::isfinite(lo) && std::isfinite(hi), "axis bounds must be finite");
        require(points == 1 || hi > lo, "axis upper bound must exceed lower bound");
        require(spacing == Spacing::Linear || lo > 0.0, "log axis needs a positive lower bound");
        Axis a{std::move(name), std::move(unit), {}, spacing};
        a.values.reserve(points);
        for (int i = 0; i < points; ++i) {
            const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
            double v = lo + (hi - lo) * t;
            if (spacing == Spacing::Log) {
                const double a = std::log10(lo), b = std::log10(hi);
                v = std::pow(10.0, a + (b - a) * t);
            }
            if (i == 0) v = lo;
            if (i == points - 1 && points > 1) v = hi;
            a.values.push_back(v);
        }
        a.validate();
        return a;
    }

    void validate() const {
        require(!values.empty(), "axis '" + name + "' has no values");
        for (std::size_t i = 1; i < values.size(); ++i)
            require(values[i] > values[i - 1], "axis '" + name + "' values must be strictly increasing");
    }
};

/// Rectangular grid; cells are row-major with one row per y value.
struct ScanGrid {
    std::string quantity;
    Axis x;
    Axis y;
    std::vector<double> cells;

    double at(std::size_t ix, std::size_t iy) const { return cells.at(iy * x.values.size() + ix); }
};

// ---------------------------------------------------------------------------
// CSV

/// Shortest representation that reads back to the same double.
inline std::string format_number(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Layout:
///   # quantity: <name>
///   # x: <name>;<unit>;<spacing>
///   # y: <name>;<unit>;<spacing>
///   <x name>,x0,x1,...
///   y0,c00,c01,...
inline void write_csv(std::ostream& out, const ScanGrid& g) {
    out << "# quantity: " << g.quantity << '\n';
    out << "# x: " << g.x.name << ';' << g.x.unit << ';' << to_string(g.x.spacing) << '\n';
    out << "# y: " << g.y.name << ';' << g.y.unit << ';' << to_string(g.y.spacing) << '\n';
    out << g.x.name;
    for (double v : g.x.values) out << ',' << format_number(v);
    out << '\n';
    const std::size_t nx = g.x.values.size();
    for (std::size_t iy = 0; iy < g.y.values.size(); ++iy) {
        out << format_number(g.y.values[iy]);
        for (std::size_t ix = 0; ix < nx; ++ix) out << ',' << format_number(g.cells[iy * nx + ix]);
        out << '\n';
    }
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

inline double parse_number(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    require(end != begin && *end == '\0', "malformed number '" + s + "' in grid CSV");
    return v;
}

inline void parse_axis_meta(const std::string& text, Axis& axis) {
    auto parts = split(text, ';');
    require(parts.size() == 3, "malformed axis metadata '" + text + "'");
    axis.name = parts[0];
    axis.unit = parts[1];
    axis.spacing = spacing_from_string(parts[2]);
}

}  // namespace detail

inline ScanGrid read_csv(std::istream& in) {
    ScanGrid g;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            require(colon != std::string::npos, "malformed metadata line '" + line + "'");
            const std::string key = line.substr(2, colon - 2);
            const std::string value = line.substr(colon + 2);
            if (key == "quantity") g.quantity = value;
            else if (key == "x") detail::parse_axis_meta(value, g.x);
            else if (key == "y") detail::parse_axis_meta(value, g.y);
            continue;
        }
        auto fields = detail::split(line, ',');
        if (!header_seen) {
            require(fields.size() >= 2, "grid CSV header needs at least one x value");
            if (g.x.name.empty()) g.x.name = fields[0];
            for (std::size_t i = 1; i < fields.size(); ++i) g.x.values.push_back(detail::parse_number(fields[i]));
            header_seen = true;
            continue;
        }
        require(fields.size() == g.x.values.size() + 1, "grid CSV row has the wrong number of cells");
        g.y.values.push_back(detail::parse_number(fields[0]));
        for (std::size_t i = 1; i < fields.size(); ++i) g.cells.push_back(detail::parse_number(fields[i]));
    }
    require(header_seen && !g.y.values.empty(), "grid CSV has no data rows");
    g.x.validate();
    g.y.validate();
    return g;
}

// ---------------------------------------------------------------------------
// Quantity registry

using FixedParams = std::map<std::string, double>;

struct ScanQuantity {
    std::string name;
    std::string description;
    std::string x_name, x_unit;
    std::string y_name, y_unit;
    FixedParams defaults;
    std::function<double(double x, double y, const FixedParams&)> evaluate;
};

inline const std::vector<ScanQuantity>& scan_quantities() {
    static const std::vector<ScanQuantity> registry = [] {
        const Species cs = cesium();
        std::vector<ScanQuantity> q;
        q.push_back({"tau_vac",
                     "vacuum lifetime (s) for loss probability epsilon per QEC cycle, t_qec = "
                     "t_qec_ms_per_qubit * N_code",
                     "n_code", "", "epsilon", "",
                     {{"t_qec_ms_per_qubit", 0.1}},
                     [](double x, double y, const FixedParams& p) {
                         require(std::round(x) == x, "n_code axis values must be integers");
                         const int n = static_cast<int>(x);
                         return required_vacuum_lifetime(n, p.at("t_qec_ms_per_qubit") * 1e-3 * n, y);
                     }});
        q.push_back({"doppler_log_infidelity", "log10(1 - F_D) of the Doppler-limited Bell fidelity",
                     "temperature", "uK", "rydberg_time", "ns",
                     {{"wavevector_per_m", cs.scheme("one-photon").effective_k()}, {"mass_kg", cs.mass_kg}},
                     [](double x, double y, const FixedParams& p) {
                         DopplerInputs in{p.at("wavevector_per_m"), x * 1e-6, y * 1e-9, p.at("mass_kg")};
                         return std::log10(doppler_infidelity(in));
                     }});
        q.push_back({"dressing_potential", "normalized dressed pair potential V(R)",
                     "separation", "um", "rabi", "MHz",
                     {{"detuning_mhz", 10.0}, {"defect_mhz", 20.0}, {"rc_um", 1.5}, {"kind", 0.0}},
                     [](double x, double y, const FixedParams& p) {
                         PotentialParams pp{Frequency::from_mhz(y), Frequency::from_mhz(p.at("detuning_mhz")),
                                            Frequency::from_mhz(p.at("defect_mhz")), p.at("rc_um") * 1e-6};
                         const int kind = static_cast<int>(p.at("kind"));
                         require(kind >= 0 && kind <= 2, "kind must be 0 (full), 1 (vdw) or 2 (single)");
                         return normalized_potential(x * 1e-6, pp, static_cast<PotentialKind>(kind));
                     }});
        q.push_back({"rydberg_lifetime", "Rydberg lifetime (s) with blackbody depopulation",
                     "n", "", "temperature", "K",
                     {{"tau0_ns", cs.tau0_s * 1e9}},
                     [](double x, double y, const FixedParams& p) {
                         return rydberg_lifetime(x, y, p.at("tau0_ns") * 1e-9);
                     }});
        return q;
    }();
    return registry;
}

inline const ScanQuantity& find_scan_quantity(const std::string& name) {
    for (const auto& q : scan_quantities())
        if (q.name == name) return q;
    std::string known;
    for (const auto& q : scan_quantities()) known += (known.empty() ? "" : ", ") + q.name;
    throw DomainError("unknown scan quantity '" + name + "' (known: " + known + ")");
}

/// Evaluate a registered quantity over x and y. `overrides` replaces entries
/// of the quantity's fixed parameters; unknown keys are rejected. Rows may be
/// evaluated concurrently; the result is always in row-major order.
inline ScanGrid scan(const std::string& quantity, Axis x, Axis y, const FixedParams& overrides = {},
                     int workers = 1) {
    const ScanQuantity& q = find_scan_quantity(quantity);
    x.validate();
    y.validate();
    require(workers >= 1, "workers must be >= 1");
    FixedParams params = q.defaults;
    for (const auto& [key, value] : overrides) {
        require(params.count(key) == 1, "quantity '" + quantity + "' has no parameter '" + key + "'");
        params[key] = value;
    }

    ScanGrid g{q.name, std::move(x), std::move(y), {}};
    const std::size_t nx = g.x.values.size();
    const std::size_t ny = g.y.values.size();
    g.cells.assign(nx * ny, 0.0);
    auto fill_row = [&](std::size_t iy) {
        for (std::size_t ix = 0; ix < nx; ++ix)
            g.cells[iy * nx + ix] = q.evaluate(g.x.values[ix], g.y.values[iy], params);
    };
    if (workers == 1) {
        for (std::size_t iy = 0; iy < ny; ++iy) fill_row(iy);
    } else {
        std::vector<std::future<void>> jobs;
        for (int w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t iy = w; iy < ny; iy += workers) fill_row(iy);
            }));
        for (auto& j : jobs) j.get();
    }
    return g;
}

}  // namespace rydberg
