#pragma once

#include <wavetriad/experiment.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace wavetriad {

using Json = nlohmann::ordered_json;

// %.17g: round-trips every double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

namespace detail {

inline std::string normalize_name(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c == '-') c = '_';
    }
    return out;
}

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view what, std::string_view text, const std::array<Enum, N>& values) {
    const std::string key = normalize_name(text);
    for (Enum v : values) {
        if (to_string(v) == key) return v;
    }
    throw UsageError("unknown " + std::string(what) + ": " + std::string(text));
}

inline void reject_unknown_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
    if (!j.is_object()) throw UsageError(std::string(where) + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || a == key;
        if (!ok) throw UsageError("unknown key in " + std::string(where) + ": " + key);
    }
}

template <class T>
T get_as(const Json& j, std::string_view key) {
    try {
        return j.at(std::string(key)).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError("bad value for key: " + std::string(key));
    }
}

} // namespace detail

inline DispersionKind parse_dispersion_kind(std::string_view s) {
    return detail::parse_enum<DispersionKind>("dispersion", s,
                                              std::array{DispersionKind::rossby_sphere, DispersionKind::capillary,
                                                         DispersionKind::gravity_capillary,
                                                         DispersionKind::gravity_tanh, DispersionKind::bve_plane});
}
inline BasinKind parse_basin_kind(std::string_view s) {
    return detail::parse_enum<BasinKind>(
        "basin", s, std::array{BasinKind::unit_square, BasinKind::rectangle, BasinKind::sphere, BasinKind::plane});
}
inline BasinFormula parse_basin_formula(std::string_view s) {
    return detail::parse_enum<BasinFormula>("basin formula", s,
                                            std::array{BasinFormula::physical, BasinFormula::printed});
}
inline BveForm parse_bve_form(std::string_view s) {
    return detail::parse_enum<BveForm>("bve form", s,
                                       std::array{BveForm::printed, BveForm::deformation, BveForm::rigid_lid});
}
inline DomainShape parse_shape(std::string_view s) {
    return detail::parse_enum<DomainShape>("shape", s, std::array{DomainShape::square, DomainShape::triangular});
}
inline Closure parse_closure(std::string_view s) {
    if (s == "sum") return Closure::sum;
    if (s == "standing") return Closure::standing;
    throw UsageError("unknown closure: " + std::string(s));
}
inline std::string_view to_string(Closure c) { return c == Closure::sum ? "sum" : "standing"; }
inline SphereFilter parse_sphere_filter(std::string_view s) {
    if (s == "none") return SphereFilter::none;
    if (s == "triangle") return SphereFilter::triangle;
    if (s == "rossby") return SphereFilter::rossby;
    throw UsageError("unknown sphere filter: " + std::string(s));
}
inline std::string_view to_string(SphereFilter f) {
    switch (f) {
    case SphereFilter::none: return "none";
    case SphereFilter::triangle: return "triangle";
    case SphereFilter::rossby: return "rossby";
    }
    return "?";
}
inline BridgePolicy parse_bridge_policy(std::string_view s) {
    const std::string key = detail::normalize_name(s);
    if (key == "per_pair") return BridgePolicy::per_pair;
    if (key == "per_triad") return BridgePolicy::per_triad;
    throw UsageError("unknown bridge policy: " + std::string(s));
}

// --- DispersionSpec -------------------------------------------------------

inline Json to_json(const DispersionSpec& s) {
    Json j;
    j["kind"] = to_string(s.kind);
    j["g"] = s.g;
    j["mu_over_nu"] = s.mu_over_nu;
    j["alpha"] = s.alpha;
    j["basin"] = {{"kind", to_string(s.basin.kind)},
                  {"lx", s.basin.lx},
                  {"ly", s.basin.ly},
                  {"formula", to_string(s.basin.formula)}};
    j["bve_form"] = to_string(s.bve_form);
    return j;
}

// Missing keys keep their defaults; unknown keys are rejected.
inline DispersionSpec spec_from_json(const Json& j) {
    detail::reject_unknown_keys(j, {"kind", "g", "mu_over_nu", "alpha", "basin", "bve_form"}, "dispersion spec");
    DispersionSpec s;
    if (j.contains("kind")) {
        s.kind = parse_dispersion_kind(detail::get_as<std::string>(j, "kind"));
        if (s.kind == DispersionKind::rossby_sphere) s.basin.kind = BasinKind::sphere;
        if (s.kind == DispersionKind::bve_plane) s.basin.kind = BasinKind::plane;
    }
    if (j.contains("g")) s.g = detail::get_as<double>(j, "g");
    if (j.contains("mu_over_nu")) s.mu_over_nu = detail::get_as<double>(j, "mu_over_nu");
    if (j.contains("alpha")) s.alpha = detail::get_as<double>(j, "alpha");
    if (j.contains("bve_form")) s.bve_form = parse_bve_form(detail::get_as<std::string>(j, "bve_form"));
    if (j.contains("basin")) {
        const Json& b = j.at("basin");
        detail::reject_unknown_keys(b, {"kind", "lx", "ly", "formula"}, "basin");
        if (b.contains("kind")) s.basin.kind = parse_basin_kind(detail::get_as<std::string>(b, "kind"));
        if (b.contains("lx")) s.basin.lx = detail::get_as<double>(b, "lx");
        if (b.contains("ly")) s.basin.ly = detail::get_as<double>(b, "ly");
        if (b.contains("formula")) s.basin.formula = parse_basin_formula(detail::get_as<std::string>(b, "formula"));
    }
    s.validate();
    return s;
}

inline DispersionSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config file " + path + " is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

inline Json to_json(const SpectralDomain& d) {
    return {{"T", d.truncation()}, {"shape", to_string(d.shape())}};
}

inline Json to_json(const ResonanceRules& r) {
    return {{"closure", to_string(r.closure)}, {"sphere_filter", to_string(r.sphere_filter)}};
}

inline Json to_json(const WaveVector& k) { return {{"m", k.m}, {"n", k.n}}; }

// --- Triads ---------------------------------------------------------------

inline Json to_json(const Triad& t) {
    Json j;
    const auto ks = t.members();
    for (std::size_t i = 0; i < 3; ++i) {
        j["m" + std::to_string(i + 1)] = ks[i].m;
        j["n" + std::to_string(i + 1)] = ks[i].n;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        const auto key = "omega" + std::to_string(i + 1);
        if (t.omegas[i].exact) {
            j[key] = to_string(*t.omegas[i].exact);
            j[key + "_float"] = t.omegas[i].omega;
        } else {
            j[key] = t.omegas[i].omega;
        }
    }
    for (std::size_t i = 0; i < 3; ++i) j["hz" + std::to_string(i + 1)] = t.omegas[i].hz();
    if (t.discrepancy.exact) {
        j["discrepancy"] = to_string(*t.discrepancy.exact);
        j["discrepancy_float"] = t.discrepancy.value;
    } else {
        j["discrepancy"] = t.discrepancy.value;
    }
    j["d_ratio"] = t.d_ratio;
    j["signs"] = t.signs.str();
    return j;
}

inline Json to_json(const std::vector<Triad>& ts) {
    Json arr = Json::array();
    for (const auto& t : ts) arr.push_back(to_json(t));
    return arr;
}

inline constexpr std::string_view kTriadCsvHeader =
    "m1,n1,m2,n2,m3,n3,omega1,omega2,omega3,hz1,hz2,hz3,discrepancy,d_ratio,signs";

// Numeric columns are always floats; exact rationals appear in JSON only.
inline void write_triads_csv(std::ostream& os, const std::vector<Triad>& ts) {
    os << kTriadCsvHeader << '\n';
    for (const auto& t : ts) {
        for (const auto& k : t.members()) os << k.m << ',' << k.n << ',';
        for (const auto& w : t.omegas) os << format_double(w.omega) << ',';
        for (const auto& w : t.omegas) os << format_double(w.hz()) << ',';
        os << format_double(t.discrepancy.value) << ',' << format_double(t.d_ratio) << ',' << t.signs.str() << '\n';
    }
}

inline std::string bracket_notation(const Triad& t) {
    return to_string(t.k1) + to_string(t.k2) + to_string(t.k3);
}

// "[1,2][9,1][10,3]; (8.7638, 40.4435, 49.2073)" plus D.
inline std::string table_line(const Triad& t) {
    std::ostringstream os;
    os << std::left << std::setw(24) << bracket_notation(t) + ";" << " (" << format_fixed(t.omegas[0].hz(), 4)
       << ", " << format_fixed(t.omegas[1].hz(), 4) << ", " << format_fixed(t.omegas[2].hz(), 4) << ")";
    char buf[48];
    std::snprintf(buf, sizeof buf, "  D=%.6e", t.d_ratio);
    os << buf;
    if (t.discrepancy.exact) os << "  Omega=" << to_string(*t.discrepancy.exact);
    return os.str();
}

inline void write_triads_table(std::ostream& os, const std::vector<Triad>& ts) {
    os << "# triads: " << ts.size() << '\n';
    for (const auto& t : ts) os << table_line(t) << '\n';
}

// --- Mode partition -------------------------------------------------------

inline Json to_json(const ModePartition& p, bool with_evidence = true) {
    Json modes = Json::array();
    for (const auto& a : p.assignments) {
        Json m{{"m", a.mode.m}, {"n", a.mode.n}, {"class", to_string(a.cls)}};
        m["min_abs_discrepancy"] = a.min_abs_discrepancy ? Json(*a.min_abs_discrepancy) : Json(nullptr);
        if (with_evidence) m["evidence_triads"] = to_json(a.evidence);
        modes.push_back(std::move(m));
    }
    const auto c = p.counts();
    Json j;
    j["summary"] = {{"active", c.active}, {"passive", c.passive}, {"neutral", c.neutral}, {"omega_max", p.omega_max}};
    j["resonant_triads"] = p.resonant_triads.size();
    Json bridges = Json::array();
    for (const auto& b : p.bridges) {
        bridges.push_back({{"source", bracket_notation(b.source)},
                           {"donor_pair", {to_json(b.donor_pair[0]), to_json(b.donor_pair[1])}},
                           {"bridge", to_json(b.bridge)},
                           {"discrepancy", b.bridge_discrepancy.value}});
    }
    j["bridges"] = std::move(bridges);
    j["modes"] = std::move(modes);
    return j;
}

inline constexpr std::string_view kPartitionCsvHeader = "m,n,class,min_abs_discrepancy";

inline void write_partition_csv(std::ostream& os, const ModePartition& p) {
    os << kPartitionCsvHeader << '\n';
    for (const auto& a : p.assignments) {
        os << a.mode.m << ',' << a.mode.n << ',' << to_string(a.cls) << ',';
        if (a.min_abs_discrepancy) os << format_double(*a.min_abs_discrepancy);
        os << '\n';
    }
}

inline void write_partition_table(std::ostream& os, const ModePartition& p) {
    const auto c = p.counts();
    os << "# active " << c.active << ", passive " << c.passive << ", neutral " << c.neutral << '\n';
    for (const auto& a : p.assignments) {
        os << std::left << std::setw(10) << to_string(a.mode) << ' ' << std::setw(8) << to_string(a.cls);
        if (a.min_abs_discrepancy) os << ' ' << format_double(*a.min_abs_discrepancy);
        os << '\n';
    }
}

// --- Bounds ---------------------------------------------------------------

inline Json to_json(const DiscrepancyBound& b) {
    Json j{{"method", to_string(b.method)}, {"value", b.value}};
    if (b.exact) j["exact"] = to_string(*b.exact);
    if (b.witness) j["witness"] = to_json(*b.witness);
    return j;
}

inline Json to_json(const LowerBounds& b) {
    Json j;
    j["a_priori"] = b.a_priori ? to_json(*b.a_priori) : Json(nullptr);
    j["finite_domain_min"] = b.finite_min ? to_json(*b.finite_min) : Json(nullptr);
    j["closed_triads"] = b.closed_triads;
    return j;
}

inline Json to_json(const PlanetaryBound& b) { return {{"exact", to_string(b.exact)}, {"value", b.value}}; }

// --- Experiment plan and sweep -------------------------------------------

inline Json to_json(const ExperimentPlan& p) {
    Json j;
    j["units"] = "cgs";
    j["d_max"] = p.d_max;
    j["d_min"] = p.d_min;
    j["epsilon"] = p.epsilon;
    j["type_a"] = to_json(p.type_a);
    j["type_b"] = to_json(p.type_b);
    Json amps = Json::array();
    for (const auto& [k, a] : p.amplitudes) {
        Json e{{"m", k.m}, {"n", k.n}, {"amplitude_cm", a.value_cm}};
        if (a.warning) e["warning"] = *a.warning;
        amps.push_back(std::move(e));
    }
    j["amplitudes"] = std::move(amps);
    j["notes"] = p.notes;
    return j;
}

inline void write_plan_table(std::ostream& os, const ExperimentPlan& p) {
    os << "Type A (D <= " << format_double(p.d_max) << "): " << p.type_a.size() << '\n';
    for (const auto& t : p.type_a) os << "  " << table_line(t) << '\n';
    os << "Type B (D >= " << format_double(p.d_min) << "): " << p.type_b.size() << '\n';
    for (const auto& t : p.type_b) os << "  " << table_line(t) << '\n';
    os << "Amplitudes (cm, epsilon = " << format_double(p.epsilon) << "):\n";
    for (const auto& [k, a] : p.amplitudes) {
        os << "  " << std::left << std::setw(10) << to_string(k) << ' ' << format_double(a.value_cm);
        if (a.warning) os << "  (" << *a.warning << ')';
        os << '\n';
    }
    for (const auto& n : p.notes) os << "note: " << n << '\n';
}

inline Json to_json(const GeometrySweepReport& r) {
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        cells.push_back({{"lx", c.lx},
                         {"ly", c.ly},
                         {"triad_count", c.triads.size()},
                         {"resonance_free", c.resonance_free},
                         {"active", c.counts.active},
                         {"passive", c.counts.passive},
                         {"neutral", c.counts.neutral},
                         {"triads", to_json(c.triads)}});
    }
    return {{"d_max", r.d_max}, {"omega_max", r.omega_max}, {"cells", std::move(cells)}};
}

inline constexpr std::string_view kSweepCsvHeader = "lx,ly,triad_count,resonance_free,active,passive,neutral";

inline void write_sweep_csv(std::ostream& os, const GeometrySweepReport& r) {
    os << kSweepCsvHeader << '\n';
    for (const auto& c : r.cells) {
        os << format_double(c.lx) << ',' << format_double(c.ly) << ',' << c.triads.size() << ','
           << (c.resonance_free ? "true" : "false") << ',' << c.counts.active << ',' << c.counts.passive << ','
           << c.counts.neutral << '\n';
    }
}

inline void write_sweep_table(std::ostream& os, const GeometrySweepReport& r) {
    os << std::left << std::setw(10) << "Lx" << std::setw(10) << "Ly" << std::setw(8) << "triads" << std::setw(8)
       << "active" << std::setw(8) << "passive" << std::setw(8) << "neutral" << "resonance_free\n";
    for (const auto& c : r.cells) {
        os << std::left << std::setw(10) << format_double(c.lx) << std::setw(10) << format_double(c.ly)
           << std::setw(8) << c.triads.size() << std::setw(8) << c.counts.active << std::setw(8)
           << c.counts.passive << std::setw(8) << c.counts.neutral << (c.resonance_free ? "yes" : "no") << '\n';
        for (const auto& t : c.triads) os << "    " << table_line(t) << '\n';
    }
}

} // namespace wavetriad
