#pragma once

#include <wavetriad/io.hpp>
#include <wavetriad/presets.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wavetriad {

inline constexpr std::string_view kToolName = "wavetriad";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class ExitCode : int { ok = 0, usage = 2, domain = 3, io = 4 };

enum class OutputFormat { json, csv, table };

struct RunConfig {
    std::string command;
    DispersionSpec spec{};
    SpectralDomain domain{30, DomainShape::square};
    ResonanceRules rules{};
    BridgePolicy bridge_policy = BridgePolicy::per_pair;
    std::optional<std::string> liquid;
    std::optional<double> d_max;
    std::optional<double> d_min;
    bool exact = false;
    std::optional<double> omega_max;
    double epsilon = 0.1;
    std::optional<int> m;
    std::optional<int> n;
    std::vector<int> triad;
    SignPattern signs{};
    std::vector<double> lx_values;
    std::vector<double> ly_values;
    OutputFormat format = OutputFormat::table;
    std::string output; // empty: standard output
    unsigned threads = 1;
    bool header = true;
};

inline std::string_view to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::table: return "table";
    }
    return "?";
}

// Everything that determines the payload. Thread count and output path are
// left out: they never change the bytes written.
inline Json resolved_config(const RunConfig& c) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = c.command;
    j["dispersion"] = to_json(c.spec);
    if (c.liquid) j["liquid"] = *c.liquid;
    if (c.command != "eval") j["domain"] = to_json(c.domain);
    j["rules"] = to_json(c.rules);
    if (c.command == "classify" || c.command == "sweep") j["bridge_policy"] = to_string(c.bridge_policy);
    if (c.exact) j["exact"] = true;
    if (c.d_max) j["d_max"] = *c.d_max;
    if (c.d_min) j["d_min"] = *c.d_min;
    if (c.omega_max) j["omega_max"] = *c.omega_max;
    if (c.command == "plan") j["epsilon"] = c.epsilon;
    if (c.m) j["m"] = *c.m;
    if (c.n) j["n"] = *c.n;
    if (!c.triad.empty()) {
        j["triad"] = c.triad;
        j["signs"] = c.signs.str();
    }
    if (c.command == "sweep") {
        j["lx_values"] = c.lx_values;
        j["ly_values"] = c.ly_values;
    }
    j["format"] = to_string(c.format);
    return j;
}

namespace detail {

inline void write_comment_header(std::ostream& os, const RunConfig& c) {
    if (!c.header) return;
    os << "# " << kToolName << ' ' << kToolVersion << '\n';
    os << "# config: " << resolved_config(c).dump() << '\n';
}

inline void write_json(std::ostream& os, const RunConfig& c, Json result) {
    if (c.header) {
        Json doc;
        doc["config"] = resolved_config(c);
        doc["result"] = std::move(result);
        os << doc.dump(2) << '\n';
    } else {
        os << result.dump(2) << '\n';
    }
}

inline std::string omega_text(const Frequency& f) {
    return f.exact ? to_string(*f.exact) : format_double(f.omega);
}

inline void run_find_triads(const RunConfig& c, std::ostream& os) {
    const SearchOptions opts{c.rules, c.threads};
    std::vector<Triad> triads;
    if (c.exact) {
        triads = find_exact_triads(c.spec, c.domain, opts);
    } else if (c.d_min) {
        triads = find_max_discrepancy_triads(c.spec, c.domain, *c.d_min, opts);
    } else {
        triads = find_near_triads(c.spec, c.domain, *c.d_max, opts);
    }
    switch (c.format) {
    case OutputFormat::json: write_json(os, c, {{"count", triads.size()}, {"triads", to_json(triads)}}); break;
    case OutputFormat::csv: write_comment_header(os, c); write_triads_csv(os, triads); break;
    case OutputFormat::table: write_comment_header(os, c); write_triads_table(os, triads); break;
    }
}

inline void run_classify(const RunConfig& c, std::ostream& os) {
    ClassifyOptions opts;
    opts.rules = c.rules;
    opts.bridge_policy = c.bridge_policy;
    const auto p = classify_modes(c.spec, c.domain, *c.omega_max, opts);
    switch (c.format) {
    case OutputFormat::json: write_json(os, c, to_json(p)); break;
    case OutputFormat::csv: write_comment_header(os, c); write_partition_csv(os, p); break;
    case OutputFormat::table: write_comment_header(os, c); write_partition_table(os, p); break;
    }
}

inline void run_bound(const RunConfig& c, std::ostream& os) {
    if (c.m || c.n) {
        if (!c.m || !c.n) throw UsageError("bound needs both --m and --n");
        const auto b = planetary_amplitude_bound(*c.m, *c.n);
        switch (c.format) {
        case OutputFormat::json: write_json(os, c, {{"planetary_amplitude_bound", to_json(b)}}); break;
        case OutputFormat::csv:
            write_comment_header(os, c);
            os << "m,n,exact,value\n" << *c.m << ',' << *c.n << ',' << to_string(b.exact) << ','
               << format_double(b.value) << '\n';
            break;
        case OutputFormat::table:
            write_comment_header(os, c);
            os << to_string(b.exact) << " (" << format_double(b.value) << ")\n";
            break;
        }
        return;
    }
    const auto b = discrepancy_lower_bound(c.spec, c.domain, {c.rules, c.threads});
    switch (c.format) {
    case OutputFormat::json: write_json(os, c, to_json(b)); break;
    case OutputFormat::csv:
        write_comment_header(os, c);
        os << "method,exact,value\n";
        for (const auto* x : {&b.a_priori, &b.finite_min}) {
            if (!*x) continue;
            const auto& v = **x;
            os << to_string(v.method) << ',' << (v.exact ? to_string(*v.exact) : "") << ','
               << format_double(v.value) << '\n';
        }
        break;
    case OutputFormat::table:
        write_comment_header(os, c);
        os << "closed triads: " << b.closed_triads << '\n';
        if (b.a_priori) {
            os << "a priori:          " << to_string(*b.a_priori->exact) << " (" << format_double(b.a_priori->value)
               << ")\n";
        }
        if (b.finite_min) {
            os << "finite-domain min: ";
            if (b.finite_min->exact) os << to_string(*b.finite_min->exact) << ' ';
            os << '(' << format_double(b.finite_min->value) << ")\n";
            if (b.finite_min->witness) os << "witness:           " << table_line(*b.finite_min->witness) << '\n';
        } else {
            os << "finite-domain min: none (no non-resonant closed triad)\n";
        }
        break;
    }
}

inline void run_plan(const RunConfig& c, std::ostream& os) {
    const auto p = plan_experiment(c.spec, c.domain, *c.d_max, *c.d_min, c.epsilon, {c.rules, c.threads});
    switch (c.format) {
    case OutputFormat::json: write_json(os, c, to_json(p)); break;
    case OutputFormat::csv: {
        write_comment_header(os, c);
        std::vector<Triad> all = p.type_a;
        all.insert(all.end(), p.type_b.begin(), p.type_b.end());
        write_triads_csv(os, all);
        break;
    }
    case OutputFormat::table: write_comment_header(os, c); write_plan_table(os, p); break;
    }
}

inline void run_sweep(const RunConfig& c, std::ostream& os) {
    ClassifyOptions opts;
    opts.rules = c.rules;
    opts.bridge_policy = c.bridge_policy;
    const auto r = geometry_sweep(c.spec, c.domain, c.lx_values, c.ly_values, *c.d_max, *c.omega_max, opts,
                                  c.threads);
    switch (c.format) {
    case OutputFormat::json: write_json(os, c, to_json(r)); break;
    case OutputFormat::csv: write_comment_header(os, c); write_sweep_csv(os, r); break;
    case OutputFormat::table: write_comment_header(os, c); write_sweep_table(os, r); break;
    }
}

inline void run_eval(const RunConfig& c, std::ostream& os) {
    if (!c.triad.empty()) {
        if (c.triad.size() != 6) throw UsageError("--triad needs six integers m1,n1,m2,n2,m3,n3");
        const Triad t = make_triad(c.spec, {c.triad[0], c.triad[1]}, {c.triad[2], c.triad[3]},
                                   {c.triad[4], c.triad[5]}, c.signs);
        switch (c.format) {
        case OutputFormat::json: write_json(os, c, to_json(t)); break;
        case OutputFormat::csv: write_comment_header(os, c); write_triads_csv(os, {t}); break;
        case OutputFormat::table: write_comment_header(os, c); os << table_line(t) << '\n'; break;
        }
        return;
    }
    if (!c.m || !c.n) throw UsageError("eval needs --m and --n, or --triad");
    const Frequency f = eval_frequency(c.spec, {*c.m, *c.n});
    switch (c.format) {
    case OutputFormat::json: {
        Json r{{"m", *c.m}, {"n", *c.n}};
        if (f.exact) {
            r["omega"] = to_string(*f.exact);
            r["omega_float"] = f.omega;
        } else {
            r["omega"] = f.omega;
        }
        r["hz"] = f.hz();
        write_json(os, c, std::move(r));
        break;
    }
    case OutputFormat::csv:
        write_comment_header(os, c);
        os << "m,n,omega,hz\n" << *c.m << ',' << *c.n << ',' << omega_text(f) << ',' << format_double(f.hz())
           << '\n';
        break;
    case OutputFormat::table: write_comment_header(os, c); os << omega_text(f) << '\n'; break;
    }
}

// Fills command-dependent defaults and rejects contradictory settings.
inline void finalize(RunConfig& c) {
    c.spec.validate();
    if (c.threads < 1) throw UsageError("--threads must be >= 1");
    if (c.command == "find-triads") {
        const int modes = (c.exact ? 1 : 0) + (c.d_max ? 1 : 0) + (c.d_min ? 1 : 0);
        if (modes > 1) throw UsageError("find-triads takes only one of --exact, --d-max, --d-min");
        if (modes == 0) {
            if (c.spec.exact()) c.exact = true;
            else c.d_max = 1e-6;
        }
    } else if (c.command == "classify") {
        if (!c.omega_max) throw UsageError("classify needs --omega-max");
    } else if (c.command == "plan") {
        if (!c.d_max) c.d_max = 1e-6;
        if (!c.d_min) c.d_min = 0.1;
        if (!(*c.d_max < *c.d_min)) throw UsageError("--d-max must be smaller than --d-min");
    } else if (c.command == "sweep") {
        if (c.lx_values.empty() || c.ly_values.empty()) throw UsageError("sweep needs --lx-values and --ly-values");
        if (!c.d_max) c.d_max = 1e-6;
        if (!c.omega_max) throw UsageError("sweep needs --omega-max");
    }
}

} // namespace detail

// Parses command-line arguments (without the program name) into a resolved
// RunConfig. Throws UsageError, DomainError or IoError; `help` is set when
// help text was requested instead.
inline RunConfig parse_args(const std::vector<std::string>& args, std::string* help = nullptr) {
    CLI::App app{"Resonant wave triad enumeration and mode classification", std::string(kToolName)};
    app.require_subcommand(1);
    app.fallthrough();

    std::string dispersion, basin, basin_formula, bve_form, shape, closure = "sum", sphere_filter = "none";
    std::string bridge_policy = "per-pair", format = "table", liquid, config_path, signs = "++-";
    double mu_nu = 75.0, g = 981.0, alpha = 1.0, lx = 1.0, ly = 1.0;
    int truncation = 30;
    RunConfig c;
    double d_max = 0, d_min = 0, omega_max = 0;
    int m = 0, n = 0;

    auto* o_dispersion = app.add_option("--dispersion", dispersion,
                                        "rossby-sphere | gravity-capillary | capillary | gravity-tanh | bve-plane");
    auto* o_mu = app.add_option("--mu-nu", mu_nu, "surface tension over density (cm^3/s^2)");
    auto* o_liquid = app.add_option("--liquid", liquid, "water | glycerine | benzol | benzaldehyde");
    auto* o_g = app.add_option("--g", g, "gravity (cm/s^2)");
    auto* o_alpha = app.add_option("--alpha", alpha, "depth parameter for gravity-tanh");
    auto* o_basin = app.add_option("--basin", basin, "unit-square | rectangle | sphere | plane");
    auto* o_lx = app.add_option("--lx", lx, "basin length in x (cm)");
    auto* o_ly = app.add_option("--ly", ly, "basin length in y (cm)");
    auto* o_formula = app.add_option("--basin-formula", basin_formula, "physical | printed");
    auto* o_bve = app.add_option("--bve-form", bve_form, "printed | deformation | rigid-lid");
    auto* o_config = app.add_option("--config", config_path, "JSON dispersion spec file");
    app.add_option("--T", truncation, "spectral truncation");
    auto* o_shape = app.add_option("--shape", shape, "square | triangular");
    app.add_option("--closure", closure, "sum | standing");
    app.add_option("--sphere-filter", sphere_filter, "none | triangle | rossby");
    app.add_option("--bridge-policy", bridge_policy, "per-pair | per-triad");
    auto* o_dmax = app.add_option("--d-max", d_max, "Type A ceiling on d_ratio");
    auto* o_dmin = app.add_option("--d-min", d_min, "Type B floor on d_ratio");
    app.add_flag("--exact", c.exact, "exact rational search (rossby-sphere)");
    auto* o_omax = app.add_option("--omega-max", omega_max, "approximate-resonance ceiling on |Omega|");
    app.add_option("--epsilon", c.epsilon, "wave steepness a*k");
    auto* o_m = app.add_option("--m", m, "mode index m");
    auto* o_n = app.add_option("--n", n, "mode index n");
    app.add_option("--triad", c.triad, "m1,n1,m2,n2,m3,n3")->delimiter(',');
    app.add_option("--signs", signs, "sign pattern for --triad, e.g. ++-");
    app.add_option("--lx-values", c.lx_values, "sweep grid in Lx")->delimiter(',');
    app.add_option("--ly-values", c.ly_values, "sweep grid in Ly")->delimiter(',');
    app.add_option("--format", format, "json | csv | table");
    app.add_option("--output", c.output, "output file (default: standard output)");
    app.add_option("--threads", c.threads, "worker threads");
    bool no_header = false;
    app.add_flag("--no-header", no_header, "omit the run-configuration header");

    for (const char* name : {"find-triads", "classify", "bound", "plan", "sweep", "eval"}) {
        app.add_subcommand(name)->fallthrough();
    }
    app.get_subcommand("find-triads")->description("near, maximal-discrepancy or exact triads");
    app.get_subcommand("classify")->description("active / passive / neutral mode partition");
    app.get_subcommand("bound")->description("discrepancy lower bounds, or the planetary amplitude bound with --m --n");
    app.get_subcommand("plan")->description("Type A / Type B frequencies and amplitudes");
    app.get_subcommand("sweep")->description("triad inventory over a grid of basin sizes");
    app.get_subcommand("eval")->description("frequency of one mode, or one triad with --triad");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        if (help) *help = app.help();
        return c;
    } catch (const CLI::CallForAllHelp&) {
        if (help) *help = app.help("", CLI::AppFormatMode::All);
        return c;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    c.command = app.get_subcommands().front()->get_name();

    DispersionSpec spec = o_config->count() ? load_spec_file(config_path) : DispersionSpec{};
    if (o_dispersion->count()) {
        spec.kind = parse_dispersion_kind(dispersion);
        spec.basin.kind = spec.kind == DispersionKind::rossby_sphere ? BasinKind::sphere
                          : spec.kind == DispersionKind::bve_plane   ? BasinKind::plane
                                                                     : BasinKind::unit_square;
    }
    if (o_liquid->count()) {
        const auto l = find_liquid(liquid);
        if (!l) throw UsageError("unknown liquid: " + liquid);
        if (o_mu->count() && mu_nu != l->mu_over_nu) throw UsageError("--liquid contradicts --mu-nu");
        c.liquid = std::string(l->label);
        spec.mu_over_nu = l->mu_over_nu;
    } else if (o_mu->count()) {
        spec.mu_over_nu = mu_nu;
    }
    if (o_g->count()) spec.g = g;
    if (o_alpha->count()) spec.alpha = alpha;
    if (o_bve->count()) spec.bve_form = parse_bve_form(bve_form);
    if (o_basin->count()) spec.basin.kind = parse_basin_kind(basin);
    if (o_lx->count() || o_ly->count()) {
        if (!(lx > 0.0) || !(ly > 0.0)) throw DomainError("basin lengths must be positive");
        spec.basin.kind = BasinKind::rectangle;
        spec.basin.lx = lx;
        spec.basin.ly = ly;
    }
    if (o_formula->count()) spec.basin.formula = parse_basin_formula(basin_formula);
    c.spec = spec;

    const DomainShape default_shape =
        spec.kind == DispersionKind::rossby_sphere ? DomainShape::triangular : DomainShape::square;
    c.domain = SpectralDomain(truncation, o_shape->count() ? parse_shape(shape) : default_shape);
    c.rules.closure = parse_closure(closure);
    c.rules.sphere_filter = parse_sphere_filter(sphere_filter);
    c.bridge_policy = parse_bridge_policy(bridge_policy);
    c.signs = parse_signs(signs);
    if (o_dmax->count()) c.d_max = d_max;
    if (o_dmin->count()) c.d_min = d_min;
    if (o_omax->count()) c.omega_max = omega_max;
    if (o_m->count()) c.m = m;
    if (o_n->count()) c.n = n;
    if (format == "json") c.format = OutputFormat::json;
    else if (format == "csv") c.format = OutputFormat::csv;
    else if (format == "table") c.format = OutputFormat::table;
    else throw UsageError("unknown format: " + format);
    c.header = !no_header;
    detail::finalize(c);
    return c;
}

// Runs a resolved config, writing the report to `out` (or to c.output).
inline void run(const RunConfig& c, std::ostream& out) {
    std::ostringstream buf;
    if (c.command == "find-triads") detail::run_find_triads(c, buf);
    else if (c.command == "classify") detail::run_classify(c, buf);
    else if (c.command == "bound") detail::run_bound(c, buf);
    else if (c.command == "plan") detail::run_plan(c, buf);
    else if (c.command == "sweep") detail::run_sweep(c, buf);
    else if (c.command == "eval") detail::run_eval(c, buf);
    else throw UsageError("unknown command: " + c.command);

    if (c.output.empty()) {
        out << buf.str();
        out.flush();
        return;
    }
    std::ofstream file(c.output, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + c.output);
    file << buf.str();
    file.close();
    if (!file) throw IoError("failed writing output file: " + c.output);
}

inline void write_error(std::ostream& err, std::string_view type, std::string_view message) {
    const Json j{{"error", {{"type", type}, {"message", message}}}};
    err << j.dump() << '\n';
}

// Full front end: parse, run, map failures to exit codes.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        std::string help;
        const RunConfig c = parse_args(args, &help);
        if (!help.empty()) {
            out << help;
            return static_cast<int>(ExitCode::ok);
        }
        run(c, out);
        return static_cast<int>(ExitCode::ok);
    } catch (const UsageError& e) {
        write_error(err, "usage", e.what());
        return static_cast<int>(ExitCode::usage);
    } catch (const DomainError& e) {
        write_error(err, "domain", e.what());
        return static_cast<int>(ExitCode::domain);
    } catch (const IoError& e) {
        write_error(err, "io", e.what());
        return static_cast<int>(ExitCode::io);
    } catch (const std::exception& e) {
        write_error(err, "usage", e.what());
        return static_cast<int>(ExitCode::usage);
    }
}

} // namespace wavetriad
