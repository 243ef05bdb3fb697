#pragma once

#include <wavetriad/classify.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wavetriad {

// Upper end of the weakly nonlinear steepness range.
inline constexpr double kMaxWeakSteepness = 0.2;

struct Amplitude {
    double value_cm = 0.0;
    std::optional<std::string> warning;
};

// a = epsilon / |k| from the steepness epsilon = a k, with |k| the scalar
// wavenumber of the dispersion's basin (sqrt(m^2 + n^2) on the unit square).
inline Amplitude steepness_amplitude(const DispersionSpec& spec, const WaveVector& k, double epsilon) {
    if (!(epsilon >= 0.0)) throw DomainError("steepness must be non-negative");
    Amplitude a;
    a.value_cm = epsilon / wavenumber(spec, k);
    if (epsilon == 0.0) {
        a.warning = "steepness 0 gives zero amplitude";
    } else if (epsilon > kMaxWeakSteepness) {
        a.warning = "steepness above 0.2 leaves the weakly nonlinear regime";
    }
    return a;
}

inline Amplitude steepness_amplitude(const WaveVector& k, double epsilon) {
    return steepness_amplitude(DispersionSpec{}, k, epsilon);
}

struct PlanetaryBound {
    Rational exact;
    double value = 0.0;
};

// |a(m,n)| < 6 m n! 2^(2n+1-m) / [5 n (n+1)^(m+n+3) (n-m) (5n-m-3)],
// evaluated with big integers.
inline PlanetaryBound planetary_amplitude_bound(int m, int n) {
    if (m < 1 || n < 1) throw DomainError("planetary bound needs m >= 1 and n >= 1");
    if (n == m) throw DomainError("planetary bound is singular for n = m");
    if (n < m) throw DomainError("planetary bound needs n > m");
    if (5 * n - m - 3 <= 0) throw DomainError("planetary bound needs 5n - m - 3 > 0");

    const auto un = static_cast<unsigned long>(n);
    const long two_exp = 2L * n + 1 - m;
    BigInt num = BigInt(6) * m * factorial(un);
    BigInt den = BigInt(5) * n * pow(BigInt(n + 1), static_cast<unsigned long>(m + n + 3)) * (n - m) *
                 (5 * n - m - 3);
    if (two_exp >= 0) {
        num *= pow(BigInt(2), static_cast<unsigned long>(two_exp));
    } else {
        den *= pow(BigInt(2), static_cast<unsigned long>(-two_exp));
    }
    PlanetaryBound b{make_rational(num, den), 0.0};
    b.value = to_double(b.exact);
    return b;
}

struct ExperimentPlan {
    DispersionSpec spec;
    SpectralDomain domain;
    double d_max = 0.0;
    double d_min = 0.0;
    double epsilon = 0.0;
    std::vector<Triad> type_a; // d_ratio <= d_max
    std::vector<Triad> type_b; // d_ratio >= d_min
    std::map<WaveVector, Amplitude> amplitudes;
    std::vector<std::string> notes;
};

inline ExperimentPlan plan_experiment(const DispersionSpec& spec, const SpectralDomain& domain, double d_max,
                                      double d_min, double epsilon, const SearchOptions& opts = {}) {
    if (!(d_max > 0.0) || !(d_min > 0.0) || !(d_max < d_min)) {
        throw UsageError("plan needs 0 < d_max < d_min");
    }
    ExperimentPlan plan{spec, domain, d_max, d_min, epsilon, {}, {}, {}, {}};
    plan.type_a = find_near_triads(spec, domain, d_max, opts);
    plan.type_b = find_max_discrepancy_triads(spec, domain, d_min, opts);
    for (const auto* list : {&plan.type_a, &plan.type_b}) {
        for (const auto& t : *list) {
            for (const auto& k : t.members()) {
                if (!plan.amplitudes.count(k)) plan.amplitudes.emplace(k, steepness_amplitude(spec, k, epsilon));
            }
        }
    }
    plan.notes.push_back("units: c.g.s.; frequencies in Hz = omega/(2 pi); amplitudes in cm");
    plan.notes.push_back("d_max should exceed the achievable relative precision of the wave generator (about 1e-5)");
    if (epsilon > kMaxWeakSteepness) plan.notes.push_back("steepness above 0.2 leaves the weakly nonlinear regime");
    if (plan.type_a.empty()) plan.notes.push_back("no type A triads at this d_max");
    if (plan.type_b.empty()) plan.notes.push_back("no type B triads at this d_min");
    return plan;
}

struct SweepCell {
    double lx = 1.0;
    double ly = 1.0;
    std::vector<Triad> triads; // find_near_triads at d_max
    ClassCounts counts;
    bool resonance_free = true;
};

struct GeometrySweepReport {
    DispersionSpec base;
    SpectralDomain domain;
    double d_max = 0.0;
    double omega_max = 0.0;
    std::vector<SweepCell> cells; // Lx-major, in the order given
};

inline GeometrySweepReport geometry_sweep(const DispersionSpec& base, const SpectralDomain& domain,
                                          const std::vector<double>& lx_values, const std::vector<double>& ly_values,
                                          double d_max, double omega_max, const ClassifyOptions& classify = {},
                                          unsigned threads = 1) {
    if (lx_values.empty() || ly_values.empty()) throw DomainError("sweep grid must be nonempty");
    for (double v : lx_values) if (!(v > 0.0)) throw DomainError("basin lengths must be positive");
    for (double v : ly_values) if (!(v > 0.0)) throw DomainError("basin lengths must be positive");

    GeometrySweepReport report{base, domain, d_max, omega_max, {}};
    std::vector<DispersionSpec> specs;
    for (double lx : lx_values) {
        for (double ly : ly_values) {
            report.cells.push_back({lx, ly, {}, {}, true});
            specs.push_back(rescale_for_basin(base, lx, ly));
            specs.back().validate();
        }
    }
    if (!(d_max > 0.0)) throw DomainError("d_max must be positive");
    if (!(omega_max > 0.0)) throw DomainError("omega_max must be positive");
    auto run_cell = [&](std::size_t i) {
        SweepCell& cell = report.cells[i];
        const DispersionSpec& spec = specs[i];
        cell.triads = find_near_triads(spec, domain, d_max, {classify.rules, 1});
        cell.counts = class_counts(spec, domain, omega_max, classify);
        cell.resonance_free = cell.triads.empty();
    };
    detail::run_sliced<int>(threads, [&](std::size_t slice, std::size_t slices, std::vector<int>&) {
        for (std::size_t i = slice; i < report.cells.size(); i += slices) run_cell(i);
    });
    return report;
}

} // namespace wavetriad
