#pragma once

#include <wavetriad/dispersion.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace wavetriad {

// Vector closure convention for a candidate triad.
//   sum:      k1 + k2 = k3 in every closed component (travelling waves).
//   standing: in each component independently one member is the sum of the
//             other two (cos-cos basin modes); the frequency sign pattern is
//             the one of smallest |Omega|.
// rossby_sphere closes only the zonal index m; n3 is free in [m3, T].
enum class Closure { sum, standing };

// Optional selection rule on the sphere's total index n (off by default).
//   triangle: |n1 - n2| < n3 < n1 + n2.
//   rossby:   triangle, n1 + n2 + n3 odd, and not n1 = n2 = n3.
enum class SphereFilter { none, triangle, rossby };

struct ResonanceRules {
    Closure closure = Closure::sum;
    SphereFilter sphere_filter = SphereFilter::none;

    friend bool operator==(const ResonanceRules&, const ResonanceRules&) = default;
};

// On floating-point dispersions a triad with d_ratio at or below this value is
// treated as resonant ("numerically exact").
inline constexpr double kNumericallyExactRatio = 1e-12;

// Coefficients (+1 / -1) applied to (w1, w2, w3).
struct SignPattern {
    std::array<int, 3> s{+1, +1, -1};

    static constexpr SignPattern sum() { return {}; }

    std::string str() const {
        std::string out;
        for (int v : s) out.push_back(v > 0 ? '+' : '-');
        return out;
    }

    friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

inline SignPattern parse_signs(std::string_view text) {
    if (text.size() != 3) throw UsageError("sign pattern must have three characters: " + std::string(text));
    SignPattern p;
    for (std::size_t i = 0; i < 3; ++i) {
        if (text[i] == '+') p.s[i] = +1;
        else if (text[i] == '-') p.s[i] = -1;
        else throw UsageError("bad sign pattern: " + std::string(text));
    }
    return p;
}

// Residual of the frequency condition. `exact` is set on rational dispersions.
struct Discrepancy {
    double value = 0.0;
    std::optional<Rational> exact;

    double magnitude() const { return std::abs(value); }
};

struct Triad {
    WaveVector k1, k2, k3;
    SignPattern signs;
    std::array<Frequency, 3> omegas;
    Discrepancy discrepancy;
    double d_ratio = 0.0; // |Omega| / min |w_i|, unit-free

    std::array<WaveVector, 3> members() const { return {k1, k2, k3}; }
    auto key() const { return std::tie(k1, k2, k3); }

    bool contains(const WaveVector& k) const { return k == k1 || k == k2 || k == k3; }

    // Omega == 0 exactly on rational dispersions, d_ratio <= 1e-12 otherwise.
    bool resonant() const {
        if (discrepancy.exact) return *discrepancy.exact == 0;
        return d_ratio <= kNumericallyExactRatio;
    }
};

inline bool same_members(const Triad& a, const Triad& b) { return a.key() == b.key(); }

// Lexicographic on (k1, k2, k3).
struct TriadKeyLess {
    bool operator()(const Triad& a, const Triad& b) const { return a.key() < b.key(); }
};

inline bool passes_sphere_filter(SphereFilter filter, int n1, int n2, int n3) {
    if (filter == SphereFilter::none) return true;
    const bool triangle = std::abs(n1 - n2) < n3 && n3 < n1 + n2;
    if (filter == SphereFilter::triangle) return triangle;
    return triangle && (n1 + n2 + n3) % 2 == 1 && !(n1 == n2 && n2 == n3);
}

// True iff (k1, k2, k3) closes under `rules` for `spec`. For the sum
// convention the roles are fixed (k1 + k2 = k3); for standing closure any
// member may play the sum.
inline bool vector_closes(const DispersionSpec& spec, const ResonanceRules& rules,
                          const WaveVector& k1, const WaveVector& k2, const WaveVector& k3) {
    if (spec.kind == DispersionKind::rossby_sphere) {
        return k1.m + k2.m == k3.m && passes_sphere_filter(rules.sphere_filter, k1.n, k2.n, k3.n);
    }
    if (rules.closure == Closure::sum) {
        return k1.m + k2.m == k3.m && k1.n + k2.n == k3.n;
    }
    auto one_is_sum = [](int a, int b, int c) { return a + b == c || a + c == b || b + c == a; };
    return one_is_sum(k1.m, k2.m, k3.m) && one_is_sum(k1.n, k2.n, k3.n);
}

namespace detail {

inline void check_rules(const DispersionSpec& spec, const ResonanceRules& rules) {
    if (spec.kind == DispersionKind::rossby_sphere && rules.closure == Closure::standing) {
        throw UsageError("standing closure is not defined for rossby_sphere");
    }
}

// Visits every admissible candidate (k1, k2, k3) of `domain` exactly once, in
// canonical form: k1 <= k2 for the sum convention, k1 <= k2 <= k3 for
// standing closure. Only candidates whose k1 index i satisfies
// i % slices == slice are visited, so disjoint slices cover the space.
template <class Visit>
void for_each_candidate(const DispersionSpec& spec, const SpectralDomain& domain,
                        const ResonanceRules& rules, std::size_t slice, std::size_t slices,
                        Visit&& visit) {
    check_rules(spec, rules);
    const int T = domain.truncation();
    const auto modes = domain.modes();
    const bool sphere = spec.kind == DispersionKind::rossby_sphere;

    for (std::size_t i = slice; i < modes.size(); i += slices) {
        const WaveVector a = modes[i];
        for (std::size_t j = i; j < modes.size(); ++j) {
            const WaveVector b = modes[j];
            if (sphere) {
                const int m3 = a.m + b.m;
                if (m3 > T) continue;
                for (int n3 = 1; n3 <= T; ++n3) {
                    const WaveVector c{m3, n3};
                    if (!domain.contains(c)) continue;
                    if (!passes_sphere_filter(rules.sphere_filter, a.n, b.n, n3)) continue;
                    visit(a, b, c);
                }
                continue;
            }
            if (rules.closure == Closure::sum) {
                if (a.m + b.m > T) break; // b.m only grows from here
                const WaveVector c{a.m + b.m, a.n + b.n};
                if (domain.contains(c)) visit(a, b, c);
                continue;
            }
            const std::array<int, 2> cms{a.m + b.m, std::abs(a.m - b.m)};
            const std::array<int, 2> cns{a.n + b.n, std::abs(a.n - b.n)};
            for (int cm : cms) {
                for (int cn : cns) {
                    const WaveVector c{cm, cn};
                    if (!domain.contains(c) || c < b) continue;
                    visit(a, b, c);
                }
            }
        }
    }
}

} // namespace detail

} // namespace wavetriad
