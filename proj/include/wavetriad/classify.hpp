#pragma once

#include <wavetriad/search.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

namespace wavetriad {

enum class ModeClass { active, passive, neutral };

inline std::string_view to_string(ModeClass c) {
    switch (c) {
    case ModeClass::active: return "active";
    case ModeClass::passive: return "passive";
    case ModeClass::neutral: return "neutral";
    }
    return "?";
}

// Which minimal near-resonant waves join the active class.
//   per_pair:  the bridge of each (resonant triad, member pair).
//   per_triad: only the triad's overall minimal near-resonant wave.
enum class BridgePolicy { per_pair, per_triad };

inline std::string_view to_string(BridgePolicy p) {
    return p == BridgePolicy::per_pair ? "per_pair" : "per_triad";
}

struct ClassifyOptions {
    ResonanceRules rules{};
    BridgePolicy bridge_policy = BridgePolicy::per_pair;
};

// One link of an energy cascade: energy leaves `source` through `bridge`,
// which closes a non-resonant triad (`formed`) with `donor_pair`.
struct CascadeStep {
    Triad source;
    std::array<WaveVector, 2> donor_pair;
    WaveVector bridge;
    Discrepancy bridge_discrepancy;
    Triad formed;
};

struct ModeAssignment {
    WaveVector mode;
    ModeClass cls = ModeClass::neutral;
    // 0 for members of resonant triads, the bridge |Omega| for near-resonant
    // waves, the smallest qualifying |Omega| for passive modes.
    std::optional<double> min_abs_discrepancy;
    std::vector<Triad> evidence;
};

struct ClassCounts {
    std::size_t active = 0;
    std::size_t passive = 0;
    std::size_t neutral = 0;

    std::size_t total() const { return active + passive + neutral; }
    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct ModePartition {
    SpectralDomain domain;
    DispersionSpec spec;
    double omega_max = 0.0;
    ClassifyOptions options;
    std::vector<ModeAssignment> assignments; // lexicographic by mode
    std::vector<Triad> resonant_triads;
    std::vector<CascadeStep> bridges;

    const ModeAssignment& at(const WaveVector& k) const {
        auto it = std::lower_bound(assignments.begin(), assignments.end(), k,
                                   [](const ModeAssignment& a, const WaveVector& v) { return a.mode < v; });
        if (it == assignments.end() || it->mode != k) {
            throw DomainError("mode " + to_string(k) + " is not in the domain");
        }
        return *it;
    }

    ModeClass class_of(const WaveVector& k) const { return at(k).cls; }

    ClassCounts counts() const {
        ClassCounts c;
        for (const auto& a : assignments) {
            switch (a.cls) {
            case ModeClass::active: ++c.active; break;
            case ModeClass::passive: ++c.passive; break;
            case ModeClass::neutral: ++c.neutral; break;
            }
        }
        return c;
    }
};

namespace detail {

// Orders three closing members canonically: summands (lexicographic) then the
// sum for sum-type closure, fully sorted for standing closure.
inline std::array<WaveVector, 3> canonical_members(const DispersionSpec& spec, const ResonanceRules& rules,
                                                   std::array<WaveVector, 3> ks) {
    const bool sphere = spec.kind == DispersionKind::rossby_sphere;
    if (!sphere && rules.closure == Closure::standing) {
        std::sort(ks.begin(), ks.end());
        return ks;
    }
    for (int s = 0; s < 3; ++s) {
        const WaveVector& a = ks[(s + 1) % 3];
        const WaveVector& b = ks[(s + 2) % 3];
        if (vector_closes(spec, rules, std::min(a, b), std::max(a, b), ks[s])) {
            return {std::min(a, b), std::max(a, b), ks[s]};
        }
    }
    throw UsageError("members do not close under the configured rules");
}

// Every wave c in `domain` that closes a triad with (a, b) under `rules`.
inline std::vector<WaveVector> completions(const DispersionSpec& spec, const SpectralDomain& domain,
                                           const ResonanceRules& rules, const WaveVector& a,
                                           const WaveVector& b) {
    std::vector<WaveVector> out;
    auto add = [&](const WaveVector& c) {
        if (!domain.contains(c)) return;
        if (!vector_closes(spec, rules, a, b, c) && !vector_closes(spec, rules, a, c, b) &&
            !vector_closes(spec, rules, b, c, a) && !vector_closes(spec, rules, b, a, c) &&
            !vector_closes(spec, rules, c, a, b) && !vector_closes(spec, rules, c, b, a)) {
            return;
        }
        out.push_back(c);
    };
    const int T = domain.truncation();
    if (spec.kind == DispersionKind::rossby_sphere) {
        for (int cm : {a.m + b.m, std::abs(a.m - b.m)}) {
            if (cm < 1 || cm > T) continue;
            for (int n = 1; n <= T; ++n) add({cm, n});
        }
    } else if (rules.closure == Closure::sum) {
        add({a.m + b.m, a.n + b.n});
        add({b.m - a.m, b.n - a.n});
        add({a.m - b.m, a.n - b.n});
    } else {
        for (int cm : {a.m + b.m, std::abs(a.m - b.m)}) {
            for (int cn : {a.n + b.n, std::abs(a.n - b.n)}) add({cm, cn});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool abs_less(const Discrepancy& x, const Discrepancy& y) {
    if (x.exact && y.exact) return abs(*x.exact) < abs(*y.exact);
    return x.magnitude() < y.magnitude();
}

inline bool abs_equal(const Discrepancy& x, const Discrepancy& y) {
    if (x.exact && y.exact) return abs(*x.exact) == abs(*y.exact);
    return x.magnitude() == y.magnitude();
}

inline bool abs_within(const Discrepancy& d, double omega_max) {
    if (d.exact) return abs(*d.exact) <= Rational(omega_max);
    return d.magnitude() <= omega_max;
}

// Bridge search without the resonance precondition (cascades continue from
// non-resonant triads).
inline std::optional<CascadeStep> bridge_for(const DispersionSpec& spec, const SpectralDomain& domain,
                                             const ResonanceRules& rules, const FrequencyTable& table,
                                             const Triad& source, const std::array<WaveVector, 2>& pair) {
    const bool sphere = spec.kind == DispersionKind::rossby_sphere;
    std::optional<CascadeStep> best;
    for (const auto& c : completions(spec, domain, rules, pair[0], pair[1])) {
        if (source.contains(c)) continue;
        const auto ks = canonical_members(spec, rules, {pair[0], pair[1], c});
        const SignPattern p = pattern_for(rules, sphere, table(ks[0]), table(ks[1]), table(ks[2]));
        Triad formed = build_triad(table, ks[0], ks[1], ks[2], p);
        if (formed.resonant()) continue;
        if (best && !abs_less(formed.discrepancy, best->bridge_discrepancy)) continue;
        best = CascadeStep{source, pair, c, formed.discrepancy, std::move(formed)};
    }
    return best;
}

inline bool step_less(const CascadeStep& x, int xi, const CascadeStep& y, int yi) {
    if (abs_less(x.bridge_discrepancy, y.bridge_discrepancy)) return true;
    if (!abs_equal(x.bridge_discrepancy, y.bridge_discrepancy)) return false;
    if (x.bridge != y.bridge) return x.bridge < y.bridge;
    return xi < yi;
}

constexpr std::array<std::pair<int, int>, 3> kMemberPairs{{{0, 1}, {0, 2}, {1, 2}}};

} // namespace detail

// The wave of smallest nonzero |Omega| that closes a triad with `donor_pair`,
// excluding the triad's own members; ties go to the lexicographically
// smallest wave. Returns nullopt ("no bridge") when no such wave exists.
inline std::optional<CascadeStep> minimal_near_resonant(const DispersionSpec& spec, const SpectralDomain& domain,
                                                        const Triad& triad, const std::array<WaveVector, 2>& donor_pair,
                                                        const ResonanceRules& rules = {}) {
    if (!triad.resonant()) throw UsageError("minimal_near_resonant requires a resonant triad");
    if (!triad.contains(donor_pair[0]) || !triad.contains(donor_pair[1])) {
        throw UsageError("donor pair must be members of the triad");
    }
    const detail::FrequencyTable table(spec, domain);
    return detail::bridge_for(spec, domain, rules, table, triad, donor_pair);
}

// Follows minimal near-resonant waves from `seed`: at each level the (pair,
// bridge) of globally smallest |Omega| is taken and the next triad is the
// donor pair plus the bridge. Stops at "no bridge" or a repeated triad.
inline std::vector<CascadeStep> cascade_path(const DispersionSpec& spec, const SpectralDomain& domain,
                                             const Triad& seed, int depth, const ResonanceRules& rules = {}) {
    if (!seed.resonant()) throw UsageError("cascade seed must be a resonant triad");
    if (depth < 1) throw DomainError("cascade depth must be >= 1");
    const detail::FrequencyTable table(spec, domain);
    std::vector<CascadeStep> path;
    std::set<std::array<WaveVector, 3>> visited{seed.members()};
    Triad current = seed;
    for (int level = 0; level < depth; ++level) {
        std::optional<CascadeStep> best;
        int best_index = 0;
        const auto ms = current.members();
        for (int pi = 0; pi < 3; ++pi) {
            const auto [i, j] = detail::kMemberPairs[static_cast<std::size_t>(pi)];
            auto step = detail::bridge_for(spec, domain, rules, table, current,
                                           {ms[static_cast<std::size_t>(i)], ms[static_cast<std::size_t>(j)]});
            if (step && (!best || detail::step_less(*step, pi, *best, best_index))) {
                best = std::move(step);
                best_index = pi;
            }
        }
        if (!best) break;
        if (!visited.insert(best->formed.members()).second) break;
        current = best->formed;
        path.push_back(std::move(*best));
    }
    return path;
}

// Partitions every mode of `domain` into active / passive / neutral.
//   active:  members of resonant triads, plus minimal near-resonant bridges
//            with |Omega| <= omega_max (per `bridge_policy`).
//   passive: other members of closed triads with 0 < |Omega| <= omega_max
//            that share no member pair with a resonant triad.
//   neutral: everything else.
inline ModePartition classify_modes(const DispersionSpec& spec, const SpectralDomain& domain, double omega_max,
                                    const ClassifyOptions& opts = {}) {
    if (!(omega_max > 0.0)) throw DomainError("omega_max must be positive");
    const detail::FrequencyTable table(spec, domain);
    const bool sphere = spec.kind == DispersionKind::rossby_sphere;
    const Rational omega_max_q(omega_max);

    struct Record {
        std::array<WaveVector, 3> ks;
        SignPattern signs;
        double abs_omega;
    };
    std::vector<Triad> resonant;
    std::vector<Record> ari; // non-resonant, |Omega| <= omega_max
    Rational omega;
    detail::for_each_candidate(spec, domain, opts.rules, 0, 1,
                               [&](const WaveVector& a, const WaveVector& b, const WaveVector& c) {
                                   const double w1 = table(a), w2 = table(b), w3 = table(c);
                                   const SignPattern p = detail::pattern_for(opts.rules, sphere, w1, w2, w3);
                                   if (table.has_exact()) {
                                       omega = detail::apply(p, table.exact_at(a), table.exact_at(b), table.exact_at(c));
                                       if (omega == 0) {
                                           resonant.push_back(detail::build_triad(table, a, b, c, p));
                                       } else if (abs(omega) <= omega_max_q) {
                                           ari.push_back({{a, b, c}, p, std::abs(to_double(omega))});
                                       }
                                       return;
                                   }
                                   const double v = std::abs(detail::apply(p, w1, w2, w3));
                                   if (v / detail::min_abs(w1, w2, w3) <= kNumericallyExactRatio) {
                                       resonant.push_back(detail::build_triad(table, a, b, c, p));
                                   } else if (v <= omega_max) {
                                       ari.push_back({{a, b, c}, p, v});
                                   }
                               });
    std::sort(resonant.begin(), resonant.end(), TriadKeyLess{});

    ModePartition out{domain, spec, omega_max, opts, {}, resonant, {}};
    std::map<WaveVector, ModeAssignment> by_mode;
    for (const auto& k : domain.modes()) by_mode[k].mode = k;

    std::set<std::pair<WaveVector, WaveVector>> resonant_pairs;
    for (const auto& t : resonant) {
        const auto ms = t.members();
        for (const auto& [i, j] : detail::kMemberPairs) {
            const auto& x = ms[static_cast<std::size_t>(i)];
            const auto& y = ms[static_cast<std::size_t>(j)];
            resonant_pairs.insert({std::min(x, y), std::max(x, y)});
        }
        for (const auto& k : ms) {
            auto& a = by_mode[k];
            a.cls = ModeClass::active;
            a.min_abs_discrepancy = 0.0;
            if (a.evidence.empty() || !same_members(a.evidence.back(), t)) a.evidence.push_back(t);
        }
    }

    for (const auto& t : resonant) {
        const auto ms = t.members();
        std::vector<CascadeStep> steps;
        for (const auto& [i, j] : detail::kMemberPairs) {
            auto s = detail::bridge_for(spec, domain, opts.rules, table, t,
                                        {ms[static_cast<std::size_t>(i)], ms[static_cast<std::size_t>(j)]});
            if (s) steps.push_back(std::move(*s));
        }
        if (opts.bridge_policy == BridgePolicy::per_triad && !steps.empty()) {
            std::size_t best = 0;
            for (std::size_t s = 1; s < steps.size(); ++s) {
                if (detail::step_less(steps[s], static_cast<int>(s), steps[best], static_cast<int>(best))) best = s;
            }
            steps = {steps[best]};
        }
        for (auto& s : steps) {
            if (!detail::abs_within(s.bridge_discrepancy, omega_max)) continue;
            auto& a = by_mode[s.bridge];
            const double mag = s.bridge_discrepancy.magnitude();
            if (a.cls != ModeClass::active) {
                a.cls = ModeClass::active;
                a.min_abs_discrepancy = mag;
            } else if (a.min_abs_discrepancy && *a.min_abs_discrepancy > mag) {
                a.min_abs_discrepancy = mag;
            }
            a.evidence.push_back(s.formed);
            out.bridges.push_back(std::move(s));
        }
    }

    for (const auto& r : ari) {
        bool shares = false;
        for (const auto& [i, j] : detail::kMemberPairs) {
            const auto& x = r.ks[static_cast<std::size_t>(i)];
            const auto& y = r.ks[static_cast<std::size_t>(j)];
            if (resonant_pairs.count({std::min(x, y), std::max(x, y)})) {
                shares = true;
                break;
            }
        }
        if (shares) continue;
        for (const auto& k : r.ks) {
            auto& a = by_mode[k];
            if (a.cls == ModeClass::active) continue;
            if (a.cls == ModeClass::neutral || r.abs_omega < *a.min_abs_discrepancy) {
                a.cls = ModeClass::passive;
                a.min_abs_discrepancy = r.abs_omega;
                a.evidence = {detail::build_triad(table, r.ks[0], r.ks[1], r.ks[2], r.signs)};
            }
        }
    }

    out.assignments.reserve(by_mode.size());
    for (auto& [k, a] : by_mode) out.assignments.push_back(std::move(a));
    return out;
}

inline ClassCounts class_counts(const DispersionSpec& spec, const SpectralDomain& domain, double omega_max,
                                const ClassifyOptions& opts = {}) {
    return classify_modes(spec, domain, omega_max, opts).counts();
}

} // namespace wavetriad
