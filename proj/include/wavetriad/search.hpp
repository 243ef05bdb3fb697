#pragma once

#include <wavetriad/triad.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace wavetriad {

struct SearchOptions {
    ResonanceRules rules{};
    unsigned threads = 1;
};

namespace detail {

// Per-domain lookup tables of w (double) and, for rational dispersions, the
// exact frequencies.
struct FrequencyTable {
    const SpectralDomain* domain;
    std::vector<double> omega;
    std::vector<Rational> exact;

    FrequencyTable(const DispersionSpec& spec, const SpectralDomain& dom)
        : domain(&dom), omega(dom.slot_count(), 0.0) {
        spec.validate();
        if (spec.exact()) exact.resize(dom.slot_count());
        for (const auto& k : dom.modes()) {
            omega[dom.slot(k)] = eval_omega(spec, k);
            if (spec.exact()) exact[dom.slot(k)] = rossby_omega(k);
        }
    }

    double operator()(const WaveVector& k) const { return omega[domain->slot(k)]; }
    const Rational& exact_at(const WaveVector& k) const { return exact[domain->slot(k)]; }
    bool has_exact() const { return !exact.empty(); }
};

inline double apply(const SignPattern& p, double w1, double w2, double w3) {
    return p.s[0] * w1 + p.s[1] * w2 + p.s[2] * w3;
}

inline Rational apply(const SignPattern& p, const Rational& w1, const Rational& w2, const Rational& w3) {
    Rational r = p.s[0] * w1;
    r += p.s[1] * w2;
    r += p.s[2] * w3;
    return r;
}

inline double min_abs(double a, double b, double c) {
    return std::min({std::abs(a), std::abs(b), std::abs(c)});
}

// Sign pattern for a canonical candidate: fixed (+,+,-) for the sum
// convention, the smallest-|Omega| pattern for standing closure.
inline SignPattern pattern_for(const ResonanceRules& rules, bool sphere, double w1, double w2, double w3) {
    if (sphere || rules.closure == Closure::sum) return SignPattern::sum();
    static constexpr std::array<SignPattern, 4> patterns{
        SignPattern{{+1, +1, -1}}, SignPattern{{+1, -1, +1}}, SignPattern{{-1, +1, +1}},
        SignPattern{{+1, +1, +1}}};
    SignPattern best = patterns[0];
    double best_abs = std::abs(apply(best, w1, w2, w3));
    for (std::size_t i = 1; i < patterns.size(); ++i) {
        const double v = std::abs(apply(patterns[i], w1, w2, w3));
        if (v < best_abs) {
            best_abs = v;
            best = patterns[i];
        }
    }
    return best;
}

inline Triad build_triad(const FrequencyTable& table, const WaveVector& k1, const WaveVector& k2,
                         const WaveVector& k3, const SignPattern& signs) {
    Triad t;
    t.k1 = k1;
    t.k2 = k2;
    t.k3 = k3;
    t.signs = signs;
    const std::array<WaveVector, 3> ks{k1, k2, k3};
    for (std::size_t i = 0; i < 3; ++i) {
        t.omegas[i].omega = table(ks[i]);
        if (table.has_exact()) t.omegas[i].exact = table.exact_at(ks[i]);
    }
    if (table.has_exact()) {
        Rational omega = apply(signs, *t.omegas[0].exact, *t.omegas[1].exact, *t.omegas[2].exact);
        Rational smallest = abs(*t.omegas[0].exact);
        for (std::size_t i = 1; i < 3; ++i) smallest = std::min(smallest, abs(*t.omegas[i].exact));
        const Rational ratio = abs(omega) / smallest;
        t.discrepancy.value = to_double(omega);
        t.discrepancy.exact = std::move(omega);
        t.d_ratio = to_double(ratio);
    } else {
        t.discrepancy.value = apply(signs, t.omegas[0].omega, t.omegas[1].omega, t.omegas[2].omega);
        t.d_ratio = std::abs(t.discrepancy.value) /
                    min_abs(t.omegas[0].omega, t.omegas[1].omega, t.omegas[2].omega);
    }
    return t;
}

// Runs `work(slice, slices, out)` on `threads` workers over disjoint slices and
// concatenates the partial results in slice order.
template <class Result, class Work>
std::vector<Result> run_sliced(unsigned threads, Work&& work) {
    const unsigned n = std::max(1u, threads);
    std::vector<std::vector<Result>> parts(n);
    if (n == 1) {
        work(0, 1, parts[0]);
    } else {
        std::vector<std::exception_ptr> errors(n);
        {
            std::vector<std::jthread> pool;
            pool.reserve(n);
            for (unsigned s = 0; s < n; ++s) {
                pool.emplace_back([&, s] {
                    try {
                        work(s, n, parts[s]);
                    } catch (...) {
                        errors[s] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    std::vector<Result> out;
    for (auto& p : parts) {
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return out;
}

inline void sort_by_ratio_ascending(std::vector<Triad>& triads) {
    std::sort(triads.begin(), triads.end(), [](const Triad& a, const Triad& b) {
        if (a.d_ratio != b.d_ratio) return a.d_ratio < b.d_ratio;
        return a.key() < b.key();
    });
}

inline void sort_by_ratio_descending(std::vector<Triad>& triads) {
    std::sort(triads.begin(), triads.end(), [](const Triad& a, const Triad& b) {
        if (a.d_ratio != b.d_ratio) return a.d_ratio > b.d_ratio;
        return a.key() < b.key();
    });
}

// Candidate filter shared by the threshold searches. On rational dispersions
// the double ratio only pre-screens (with slack); the stored ratio is exact.
template <class Keep>
std::vector<Triad> threshold_search(const DispersionSpec& spec, const SpectralDomain& domain,
                                    const SearchOptions& opts, Keep&& keep) {
    const FrequencyTable table(spec, domain);
    const bool sphere = spec.kind == DispersionKind::rossby_sphere;
    return run_sliced<Triad>(opts.threads, [&](std::size_t slice, std::size_t slices,
                                               std::vector<Triad>& out) {
        for_each_candidate(spec, domain, opts.rules, slice, slices,
                           [&](const WaveVector& a, const WaveVector& b, const WaveVector& c) {
                               const double w1 = table(a), w2 = table(b), w3 = table(c);
                               const SignPattern p = pattern_for(opts.rules, sphere, w1, w2, w3);
                               const double ratio = std::abs(apply(p, w1, w2, w3)) / min_abs(w1, w2, w3);
                               if (!keep(ratio, table.has_exact())) return;
                               Triad t = build_triad(table, a, b, c, p);
                               if (table.has_exact() && !keep(t.d_ratio, false)) return;
                               out.push_back(std::move(t));
                           });
    });
}

} // namespace detail

// Omega = s1 w(k1) + s2 w(k2) + s3 w(k3). Exact on rational dispersions.
inline Discrepancy discrepancy(const DispersionSpec& spec, const WaveVector& k1, const WaveVector& k2,
                               const WaveVector& k3, const SignPattern& signs = SignPattern::sum()) {
    require_positive(k1);
    require_positive(k2);
    require_positive(k3);
    const std::array<Frequency, 3> w{eval_frequency(spec, k1), eval_frequency(spec, k2),
                                     eval_frequency(spec, k3)};
    Discrepancy d;
    if (spec.exact()) {
        d.exact = detail::apply(signs, *w[0].exact, *w[1].exact, *w[2].exact);
        d.value = to_double(*d.exact);
    } else {
        d.value = detail::apply(signs, w[0].omega, w[1].omega, w[2].omega);
    }
    return d;
}

// Fully evaluated triad for explicit members; closure is not checked here.
inline Triad make_triad(const DispersionSpec& spec, const WaveVector& k1, const WaveVector& k2,
                        const WaveVector& k3, const SignPattern& signs = SignPattern::sum()) {
    require_positive(k1);
    require_positive(k2);
    require_positive(k3);
    const int T = std::max({k1.m, k1.n, k2.m, k2.n, k3.m, k3.n});
    const SpectralDomain dom = SpectralDomain::square(T);
    const detail::FrequencyTable table(spec, dom);
    return detail::build_triad(table, k1, k2, k3, signs);
}

// All triads with Omega = 0 exactly, in lexicographic order. Rational
// dispersions only.
inline std::vector<Triad> find_exact_triads(const DispersionSpec& spec, const SpectralDomain& domain,
                                            const SearchOptions& opts = {}) {
    if (!spec.exact()) {
        throw UsageError(std::string(to_string(spec.kind)) +
                         " is not a rational dispersion; use find_near_triads with a threshold");
    }
    const detail::FrequencyTable table(spec, domain);
    auto out = detail::run_sliced<Triad>(opts.threads, [&](std::size_t slice, std::size_t slices,
                                                           std::vector<Triad>& part) {
        Rational omega;
        detail::for_each_candidate(spec, domain, opts.rules, slice, slices,
                                   [&](const WaveVector& a, const WaveVector& b, const WaveVector& c) {
                                       omega = table.exact_at(a);
                                       omega += table.exact_at(b);
                                       omega -= table.exact_at(c);
                                       if (omega == 0) {
                                           part.push_back(detail::build_triad(table, a, b, c, SignPattern::sum()));
                                       }
                                   });
    });
    std::sort(out.begin(), out.end(), TriadKeyLess{});
    return out;
}

// All closed triads with d_ratio <= d_max, ascending by d_ratio then members.
inline std::vector<Triad> find_near_triads(const DispersionSpec& spec, const SpectralDomain& domain,
                                           double d_max, const SearchOptions& opts = {}) {
    if (!(d_max > 0.0)) throw DomainError("d_max must be positive");
    const double screen = d_max * (1.0 + 1e-9) + 1e-15;
    auto out = detail::threshold_search(spec, domain, opts, [&](double ratio, bool screening) {
        return ratio <= (screening ? screen : d_max);
    });
    detail::sort_by_ratio_ascending(out);
    return out;
}

// All closed triads with d_ratio >= d_min, descending by d_ratio; the head
// attains the domain maximum.
inline std::vector<Triad> find_max_discrepancy_triads(const DispersionSpec& spec,
                                                      const SpectralDomain& domain, double d_min,
                                                      const SearchOptions& opts = {}) {
    if (!(d_min > 0.0)) throw DomainError("d_min must be positive");
    const double screen = d_min * (1.0 - 1e-9);
    auto out = detail::threshold_search(spec, domain, opts, [&](double ratio, bool screening) {
        return ratio >= (screening ? screen : d_min);
    });
    detail::sort_by_ratio_descending(out);
    return out;
}

// Every closed triad in the domain, lexicographic order.
inline std::vector<Triad> all_closed_triads(const DispersionSpec& spec, const SpectralDomain& domain,
                                            const SearchOptions& opts = {}) {
    auto out = detail::threshold_search(spec, domain, opts, [](double, bool) { return true; });
    std::sort(out.begin(), out.end(), TriadKeyLess{});
    return out;
}

enum class BoundMethod { rational_1_over_bd, finite_domain_min };

inline std::string_view to_string(BoundMethod m) {
    return m == BoundMethod::rational_1_over_bd ? "rational_1_over_bd" : "finite_domain_min";
}

struct DiscrepancyBound {
    double value = 0.0;
    std::optional<Rational> exact;
    BoundMethod method = BoundMethod::finite_domain_min;
    std::optional<Triad> witness; // finite_domain_min only
};

// a_priori: 1/lcm of all frequency denominators in the domain (rational
// dispersions only). Any nonzero Omega is an integer multiple of it.
// finite_min: smallest nonzero |Omega| over the domain's closed triads, with
// witness; absent when the domain has no non-resonant closed triad.
struct LowerBounds {
    std::optional<DiscrepancyBound> a_priori;
    std::optional<DiscrepancyBound> finite_min;
    std::size_t closed_triads = 0;
};

// |a/b - c/d| >= 1/(bd) for two distinct rationals in lowest terms.
inline Rational pairwise_rational_bound(const Rational& x, const Rational& y) {
    return Rational(BigInt(1), BigInt(x.get_den() * y.get_den()));
}

inline LowerBounds discrepancy_lower_bound(const DispersionSpec& spec, const SpectralDomain& domain,
                                           const SearchOptions& opts = {}) {
    LowerBounds out;
    const detail::FrequencyTable table(spec, domain);
    const bool sphere = spec.kind == DispersionKind::rossby_sphere;

    if (spec.exact()) {
        BigInt common(1);
        for (const auto& k : domain.modes()) common = lcm(common, table.exact_at(k).get_den());
        DiscrepancyBound b;
        b.method = BoundMethod::rational_1_over_bd;
        b.exact = make_rational(BigInt(1), common);
        b.value = to_double(*b.exact);
        out.a_priori = std::move(b);
    }

    struct Best {
        std::size_t count = 0;
        std::optional<Triad> triad;
    };
    const auto parts = detail::run_sliced<Best>(opts.threads, [&](std::size_t slice, std::size_t slices,
                                                                  std::vector<Best>& part) {
        Best best;
        detail::for_each_candidate(spec, domain, opts.rules, slice, slices,
                                   [&](const WaveVector& a, const WaveVector& b, const WaveVector& c) {
                                       ++best.count;
                                       const double w1 = table(a), w2 = table(b), w3 = table(c);
                                       const SignPattern p = detail::pattern_for(opts.rules, sphere, w1, w2, w3);
                                       if (!table.has_exact()) {
                                           const double v = std::abs(detail::apply(p, w1, w2, w3));
                                           if (v / detail::min_abs(w1, w2, w3) <= kNumericallyExactRatio) return;
                                           if (best.triad && best.triad->discrepancy.magnitude() < v) return;
                                           Triad t = detail::build_triad(table, a, b, c, p);
                                           if (!best.triad || t.discrepancy.magnitude() < best.triad->discrepancy.magnitude() ||
                                               (t.discrepancy.magnitude() == best.triad->discrepancy.magnitude() &&
                                                t.key() < best.triad->key())) {
                                               best.triad = std::move(t);
                                           }
                                           return;
                                       }
                                       Triad t = detail::build_triad(table, a, b, c, p);
                                       if (*t.discrepancy.exact == 0) return;
                                       if (!best.triad) {
                                           best.triad = std::move(t);
                                           return;
                                       }
                                       const Rational lhs = abs(*t.discrepancy.exact);
                                       const Rational rhs = abs(*best.triad->discrepancy.exact);
                                       if (lhs < rhs || (lhs == rhs && t.key() < best.triad->key())) {
                                           best.triad = std::move(t);
                                       }
                                   });
        part.push_back(std::move(best));
    });

    std::optional<Triad> witness;
    for (const auto& p : parts) {
        out.closed_triads += p.count;
        if (!p.triad) continue;
        if (!witness) {
            witness = p.triad;
            continue;
        }
        bool better;
        if (witness->discrepancy.exact) {
            const Rational lhs = abs(*p.triad->discrepancy.exact);
            const Rational rhs = abs(*witness->discrepancy.exact);
            better = lhs < rhs || (lhs == rhs && p.triad->key() < witness->key());
        } else {
            const double lhs = p.triad->discrepancy.magnitude();
            const double rhs = witness->discrepancy.magnitude();
            better = lhs < rhs || (lhs == rhs && p.triad->key() < witness->key());
        }
        if (better) witness = p.triad;
    }
    if (witness) {
        DiscrepancyBound b;
        b.method = BoundMethod::finite_domain_min;
        b.value = witness->discrepancy.magnitude();
        if (witness->discrepancy.exact) {
            b.exact = abs(*witness->discrepancy.exact);
            b.value = to_double(*b.exact);
        }
        b.witness = std::move(witness);
        out.finite_min = std::move(b);
    }
    return out;
}

} // namespace wavetriad
