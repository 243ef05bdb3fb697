#include "oracles.hpp"

#include <wavetriad/experiment.hpp>
#include <wavetriad/io.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace wavetriad;

namespace {

// 6 m n! 2^(2n+1-m) / [5 n (n+1)^(m+n+3) (n-m) (5n-m-3)] in 128-bit integers.
oracle::Frac planetary_oracle(int m, int n) {
    using oracle::i128;
    i128 num = 6 * static_cast<i128>(m);
    for (int i = 2; i <= n; ++i) num *= i;
    i128 den = 5 * static_cast<i128>(n) * (n - m) * (5 * n - m - 3);
    for (int i = 0; i < m + n + 3; ++i) den *= (n + 1);
    const int e = 2 * n + 1 - m;
    for (int i = 0; i < std::abs(e); ++i) (e > 0 ? num : den) *= 2;
    return oracle::Frac::make(num, den);
}

bool has(const std::vector<Triad>& ts, WaveVector a, WaveVector b, WaveVector c) {
    return std::any_of(ts.begin(), ts.end(), [&](const Triad& t) { return t.k1 == a && t.k2 == b && t.k3 == c; });
}

} // namespace

TEST(Amplitude, Examples) {
    EXPECT_DOUBLE_EQ(steepness_amplitude({10, 3}, 0.1).value_cm, 0.1 / std::sqrt(109.0));
    EXPECT_NEAR(steepness_amplitude({10, 3}, 0.1).value_cm, 0.00958, 1e-5);
    EXPECT_DOUBLE_EQ(steepness_amplitude({3, 4}, 0.1).value_cm, 0.02);
    const auto zero = steepness_amplitude({3, 4}, 0.0);
    EXPECT_EQ(zero.value_cm, 0.0);
    EXPECT_TRUE(zero.warning);
    EXPECT_FALSE(steepness_amplitude({3, 4}, 0.2).warning);
    EXPECT_TRUE(steepness_amplitude({3, 4}, 0.25).warning);
    EXPECT_THROW(steepness_amplitude({3, 4}, -0.1), DomainError);
    EXPECT_THROW(steepness_amplitude({0, 4}, 0.1), DomainError);
}

TEST(Amplitude, InverseOfSteepness) {
    for (int m = 1; m <= 30; ++m)
        for (int n = 1; n <= 30; ++n)
            for (double eps : {0.01, 0.1, 0.2}) {
                const double a = steepness_amplitude({m, n}, eps).value_cm;
                const double back = a * std::hypot(m, n);
                EXPECT_LE(std::abs(back - eps), 2 * (std::nextafter(eps, 1.0) - eps));
            }
}

TEST(Amplitude, UsesRescaledWavenumber) {
    const auto spec = rescale_for_basin(DispersionSpec::gravity_capillary(75), 2.0, 2.0);
    EXPECT_DOUBLE_EQ(steepness_amplitude(spec, {3, 4}, 0.1).value_cm, 0.04);
}

TEST(PlanetaryBound, OneThree) {
    const auto b = planetary_amplitude_bound(1, 3);
    EXPECT_EQ(b.exact, make_rational(BigInt(2304), BigInt(5406720)));
    EXPECT_EQ(b.exact, Rational(3, 7040));
    const auto o = planetary_oracle(1, 3);
    EXPECT_EQ(b.exact, Rational(BigInt(static_cast<long>(o.num)), BigInt(static_cast<long>(o.den))));
    EXPECT_NEAR(b.value, 4.2614e-4, 1e-8);
}

TEST(PlanetaryBound, MatchesIntegerOracle) {
    for (int m = 1; m <= 3; ++m)
        for (int n = m + 1; n <= 10; ++n) {
            const auto o = planetary_oracle(m, n);
            const Rational ref(BigInt(oracle::str(o.num)), BigInt(oracle::str(o.den)));
            EXPECT_EQ(planetary_amplitude_bound(m, n).exact, ref) << m << "," << n;
        }
}

TEST(PlanetaryBound, FloatWithinOneUlp) {
    const auto b = planetary_amplitude_bound(1, 10);
    const mpf_class exact(b.exact, 256);
    const mpf_class err = abs(exact - mpf_class(b.value, 256));
    EXPECT_LE(err.get_d(), std::nextafter(b.value, 1.0) - b.value);
}

TEST(PlanetaryBound, PositiveAndDecreasingUpToSeventeen) {
    Rational prev;
    for (int n = 3; n <= 17; ++n) {
        const auto b = planetary_amplitude_bound(1, n);
        EXPECT_GT(b.exact, 0);
        if (n > 3) {
            EXPECT_LT(b.exact, prev) << n;
        }
        prev = b.exact;
    }
    // 2^(2n) n! outgrows (n+1)^(n+4) from here on: the m = 1 bound has its
    // minimum at n = 17.
    for (int n = 18; n <= 20; ++n) {
        const auto b = planetary_amplitude_bound(1, n);
        EXPECT_GT(b.exact, prev) << n;
        prev = b.exact;
    }
    for (int m = 1; m <= 6; ++m)
        for (int n = m + 1; n <= 25; ++n) EXPECT_GT(planetary_amplitude_bound(m, n).value, 0.0);
}

TEST(PlanetaryBound, Errors) {
    EXPECT_THROW(planetary_amplitude_bound(3, 3), DomainError);
    EXPECT_THROW(planetary_amplitude_bound(4, 3), DomainError);
    EXPECT_THROW(planetary_amplitude_bound(0, 3), DomainError);
}

TEST(Plan, WaterSettings) {
    const auto spec = DispersionSpec::gravity_capillary(75);
    const auto dom = SpectralDomain::square(30);
    const auto plan = plan_experiment(spec, dom, 1e-5, 0.1, 0.1);
    EXPECT_TRUE(has(plan.type_a, {1, 2}, {9, 1}, {10, 3}));
    EXPECT_TRUE(has(plan.type_b, {11, 15}, {14, 15}, {25, 30}));
    for (const auto& t : plan.type_a) EXPECT_LE(t.d_ratio, 1e-5);
    for (const auto& t : plan.type_b) EXPECT_GE(t.d_ratio, 0.1);
    for (const auto* list : {&plan.type_a, &plan.type_b})
        for (const auto& t : *list)
            for (const auto& k : t.members()) EXPECT_TRUE(plan.amplitudes.count(k));
    // Standalone searches with identical parameters give the same triads.
    EXPECT_EQ(to_json(plan.type_a).dump(), to_json(find_near_triads(spec, dom, 1e-5)).dump());
    EXPECT_EQ(to_json(plan.type_b).dump(), to_json(find_max_discrepancy_triads(spec, dom, 0.1)).dump());
    EXPECT_FALSE(plan.notes.empty());
}

TEST(Plan, GlycerineSettings) {
    const auto plan = plan_experiment(DispersionSpec::gravity_capillary(47), SpectralDomain::square(30), 1e-5, 0.1, 0.1);
    auto it = std::find_if(plan.type_a.begin(), plan.type_a.end(), [](const Triad& t) {
        return t.k1 == WaveVector{1, 26} && t.k2 == WaveVector{16, 4} && t.k3 == WaveVector{17, 30};
    });
    ASSERT_NE(it, plan.type_a.end());
    EXPECT_NEAR(it->omegas[0].hz(), 147.0295, 1e-3);
    EXPECT_NEAR(it->omegas[1].hz(), 75.8317, 1e-3);
    EXPECT_NEAR(it->omegas[2].hz(), 222.8612, 1e-3);
}

TEST(Plan, SingleModeDomainAndContract) {
    const auto spec = DispersionSpec::gravity_capillary(75);
    const auto plan = plan_experiment(spec, SpectralDomain::square(1), 1e-5, 0.1, 0.1);
    EXPECT_TRUE(plan.type_a.empty());
    EXPECT_TRUE(plan.type_b.empty());
    EXPECT_TRUE(plan.amplitudes.empty());
    EXPECT_THROW(plan_experiment(spec, SpectralDomain::square(5), 0.1, 0.1, 0.1), UsageError);
    EXPECT_THROW(plan_experiment(spec, SpectralDomain::square(5), 0.2, 0.1, 0.1), UsageError);
    EXPECT_THROW(plan_experiment(spec, SpectralDomain::square(5), 0.0, 0.1, 0.1), UsageError);
}

TEST(Sweep, SideLengthChangesResonance) {
    const auto r = geometry_sweep(DispersionSpec::gravity_capillary(16), SpectralDomain::square(30), {1.0, 2.0},
                                  {1.0, 2.0}, 1e-5, 1.0);
    ASSERT_EQ(r.cells.size(), 4u);
    const auto& c11 = r.cells[0];
    const auto& c22 = r.cells[3];
    EXPECT_EQ(c11.lx, 1.0);
    EXPECT_EQ(c11.ly, 1.0);
    EXPECT_EQ(c22.lx, 2.0);
    EXPECT_EQ(c22.ly, 2.0);
    EXPECT_TRUE(has(c11.triads, {1, 6}, {4, 5}, {5, 11}));
    EXPECT_FALSE(has(c22.triads, {1, 6}, {4, 5}, {5, 11}));
    EXPECT_TRUE(has(c22.triads, {1, 14}, {23, 13}, {24, 27}));
    for (const auto& c : r.cells) EXPECT_EQ(c.resonance_free, c.triads.empty());
}

TEST(Sweep, SingletonEqualsDirectRun) {
    const auto base = DispersionSpec::gravity_capillary(27);
    const auto dom = SpectralDomain::square(15);
    const auto r = geometry_sweep(base, dom, {1.5}, {0.5}, 1e-3, 0.5);
    ASSERT_EQ(r.cells.size(), 1u);
    const auto spec = rescale_for_basin(base, 1.5, 0.5);
    EXPECT_EQ(to_json(r.cells[0].triads).dump(), to_json(find_near_triads(spec, dom, 1e-3)).dump());
    const auto c = class_counts(spec, dom, 0.5);
    EXPECT_EQ(r.cells[0].counts.active, c.active);
    EXPECT_EQ(r.cells[0].counts.passive, c.passive);
    EXPECT_EQ(r.cells[0].counts.neutral, c.neutral);
}

TEST(Sweep, DeterministicAcrossThreads) {
    const auto base = DispersionSpec::gravity_capillary(75);
    const auto dom = SpectralDomain::square(14);
    const std::vector<double> xs{1.0, 1.5, 2.0}, ys{1.0, 3.0};
    const auto ref = to_json(geometry_sweep(base, dom, xs, ys, 1e-3, 1.0, {}, 1)).dump();
    for (unsigned n : {2u, 4u}) EXPECT_EQ(to_json(geometry_sweep(base, dom, xs, ys, 1e-3, 1.0, {}, n)).dump(), ref);
}

TEST(Sweep, QuarterRectangleNeutralCountsDiffer) {
    ClassifyOptions opts;
    opts.rules.closure = Closure::standing;
    const auto r = geometry_sweep(DispersionSpec::bve_plane(BveForm::rigid_lid), SpectralDomain::square(10), {1.0},
                                  {1.0, 4.0}, 1e-6, 5e-4, opts);
    ASSERT_EQ(r.cells.size(), 2u);
    EXPECT_NE(r.cells[0].counts.neutral, r.cells[1].counts.neutral);
}

TEST(Sweep, Errors) {
    const auto base = DispersionSpec::gravity_capillary(75);
    const auto dom = SpectralDomain::square(5);
    EXPECT_THROW(geometry_sweep(base, dom, {}, {1.0}, 1e-3, 1.0), DomainError);
    EXPECT_THROW(geometry_sweep(base, dom, {-1.0}, {1.0}, 1e-3, 1.0), DomainError);
    EXPECT_THROW(geometry_sweep(DispersionSpec::rossby_sphere(), SpectralDomain::triangular(5), {1.0}, {1.0}, 1e-3,
                                1.0, {}, 3),
                 UsageError);
}
