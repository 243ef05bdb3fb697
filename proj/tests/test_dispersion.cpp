#include "oracles.hpp"

#include <wavetriad/search.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace wavetriad;

namespace {

struct PrintedTriad {
    double mu_nu;
    WaveVector k1, k2, k3;
    double hz1, hz2, hz3;
};

// Frequencies as printed for the unit square, c.g.s. units.
const PrintedTriad kTypeA[] = {
    {75, {1, 2}, {9, 1}, {10, 3}, 8.7638, 40.4435, 49.2073},
    {47, {1, 26}, {16, 4}, {17, 30}, 147.0295, 75.8317, 222.8612},
    {27, {1, 10}, {28, 6}, {29, 16}, 30.7235, 129.5023, 160.2258},
    {16, {1, 6}, {4, 5}, {5, 11}, 15.5681, 16.2945, 31.8626},
};
const PrintedTriad kTypeB[] = {
    {75, {11, 15}, {14, 15}, {25, 30}, 112.6460, 130.0788, 337.7987},
    {47, {14, 14}, {15, 16}, {29, 30}, 98.6504, 114.4728, 295.8396},
    {27, {4, 4}, {26, 26}, {30, 30}, 16.2595, 186.8502, 230.8321},
    {16, {5, 5}, {25, 25}, {30, 30}, 17.8606, 137.0759, 178.8991},
};

} // namespace

TEST(RossbyFrequency, ExactValues) {
    EXPECT_EQ(rossby_omega({1, 2}), Rational(-1, 3));
    EXPECT_EQ(rossby_omega({4, 12}), Rational(-2, 39));
    EXPECT_EQ(rossby_omega({5, 14}), Rational(-1, 21));
    EXPECT_EQ(rossby_omega({9, 13}), Rational(-9, 91));
    EXPECT_EQ(to_string(rossby_omega({1, 2})), "-1/3");
}

TEST(RossbyFrequency, MatchesIntegerOracle) {
    for (int n = 1; n <= 40; ++n)
        for (int m = 1; m <= n; ++m) {
            const auto q = rossby_omega({m, n});
            const auto o = oracle::rossby(m, n);
            EXPECT_EQ(q.get_num().get_si(), static_cast<long>(o.num));
            EXPECT_EQ(q.get_den().get_si(), static_cast<long>(o.den));
        }
}

TEST(RossbyFrequency, FloatWithinOneUlpOfExact) {
    const auto spec = DispersionSpec::rossby_sphere();
    for (int n = 1; n <= 60; ++n)
        for (int m = 1; m <= n; ++m) {
            const double w = eval_omega(spec, {m, n});
            const double ref = to_double(rossby_omega({m, n}));
            EXPECT_LE(std::abs(w - ref), std::abs(std::nextafter(ref, 0.0) - ref)) << m << "," << n;
        }
}

TEST(GravityCapillary, PrintedTypeAFrequencies) {
    for (const auto& p : kTypeA) {
        const auto spec = DispersionSpec::gravity_capillary(p.mu_nu);
        EXPECT_NEAR(eval_frequency(spec, p.k1).hz(), p.hz1, 1e-3);
        EXPECT_NEAR(eval_frequency(spec, p.k2).hz(), p.hz2, 1e-3);
        EXPECT_NEAR(eval_frequency(spec, p.k3).hz(), p.hz3, 1e-3);
    }
}

TEST(GravityCapillary, PrintedTypeBFrequencies) {
    for (const auto& p : kTypeB) {
        const auto spec = DispersionSpec::gravity_capillary(p.mu_nu);
        EXPECT_NEAR(eval_frequency(spec, p.k1).hz(), p.hz1, 1e-3);
        EXPECT_NEAR(eval_frequency(spec, p.k2).hz(), p.hz2, 1e-3);
        EXPECT_NEAR(eval_frequency(spec, p.k3).hz(), p.hz3, 1e-3);
    }
}

TEST(GravityCapillary, MatchesLongDoubleOracle) {
    const auto spec = DispersionSpec::gravity_capillary(75);
    for (int m = 1; m <= 30; ++m)
        for (int n = 1; n <= 30; ++n) {
            const long double ref = oracle::gravity_capillary(981.0L, 75.0L, m, n);
            EXPECT_NEAR(eval_omega(spec, {m, n}), static_cast<double>(ref), 1e-12 * static_cast<double>(ref));
        }
}

TEST(GravityCapillary, MonotoneInWavenumber) {
    const auto spec = DispersionSpec::gravity_capillary(16);
    double prev = 0.0;
    for (int m = 1; m <= 100; ++m) {
        const double w = eval_omega(spec, {m, m});
        EXPECT_GT(w, prev);
        prev = w;
    }
}

TEST(Hz, IsOmegaOverTwoPi) {
    const auto spec = DispersionSpec::gravity_capillary(75);
    for (int m = 1; m <= 20; ++m) {
        const auto f = eval_frequency(spec, {m, 3});
        const double ref = f.omega / (2.0 * std::numbers::pi);
        EXPECT_LE(std::abs(f.hz() - ref), std::abs(std::nextafter(ref, 1e300) - ref));
    }
}

TEST(Basin, UnitRectangleReproducesUnitSquare) {
    const auto spec = DispersionSpec::gravity_capillary(47);
    const auto rect = rescale_for_basin(spec, 1.0, 1.0);
    for (int m = 1; m <= 30; ++m)
        for (int n = 1; n <= 30; ++n) EXPECT_EQ(eval_omega(spec, {m, n}), eval_omega(rect, {m, n}));
}

TEST(Basin, PhysicalScalingOfSquare) {
    // omega^2 = g k / L + s k^3 / L^3 for a square of side L.
    const auto spec = rescale_for_basin(DispersionSpec::gravity_capillary(16), 2.0, 2.0);
    for (int m = 1; m <= 10; ++m) {
        const double k = std::hypot(m, 3.0);
        const double ref = std::sqrt(981.0 * k / 2.0 + 16.0 * k * k * k / 8.0);
        EXPECT_NEAR(eval_omega(spec, {m, 3}), ref, 1e-12 * ref);
    }
}

TEST(Basin, PrintedRectangleFormulaIsAUniformRescaleForSquares) {
    auto base = DispersionSpec::gravity_capillary(16);
    auto printed = rescale_for_basin(base, 2.0, 2.0);
    printed.basin.formula = BasinFormula::printed;
    const double r1 = eval_omega(printed, {1, 6}) / eval_omega(base, {1, 6});
    const double r2 = eval_omega(printed, {23, 13}) / eval_omega(base, {23, 13});
    EXPECT_NEAR(r1, r2, 1e-12);
}

TEST(Basin, SideTwoSquareResonance) {
    const auto l2 = rescale_for_basin(DispersionSpec::gravity_capillary(16), 2.0, 2.0);
    const auto l1 = DispersionSpec::gravity_capillary(16);
    const Triad a2 = make_triad(l2, {1, 14}, {23, 13}, {24, 27});
    const Triad a1 = make_triad(l1, {1, 14}, {23, 13}, {24, 27});
    EXPECT_LT(a2.d_ratio, 1e-5);
    EXPECT_GT(a1.d_ratio, 1e-5);
    // Printed L = 2 frequencies are sqrt(2) times this normalization.
    const double printed[] = {25.0785, 50.2490, 75.3275};
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a2.omegas[i].hz() * std::sqrt(2.0), printed[i], 1e-3);

    EXPECT_LT(make_triad(l1, {1, 6}, {4, 5}, {5, 11}).d_ratio, 1e-5);
    EXPECT_GT(make_triad(l2, {1, 6}, {4, 5}, {5, 11}).d_ratio, 1e-5);
}

TEST(OtherDispersions, Values) {
    EXPECT_DOUBLE_EQ(eval_omega(DispersionSpec::capillary(), {3, 4}), 125.0);
    EXPECT_DOUBLE_EQ(eval_omega(DispersionSpec::gravity_tanh(0.5), {3, 4}), 5.0 * std::tanh(2.5));
    EXPECT_DOUBLE_EQ(eval_omega(DispersionSpec::bve_plane(), {1, 1}), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(eval_omega(DispersionSpec::bve_plane(BveForm::deformation), {1, 2}), 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(eval_omega(DispersionSpec::bve_plane(BveForm::rigid_lid), {1, 2}), 1.0 / 5.0);
    const auto rect = rescale_for_basin(DispersionSpec::bve_plane(BveForm::rigid_lid), 1.0, 4.0);
    EXPECT_DOUBLE_EQ(eval_omega(rect, {1, 4}), 0.5);
}

TEST(Errors, RejectsInvalidInput) {
    const auto spec = DispersionSpec::gravity_capillary(75);
    EXPECT_THROW(eval_omega(spec, {0, 1}), DomainError);
    EXPECT_THROW(rossby_omega({1, 0}), DomainError);
    EXPECT_THROW(rescale_for_basin(spec, 0.0, 1.0), DomainError);
    EXPECT_THROW(rescale_for_basin(spec, 1.0, -2.0), DomainError);
    EXPECT_THROW(rescale_for_basin(DispersionSpec::rossby_sphere(), 2.0, 2.0), UsageError);
    EXPECT_THROW(DispersionSpec::gravity_capillary(-1.0), DomainError);
    EXPECT_THROW(SpectralDomain(0, DomainShape::square), DomainError);
}

TEST(Domain, SizesAndOrder) {
    EXPECT_EQ(SpectralDomain::square(30).size(), 900u);
    EXPECT_EQ(SpectralDomain::triangular(14).size(), 105u);
    const auto modes = SpectralDomain::triangular(5).modes();
    EXPECT_TRUE(std::is_sorted(modes.begin(), modes.end()));
    for (const auto& k : modes) EXPECT_LE(k.m, k.n);
}
