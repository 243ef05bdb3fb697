#pragma once

#include <wavetriad/errors.hpp>
#include <wavetriad/rational.hpp>

#include <cmath>
#include <compare>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wavetriad {

// Integer mode index (m, n). Both components are positive in every domain
// this library enumerates.
struct WaveVector {
    int m = 1;
    int n = 1;

    friend constexpr auto operator<=>(const WaveVector&, const WaveVector&) = default;
};

inline std::string to_string(const WaveVector& k) {
    return "[" + std::to_string(k.m) + "," + std::to_string(k.n) + "]";
}

inline void require_positive(const WaveVector& k) {
    if (k.m < 1 || k.n < 1) {
        throw DomainError("wave vector " + to_string(k) + " must have m >= 1 and n >= 1");
    }
}

enum class DomainShape { square, triangular };

// Finite truncation of the positive integer lattice:
//   square:     1 <= m, n <= T
//   triangular: 1 <= m <= n <= T
class SpectralDomain {
public:
    SpectralDomain(int truncation, DomainShape shape) : T_(truncation), shape_(shape) {
        if (truncation < 1) {
            throw DomainError("truncation T must be >= 1, got " + std::to_string(truncation));
        }
    }

    static SpectralDomain square(int truncation) { return {truncation, DomainShape::square}; }
    static SpectralDomain triangular(int truncation) { return {truncation, DomainShape::triangular}; }

    int truncation() const { return T_; }
    DomainShape shape() const { return shape_; }

    bool contains(const WaveVector& k) const {
        if (k.m < 1 || k.n < 1 || k.m > T_ || k.n > T_) return false;
        return shape_ == DomainShape::square || k.m <= k.n;
    }

    std::size_t size() const {
        const auto t = static_cast<std::size_t>(T_);
        return shape_ == DomainShape::square ? t * t : t * (t + 1) / 2;
    }

    // Modes in lexicographic (m, n) order.
    std::vector<WaveVector> modes() const {
        std::vector<WaveVector> out;
        out.reserve(size());
        for (int m = 1; m <= T_; ++m) {
            for (int n = (shape_ == DomainShape::square ? 1 : m); n <= T_; ++n) {
                out.push_back({m, n});
            }
        }
        return out;
    }

    // Dense slot for lookup tables of size slot_count(); valid for any
    // 1 <= m, n <= T whether or not the vector is in the domain.
    std::size_t slot(const WaveVector& k) const {
        return static_cast<std::size_t>(k.m) * static_cast<std::size_t>(T_ + 1) +
               static_cast<std::size_t>(k.n);
    }
    std::size_t slot_count() const {
        return static_cast<std::size_t>(T_ + 1) * static_cast<std::size_t>(T_ + 1);
    }

    friend bool operator==(const SpectralDomain&, const SpectralDomain&) = default;

private:
    int T_;
    DomainShape shape_;
};

enum class DispersionKind { rossby_sphere, capillary, gravity_capillary, gravity_tanh, bve_plane };

enum class BasinKind { unit_square, rectangle, sphere, plane };

// How a rectangle basin enters the water-wave formulas.
//   physical: k = sqrt((m/Lx)^2 + (n/Ly)^2), then the unit-square formula.
//             Reduces to w^2 = g k/L + (mu/nu) k^3/L^3 for a square of side L.
//   printed:  w^2 = g/(Lx Ly) K + (mu/nu)/(Lx Ly)^2 K^3, K = sqrt((m Ly)^2 + (n Lx)^2).
enum class BasinFormula { physical, printed };

// Beta-plane dispersion variants, with kx = m/Lx, ky = n/Ly:
//   printed:     kx / (1 + kx + ky)
//   deformation: kx / (1 + kx^2 + ky^2)
//   rigid_lid:   kx / (kx^2 + ky^2)
enum class BveForm { printed, deformation, rigid_lid };

struct BasinGeometry {
    BasinKind kind = BasinKind::unit_square;
    double lx = 1.0; // cm
    double ly = 1.0; // cm
    BasinFormula formula = BasinFormula::physical;

    friend bool operator==(const BasinGeometry&, const BasinGeometry&) = default;
};

struct DispersionSpec {
    DispersionKind kind = DispersionKind::gravity_capillary;
    double g = 981.0;          // cm/s^2
    double mu_over_nu = 75.0;  // cm^3/s^2, gravity_capillary only
    double alpha = 1.0;        // depth parameter, gravity_tanh only
    BasinGeometry basin{};
    BveForm bve_form = BveForm::printed;

    // Frequencies are exact rationals of the integer mode indices.
    bool exact() const { return kind == DispersionKind::rossby_sphere; }

    void validate() const {
        if (!(g > 0.0)) throw DomainError("g must be positive");
        if (kind == DispersionKind::gravity_capillary && !(mu_over_nu > 0.0)) {
            throw DomainError("mu_over_nu must be positive");
        }
        if (kind == DispersionKind::gravity_tanh && !(alpha > 0.0)) {
            throw DomainError("alpha must be positive");
        }
        if (!(basin.lx > 0.0) || !(basin.ly > 0.0)) {
            throw DomainError("basin lengths must be positive");
        }
        if (kind == DispersionKind::rossby_sphere && basin.kind != BasinKind::sphere) {
            throw UsageError("rossby_sphere requires a sphere basin");
        }
        if (kind != DispersionKind::rossby_sphere && basin.kind == BasinKind::sphere) {
            throw UsageError("only rossby_sphere may use a sphere basin");
        }
    }

    static DispersionSpec rossby_sphere() {
        DispersionSpec s;
        s.kind = DispersionKind::rossby_sphere;
        s.basin.kind = BasinKind::sphere;
        return s;
    }
    static DispersionSpec gravity_capillary(double mu_over_nu, double g = 981.0) {
        DispersionSpec s;
        s.kind = DispersionKind::gravity_capillary;
        s.mu_over_nu = mu_over_nu;
        s.g = g;
        s.validate();
        return s;
    }
    static DispersionSpec capillary() {
        DispersionSpec s;
        s.kind = DispersionKind::capillary;
        return s;
    }
    static DispersionSpec gravity_tanh(double alpha) {
        DispersionSpec s;
        s.kind = DispersionKind::gravity_tanh;
        s.alpha = alpha;
        s.validate();
        return s;
    }
    static DispersionSpec bve_plane(BveForm form = BveForm::printed) {
        DispersionSpec s;
        s.kind = DispersionKind::bve_plane;
        s.basin.kind = BasinKind::plane;
        s.bve_form = form;
        return s;
    }

    friend bool operator==(const DispersionSpec&, const DispersionSpec&) = default;
};

inline double to_hz(double omega) { return omega / (2.0 * std::numbers::pi); }

// Angular frequency in rad/s. `exact` is set only for rational dispersions.
struct Frequency {
    double omega = 0.0;
    std::optional<Rational> exact;

    double hz() const { return to_hz(omega); }
};

// Physical wavenumber components (m/Lx, n/Ly). Unit-square and plane basins
// use Lx = Ly = 1.
inline std::pair<double, double> wavenumber_components(const DispersionSpec& spec,
                                                       const WaveVector& k) {
    return {static_cast<double>(k.m) / spec.basin.lx, static_cast<double>(k.n) / spec.basin.ly};
}

// Scalar wavenumber used inside the dispersion formula.
inline double wavenumber(const DispersionSpec& spec, const WaveVector& k) {
    require_positive(k);
    const auto [kx, ky] = wavenumber_components(spec, k);
    return std::sqrt(kx * kx + ky * ky);
}

// -2m / (n(n+1)), in lowest terms.
inline Rational rossby_omega(const WaveVector& k) {
    require_positive(k);
    const BigInt n(k.n);
    return make_rational(BigInt(-2 * static_cast<long>(k.m)), n * (n + 1));
}

// Angular frequency as a double. For rossby_sphere this is the correctly
// rounded value of the exact rational.
inline double eval_omega(const DispersionSpec& spec, const WaveVector& k) {
    require_positive(k);
    switch (spec.kind) {
    case DispersionKind::rossby_sphere: {
        const double n = static_cast<double>(k.n);
        return -2.0 * static_cast<double>(k.m) / (n * (n + 1.0));
    }
    case DispersionKind::capillary: {
        const double kk = wavenumber(spec, k);
        return kk * kk * kk;
    }
    case DispersionKind::gravity_capillary: {
        if (spec.basin.kind == BasinKind::rectangle && spec.basin.formula == BasinFormula::printed) {
            const double lx = spec.basin.lx;
            const double ly = spec.basin.ly;
            const double a = static_cast<double>(k.m) * ly;
            const double b = static_cast<double>(k.n) * lx;
            const double big_k = std::sqrt(a * a + b * b);
            const double area = lx * ly;
            return std::sqrt(spec.g / area * big_k +
                             spec.mu_over_nu / (area * area) * big_k * big_k * big_k);
        }
        const double kk = wavenumber(spec, k);
        return std::sqrt(spec.g * kk + spec.mu_over_nu * kk * kk * kk);
    }
    case DispersionKind::gravity_tanh: {
        const double kk = wavenumber(spec, k);
        return kk * std::tanh(spec.alpha * kk);
    }
    case DispersionKind::bve_plane: {
        const auto [kx, ky] = wavenumber_components(spec, k);
        switch (spec.bve_form) {
        case BveForm::printed: return kx / (1.0 + kx + ky);
        case BveForm::deformation: return kx / (1.0 + kx * kx + ky * ky);
        case BveForm::rigid_lid: return kx / (kx * kx + ky * ky);
        }
        break;
    }
    }
    throw UsageError("unknown dispersion kind");
}

inline Frequency eval_frequency(const DispersionSpec& spec, const WaveVector& k) {
    require_positive(k);
    if (spec.exact()) {
        Rational q = rossby_omega(k);
        return {eval_omega(spec, k), std::move(q)};
    }
    return {eval_omega(spec, k), std::nullopt};
}

// Returns `spec` evaluated in an Lx x Ly rectangular basin. Lx = Ly = 1
// reproduces the unit-square values bit for bit.
inline DispersionSpec rescale_for_basin(const DispersionSpec& spec, double lx, double ly) {
    if (!(lx > 0.0) || !(ly > 0.0)) {
        throw DomainError("basin lengths must be positive");
    }
    if (spec.kind == DispersionKind::rossby_sphere) {
        throw UsageError("rossby_sphere has no rectangular basin form");
    }
    DispersionSpec out = spec;
    out.basin.kind = BasinKind::rectangle;
    out.basin.lx = lx;
    out.basin.ly = ly;
    return out;
}

inline std::string_view to_string(DispersionKind kind) {
    switch (kind) {
    case DispersionKind::rossby_sphere: return "rossby_sphere";
    case DispersionKind::capillary: return "capillary";
    case DispersionKind::gravity_capillary: return "gravity_capillary";
    case DispersionKind::gravity_tanh: return "gravity_tanh";
    case DispersionKind::bve_plane: return "bve_plane";
    }
    return "?";
}

inline std::string_view to_string(BasinKind kind) {
    switch (kind) {
    case BasinKind::unit_square: return "unit_square";
    case BasinKind::rectangle: return "rectangle";
    case BasinKind::sphere: return "sphere";
    case BasinKind::plane: return "plane";
    }
    return "?";
}

inline std::string_view to_string(BasinFormula f) {
    return f == BasinFormula::physical ? "physical" : "printed";
}

inline std::string_view to_string(BveForm f) {
    switch (f) {
    case BveForm::printed: return "printed";
    case BveForm::deformation: return "deformation";
    case BveForm::rigid_lid: return "rigid_lid";
    }
    return "?";
}

inline std::string_view to_string(DomainShape s) {
    return s == DomainShape::square ? "square" : "triangular";
}

} // namespace wavetriad
