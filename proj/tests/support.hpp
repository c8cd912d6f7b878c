#pragma once

// Hand-rolled generators and independent oracles shared by the test suites.
// Nothing here calls into the library's numerical kernels.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "flwave/numerics.hpp"

namespace flwave::testing {

using C = std::complex<double>;
inline constexpr C kI{0.0, 1.0};

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    C complex(double radius = 1.0) { return {uniform(-radius, radius), uniform(-radius, radius)}; }

    Jet jet(std::size_t order, double radius = 1.0) {
        std::vector<C> c(order + 1);
        for (auto& v : c) v = complex(radius);
        return Jet(std::move(c));
    }
    /// Jet with a constant term bounded away from zero.
    Jet unit_jet(std::size_t order) {
        Jet j = jet(order);
        j[0] = std::polar(uniform(0.5, 2.0), uniform(-3.14, 3.14));
        return j;
    }

    SquareMatrix matrix(std::size_t n, double radius = 1.0) {
        SquareMatrix m(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = complex(radius);
        return m;
    }

private:
    std::mt19937_64 rng_;
};

/// Laplace expansion along the first row.
inline C cofactor_det(const SquareMatrix& m) {
    const std::size_t n = m.dim();
    if (n == 1) return m(0, 0);
    C sum{};
    for (std::size_t c = 0; c < n; ++c) {
        SquareMatrix minor(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != c) minor(r - 1, cc++) = m(r, k);
            }
        }
        const double sign = c % 2 == 0 ? 1.0 : -1.0;
        sum += sign * m(0, c) * cofactor_det(minor);
    }
    return sum;
}

/// Direct Cauchy product truncated at the common order.
inline std::vector<C> cauchy(const Jet& a, const Jet& b) {
    std::vector<C> out(a.order() + 1);
    for (std::size_t k = 0; k < out.size(); ++k)
        for (std::size_t i = 0; i <= k; ++i) out[k] += a[i] * b[k - i];
    return out;
}

inline double max_diff(const Jet& a, const std::vector<C>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

/// First-order rogue wave at a1 = a2 = -1/2, b1 = b2 = -1, d1 = d2 = 1,
/// transcribed independently of the library.
inline C rogue_rw1(double x, double y, double t) {
    const C num = (4.0 - 4.0 * kI - 25.0 * t * t + 10.0 * (C(-1, 1) - y) * t - y * y + C(-2, 2) * y - x * x +
                   C(2, 6) * x) *
                  std::exp(0.5 * kI * (-2.0 * y + 2.0 * t - x));
    const C den = 4.0 - 4.0 * kI + 25.0 * t * t + 10.0 * t * (C(1, -1) + y) + y * y + C(2, -2) * y + x * x +
                  C(-2, 2) * x;
    return num / den;
}

/// Single-fold increment q1 - seed1 obtained by expanding the 3x3
/// determinants by hand: phi2* phi1 (l/l* - l*/l) / (l|phi1|^2 + l*(|phi2|^2 + |phi3|^2)).
inline C single_fold_increment(C lambda, C phi1, C phi2, C phi3, bool second = false) {
    const C lc = std::conj(lambda);
    const C den = lambda * std::norm(phi1) + lc * (std::norm(phi2) + std::norm(phi3));
    return std::conj(second ? phi3 : phi2) * phi1 * (lambda / lc - lc / lambda) / den;
}

/// Plane-wave data of the rogue figures, with its frequency c1 = 1.
struct RogueSeedData {
    double a1 = -0.5, b1 = -1.0, c1 = 1.0, d1 = 1.0;
};

/// sqrt(S) and R at lambda = lc + e^2 from the printed rational expression.
/// sqrt(S) follows the branch e * sqrt(S / e^2).
inline std::array<C, 2> rogue_rate_finite(C lc, double eps, const RogueSeedData& s = {}) {
    const C lam = lc + eps * eps;
    const C l2 = lam * lam, l4 = l2 * l2, l6 = l4 * l2;
    const double a1 = s.a1, b1 = s.b1, c1 = s.c1, d1 = s.d1;
    const double a1sq = a1 * a1, d1sq = d1 * d1;
    const C S = -4.0 * l4 + (-8.0 * a1sq * d1sq - 4.0 * a1) * l2 - a1sq;
    const C sq = eps * std::sqrt(S / (eps * eps));
    const C den = 4.0 * l2 * (-kI * (l2 + a1) * sq + 2.0 * l4 - 2.0 * (-2.0 * a1sq * d1sq - a1) * l2 + a1sq / 2.0);
    const C num = 2.0 * (-kI + 2.0 * l4 + (2.0 * kI + 2.0 * kI * d1sq + b1 * kI - c1 * kI + 2.0 * a1) * l2) * sq +
                  8.0 * kI * l6 + 2.0 * l2 * (a1sq * kI + 4.0 * a1 * d1sq + 2.0) + a1 +
                  4.0 * l4 * (-2.0 + 4.0 * kI * a1sq * d1sq + 2.0 * kI * a1 - 2.0 * d1sq - b1 + c1);
    return {sq, num / den};
}

/// Rogue-wave eigenfunction (phi1, phi2) at finite e with l1 = 1/e,
/// l2 = -1/e and lambda = lc + e^2, in plain complex arithmetic.
inline std::array<C, 2> rogue_phi_finite(C lc, double eps, double x, double y, double t,
                                         const RogueSeedData& s = {}) {
    const auto [sq, R] = rogue_rate_finite(lc, eps, s);
    const C lam = lc + eps * eps;
    const C l2 = lam * lam;
    const double a1 = s.a1, d1 = s.d1;
    const C arg = 0.5 * sq * (x + kI * y + R * t);
    const double theta = a1 * x + s.b1 * y + s.c1 * t;
    const C up = std::exp(arg), down = std::exp(-arg);
    const C phi1 = std::polar(1.0, 0.5 * theta) * (up - down) / eps;
    const C phi2 = std::polar(1.0, -0.5 * theta) *
                   ((-2.0 * l2 - a1 + kI * sq) / (-4.0 * a1 * d1 * lam) * up -
                    (2.0 * l2 + a1 + kI * sq) / (4.0 * a1 * d1 * lam) * down) /
                   eps;
    return {phi1, phi2};
}

}  // namespace flwave::testing
