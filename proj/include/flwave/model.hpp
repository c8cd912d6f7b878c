#pragma once

// Seed backgrounds, deformation profiles and grid descriptions.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "flwave/numerics.hpp"

namespace flwave {

struct SpacePoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

/// The pair (q1, q2) at one space-time point.
struct FieldSample {
    Complex q1;
    Complex q2;
};

struct Dispersion {
    double c1;
    double c2;
};

/// Temporal frequencies that make d_j exp(i(a_j x + b_j y + c_j t)) an exact
/// solution. Throws DomainError when a1 or a2 is zero.
Dispersion dispersion_relation(double a1, double a2, double b1, double b2, double d1, double d2);

/// Plane-wave seed q_j = d_j exp(i theta_j), theta_j = a_j x + b_j y + c_j t.
///
/// c1 and c2 are always derived from the other parameters; there is no way
/// to build a seed with an inconsistent frequency.
class PlaneWaveSeed {
public:
    static PlaneWaveSeed create(double a1, double a2, double b1, double b2, double d1, double d2);

    double a1() const { return a1_; }
    double a2() const { return a2_; }
    double b1() const { return b1_; }
    double b2() const { return b2_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double d1() const { return d1_; }
    double d2() const { return d2_; }

    /// (theta1, theta2) at the point.
    std::pair<double, double> phases(const SpacePoint& p) const;

    /// a1 == a2 and d1 == d2, required by the breather and rogue builders.
    bool has_matched_components() const { return a1_ == a2_ && d1_ == d2_; }

    friend bool operator==(const PlaneWaveSeed&, const PlaneWaveSeed&) = default;

private:
    PlaneWaveSeed() = default;
    double a1_ = 0, a2_ = 0, b1_ = 0, b2_ = 0, c1_ = 0, c2_ = 0, d1_ = 0, d2_ = 0;
};

struct ZeroBackground {
    friend bool operator==(const ZeroBackground&, const ZeroBackground&) = default;
};

using SeedBackground = std::variant<ZeroBackground, PlaneWaveSeed>;

FieldSample plane_wave_field(const PlaneWaveSeed& seed, const SpacePoint& p);

/// Seed field of either background variant.
FieldSample background_field(const SeedBackground& bg, const SpacePoint& p);

/// f(s), s = y + t, steering the deformed trajectories.
enum class DeformationProfile { Linear, Quadratic, Cubic, Sine };

double profile_eval(DeformationProfile p, double s);
std::string_view to_string(DeformationProfile p);
/// Accepts "linear", "quadratic", "cubic", "sine"; throws ConfigError otherwise.
DeformationProfile parse_profile(std::string_view name);

struct GridSpec {
    double x_min = -10.0;
    double x_max = 10.0;
    double y_min = -10.0;
    double y_max = 10.0;
    std::size_t nx = 101;
    std::size_t ny = 101;
    double t = 0.0;

    /// Throws DomainError on an empty range or fewer than two nodes per axis.
    void validate() const;

    double x_at(std::size_t i) const;
    double y_at(std::size_t j) const;
    std::size_t size() const { return nx * ny; }
};

}  // namespace flwave
