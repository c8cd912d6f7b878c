#include <cmath>

#include "flwave/model.hpp"

namespace flwave {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(name, "must be finite");
}

}  // namespace

Dispersion dispersion_relation(double a1, double a2, double b1, double b2, double d1, double d2) {
    if (a1 == 0.0) throw DomainError("a1", "wavenumber must be nonzero");
    if (a2 == 0.0) throw DomainError("a2", "wavenumber must be nonzero");
    const double c1 =
        (2 * a1 * d1 * d1 + a1 * d2 * d2 + a2 * d2 * d2 + 2 * a1 * b1 + 4 * a1 + 2) / (2 * a1);
    const double c2 =
        (a1 * d1 * d1 + a2 * d1 * d1 + 2 * a2 * d2 * d2 + 2 * a2 * b2 + 4 * a2 + 2) / (2 * a2);
    return {c1, c2};
}

PlaneWaveSeed PlaneWaveSeed::create(double a1, double a2, double b1, double b2, double d1, double d2) {
    require_finite(a1, "a1");
    require_finite(a2, "a2");
    require_finite(b1, "b1");
    require_finite(b2, "b2");
    require_finite(d1, "d1");
    require_finite(d2, "d2");
    if (d1 < 0) throw DomainError("d1", "amplitude must be non-negative");
    if (d2 < 0) throw DomainError("d2", "amplitude must be non-negative");
    const auto [c1, c2] = dispersion_relation(a1, a2, b1, b2, d1, d2);
    PlaneWaveSeed s;
    s.a1_ = a1;
    s.a2_ = a2;
    s.b1_ = b1;
    s.b2_ = b2;
    s.c1_ = c1;
    s.c2_ = c2;
    s.d1_ = d1;
    s.d2_ = d2;
    return s;
}

std::pair<double, double> PlaneWaveSeed::phases(const SpacePoint& p) const {
    return {a1_ * p.x + b1_ * p.y + c1_ * p.t, a2_ * p.x + b2_ * p.y + c2_ * p.t};
}

FieldSample plane_wave_field(const PlaneWaveSeed& seed, const SpacePoint& p) {
    const auto [th1, th2] = seed.phases(p);
    return {seed.d1() * std::polar(1.0, th1), seed.d2() * std::polar(1.0, th2)};
}

FieldSample background_field(const SeedBackground& bg, const SpacePoint& p) {
    if (const auto* pw = std::get_if<PlaneWaveSeed>(&bg)) return plane_wave_field(*pw, p);
    return {};
}

double profile_eval(DeformationProfile p, double s) {
    switch (p) {
        case DeformationProfile::Linear: return s;
        case DeformationProfile::Quadratic: return s * s;
        case DeformationProfile::Cubic: return s * s * s;
        case DeformationProfile::Sine: return std::sin(s);
    }
    return s;
}

std::string_view to_string(DeformationProfile p) {
    switch (p) {
        case DeformationProfile::Linear: return "linear";
        case DeformationProfile::Quadratic: return "quadratic";
        case DeformationProfile::Cubic: return "cubic";
        case DeformationProfile::Sine: return "sine";
    }
    return "linear";
}

DeformationProfile parse_profile(std::string_view name) {
    if (name == "linear") return DeformationProfile::Linear;
    if (name == "quadratic") return DeformationProfile::Quadratic;
    if (name == "cubic") return DeformationProfile::Cubic;
    if (name == "sine") return DeformationProfile::Sine;
    throw ConfigError("profile: unknown deformation profile '" + std::string(name) +
                      "' (expected linear|quadratic|cubic|sine)");
}

void GridSpec::validate() const {
    for (double v : {x_min, x_max, y_min, y_max, t}) {
        if (!std::isfinite(v)) throw DomainError("grid", "bounds and time must be finite");
    }
    if (!(x_min < x_max)) throw DomainError("grid.x", "x_min must be below x_max");
    if (!(y_min < y_max)) throw DomainError("grid.y", "y_min must be below y_max");
    if (nx < 2) throw DomainError("grid.nx", "need at least two nodes");
    if (ny < 2) throw DomainError("grid.ny", "need at least two nodes");
}

double GridSpec::x_at(std::size_t i) const {
    if (i + 1 == nx) return x_max;
    return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double GridSpec::y_at(std::size_t j) const {
    if (j + 1 == ny) return y_max;
    return y_min + (y_max - y_min) * static_cast<double>(j) / static_cast<double>(ny - 1);
}

}  // namespace flwave
