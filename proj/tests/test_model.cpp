#include <cmath>

#include "doctest.h"
#include "flwave/model.hpp"
#include "flwave/verify.hpp"
#include "support.hpp"

using namespace flwave;
using namespace flwave::testing;

TEST_CASE("dispersion relation reproduces the reference frequencies exactly") {
    const Dispersion breather = dispersion_relation(-1, -1, -1, -2, 1, 1);
    CHECK(breather.c1 == 2.0);
    CHECK(breather.c2 == 1.0);
    const Dispersion rogue = dispersion_relation(-0.5, -0.5, -1, -1, 1, 1);
    CHECK(rogue.c1 == 1.0);
    CHECK(rogue.c2 == 1.0);
}

TEST_CASE("plane-wave seed derives its frequencies and rejects a zero wavenumber") {
    const auto s = PlaneWaveSeed::create(-1, -1, -1, -2, 1, 1);
    CHECK(s.c1() == 2.0);
    CHECK(s.c2() == 1.0);
    CHECK(s.has_matched_components());
    CHECK_THROWS_AS(PlaneWaveSeed::create(0, -1, -1, -2, 1, 1), DomainError);
    CHECK_THROWS_AS(PlaneWaveSeed::create(-1, 0, -1, -2, 1, 1), DomainError);

    const SpacePoint p{0.3, -1.2, 0.7};
    const FieldSample q = plane_wave_field(s, p);
    CHECK(std::abs(q.q1 - std::polar(1.0, -0.3 + 1.2 + 2.0 * 0.7)) < 1e-15);
    CHECK(std::abs(q.q2 - std::polar(1.0, -0.3 + 2.4 + 0.7)) < 1e-15);
    const auto [th1, th2] = s.phases(p);
    CHECK(th1 == doctest::Approx(-0.3 + 1.2 + 1.4));
    CHECK(th2 == doctest::Approx(-0.3 + 2.4 + 0.7));
}

TEST_CASE("plane waves with random parameters solve the equation") {
    Gen g(31);
    for (int trial = 0; trial < 20; ++trial) {
        double a1 = g.uniform(0.3, 1.5) * (g.integer(0, 1) ? 1 : -1);
        double a2 = g.uniform(0.3, 1.5) * (g.integer(0, 1) ? 1 : -1);
        const auto s = PlaneWaveSeed::create(a1, a2, g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(0.2, 1.5),
                                             g.uniform(0.2, 1.5));
        const FieldSampler f = [s](const SpacePoint& p) { return std::optional(plane_wave_field(s, p)); };
        const SpacePoint p{g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(-5, 5)};
        // Only the O(h^2) truncation error remains.
        const RichardsonReport r = richardson(f, p);
        CHECK(r.ratio() == doctest::Approx(0.25).epsilon(0.04));

        // A wrong frequency leaves an O(1) residual that does not shrink.
        const FieldSampler wrong = [s](const SpacePoint& q) {
            FieldSample v = plane_wave_field(s, q);
            v.q1 *= std::polar(1.0, 0.1 * q.t);
            return std::optional(v);
        };
        CHECK(richardson(wrong, p).ratio() > 0.9);
    }
}

TEST_CASE("background_field dispatches on the variant") {
    const SpacePoint p{1, 2, 3};
    const FieldSample z = background_field(ZeroBackground{}, p);
    CHECK(z.q1 == C{});
    CHECK(z.q2 == C{});
    const auto s = PlaneWaveSeed::create(-0.5, -0.5, -1, -1, 1, 1);
    CHECK(background_field(s, p).q1 == plane_wave_field(s, p).q1);
}

TEST_CASE("deformation profiles") {
    CHECK(profile_eval(DeformationProfile::Linear, 2.0) == 2.0);
    CHECK(profile_eval(DeformationProfile::Quadratic, -3.0) == 9.0);
    CHECK(profile_eval(DeformationProfile::Cubic, -2.0) == -8.0);
    CHECK(profile_eval(DeformationProfile::Sine, 0.5) == std::sin(0.5));
    for (auto p : {DeformationProfile::Linear, DeformationProfile::Quadratic, DeformationProfile::Cubic,
                   DeformationProfile::Sine}) {
        CHECK(parse_profile(to_string(p)) == p);
    }
    CHECK_THROWS_AS(parse_profile("exponential"), ConfigError);
}

TEST_CASE("grid spec nodes and validation") {
    GridSpec g{-1, 1, 0, 4, 5, 3, 0};
    CHECK_NOTHROW(g.validate());
    CHECK(g.x_at(0) == -1.0);
    CHECK(g.x_at(4) == 1.0);
    CHECK(g.x_at(2) == 0.0);
    CHECK(g.y_at(1) == 2.0);
    CHECK(g.size() == 15);
    GridSpec bad = g;
    bad.nx = 1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = g;
    bad.x_max = bad.x_min;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}
