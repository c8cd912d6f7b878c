#include <cmath>

#include "doctest.h"
#include "flwave/dt_engine.hpp"
#include "flwave/spectral.hpp"
#include "flwave/verify.hpp"
#include "support.hpp"

using namespace flwave;
using namespace flwave::testing;

namespace {

const PlaneWaveSeed kRogueSeed = PlaneWaveSeed::create(-0.5, -0.5, -1, -1, 1, 1);
const PlaneWaveSeed kBreatherSeed = PlaneWaveSeed::create(-1, -1, -1, -2, 1, 1);

Complex rogue_lambda() { return critical_lambda(-0.5, 1.0, kFigureBranch); }

FieldSampler plane_sampler(const PlaneWaveSeed& s) {
    return [s](const SpacePoint& p) { return std::optional(plane_wave_field(s, p)); };
}

const FieldSampler kZeroField = [](const SpacePoint&) { return std::optional(FieldSample{}); };

}  // namespace

TEST_CASE("critical parameter of the rogue figures") {
    const Complex lc = rogue_lambda();
    const double r = std::sqrt(2.0) / 4.0;
    CHECK(std::abs(lc - Complex(r, r)) < 1e-15);
    CHECK(std::abs(discriminant_S(lc, -0.5, 1.0)) < 1e-14);
    // The principal branch gives a different root of S.
    const Complex other = critical_lambda(-0.5, 1.0);
    CHECK(std::abs(discriminant_S(other, -0.5, 1.0)) < 1e-14);
}

TEST_CASE("R at the critical parameter is the limit of the rational expression") {
    const Complex lc = rogue_lambda();
    // e -> 0 limit of R(lc + e^2) extrapolated from the printed formula.
    auto r_at = [&](double eps) { return rogue_rate_finite(lc, eps)[1]; };
    const C extrapolated = (4.0 * r_at(5e-4) - r_at(1e-3)) / 3.0;
    const Complex lib = rogue_R(lc, kRogueSeed);
    CHECK(std::abs(lib - extrapolated) < 1e-6);
    CHECK(std::abs(lib - Complex(0, 5)) < 1e-9);
}

TEST_CASE("rogue jet leading coefficient matches the small-e numeric limit") {
    const Complex lc = rogue_lambda();
    const SpectralChart chart{lc, 0, RogueChart{}};
    Gen g(41);
    for (int trial = 0; trial < 20; ++trial) {
        const SpacePoint p{g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(-1, 1)};
        const EigenTriple jet = rogue_eigenfunction_jet(chart, kRogueSeed, p, 0);
        const auto coarse = rogue_phi_finite(lc, 1e-3, p.x, p.y, p.t);
        const auto fine = rogue_phi_finite(lc, 5e-4, p.x, p.y, p.t);
        for (int k = 0; k < 2; ++k) {
            const C limit = (4.0 * fine[k] - coarse[k]) / 3.0;
            const C got = k == 0 ? jet.phi1[0] : jet.phi2[0];
            CHECK(std::abs(got - limit) <= 1e-6 * std::abs(limit));
        }
        CHECK(jet.phi2[0] == jet.phi3[0]);
    }
}

TEST_CASE("eigenfunctions satisfy the Lax pair") {
    Gen g(42);
    SUBCASE("zero seed, random parameters") {
        for (int trial = 0; trial < 20; ++trial) {
            const Complex lambda{g.uniform(0.3, 1.2), g.uniform(0.3, 1.2)};
            const SpectralChart chart{lambda, 0, ZeroSeedChart{g.complex()}};
            const auto profile = static_cast<DeformationProfile>(g.integer(0, 3));
            const SpacePoint p{g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
            const LaxResidual r = lax_residual(eigen_sampler(chart, ZeroBackground{}, profile), kZeroField, lambda, p);
            CHECK(r.spatial < 1e-8);
            CHECK(r.temporal < 1e-8);
        }
    }
    SUBCASE("breather and Y-breather") {
        for (double l1 : {0.0, 1.0}) {
            for (int trial = 0; trial < 10; ++trial) {
                BreatherChart b{l1, g.uniform(0.5, 1.5), g.uniform(0.5, 1.5), g.complex(), g.complex()};
                const Complex lambda{0.5, 0.5};
                const SpectralChart chart{lambda, 0, b};
                const SpacePoint p{g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
                const auto profile = static_cast<DeformationProfile>(g.integer(0, 3));
                const LaxResidual r = lax_residual(eigen_sampler(chart, kBreatherSeed, profile),
                                                   plane_sampler(kBreatherSeed), lambda, p);
                CHECK(r.spatial < 1e-8);
                CHECK(r.temporal < 1e-8);
            }
        }
    }
    SUBCASE("rogue limit at the critical parameter") {
        const SpectralChart chart{rogue_lambda(), 0, RogueChart{}};
        for (int trial = 0; trial < 10; ++trial) {
            const SpacePoint p{g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-1, 1)};
            const LaxResidual r = lax_residual(eigen_sampler(chart, kRogueSeed, DeformationProfile::Linear),
                                               plane_sampler(kRogueSeed), rogue_lambda(), p);
            CHECK(r.spatial < 1e-8);
            CHECK(r.temporal < 1e-8);
        }
    }
}

TEST_CASE("Lax residual detects a wrong spectral parameter") {
    const Complex lambda{1.0, 1.0};
    const SpectralChart chart{lambda, 0, ZeroSeedChart{{1, 1}}};
    const auto phi = eigen_sampler(chart, ZeroBackground{}, DeformationProfile::Linear);
    const LaxResidual r = lax_residual(phi, kZeroField, lambda * 1.01, {0.2, 0.1, 0.0});
    CHECK(std::max(r.spatial, r.temporal) > 1e-3);
}

TEST_CASE("jet derivative coefficient matches a central difference in lambda") {
    const Complex lambda{0.8, 0.6};
    const SpectralChart chart{lambda, 1, ZeroSeedChart{{0.5, -0.2}}};
    const SpacePoint p{0.4, -0.3, 0.2};
    const EigenTriple jet = zero_seed_eigenfunction(chart, DeformationProfile::Quadratic, p, 1);
    const double h = 1e-5;
    auto at = [&](Complex l) {
        const SpectralChart c{l, 0, chart.kind};
        return zero_seed_eigenfunction(c, DeformationProfile::Quadratic, p, 0);
    };
    const EigenTriple up = at(lambda + h), down = at(lambda - h);
    CHECK(std::abs(jet.phi1[1] - (up.phi1[0] - down.phi1[0]) / (2 * h)) < 1e-8);
    CHECK(std::abs(jet.phi2[1] - (up.phi2[0] - down.phi2[0]) / (2 * h)) < 1e-8);
}

TEST_CASE("rescaling leaves the transformation unchanged") {
    Gen g(43);
    const std::vector<std::pair<SeedBackground, DtConfig>> cases = {
        {ZeroBackground{}, DtConfig{{{Complex(1, 1), 1, ZeroSeedChart{{1, 1}}}}}},
        {kBreatherSeed, DtConfig{{{Complex(0.5, 0.5), 0, BreatherChart{1, 1, 1, {1, 1}, {1, 1}}}}}},
        {kRogueSeed, DtConfig{{{rogue_lambda(), 1, RogueChart{}}}}},
    };
    for (const auto& [bg, config] : cases) {
        for (int trial = 0; trial < 10; ++trial) {
            const SpacePoint p{g.uniform(-4, 4), g.uniform(-4, 4), g.uniform(-1, 1)};
            std::vector<EigenTriple> raw, scaled;
            for (const auto& c : config.charts) {
                raw.push_back(eigenfunction(c, bg, DeformationProfile::Linear, p, c.required_jet_order(), false));
                scaled.push_back(eigenfunction(c, bg, DeformationProfile::Linear, p, c.required_jet_order(), true));
            }
            const auto a = evaluate_from_triples(bg, config, raw, p);
            const auto b = evaluate_from_triples(bg, config, scaled, p);
            REQUIRE(a);
            REQUIRE(b);
            CHECK(std::abs(a->q1 - b->q1) <= 1e-8 * std::max(1.0, std::abs(a->q1)));
            CHECK(std::abs(a->q2 - b->q2) <= 1e-8 * std::max(1.0, std::abs(a->q2)));
        }
    }
}

TEST_CASE("seed-frame evaluation agrees with the component frame where both are accurate") {
    Gen g(44);
    const std::vector<std::pair<SeedBackground, DtConfig>> cases = {
        {ZeroBackground{}, DtConfig{{{Complex(1, 1), 1, ZeroSeedChart{{1, 1}}}}}},
        {kBreatherSeed, DtConfig{{{Complex(0.5, 0.5), 0, BreatherChart{1, 1, 1, {1, 1}, {1, 1}}}}}},
        {kBreatherSeed, DtConfig{{{Complex(0.5, 0.5), 0, BreatherChart{0, 1, 1, {1, 1}, {-1, -1}}}}}},
        {kRogueSeed, DtConfig{{{rogue_lambda(), 2, RogueChart{}}}}},
        {kRogueSeed,
         DtConfig{{{rogue_lambda(), 0, RogueChart{}}, {Complex(0.5, 0.5), 0, BreatherChart{1, 1, 1, {}, {}}}}}},
    };
    for (const auto& [bg, config] : cases) {
        for (int trial = 0; trial < 10; ++trial) {
            const SpacePoint p{g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-0.5, 0.5)};
            std::vector<EigenTriple> triples;
            for (const auto& c : config.charts) {
                triples.push_back(eigenfunction(c, bg, DeformationProfile::Linear, p, c.required_jet_order(), true));
            }
            const auto a = evaluate_from_triples(bg, config, triples, p, {Precision::DoubleDouble});
            const auto b = evaluate_solution(bg, config, DeformationProfile::Linear, p);
            REQUIRE(a);
            REQUIRE(b);
            CHECK(std::abs(a->q1 - b->q1) <= 1e-9 * std::max(1.0, std::abs(a->q1)));
            CHECK(std::abs(a->q2 - b->q2) <= 1e-9 * std::max(1.0, std::abs(a->q2)));
        }
    }
}

TEST_CASE("builders reject mismatched or degenerate input") {
    const SpacePoint p{};
    CHECK_THROWS_AS(eigenfunction({Complex(1, 1), 0, ZeroSeedChart{}}, kRogueSeed, DeformationProfile::Linear, p, 0),
                    ConfigError);
    CHECK_THROWS_AS(eigenfunction({Complex(1, 1), 0, RogueChart{}}, ZeroBackground{}, DeformationProfile::Linear, p, 0),
                    ConfigError);
    CHECK_THROWS_AS(
        breather_eigenfunction({rogue_lambda(), 0, BreatherChart{}}, kRogueSeed, DeformationProfile::Linear, p, 0),
        DegenerateSpectrumError);
    CHECK_THROWS_AS(rogue_eigenfunction_jet({Complex(0.5, 0.5), 0, RogueChart{}}, kRogueSeed, p, 0),
                    NotCriticalError);
    CHECK_THROWS_AS(rogue_eigenfunction_jet({rogue_lambda(), 2, RogueChart{}}, kRogueSeed, p, 2), TruncationError);
    // Breathers and rogue waves need matched components; rogue waves also b1 == b2.
    const auto unmatched = PlaneWaveSeed::create(-1, -0.5, -1, -1, 1, 1);
    CHECK_THROWS_AS(
        breather_eigenfunction({Complex(0.5, 0.5), 0, BreatherChart{}}, unmatched, DeformationProfile::Linear, p, 0),
        ConfigError);
    CHECK_THROWS_AS(rogue_eigenfunction_jet({rogue_lambda(), 0, RogueChart{}}, kBreatherSeed, p, 0), ConfigError);
}
