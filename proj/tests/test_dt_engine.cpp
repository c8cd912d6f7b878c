#include <cmath>

#include "doctest.h"
#include "flwave/dt_engine.hpp"
#include "flwave/verify.hpp"
#include "support.hpp"

using namespace flwave;
using namespace flwave::testing;

namespace {

const PlaneWaveSeed kRogueSeed = PlaneWaveSeed::create(-0.5, -0.5, -1, -1, 1, 1);
const PlaneWaveSeed kBreatherSeed = PlaneWaveSeed::create(-1, -1, -1, -2, 1, 1);

Complex rogue_lambda() { return critical_lambda(-0.5, 1.0, kFigureBranch); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("single-fold transformation equals the hand-expanded determinant ratio") {
    Gen g(51);
    for (int trial = 0; trial < 60; ++trial) {
        const bool zero = trial % 3 == 0;
        const SeedBackground bg = zero ? SeedBackground(ZeroBackground{}) : SeedBackground(kBreatherSeed);
        SpectralChart chart;
        if (zero) {
            chart = {{g.uniform(0.3, 1.5), g.uniform(0.3, 1.5)}, 0, ZeroSeedChart{g.complex()}};
        } else {
            const double l1 = trial % 3 == 1 ? 0.0 : g.uniform(0.2, 1.5);
            chart = {{0.5, 0.5}, 0, BreatherChart{l1, g.uniform(0.2, 1.5), g.uniform(0.2, 1.5), g.complex(), g.complex()}};
        }
        const auto profile = static_cast<DeformationProfile>(g.integer(0, 3));
        const SpacePoint p{g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-2, 2)};
        const EigenTriple e = eigenfunction(chart, bg, profile, p, 0);
        const FieldSample seed = background_field(bg, p);
        const auto q = evaluate_solution(bg, DtConfig{{chart}}, profile, p);
        REQUIRE(q);
        CHECK(rel(q->q1, seed.q1 + single_fold_increment(chart.lambda, e.phi1[0], e.phi2[0], e.phi3[0])) < 1e-10);
        CHECK(rel(q->q2, seed.q2 + single_fold_increment(chart.lambda, e.phi1[0], e.phi2[0], e.phi3[0], true)) <
              1e-10);
    }
}

TEST_CASE("first-order rogue wave equals the closed form") {
    const DtConfig config{{{rogue_lambda(), 0, RogueChart{}}}};
    Gen g(52);
    for (int trial = 0; trial < 100; ++trial) {
        const SpacePoint p{g.uniform(-10, 10), g.uniform(-10, 10), g.uniform(-2, 2)};
        const auto q = evaluate_solution(kRogueSeed, config, DeformationProfile::Linear, p);
        REQUIRE(q);
        CHECK(std::abs(q->q1 - rogue_rw1(p.x, p.y, p.t)) < 1e-10);
        CHECK(q->q1 == q->q2);
    }
}

TEST_CASE("deformed soliton has amplitude 1/sqrt(2) with the predicted decay") {
    // At lambda = 1 + i, h1 = 1 + i and the linear profile the exponent has
    // real part R = 2x + y/8 - (y + t), and |q1| = sqrt(2) / sqrt(e^{4R} + 4e^{-4R}).
    const DtConfig config{{{Complex(1, 1), 0, ZeroSeedChart{{1, 1}}}}};
    Gen g(53);
    for (int trial = 0; trial < 100; ++trial) {
        const SpacePoint p{g.uniform(-10, 10), g.uniform(-10, 10), g.uniform(-3, 3)};
        const double r = 2 * p.x + p.y / 8 - (p.y + p.t);
        const double expected = std::sqrt(2.0) / std::sqrt(std::exp(4 * r) + 4 * std::exp(-4 * r));
        const auto q = evaluate_solution(ZeroBackground{}, config, DeformationProfile::Linear, p);
        REQUIRE(q);
        CHECK(std::abs(std::abs(q->q1) - expected) <= 1e-12 + 1e-10 * expected);
        CHECK(q->q1 == q->q2);
    }
    // Ridge: 8R = ln 4 gives the maximum.
    const SpacePoint top{std::log(4.0) / 16.0, 0.0, 0.0};
    const auto q = evaluate_solution(ZeroBackground{}, config, DeformationProfile::Linear, top);
    CHECK(std::abs(q->q1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("positons decay to the zero background away from their ridges") {
    const DtConfig config{{{Complex(1, 1), 1, ZeroSeedChart{{1, 1}}}}};
    for (double x : {-9.0, 9.0}) {
        const auto q = evaluate_solution(ZeroBackground{}, config, DeformationProfile::Linear, {x, 0.0, 0.0});
        REQUIRE(q);
        CHECK(std::abs(q->q1) < 1e-6);
    }
    Gen g(54);
    for (int trial = 0; trial < 50; ++trial) {
        const SpacePoint p{g.uniform(-3, 3), g.uniform(-3, 3), g.uniform(-3, 3)};
        const auto profile = static_cast<DeformationProfile>(g.integer(0, 3));
        const auto q = evaluate_solution(ZeroBackground{}, config, profile, p);
        REQUIRE(q);
        CHECK(q->q1 == q->q2);
        // Double-double determinants agree with the standard path.
        const auto dd = evaluate_solution(ZeroBackground{}, config, profile, p, {Precision::DoubleDouble});
        CHECK(rel(q->q1, dd->q1) < 1e-9);
    }
}

TEST_CASE("symmetric configurations give equal components, the Y-breather does not") {
    Gen g(55);
    const std::vector<std::pair<SeedBackground, DtConfig>> symmetric = {
        {ZeroBackground{}, DtConfig{{{Complex(1, 1), 2, ZeroSeedChart{{1, 1}}}}}},
        {kRogueSeed, DtConfig{{{Complex(0.5, 0.5), 0, BreatherChart{0, 1, 1, {1, 1}, {-1, -1}}}}}},
        {kRogueSeed, DtConfig{{{rogue_lambda(), 2, RogueChart{{{0, 0}, {40, 0}}}}}}},
        {kRogueSeed, DtConfig{{{rogue_lambda(), 0, RogueChart{}}, {Complex(0.5, 0.5), 0, BreatherChart{}}}}},
    };
    for (const auto& [bg, config] : symmetric) {
        for (int trial = 0; trial < 20; ++trial) {
            const SpacePoint p{g.uniform(-10, 10), g.uniform(-10, 10), g.uniform(-1, 1)};
            const auto q = evaluate_solution(bg, config, DeformationProfile::Linear, p);
            if (!q) continue;
            CHECK(std::abs(q->q1 - q->q2) < 1e-12);
        }
    }
    const DtConfig y{{{Complex(0.5, 0.5), 0, BreatherChart{1, 1, 1, {1, 1}, {1, 1}}}}};
    const auto q = evaluate_solution(kRogueSeed, y, DeformationProfile::Linear, {0.5, 0.5, 0});
    CHECK(std::abs(q->q1 - q->q2) > 1e-3);
}

TEST_CASE("higher-order rogue waves: double-double agrees and the field peaks near the centre") {
    const DtConfig second{{{rogue_lambda(), 1, RogueChart{}}}};
    const DtConfig third{{{rogue_lambda(), 2, RogueChart{}}}};
    Gen g(56);
    for (int trial = 0; trial < 20; ++trial) {
        const SpacePoint p{g.uniform(-8, 8), g.uniform(-8, 8), g.uniform(-1, 1)};
        for (const auto* c : {&second, &third}) {
            const auto a = evaluate_solution(kRogueSeed, *c, DeformationProfile::Linear, p);
            const auto b = evaluate_solution(kRogueSeed, *c, DeformationProfile::Linear, p, {Precision::DoubleDouble});
            REQUIRE(a);
            REQUIRE(b);
            CHECK(rel(a->q1, b->q1) < 1e-9);
        }
    }
    // Far from the centre the field returns to the unit background.
    const auto far = evaluate_solution(kRogueSeed, third, DeformationProfile::Linear, {200, 200, 0});
    CHECK(std::abs(std::abs(far->q1) - 1.0) < 1e-3);
}

TEST_CASE("the exact origin of the first-order rogue wave is flagged singular") {
    const DtConfig config{{{rogue_lambda(), 0, RogueChart{}}}};
    CHECK_FALSE(evaluate_solution(kRogueSeed, config, DeformationProfile::Linear, {0, 0, 0}));
}

TEST_CASE("Omega system layout") {
    const DtConfig config{{{rogue_lambda(), 1, RogueChart{}}, {Complex(0.5, 0.5), 0, BreatherChart{}}}};
    CHECK(config.order() == 3);
    std::vector<EigenTriple> triples;
    const SpacePoint p{0.3, 0.2, 0.1};
    for (const auto& c : config.charts) triples.push_back(eigenfunction(c, kRogueSeed, DeformationProfile::Linear, p, 2));
    const OmegaSystem sys = assemble_system(config, triples);
    CHECK(sys.omega1.dim() == 9);
    for (std::size_t r = 0; r < 9; ++r) {
        for (std::size_t c = 0; c < 9; ++c) {
            if (c != 7) CHECK(sys.omega2(r, c) == sys.omega1(r, c));
            if (c != 8) CHECK(sys.omega3(r, c) == sys.omega1(r, c));
        }
        CHECK(sys.omega2(r, 7) == sys.omega3(r, 8));
    }
    const auto [c1, c2] = companion_triplet(triples[1]);
    CHECK(c1.phi1[0] == -std::conj(triples[1].phi2[0]));
    CHECK(c1.phi2[0] == std::conj(triples[1].phi1[0]));
    CHECK(c1.phi3[0] == Complex{});
    CHECK(c2.phi1[0] == -std::conj(triples[1].phi3[0]));
    CHECK(c2.phi3[0] == std::conj(triples[1].phi1[0]));
    // Too-short jets for a multiplicity-1 rogue chart.
    std::vector<EigenTriple> short_triples{triples[0].truncated(1), triples[1]};
    CHECK_THROWS_AS(assemble_system(config, short_triples), TruncationError);
}

TEST_CASE("configuration validation") {
    const SpacePoint p{};
    CHECK_THROWS_AS(evaluate_solution(ZeroBackground{}, DtConfig{}, DeformationProfile::Linear, p), ConfigError);
    const SpectralChart z{Complex(1, 1), 0, ZeroSeedChart{{1, 1}}};
    CHECK_THROWS_AS(evaluate_solution(ZeroBackground{}, DtConfig{{z, z}}, DeformationProfile::Linear, p), ConfigError);
    CHECK_THROWS_AS(evaluate_solution(kRogueSeed, DtConfig{{z}}, DeformationProfile::Linear, p), ConfigError);
    const SpectralChart big{Complex(1, 1), 4, ZeroSeedChart{{1, 1}}};
    CHECK_THROWS_AS(evaluate_solution(ZeroBackground{}, DtConfig{{big}}, DeformationProfile::Linear, p), ConfigError);
    const SpectralChart neg{Complex(1, 1), -1, ZeroSeedChart{{1, 1}}};
    CHECK_THROWS_AS(evaluate_solution(ZeroBackground{}, DtConfig{{neg}}, DeformationProfile::Linear, p), ConfigError);
    const SpectralChart zero_lambda{Complex(0, 0), 0, ZeroSeedChart{{1, 1}}};
    CHECK_THROWS_AS(evaluate_solution(ZeroBackground{}, DtConfig{{zero_lambda}}, DeformationProfile::Linear, p),
                    DomainError);
    CHECK_THROWS_AS(evaluate_solution(ZeroBackground{}, DtConfig{{z}}, DeformationProfile::Linear, {NAN, 0, 0}),
                    DomainError);
}
