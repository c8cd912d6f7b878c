#include <cmath>
#include <limits>
#include <sstream>

#include "flwave/spectral.hpp"

namespace flwave {

namespace {

constexpr Complex I{0.0, 1.0};

// |S| below this fraction of its term magnitudes counts as a root.
constexpr double kCriticalTolerance = 1e-10;

double discriminant_scale(Complex lambda, double a1, double d1) {
    const Complex l2 = lambda * lambda;
    return std::abs(4.0 * l2 * l2) + std::abs((8 * a1 * a1 * d1 * d1 + 4 * a1) * l2) + a1 * a1;
}

void require_nonzero_lambda(Complex lambda) {
    if (lambda == Complex{}) throw DomainError("lambda", "spectral parameter must be nonzero");
}

struct RParts {
    Jet num;
    Jet den;
};

// The printed expression for R with sqrt(S) supplied by the caller.
RParts rogue_R_parts(const Jet& lam, const Jet& sqrt_s, const PlaneWaveSeed& seed) {
    const double a1 = seed.a1(), b1 = seed.b1(), c1 = seed.c1(), d1 = seed.d1();
    const double a1sq = a1 * a1, d1sq = d1 * d1;
    const Jet l2 = lam * lam;
    const Jet l4 = l2 * l2;
    const Jet l6 = l4 * l2;

    Jet den = 4.0 * l2 *
              (-I * (l2 + a1) * sqrt_s + 2.0 * l4 - 2.0 * (-2 * a1sq * d1sq - a1) * l2 + Complex(a1sq / 2));

    const Complex mid = 2.0 * I + 2.0 * I * d1sq + b1 * I - c1 * I + 2 * a1;
    const Complex quart = -2.0 + 4.0 * I * a1sq * d1sq + 2.0 * I * a1 - 2 * d1sq - b1 + c1;
    Jet num = 2.0 * (-I + 2.0 * l4 + mid * l2) * sqrt_s + 8.0 * I * l6 +
              2.0 * l2 * (a1sq * I + 4 * a1 * d1sq + 2.0) + Complex(a1) + 4.0 * l4 * quart;
    return {std::move(num), std::move(den)};
}

// num / den where both may vanish to the same order in the jet variable.
// The top coefficients lost to the shift are zero-filled.
Jet divide_common_valuation(const Jet& num, const Jet& den, Complex lambda) {
    const auto v = den.valuation(1e-10);
    if (!v) throw PoleError("rogue_R: denominator vanishes identically", lambda);
    try {
        return jet_div(num.shifted_down(*v), den.shifted_down(*v));
    } catch (const DivisionByNonunitError&) {
        throw PoleError("rogue_R: pole at lambda", lambda);
    }
}

Jet rogue_R_jet(const Jet& lam, const Jet& sqrt_s, const PlaneWaveSeed& seed) {
    auto [num, den] = rogue_R_parts(lam, sqrt_s, seed);
    return divide_common_valuation(num, den, lam[0]);
}

}  // namespace

Complex discriminant_S(Complex lambda, double a1, double d1) {
    const Complex l2 = lambda * lambda;
    return -4.0 * l2 * l2 + (-8 * a1 * a1 * d1 * d1 - 4 * a1) * l2 - a1 * a1;
}

Jet discriminant_S(const Jet& lambda, double a1, double d1) {
    const Jet l2 = lambda * lambda;
    return -4.0 * (l2 * l2) + Complex(-8 * a1 * a1 * d1 * d1 - 4 * a1) * l2 - Complex(a1 * a1);
}

Complex critical_lambda(double a1, double d1, BranchSigns branch) {
    if (a1 == 0.0) throw DomainError("a1", "wavenumber must be nonzero");
    const Complex inner_rad = a1 * a1 * d1 * d1 * d1 * d1 + d1 * d1 * a1;
    const Complex inner = static_cast<double>(branch.inner) * std::sqrt(inner_rad);
    const Complex outer_rad = -4 * a1 * a1 * d1 * d1 + 4.0 * a1 * inner - 2 * a1;
    return 0.5 * static_cast<double>(branch.outer) * std::sqrt(outer_rad);
}

Complex rogue_R(Complex lambda, const PlaneWaveSeed& seed) {
    require_nonzero_lambda(lambda);
    const double a1 = seed.a1(), d1 = seed.d1();
    const Complex s = discriminant_S(lambda, a1, d1);
    const double scale = discriminant_scale(lambda, a1, d1);
    if (std::abs(s) <= kCriticalTolerance * scale) {
        const Jet lam = Jet::variable(lambda, 4, 2);
        const Jet sqrt_s = jet_sqrt_even(discriminant_S(lam, a1, d1));
        return rogue_R_jet(lam, sqrt_s, seed)[0];
    }
    const Jet lam = Jet::constant(lambda, 0);
    const Jet sqrt_s = Jet::constant(std::sqrt(s), 0);
    const auto [num, den] = rogue_R_parts(lam, sqrt_s, seed);
    if (std::abs(den[0]) <= 1e-14 * scale * std::norm(lambda) * 4.0) {
        throw PoleError("rogue_R: vanishing denominator", lambda);
    }
    return num[0] / den[0];
}

EigenTriple zero_seed_eigenfunction(const SpectralChart& chart, DeformationProfile profile,
                                    const SpacePoint& p, std::size_t jet_order, bool rescale) {
    const auto* kind = std::get_if<ZeroSeedChart>(&chart.kind);
    if (!kind) throw ConfigError("zero_seed_eigenfunction: chart is not a zero-seed chart");
    require_nonzero_lambda(chart.lambda);

    const Jet lam = Jet::variable(chart.lambda, jet_order, 1);
    const Jet l2 = lam * lam;
    const Complex deform = I * kind->h1 * profile_eval(profile, p.y + p.t);
    // exponent of phi1; phi2 = phi3 carry its negative
    const Jet expo = deform - I * p.x * l2 + I * p.y * (1.0 / (4.0 * l2) - Complex(1.0));
    const double s = rescale ? std::abs(expo[0].real()) : 0.0;
    Jet phi1 = jet_exp(expo - s);
    Jet phi2 = jet_exp(-expo - s);
    Jet phi3 = phi2;
    return {std::move(phi1), std::move(phi2), std::move(phi3)};
}

namespace {

EigenTriple breather_modes(const SpectralChart& chart, const PlaneWaveSeed& seed, DeformationProfile profile,
                           const SpacePoint& p, std::size_t jet_order, bool rescale, bool seed_frame) {
    const auto* kind = std::get_if<BreatherChart>(&chart.kind);
    if (!kind) throw ConfigError("breather_eigenfunction: chart is not a breather chart");
    if (!seed.has_matched_components()) {
        throw ConfigError("breather_eigenfunction: requires a1 == a2 and d1 == d2");
    }
    require_nonzero_lambda(chart.lambda);

    const double a1 = seed.a1(), d1 = seed.d1();
    const double b1 = seed.b1(), b2 = seed.b2(), c1 = seed.c1(), c2 = seed.c2();
    const Complex s0 = discriminant_S(chart.lambda, a1, d1);
    if (std::abs(s0) <= kCriticalTolerance * discriminant_scale(chart.lambda, a1, d1)) {
        throw DegenerateSpectrumError(
            "breather_eigenfunction: S(lambda) = 0, use a rogue chart at this spectral parameter");
    }

    const Jet lam = Jet::variable(chart.lambda, jet_order, 1);
    const Jet l2 = lam * lam;
    const Jet h = jet_sqrt_even(discriminant_S(lam, a1, d1));
    const double f = profile_eval(profile, p.y + p.t);

    const Complex coupling = 2.0 * I * a1 * d1;
    const Jet w12 = coupling * lam / ((I * a1 + h) * 0.5 + I * l2);
    const Jet w13 = coupling * lam / ((I * a1 - h) * 0.5 + I * l2);

    const Jet x1 = I * ((a1 + l2) * p.x - (2 * d1 * d1 + 1 / a1 + 1.0 / (4.0 * l2) + Complex(1.0)) * p.y +
                        kind->h1 * f);
    // The +H exponent goes with the +H column of W and vice versa.
    const Jet h_rate = (2.0 * a1 * l2 * p.x - Complex(p.y)) * h / (4.0 * a1 * l2);
    const Complex e2_phase =
        I * (a1 / 2 * p.x + (d1 * d1 + 1 / (2 * a1) + b1 - c1 + 1) * p.y - kind->h2 * f);
    const Complex e3_phase =
        I * (a1 / 2 * p.x + (d1 * d1 + 1 / (2 * a1) + b2 - c2 + 1) * p.y - kind->h1 * f);
    const Jet x2 = e2_phase + h_rate;
    const Jet x3 = e3_phase - h_rate;

    double s = 0.0;
    if (rescale) {
        s = -std::numeric_limits<double>::infinity();
        const std::pair<double, const Jet*> modes[3] = {{kind->l1, &x1}, {kind->l2, &x2}, {kind->l3, &x3}};
        for (const auto& [weight, x] : modes) {
            if (weight != 0.0) s = std::max(s, (*x)[0].real());
        }
        if (!std::isfinite(s)) s = 0.0;
    }
    const Jet e1 = kind->l1 * jet_exp(x1 - s);
    const Jet e2 = kind->l2 * jet_exp(x2 - s);
    const Jet e3 = kind->l3 * jet_exp(x3 - s);

    Jet phi1 = w12 * e2 + w13 * e3;
    if (seed_frame) {
        const double r2 = std::sqrt(2.0);
        return {std::move(phi1), r2 * (e2 + e3), -r2 * e1};
    }
    const auto [th1, th2] = seed.phases(p);
    Jet phi2 = std::polar(1.0, -th1) * (e2 + e3 - e1);
    Jet phi3 = std::polar(1.0, -th2) * (e1 + e2 + e3);
    return {std::move(phi1), std::move(phi2), std::move(phi3)};
}

}  // namespace

EigenTriple breather_eigenfunction(const SpectralChart& chart, const PlaneWaveSeed& seed,
                                   DeformationProfile profile, const SpacePoint& p,
                                   std::size_t jet_order, bool rescale) {
    return breather_modes(chart, seed, profile, p, jet_order, rescale, false);
}

EigenTriple rogue_eigenfunction_jet(const SpectralChart& chart, const PlaneWaveSeed& seed,
                                    const SpacePoint& p, std::size_t jet_order, bool rescale) {
    const auto* kind = std::get_if<RogueChart>(&chart.kind);
    if (!kind) throw ConfigError("rogue_eigenfunction_jet: chart is not a rogue chart");
    if (!seed.has_matched_components() || seed.b1() != seed.b2()) {
        throw ConfigError("rogue_eigenfunction_jet: requires a1 == a2, b1 == b2 and d1 == d2");
    }
    require_nonzero_lambda(chart.lambda);
    const double a1 = seed.a1(), d1 = seed.d1();
    if (d1 == 0.0) throw DomainError("d1", "rogue waves need a nonzero background amplitude");

    const Complex s0 = discriminant_S(chart.lambda, a1, d1);
    if (std::abs(s0) > kCriticalTolerance * discriminant_scale(chart.lambda, a1, d1)) {
        std::ostringstream msg;
        msg << "rogue_eigenfunction_jet: lambda is not a root of S (|S| = " << std::abs(s0) << ")";
        throw NotCriticalError(msg.str());
    }
    if (jet_order < chart.required_jet_order()) {
        throw TruncationError("rogue_eigenfunction_jet: jet order below 2 * multiplicity");
    }

    // Two guard orders: one lost dividing R's 0/0, one lost to the 1/e weights.
    const std::size_t work = jet_order + 2;
    const Jet lam = Jet::variable(chart.lambda, work, 2);
    const Jet l2 = lam * lam;
    const Jet sqrt_s = jet_sqrt_even(discriminant_S(lam, a1, d1));
    const Jet rate = rogue_R_jet(lam, sqrt_s, seed);

    Jet shift(work);
    for (std::size_t j = 0; j < kind->shifts.size() && 2 * j <= work; ++j) {
        shift[2 * j] += Complex(kind->shifts[j].v, kind->shifts[j].w);
    }
    const Jet arg = 0.5 * sqrt_s * (rate * p.t + shift + Complex(p.x, p.y));
    const double s = rescale ? std::abs(arg[0].real()) : 0.0;
    const Jet grow = jet_exp(arg - s);
    const Jet decay = jet_exp(-arg - s);

    const Jet upper = (-2.0 * l2 - Complex(a1) + I * sqrt_s) / (-4.0 * a1 * d1 * lam);
    const Jet lower = (2.0 * l2 + Complex(a1) + I * sqrt_s) / (4.0 * a1 * d1 * lam);

    const double th1 = seed.phases(p).first;
    Jet phi1 = std::polar(1.0, 0.5 * th1) * (grow - decay).shifted_down(1);
    Jet phi2 = std::polar(1.0, -0.5 * th1) * (upper * grow - lower * decay).shifted_down(1);
    phi1 = phi1.truncated(jet_order);
    phi2 = phi2.truncated(jet_order);
    Jet phi3 = phi2;
    return {std::move(phi1), std::move(phi2), std::move(phi3)};
}

EigenTriple eigenfunction(const SpectralChart& chart, const SeedBackground& background,
                          DeformationProfile profile, const SpacePoint& p, std::size_t jet_order,
                          bool rescale) {
    const auto* pw = std::get_if<PlaneWaveSeed>(&background);
    if (std::holds_alternative<ZeroSeedChart>(chart.kind)) {
        if (pw) throw ConfigError("zero-seed chart used with a plane-wave background");
        return zero_seed_eigenfunction(chart, profile, p, jet_order, rescale);
    }
    if (!pw) throw ConfigError("breather/rogue chart used with the zero background");
    if (std::holds_alternative<BreatherChart>(chart.kind)) {
        return breather_eigenfunction(chart, *pw, profile, p, jet_order, rescale);
    }
    return rogue_eigenfunction_jet(chart, *pw, p, jet_order, rescale);
}

EigenTriple seed_frame_eigenfunction(const SpectralChart& chart, const SeedBackground& background,
                                     DeformationProfile profile, const SpacePoint& p, std::size_t jet_order,
                                     bool rescale) {
    const auto* pw = std::get_if<PlaneWaveSeed>(&background);
    if (pw && std::holds_alternative<BreatherChart>(chart.kind)) {
        return breather_modes(chart, *pw, profile, p, jet_order, rescale, true);
    }
    EigenTriple phi = eigenfunction(chart, background, profile, p, jet_order, rescale);
    const auto [th1, th2] = pw ? pw->phases(p) : std::pair{0.0, 0.0};
    const Jet g2 = std::polar(1.0 / std::sqrt(2.0), th1) * phi.phi2;
    const Jet g3 = std::polar(1.0 / std::sqrt(2.0), th2) * phi.phi3;
    return {std::move(phi.phi1), g2 + g3, g2 - g3};
}

}  // namespace flwave
