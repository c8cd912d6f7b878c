#include <cmath>
#include <sstream>

#include "flwave/dt_engine.hpp"

namespace flwave {

std::size_t DtConfig::order() const {
    std::size_t n = 0;
    for (const auto& c : charts) n += 1 + static_cast<std::size_t>(std::max(c.multiplicity, 0));
    return n;
}

void DtConfig::validate(const SeedBackground& background) const {
    if (charts.empty()) throw ConfigError("DtConfig: at least one spectral chart is required");
    for (std::size_t i = 0; i < charts.size(); ++i) {
        const auto& c = charts[i];
        if (c.multiplicity < 0) throw ConfigError("DtConfig: multiplicity must be nonnegative");
        if (!is_finite(c.lambda)) throw DomainError("lambda", "spectral parameter must be finite");
        if (c.lambda == Complex{}) throw DomainError("lambda", "spectral parameter must be nonzero");
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(charts[j].lambda - c.lambda) <= 1e-12 * std::abs(c.lambda)) {
                throw ConfigError("DtConfig: duplicate spectral parameter; use multiplicity instead");
            }
        }
        const bool zero_bg = std::holds_alternative<ZeroBackground>(background);
        const bool zero_chart = std::holds_alternative<ZeroSeedChart>(c.kind);
        if (zero_bg != zero_chart) {
            throw ConfigError(zero_bg ? "DtConfig: breather/rogue chart needs a plane-wave seed"
                                      : "DtConfig: zero-seed chart needs the zero background");
        }
    }
    const std::size_t n = order();
    if (n > kMaxOrder) {
        std::ostringstream msg;
        msg << "DtConfig: transformation order " << n << " exceeds the supported maximum " << kMaxOrder;
        throw ConfigError(msg.str());
    }
}

std::pair<EigenTriple, EigenTriple> companion_triplet(const EigenTriple& phi) {
    const Jet zero(phi.order());
    const Jet p1c = phi.phi1.conj();
    EigenTriple first{-phi.phi2.conj(), p1c, zero};
    EigenTriple second{-phi.phi3.conj(), zero, p1c};
    return {std::move(first), std::move(second)};
}

OmegaSystem assemble_system(const DtConfig& config, std::span<const EigenTriple> triples) {
    if (triples.size() != config.charts.size()) {
        throw ContractError("assemble_system: one eigenfunction triple per chart is required");
    }
    const std::size_t n = config.order();
    const std::size_t dim = 3 * n;
    const int big_n = static_cast<int>(n);
    OmegaSystem sys{SquareMatrix(dim), SquareMatrix(dim), SquareMatrix(dim)};
    std::vector<Complex> replacement(dim);

    std::size_t row = 0;
    for (std::size_t c = 0; c < config.charts.size(); ++c) {
        const auto& chart = config.charts[c];
        const auto& phi = triples[c];
        const std::size_t stride = chart.stride();
        const std::size_t order = phi.order();
        if (order < chart.required_jet_order()) {
            throw TruncationError("assemble_system: eigenfunction jet order too small for multiplicity");
        }

        // lambda(e) and its conjugate, raised to every power in [-N, N].
        const Jet lam = Jet::variable(chart.lambda, order, stride);
        const Jet lam_c = lam.conj();
        std::vector<Jet> pow(2 * n + 1), pow_c(2 * n + 1);
        for (int m = -big_n; m <= big_n; ++m) {
            pow[m + big_n] = jet_pow(lam, m);
            pow_c[m + big_n] = jet_pow(lam_c, m);
        }

        const auto [comp1, comp2] = companion_triplet(phi);
        const EigenTriple* sources[3] = {&phi, &comp1, &comp2};
        const std::vector<Jet>* powers[3] = {&pow, &pow_c, &pow_c};

        for (int k = 0; k <= chart.multiplicity; ++k) {
            const std::size_t idx = static_cast<std::size_t>(k) * stride;
            for (int s = 0; s < 3; ++s) {
                const auto& src = *sources[s];
                const auto& pw = *powers[s];
                auto entry = [&](int m, const Jet& f) { return (pw[m + big_n] * f)[idx]; };
                std::size_t col = 0;
                for (int j = 0; j < big_n; ++j) {
                    const int e1 = big_n - 2 * j;
                    const int e2 = big_n - 1 - 2 * j;
                    sys.omega1(row, col++) = entry(e1, src.phi1);
                    sys.omega1(row, col++) = entry(e2, src.phi2);
                    sys.omega1(row, col++) = entry(e2, src.phi3);
                }
                replacement[row] = -entry(-big_n, src.phi1);
                ++row;
            }
        }
    }

    sys.omega2 = sys.omega1;
    sys.omega3 = sys.omega1;
    for (std::size_t r = 0; r < dim; ++r) {
        sys.omega2(r, dim - 2) = replacement[r];
        sys.omega3(r, dim - 1) = replacement[r];
    }
    return sys;
}

namespace {

// (det Omega2, det Omega3) / det Omega1; nullopt when Omega1 is singular.
std::optional<std::pair<Complex, Complex>> increments(const DtConfig& config, std::span<const EigenTriple> triples,
                                                      const EvalOptions& options) {
    const OmegaSystem sys = assemble_system(config, triples);
    const ScaledDeterminant d1 = scaled_det(sys.omega1, options.precision);
    if (d1.is_zero() || d1.log2_abs() < std::log2(options.singular_abs)) {
        return std::nullopt;
    }
    const ScaledDeterminant d2 = scaled_det(sys.omega2, options.precision);
    const ScaledDeterminant d3 = scaled_det(sys.omega3, options.precision);
    return std::pair{det_ratio(d2, d1), det_ratio(d3, d1)};
}

FieldSample finish(const SeedBackground& background, const SpacePoint& p, Complex dq1, Complex dq2) {
    FieldSample out = background_field(background, p);
    out.q1 += dq1;
    out.q2 += dq2;
    if (!is_finite(out.q1) || !is_finite(out.q2)) {
        std::ostringstream msg;
        msg << "evaluate_solution: non-finite field at (" << p.x << ", " << p.y << ", " << p.t << ")";
        throw NumericError(msg.str());
    }
    return out;
}

}  // namespace

std::optional<FieldSample> evaluate_from_triples(const SeedBackground& background, const DtConfig& config,
                                                 std::span<const EigenTriple> triples,
                                                 const SpacePoint& p, const EvalOptions& options) {
    const auto inc = increments(config, triples, options);
    if (!inc) return std::nullopt;
    return finish(background, p, inc->first, inc->second);
}

std::optional<FieldSample> evaluate_solution(const SeedBackground& background, const DtConfig& config,
                                             DeformationProfile profile, const SpacePoint& p,
                                             const EvalOptions& options) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.t)) {
        throw DomainError("point", "coordinates must be finite");
    }
    config.validate(background);
    // Work in the seed frame, then rotate the increments back with the
    // transpose of the frame change.
    std::vector<EigenTriple> triples;
    triples.reserve(config.charts.size());
    for (const auto& chart : config.charts) {
        triples.push_back(seed_frame_eigenfunction(chart, background, profile, p, chart.required_jet_order(), true));
    }
    const auto inc = increments(config, triples, options);
    if (!inc) return std::nullopt;
    const auto* pw = std::get_if<PlaneWaveSeed>(&background);
    const auto [th1, th2] = pw ? pw->phases(p) : std::pair{0.0, 0.0};
    const auto [plus, minus] = *inc;
    return finish(background, p, std::polar(1.0 / std::sqrt(2.0), th1) * (plus + minus),
                  std::polar(1.0 / std::sqrt(2.0), th2) * (plus - minus));
}

}  // namespace flwave
