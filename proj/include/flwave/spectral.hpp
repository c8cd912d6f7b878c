#pragma once

// Lax-pair eigenfunctions for the zero and plane-wave seeds, and the
// spectral helper quantities S (= H^2), R and the critical parameter.
//
// Every builder promotes lambda to a jet so that derivative rows of the
// generalized transformation come out of the same code path:
//   zero-seed and breather charts use lambda + e,
//   rogue charts use lambda + e^2 (coefficient 2n <-> n-th derivative row).

#include <cstddef>
#include <variant>
#include <vector>

#include "flwave/model.hpp"
#include "flwave/numerics.hpp"

namespace flwave {

struct ZeroSeedChart {
    Complex h1;
};

/// Superposition constants l1..l3 weight the three diagonal modes.
struct BreatherChart {
    double l1 = 0.0;
    double l2 = 1.0;
    double l3 = 1.0;
    Complex h1;
    Complex h2;
};

/// (v_j + i w_j) multiplies e^(2j) in the shift series.
struct RogueShift {
    double v = 0.0;
    double w = 0.0;
};

struct RogueChart {
    std::vector<RogueShift> shifts;
};

using ChartKind = std::variant<ZeroSeedChart, BreatherChart, RogueChart>;

struct SpectralChart {
    Complex lambda;
    int multiplicity = 0;
    ChartKind kind;

    /// Power of the expansion variable per derivative order.
    std::size_t stride() const { return std::holds_alternative<RogueChart>(kind) ? 2 : 1; }
    /// Jet order needed to reach the highest derivative row.
    std::size_t required_jet_order() const { return stride() * static_cast<std::size_t>(multiplicity); }
};

struct EigenTriple {
    Jet phi1;
    Jet phi2;
    Jet phi3;

    std::size_t order() const { return phi1.order(); }
    EigenTriple truncated(std::size_t order) const {
        return {phi1.truncated(order), phi2.truncated(order), phi3.truncated(order)};
    }
};

/// S(lambda) = -4 lambda^4 + (-8 a1^2 d1^2 - 4 a1) lambda^2 - a1^2.
Complex discriminant_S(Complex lambda, double a1, double d1);
Jet discriminant_S(const Jet& lambda, double a1, double d1);

/// Sign choices applied to the outer and inner square roots of the
/// critical-parameter formula (principal branches otherwise).
struct BranchSigns {
    int outer = +1;
    int inner = +1;
};

/// Branch reproducing the figure value sqrt(2)/4 (1 + i) at a1 = -1/2, d1 = 1.
inline constexpr BranchSigns kFigureBranch{+1, -1};

/// Root of S built from the closed nested-radical formula.
Complex critical_lambda(double a1, double d1, BranchSigns branch = {});

/// Time-rate factor R of the rogue-wave eigenfunction. At a root of S the
/// printed rational expression is 0/0; the removable value is taken as the
/// e -> 0 limit of the jet evaluation. Throws PoleError at a genuine pole.
Complex rogue_R(Complex lambda, const PlaneWaveSeed& seed);

/// With rescale set, every builder divides the triple by a positive real
/// e^s chosen so the largest exponential has modulus 1 at e = 0. The
/// transformation's determinant ratios are unchanged; the Lax pair is not
/// (s depends on the point).
EigenTriple zero_seed_eigenfunction(const SpectralChart& chart, DeformationProfile profile,
                                    const SpacePoint& p, std::size_t jet_order, bool rescale = false);

/// Requires a1 == a2, d1 == d2 and S(lambda) != 0.
EigenTriple breather_eigenfunction(const SpectralChart& chart, const PlaneWaveSeed& seed,
                                   DeformationProfile profile, const SpacePoint& p,
                                   std::size_t jet_order, bool rescale = false);

/// Rogue-wave eigenfunction with l1 = 1/e, l2 = -1/e expanded around a
/// critical lambda. Odd coefficients vanish; coefficient 2n feeds the n-th
/// derivative row. Requires jet_order >= 2 * multiplicity.
EigenTriple rogue_eigenfunction_jet(const SpectralChart& chart, const PlaneWaveSeed& seed,
                                    const SpacePoint& p, std::size_t jet_order, bool rescale = false);

/// Dispatches on the chart kind after checking it matches the background.
EigenTriple eigenfunction(const SpectralChart& chart, const SeedBackground& background,
                          DeformationProfile profile, const SpacePoint& p, std::size_t jet_order,
                          bool rescale = false);

/// Components 2 and 3 replaced by (e^(i th1) phi2 +- e^(i th2) phi3) / sqrt(2),
/// with the seed phases th1, th2 (zero for the zero background). The
/// transformation is covariant under this unitary frame change. Breather
/// charts build both components from their modes, so a dominant mode does
/// not swamp the others.
EigenTriple seed_frame_eigenfunction(const SpectralChart& chart, const SeedBackground& background,
                                     DeformationProfile profile, const SpacePoint& p, std::size_t jet_order,
                                     bool rescale = false);

}  // namespace flwave
