#pragma once

// Determinant form of the (generalized) N-fold Darboux transformation.
//
// Columns of Omega1 follow the ladder
//   [l^N phi1, l^{N-1} phi2, l^{N-1} phi3, l^{N-2} phi1, l^{N-3} phi2, ...,
//    l^{-(N-2)} phi1, l^{-(N-1)} phi2, l^{-(N-1)} phi3]
// and each chart contributes three rows (eigenfunction plus its two
// conjugate companions at lambda*) per derivative order 0..multiplicity.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "flwave/model.hpp"
#include "flwave/numerics.hpp"
#include "flwave/spectral.hpp"

namespace flwave {

/// Largest supported transformation order.
inline constexpr std::size_t kMaxOrder = 4;

struct DtConfig {
    std::vector<SpectralChart> charts;

    /// N = M + sum of multiplicities.
    std::size_t order() const;

    /// Checks N in [1, kMaxOrder], distinct nonzero lambdas, nonnegative
    /// multiplicities and chart kinds compatible with the background.
    void validate(const SeedBackground& background) const;
};

struct OmegaSystem {
    SquareMatrix omega1;
    SquareMatrix omega2;
    SquareMatrix omega3;
};

/// (-phi2*, phi1*, 0) and (-phi3*, 0, phi1*), conjugating jet coefficients.
std::pair<EigenTriple, EigenTriple> companion_triplet(const EigenTriple& phi);

/// Builds Omega1..3 from one eigenfunction jet per chart (in chart order).
/// Omega2/Omega3 replace the last-but-one/last column with
/// (-l^{-N} phi1, l*^{-N} phi2*, l*^{-N} phi3*) per row triple.
OmegaSystem assemble_system(const DtConfig& config, std::span<const EigenTriple> triples);

struct EvalOptions {
    Precision precision = Precision::Standard;
    /// |det Omega1| below this counts as singular (eigenfunctions rescaled
    /// so that their largest mode is of unit size).
    double singular_abs = 1e-300;
};

/// q[N] = seed + (|Omega2|, |Omega3|) / |Omega1|; nullopt flags a singular
/// point. The determinants are taken in the seed frame (see
/// seed_frame_eigenfunction) and rotated back. Throws ConfigError on
/// incompatible input and NumericError if the result is not finite.
std::optional<FieldSample> evaluate_solution(const SeedBackground& background, const DtConfig& config,
                                             DeformationProfile profile, const SpacePoint& p,
                                             const EvalOptions& options = {});

/// Same, with per-chart eigenfunctions supplied by the caller and no frame
/// change.
std::optional<FieldSample> evaluate_from_triples(const SeedBackground& background, const DtConfig& config,
                                                 std::span<const EigenTriple> triples,
                                                 const SpacePoint& p, const EvalOptions& options = {});

}  // namespace flwave
