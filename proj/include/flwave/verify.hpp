#pragma once

// Independent checks: finite-difference PDE residual, Lax-pair and
// zero-curvature residuals, the closed-form first-order rogue wave, and
// peak / local-maximum diagnostics.

#include <array>
#include <cstddef>
#include <functional>

#include "flwave/grid_render.hpp"
#include "flwave/model.hpp"
#include "flwave/numerics.hpp"

namespace flwave {

/// First-order rogue wave (q1 = q2) at a1 = a2 = -1/2, d1 = d2 = 1,
/// b1 = b2 = -1, evaluated from its explicit rational form.
Complex closed_form_rw1(const SpacePoint& p);

struct ResidualReport {
    Complex residual1;
    Complex residual2;
    double step = 0.0;
    SpacePoint point;

    double magnitude() const { return std::max(std::abs(residual1), std::abs(residual2)); }
};

/// Both component equations with second-order central differences
/// (4-point cross stencil for the mixed partials). 11 samples.
/// Throws StencilError naming the offset of a singular sample.
ResidualReport pde_residual(const FieldSampler& sampler, const SpacePoint& p, double step = 1e-3);

struct RichardsonReport {
    double coarse = 0.0;  // residual at step
    double fine = 0.0;    // residual at step / 2
    double ratio() const { return fine / coarse; }
};

RichardsonReport richardson(const FieldSampler& sampler, const SpacePoint& p, double step = 1e-3);

struct LaxMatrices {
    SquareMatrix U;
    SquareMatrix V;
};

/// U = -i l^2 Sigma + l Q and V = V0 + V_{-1}/l + V_{-2}/l^2, where
/// Q = [[0, q1x, q2x], [-q1x*, 0, 0], [-q2x*, 0, 0]].
LaxMatrices lax_matrices(const FieldSample& q, const FieldSample& qx, Complex lambda);

using EigenSampler = std::function<std::array<Complex, 3>(const SpacePoint&)>;

/// Scalar (jet coefficient 0) eigenfunction of a chart.
EigenSampler eigen_sampler(SpectralChart chart, SeedBackground background, DeformationProfile profile);

struct LaxResidual {
    double spatial = 0.0;   // |Phi_x - U Phi|
    double temporal = 0.0;  // |Phi_t - Phi_y - V Phi|
};

/// Max-norms relative to max_j |Phi_j| at the point. Derivatives of Phi and
/// q use fourth-order central differences.
LaxResidual lax_residual(const EigenSampler& phi, const FieldSampler& field, Complex lambda, const SpacePoint& p,
                         double step = 1e-4);

/// Max-norm of U_t - U_y - V_x + [U, V], fourth-order central differences
/// (q_x inside U is itself differenced).
double zero_curvature_residual(const FieldSampler& field, Complex lambda, const SpacePoint& p, double step = 1e-3);

struct Peak {
    SpacePoint point;
    double magnitude = 0.0;
};

/// Coarse argmax of |q1| over the region (ties: lowest x, then lowest y),
/// then coordinate ascent with step halving. Throws EmptyRegionError if no
/// node is regular.
Peak peak_search(const FieldSampler& sampler, const GridSpec& region, int refine_iters = 60);

/// Interior nodes whose |q1| exceeds the threshold and every regular
/// 8-neighbor strictly. Masked nodes are never counted.
std::size_t count_local_maxima(const FieldGrid& grid, double threshold);

}  // namespace flwave
