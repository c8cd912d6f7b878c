#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "flwave/verify.hpp"

namespace flwave {

namespace {

constexpr Complex kI{0.0, 1.0};

using Mat3 = std::array<Complex, 9>;

Mat3 operator+(Mat3 a, const Mat3& b) {
    for (std::size_t k = 0; k < 9; ++k) a[k] += b[k];
    return a;
}
Mat3 operator-(Mat3 a, const Mat3& b) {
    for (std::size_t k = 0; k < 9; ++k) a[k] -= b[k];
    return a;
}
Mat3 operator*(Complex s, Mat3 a) {
    for (auto& v : a) v *= s;
    return a;
}
Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k)
            for (int col = 0; col < 3; ++col) c[3 * r + col] += a[3 * r + k] * b[3 * k + col];
    return c;
}
std::array<Complex, 3> mat_vec(const Mat3& a, const std::array<Complex, 3>& v) {
    std::array<Complex, 3> out{};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) out[r] += a[3 * r + k] * v[k];
    return out;
}
double max_norm(const Mat3& a) {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

Mat3 u_matrix(const FieldSample& qx, Complex lambda) {
    const Complex l2 = lambda * lambda;
    return {-kI * l2, lambda * qx.q1, lambda * qx.q2,
            -lambda * std::conj(qx.q1), kI * l2, 0.0,
            -lambda * std::conj(qx.q2), 0.0, kI * l2};
}

Mat3 v_matrix(const FieldSample& q, Complex lambda) {
    const Complex q1 = q.q1, q2 = q.q2;
    const double n1 = std::norm(q1), n2 = std::norm(q2);
    const Mat3 v0{0.5 * kI * (n1 + n2 + 2.0), 0.0, 0.0,
                  0.0, -kI * (0.5 * n1 + 1.0), -0.5 * kI * std::conj(q1) * q2,
                  0.0, -0.5 * kI * q1 * std::conj(q2), -kI * (0.5 * n2 + 1.0)};
    const Mat3 vm1{0.0, 0.5 * kI * q1, 0.5 * kI * q2,
                   0.5 * kI * std::conj(q1), 0.0, 0.0,
                   0.5 * kI * std::conj(q2), 0.0, 0.0};
    const Mat3 vm2{-0.25 * kI, 0.0, 0.0, 0.0, 0.25 * kI, 0.0, 0.0, 0.0, 0.25 * kI};
    return v0 + (1.0 / lambda) * vm1 + (1.0 / (lambda * lambda)) * vm2;
}

SquareMatrix to_square(const Mat3& a) {
    SquareMatrix m(3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = a[3 * r + c];
    return m;
}

SpacePoint offset(const SpacePoint& p, double dx, double dy, double dt) { return {p.x + dx, p.y + dy, p.t + dt}; }

FieldSample sample_at(const FieldSampler& f, const SpacePoint& p, double dx, double dy, double dt) {
    auto s = f(offset(p, dx, dy, dt));
    if (!s) {
        std::ostringstream msg;
        msg << "stencil sample at offset (" << dx << ", " << dy << ", " << dt << ") is singular";
        throw StencilError(msg.str(), dx, dy, dt);
    }
    return *s;
}

enum class Axis { X, Y, T };

SpacePoint along(const SpacePoint& p, Axis a, double d) {
    switch (a) {
        case Axis::X: return offset(p, d, 0, 0);
        case Axis::Y: return offset(p, 0, d, 0);
        case Axis::T: return offset(p, 0, 0, d);
    }
    return p;
}

// Fourth-order central first derivative of any vector-space valued g.
template <class G>
auto d4(const G& g, const SpacePoint& p, Axis a, double h) {
    const auto fm2 = g(along(p, a, -2 * h));
    const auto fm1 = g(along(p, a, -h));
    const auto fp1 = g(along(p, a, h));
    const auto fp2 = g(along(p, a, 2 * h));
    auto out = fp1;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (fm2[k] - 8.0 * fm1[k] + 8.0 * fp1[k] - fp2[k]) / (12.0 * h);
    }
    return out;
}

std::array<Complex, 2> as_array(const FieldSample& s) { return {s.q1, s.q2}; }

FieldSample field_x(const FieldSampler& f, const SpacePoint& p, double h) {
    const auto d = d4([&](const SpacePoint& s) { return as_array(sample_at(f, s, 0, 0, 0)); }, p, Axis::X, h);
    return {d[0], d[1]};
}

double abs_q1(const FieldSampler& f, const SpacePoint& p) {
    auto s = f(p);
    if (!s) return -std::numeric_limits<double>::infinity();
    return std::abs(s->q1);
}

}  // namespace

Complex closed_form_rw1(const SpacePoint& p) {
    const double x = p.x, y = p.y, t = p.t;
    const Complex num = Complex(4, -4) - 25 * t * t + 10.0 * (Complex(-1, 1) - y) * t - y * y + Complex(-2, 2) * y -
                        x * x + Complex(2, 6) * x;
    const Complex den =
        Complex(4, -4) + 25 * t * t + 10.0 * t * (Complex(1, -1) + y) + y * y + Complex(2, -2) * y + x * x +
        Complex(-2, 2) * x;
    if (std::abs(den) < 1e-300) throw PoleError("closed_form_rw1: vanishing denominator", Complex{});
    return num * std::exp(0.5 * kI * (-2 * y + 2 * t - x)) / den;
}

ResidualReport pde_residual(const FieldSampler& sampler, const SpacePoint& p, double step) {
    if (!(step > 0.0)) throw DomainError("step", "finite-difference step must be positive");
    const double h = step;
    const FieldSample c = sample_at(sampler, p, 0, 0, 0);
    const FieldSample xp = sample_at(sampler, p, h, 0, 0), xm = sample_at(sampler, p, -h, 0, 0);
    const FieldSample tpp = sample_at(sampler, p, h, 0, h), tpm = sample_at(sampler, p, h, 0, -h);
    const FieldSample tmp = sample_at(sampler, p, -h, 0, h), tmm = sample_at(sampler, p, -h, 0, -h);
    const FieldSample ypp = sample_at(sampler, p, h, h, 0), ypm = sample_at(sampler, p, h, -h, 0);
    const FieldSample ymp = sample_at(sampler, p, -h, h, 0), ymm = sample_at(sampler, p, -h, -h, 0);

    const double mixed = 4.0 * h * h;
    const Complex q1xt = (tpp.q1 - tpm.q1 - tmp.q1 + tmm.q1) / mixed;
    const Complex q2xt = (tpp.q2 - tpm.q2 - tmp.q2 + tmm.q2) / mixed;
    const Complex q1xy = (ypp.q1 - ypm.q1 - ymp.q1 + ymm.q1) / mixed;
    const Complex q2xy = (ypp.q2 - ypm.q2 - ymp.q2 + ymm.q2) / mixed;
    const Complex q1x = (xp.q1 - xm.q1) / (2.0 * h);
    const Complex q2x = (xp.q2 - xm.q2) / (2.0 * h);
    const Complex q1 = c.q1, q2 = c.q2;
    const double n1 = std::norm(q1), n2 = std::norm(q2);

    ResidualReport r;
    r.residual1 = kI * q1xt - kI * q1xy + kI * q1 + n1 * q1x + 2.0 * q1x + 0.5 * n2 * q1x +
                  0.5 * q1 * std::conj(q2) * q2x;
    r.residual2 = kI * q2xt - kI * q2xy + kI * q2 + n2 * q2x + 2.0 * q2x + 0.5 * n1 * q2x +
                  0.5 * q2 * std::conj(q1) * q1x;
    r.step = step;
    r.point = p;
    return r;
}

RichardsonReport richardson(const FieldSampler& sampler, const SpacePoint& p, double step) {
    return {pde_residual(sampler, p, step).magnitude(), pde_residual(sampler, p, step / 2).magnitude()};
}

LaxMatrices lax_matrices(const FieldSample& q, const FieldSample& qx, Complex lambda) {
    if (lambda == Complex{}) throw DomainError("lambda", "spectral parameter must be nonzero");
    return {to_square(u_matrix(qx, lambda)), to_square(v_matrix(q, lambda))};
}

EigenSampler eigen_sampler(SpectralChart chart, SeedBackground background, DeformationProfile profile) {
    return [chart = std::move(chart), background = std::move(background), profile](const SpacePoint& p) {
        const EigenTriple e = eigenfunction(chart, background, profile, p, 0);
        return std::array<Complex, 3>{e.phi1[0], e.phi2[0], e.phi3[0]};
    };
}

LaxResidual lax_residual(const EigenSampler& phi, const FieldSampler& field, Complex lambda, const SpacePoint& p,
                         double step) {
    if (!(step > 0.0)) throw DomainError("step", "finite-difference step must be positive");
    if (lambda == Complex{}) throw DomainError("lambda", "spectral parameter must be nonzero");
    const auto phi0 = phi(p);
    double scale = 0.0;
    for (const auto& v : phi0) scale = std::max(scale, std::abs(v));
    if (!(scale > 0.0) || !std::isfinite(scale)) throw NumericError("lax_residual: eigenfunction vanishes or overflows");

    const FieldSample q = sample_at(field, p, 0, 0, 0);
    const FieldSample qx = field_x(field, p, step);
    const auto phi_x = d4(phi, p, Axis::X, step);
    const auto phi_y = d4(phi, p, Axis::Y, step);
    const auto phi_t = d4(phi, p, Axis::T, step);
    const auto u_phi = mat_vec(u_matrix(qx, lambda), phi0);
    const auto v_phi = mat_vec(v_matrix(q, lambda), phi0);

    LaxResidual r;
    for (std::size_t k = 0; k < 3; ++k) {
        r.spatial = std::max(r.spatial, std::abs(phi_x[k] - u_phi[k]));
        r.temporal = std::max(r.temporal, std::abs(phi_t[k] - phi_y[k] - v_phi[k]));
    }
    r.spatial /= scale;
    r.temporal /= scale;
    return r;
}

double zero_curvature_residual(const FieldSampler& field, Complex lambda, const SpacePoint& p, double step) {
    if (!(step > 0.0)) throw DomainError("step", "finite-difference step must be positive");
    if (lambda == Complex{}) throw DomainError("lambda", "spectral parameter must be nonzero");
    auto u_at = [&](const SpacePoint& s) { return u_matrix(field_x(field, s, step), lambda); };
    auto v_at = [&](const SpacePoint& s) { return v_matrix(sample_at(field, s, 0, 0, 0), lambda); };
    const Mat3 u = u_at(p), v = v_at(p);
    const Mat3 z = d4(u_at, p, Axis::T, step) - d4(u_at, p, Axis::Y, step) - d4(v_at, p, Axis::X, step) +
                   (matmul(u, v) - matmul(v, u));
    return max_norm(z);
}

Peak peak_search(const FieldSampler& sampler, const GridSpec& region, int refine_iters) {
    region.validate();
    double best = -std::numeric_limits<double>::infinity();
    SpacePoint at{};
    for (std::size_t i = 0; i < region.nx; ++i)
        for (std::size_t j = 0; j < region.ny; ++j) {
            const SpacePoint p{region.x_at(i), region.y_at(j), region.t};
            const double v = abs_q1(sampler, p);
            if (v > best) {
                best = v;
                at = p;
            }
        }
    if (!std::isfinite(best)) throw EmptyRegionError("peak_search: every sample in the region is singular");

    double hx = (region.x_max - region.x_min) / static_cast<double>(region.nx - 1);
    double hy = (region.y_max - region.y_min) / static_cast<double>(region.ny - 1);
    for (int it = 0; it < refine_iters; ++it) {
        bool moved = false;
        for (const auto& [dx, dy] : {std::pair{hx, 0.0}, {-hx, 0.0}, {0.0, hy}, {0.0, -hy}}) {
            const SpacePoint cand{std::clamp(at.x + dx, region.x_min, region.x_max),
                                  std::clamp(at.y + dy, region.y_min, region.y_max), region.t};
            const double v = abs_q1(sampler, cand);
            if (v > best) {
                best = v;
                at = cand;
                moved = true;
            }
        }
        if (!moved) {
            hx /= 2;
            hy /= 2;
        }
    }
    return {at, best};
}

std::size_t count_local_maxima(const FieldGrid& grid, double threshold) {
    const std::size_t nx = grid.spec.nx, ny = grid.spec.ny;
    std::size_t count = 0;
    for (std::size_t j = 1; j + 1 < ny; ++j)
        for (std::size_t i = 1; i + 1 < nx; ++i) {
            if (grid.singular(i, j)) continue;
            const double v = std::abs(grid.at(i, j).q1);
            if (!(v > threshold)) continue;
            bool peak = true;
            for (int dj = -1; dj <= 1 && peak; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const std::size_t ii = i + di, jj = j + dj;
                    if (grid.singular(ii, jj)) continue;
                    if (!(v > std::abs(grid.at(ii, jj).q1))) {
                        peak = false;
                        break;
                    }
                }
            count += peak;
        }
    return count;
}

}  // namespace flwave
