#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "flwave/double_double.hpp"
#include "flwave/numerics.hpp"

namespace flwave {

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{}) {
    if (dim == 0) throw ContractError("SquareMatrix: dimension must be at least 1");
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim() != b.dim()) throw ContractError("SquareMatrix product: dimension mismatch");
    const std::size_t n = a.dim();
    SquareMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

namespace {

double mag(const Complex& z) { return std::abs(z); }
double mag(const DDComplex& z) { return z.magnitude(); }
// a / b rounded from a double-double quotient, so exact ratios such as
// +-1 and +-i (duplicated or negated rows) come out exact.
Complex multiplier(const Complex& a, const Complex& b) {
    // power-of-two scaling keeps |b|^2 in range and is exact
    const int e = std::ilogb(std::max(std::abs(b.real()), std::abs(b.imag())));
    const Complex as{std::scalbn(a.real(), -e), std::scalbn(a.imag(), -e)};
    const Complex bs{std::scalbn(b.real(), -e), std::scalbn(b.imag(), -e)};
    return (DDComplex(as) / DDComplex(bs)).to_complex();
}
DDComplex multiplier(const DDComplex& a, const DDComplex& b) { return a / b; }
Complex to_complex(const Complex& z) { return z; }
Complex to_complex(const DDComplex& z) { return z.to_complex(); }

// Keeps |mantissa| in [0.5, 1) by moving powers of two into the exponent.
void renormalize(Complex& mantissa, long& exponent) {
    const double m = std::max(std::abs(mantissa.real()), std::abs(mantissa.imag()));
    if (m == 0.0) return;
    int e = 0;
    std::frexp(m, &e);
    mantissa = {std::ldexp(mantissa.real(), -e), std::ldexp(mantissa.imag(), -e)};
    exponent += e;
}

// Power-of-two exponent e with max_entry * 2^-e in [0.5, 1).
int scale_exponent(double max_entry) {
    int e = 0;
    std::frexp(max_entry, &e);
    return e;
}

template <class Scalar>
ScaledDeterminant factorize(const SquareMatrix& m) {
    const std::size_t n = m.dim();
    ScaledDeterminant out;

    std::vector<Complex> a(m.data().begin(), m.data().end());
    long exponent = 0;

    for (std::size_t i = 0; i < n; ++i) {
        double mx = 0.0;
        for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, std::abs(a[i * n + j]));
        if (mx == 0.0) return out;
        const int e = scale_exponent(mx);
        for (std::size_t j = 0; j < n; ++j) {
            auto& z = a[i * n + j];
            z = {std::ldexp(z.real(), -e), std::ldexp(z.imag(), -e)};
        }
        exponent += e;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double mx = 0.0;
        for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(a[i * n + j]));
        if (mx == 0.0) return out;
        const int e = scale_exponent(mx);
        for (std::size_t i = 0; i < n; ++i) {
            auto& z = a[i * n + j];
            z = {std::ldexp(z.real(), -e), std::ldexp(z.imag(), -e)};
        }
        exponent += e;
    }

    std::vector<Scalar> lu(a.begin(), a.end());
    Complex mantissa{1.0, 0.0};
    double min_pivot = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = mag(lu[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = mag(lu[i * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) {
            out.min_pivot = 0.0;
            return out;
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[p * n + j]);
            mantissa = -mantissa;
        }
        const Scalar pivot = lu[k * n + k];
        min_pivot = std::min(min_pivot, best);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Scalar factor = multiplier(lu[i * n + k], pivot);
            for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] = lu[i * n + j] - factor * lu[k * n + j];
        }
        mantissa *= to_complex(pivot);
        renormalize(mantissa, exponent);
    }

    out.mantissa = mantissa;
    out.exponent = exponent;
    out.min_pivot = min_pivot;
    return out;
}

}  // namespace

Complex ScaledDeterminant::value() const {
    if (is_zero()) return {};
    const auto e = static_cast<int>(std::clamp<long>(exponent, -100000, 100000));
    return {std::ldexp(mantissa.real(), e), std::ldexp(mantissa.imag(), e)};
}

double ScaledDeterminant::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(mantissa)) + static_cast<double>(exponent);
}

ScaledDeterminant scaled_det(const SquareMatrix& m, Precision precision) {
    if (precision == Precision::DoubleDouble) return factorize<DDComplex>(m);
    return factorize<Complex>(m);
}

Complex det_ratio(const ScaledDeterminant& a, const ScaledDeterminant& b) {
    if (b.is_zero()) throw NumericError("det_ratio: zero denominator");
    if (a.is_zero()) return {};
    const Complex q = a.mantissa / b.mantissa;
    const auto e = static_cast<int>(std::clamp<long>(a.exponent - b.exponent, -100000, 100000));
    return {std::ldexp(q.real(), e), std::ldexp(q.imag(), e)};
}

}  // namespace flwave
