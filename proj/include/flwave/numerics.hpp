#pragma once

// Scalar policy, truncated power series ("jets") and complex determinants.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flwave/errors.hpp"

namespace flwave {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Truncated power series c0 + c1 e + ... + cK e^K in a formal variable e.
///
/// Arithmetic is exact modulo e^(K+1). Binary operations require both
/// operands to carry the same truncation order K; mixing orders throws
/// ContractError rather than silently truncating.
class Jet {
public:
    /// Zero series of the given truncation order.
    explicit Jet(std::size_t order = 0);
    /// Takes ownership of the coefficients; order = coeffs.size() - 1.
    explicit Jet(std::vector<Complex> coeffs);

    static Jet constant(Complex value, std::size_t order);
    /// center + e^power, the perturbed spectral parameter.
    static Jet variable(Complex center, std::size_t order, std::size_t power = 1);

    std::size_t order() const { return coeffs_.size() - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex operator[](std::size_t k) const { return coeffs_[k]; }
    Complex& operator[](std::size_t k) { return coeffs_[k]; }

    double max_abs() const;
    Jet truncated(std::size_t order) const;
    Jet conj() const;

    /// Index of the first coefficient above rel_tol * max_abs(), or nullopt
    /// for the zero series.
    std::optional<std::size_t> valuation(double rel_tol) const;

    /// Divides by e^k. The k lowest coefficients must be negligible
    /// (|c| <= rel_tol * max_abs()); the top k coefficients of the result
    /// are filled with zeros and carry no information.
    Jet shifted_down(std::size_t k, double rel_tol = 1e-10) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(Complex s);
    Jet& operator+=(Complex s);

private:
    std::vector<Complex> coeffs_;
};

Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_div(const Jet& a, const Jet& b);
Jet jet_exp(const Jet& a);
Jet jet_sqrt_even(const Jet& a);
/// a^n for any integer n (negative powers go through jet_div).
Jet jet_pow(const Jet& a, int n);

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(const Jet& a);
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator/(const Jet& a, const Jet& b) { return jet_div(a, b); }
Jet operator+(Jet a, Complex s);
Jet operator+(Complex s, Jet a);
Jet operator-(Jet a, Complex s);
Jet operator-(Complex s, const Jet& a);
Jet operator*(Jet a, Complex s);
Jet operator*(Complex s, Jet a);
Jet operator/(Jet a, Complex s);
Jet operator/(Complex s, const Jet& a);

/// Dense complex square matrix, row-major.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t dim);

    static SquareMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const Complex> row(std::size_t r) const {
        return {data_.data() + r * dim_, dim_};
    }
    std::span<const Complex> data() const { return data_; }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

enum class Precision { Standard, DoubleDouble };

/// Determinant kept as mantissa * 2^exponent so that products of widely
/// scaled entries neither overflow nor underflow before a ratio is taken.
struct ScaledDeterminant {
    Complex mantissa{0.0, 0.0};
    long exponent = 0;
    /// Smallest |pivot| of the equilibrated factorization (every row and
    /// column of the equilibrated matrix has max entry in [0.5, 1)).
    double min_pivot = 0.0;

    bool is_zero() const { return mantissa == Complex{0.0, 0.0}; }
    Complex value() const;
    /// log2 |det|; -infinity for an exactly singular matrix.
    double log2_abs() const;
};

/// LU with partial pivoting after power-of-two row/column equilibration.
/// Pivot ties resolve to the lowest row index.
ScaledDeterminant scaled_det(const SquareMatrix& m, Precision precision = Precision::Standard);

inline Complex det(const SquareMatrix& m, Precision precision = Precision::Standard) {
    return scaled_det(m, precision).value();
}

/// a / b for two scaled determinants, without forming either one.
Complex det_ratio(const ScaledDeterminant& a, const ScaledDeterminant& b);

}  // namespace flwave
