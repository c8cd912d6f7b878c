#pragma once

// Compensated (double-double) scalars used by the optional extended-precision
// determinant path. Error-free transformations follow Dekker / Knuth; the
// product relies on a hardware fma.

#include <cmath>
#include <complex>

namespace flwave {

class DDouble {
public:
    constexpr DDouble(double x = 0.0) : hi_(x), lo_(0.0) {}
    constexpr DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    explicit constexpr operator double() const { return hi_ + lo_; }
    friend constexpr bool operator==(DDouble a, DDouble b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }

    friend DDouble operator-(DDouble a) { return {-a.hi_, -a.lo_}; }

    friend DDouble operator+(DDouble a, DDouble b) {
        double s, e;
        two_sum(a.hi_, b.hi_, s, e);
        double t, f;
        two_sum(a.lo_, b.lo_, t, f);
        e += t;
        quick_two_sum(s, e, s, e);
        e += f;
        quick_two_sum(s, e, s, e);
        return {s, e};
    }
    friend DDouble operator-(DDouble a, DDouble b) { return a + (-b); }

    friend DDouble operator*(DDouble a, DDouble b) {
        double p = a.hi_ * b.hi_;
        double e = std::fma(a.hi_, b.hi_, -p);
        e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        quick_two_sum(p, e, p, e);
        return {p, e};
    }

    friend DDouble operator/(DDouble a, DDouble b) {
        // Two Newton-style correction steps on the leading quotient.
        double q1 = a.hi_ / b.hi_;
        DDouble r = a - b * DDouble(q1);
        double q2 = r.hi_ / b.hi_;
        r = r - b * DDouble(q2);
        double q3 = r.hi_ / b.hi_;
        double s, e;
        quick_two_sum(q1, q2, s, e);
        return DDouble(s, e) + DDouble(q3);
    }

    DDouble& operator+=(DDouble o) { return *this = *this + o; }
    DDouble& operator-=(DDouble o) { return *this = *this - o; }
    DDouble& operator*=(DDouble o) { return *this = *this * o; }
    DDouble& operator/=(DDouble o) { return *this = *this / o; }

private:
    static void two_sum(double a, double b, double& s, double& e) {
        s = a + b;
        double bb = s - a;
        e = (a - (s - bb)) + (b - bb);
    }
    static void quick_two_sum(double a, double b, double& s, double& e) {
        s = a + b;
        e = b - (s - a);
    }

    double hi_;
    double lo_;
};

/// Complex number over DDouble; only what LU elimination needs.
struct DDComplex {
    DDouble re;
    DDouble im;

    DDComplex() = default;
    DDComplex(DDouble r, DDouble i) : re(r), im(i) {}
    DDComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
    double magnitude() const { return std::abs(to_complex()); }

    friend DDComplex operator+(const DDComplex& a, const DDComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend DDComplex operator-(const DDComplex& a, const DDComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend DDComplex operator-(const DDComplex& a) { return {-a.re, -a.im}; }
    friend DDComplex operator*(const DDComplex& a, const DDComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend DDComplex operator/(const DDComplex& a, const DDComplex& b) {
        DDouble den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
};

}  // namespace flwave
