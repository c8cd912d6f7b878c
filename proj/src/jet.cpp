#include <algorithm>
#include <cmath>
#include <sstream>

#include "flwave/numerics.hpp"

namespace flwave {

namespace {

void require_same_order(const Jet& a, const Jet& b, const char* op) {
    if (a.order() != b.order()) {
        std::ostringstream msg;
        msg << op << ": truncation order mismatch (" << a.order() << " vs " << b.order() << ")";
        throw ContractError(msg.str());
    }
}

// Below the leading even index, coefficients smaller than this fraction of
// the largest one are rounding noise.
constexpr double kSqrtZeroThreshold = 1e-12;

// exp overflows for real parts above log(DBL_MAX).
constexpr double kMaxExpArgument = 709.78;

}  // namespace

Jet::Jet(std::size_t order) : coeffs_(order + 1, Complex{}) {}

Jet::Jet(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw ContractError("Jet: needs at least one coefficient");
}

Jet Jet::constant(Complex value, std::size_t order) {
    Jet j(order);
    j.coeffs_[0] = value;
    return j;
}

Jet Jet::variable(Complex center, std::size_t order, std::size_t power) {
    Jet j = constant(center, order);
    if (power >= 1 && power <= order) j.coeffs_[power] = 1.0;
    return j;
}

double Jet::max_abs() const {
    double m = 0.0;
    for (auto c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Jet Jet::truncated(std::size_t order) const {
    if (order > this->order()) throw TruncationError("Jet::truncated: requested order exceeds available order");
    return Jet(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Jet Jet::conj() const {
    Jet r(*this);
    for (auto& c : r.coeffs_) c = std::conj(c);
    return r;
}

std::optional<std::size_t> Jet::valuation(double rel_tol) const {
    const double cutoff = rel_tol * max_abs();
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (std::abs(coeffs_[k]) > cutoff) return k;
    }
    return std::nullopt;
}

Jet Jet::shifted_down(std::size_t k, double rel_tol) const {
    if (k == 0) return *this;
    const double cutoff = rel_tol * std::max(1.0, max_abs());
    for (std::size_t i = 0; i < std::min(k, coeffs_.size()); ++i) {
        if (std::abs(coeffs_[i]) > cutoff) {
            throw DivisionByNonunitError("Jet::shifted_down: series does not vanish to the requested order");
        }
    }
    Jet r(order());
    for (std::size_t i = k; i < coeffs_.size(); ++i) r.coeffs_[i - k] = coeffs_[i];
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    require_same_order(*this, o, "jet_add");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    require_same_order(*this, o, "jet_sub");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

Jet& Jet::operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Jet& Jet::operator+=(Complex s) {
    coeffs_[0] += s;
    return *this;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    require_same_order(a, b, "jet_mul");
    const std::size_t n = a.order() + 1;
    Jet r(a.order());
    for (std::size_t k = 0; k < n; ++k) {
        Complex s{};
        for (std::size_t i = 0; i <= k; ++i) s += a[i] * b[k - i];
        r[k] = s;
    }
    return r;
}

Jet jet_div(const Jet& a, const Jet& b) {
    require_same_order(a, b, "jet_div");
    if (b[0] == Complex{}) {
        throw DivisionByNonunitError("jet_div: divisor has zero constant term; factor out the leading power first");
    }
    const std::size_t n = a.order() + 1;
    Jet q(a.order());
    for (std::size_t k = 0; k < n; ++k) {
        Complex s = a[k];
        for (std::size_t i = 0; i < k; ++i) s -= q[i] * b[k - i];
        q[k] = s / b[0];
    }
    return q;
}

Jet jet_exp(const Jet& a) {
    const double re = a[0].real();
    if (!(re < kMaxExpArgument)) {
        throw RangeError("jet_exp: exponential overflows", re);
    }
    const std::size_t n = a.order() + 1;
    Jet e(a.order());
    e[0] = std::exp(a[0]);
    // e' = e a'  =>  n e_n = sum_k k a_k e_{n-k}
    for (std::size_t m = 1; m < n; ++m) {
        Complex s{};
        for (std::size_t k = 1; k <= m; ++k) s += static_cast<double>(k) * a[k] * e[m - k];
        e[m] = s / static_cast<double>(m);
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!is_finite(e[k])) throw RangeError("jet_exp: non-finite coefficient", re);
    }
    return e;
}

Jet jet_sqrt_even(const Jet& a) {
    const double scale = a.max_abs();
    if (scale == 0.0) throw DegenerateInputError("jet_sqrt_even: all-zero series");
    const auto lead = a.valuation(kSqrtZeroThreshold);
    const std::size_t v = *lead;
    if (v % 2 != 0) {
        std::ostringstream msg;
        msg << "jet_sqrt_even: leading coefficient at odd index " << v;
        throw NonEvenOrderError(msg.str());
    }
    const std::size_t m = v / 2;
    const std::size_t n = a.order() + 1;

    // a = e^{2m} b with b[0] != 0; sqrt(a) = e^m sqrt(b).
    std::vector<Complex> b(n, Complex{});
    for (std::size_t i = v; i < n; ++i) b[i - v] = a[i];
    std::vector<Complex> r(n, Complex{});
    r[0] = std::sqrt(b[0]);
    for (std::size_t k = 1; k < n; ++k) {
        Complex s = b[k];
        for (std::size_t i = 1; i < k; ++i) s -= r[i] * r[k - i];
        r[k] = s / (2.0 * r[0]);
    }
    Jet out(a.order());
    for (std::size_t k = m; k < n; ++k) out[k] = r[k - m];
    return out;
}

Jet jet_pow(const Jet& a, int n) {
    Jet result = Jet::constant(1.0, a.order());
    Jet base = a;
    unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
    while (e) {
        if (e & 1u) result = jet_mul(result, base);
        e >>= 1u;
        if (e) base = jet_mul(base, base);
    }
    if (n < 0) return jet_div(Jet::constant(1.0, a.order()), result);
    return result;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(const Jet& a) { return a * Complex{-1.0, 0.0}; }
Jet operator+(Jet a, Complex s) { return a += s; }
Jet operator+(Complex s, Jet a) { return a += s; }
Jet operator-(Jet a, Complex s) { return a += -s; }
Jet operator-(Complex s, const Jet& a) { return -a + s; }
Jet operator*(Jet a, Complex s) { return a *= s; }
Jet operator*(Complex s, Jet a) { return a *= s; }
Jet operator/(Jet a, Complex s) { return a *= (1.0 / s); }
Jet operator/(Complex s, const Jet& a) { return jet_div(Jet::constant(s, a.order()), a); }

}  // namespace flwave
