#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "landscape/errors.hpp"

namespace landscape {

using cplx = std::complex<double>;

/// Dense polynomial over the complex numbers, coefficients stored by
/// ascending power. The zero polynomial has an empty coefficient list;
/// otherwise the leading coefficient is nonzero.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    ComplexPolynomial(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }
    explicit ComplexPolynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

    static ComplexPolynomial constant(cplx a) { return ComplexPolynomial({a}); }
    static ComplexPolynomial monomial(int power, cplx a = 1.0) {
        std::vector<cplx> c(static_cast<size_t>(power) + 1, 0.0);
        c.back() = a;
        return ComplexPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
    }
    cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    // Value and derivative in one Horner pass.
    std::pair<cplx, cplx> eval_with_derivative(cplx z) const {
        cplx p = 0.0, dp = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            dp = dp * z + p;
            p = p * z + *it;
        }
        return {p, dp};
    }

    ComplexPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<cplx> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
        return ComplexPolynomial(std::move(d));
    }

    // Term-by-term antiderivative with zero constant.
    ComplexPolynomial antiderivative() const {
        if (c_.empty()) return {};
        std::vector<cplx> a(c_.size() + 1, 0.0);
        for (size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / double(k + 1);
        return ComplexPolynomial(std::move(a));
    }

    ComplexPolynomial conjugated() const {
        std::vector<cplx> c(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) c[k] = std::conj(c_[k]);
        return ComplexPolynomial(std::move(c));
    }

    double max_coeff_mag() const {
        double m = 0.0;
        for (const auto& a : c_) m = std::max(m, std::abs(a));
        return m;
    }

    friend ComplexPolynomial operator+(const ComplexPolynomial& p, const ComplexPolynomial& q) {
        std::vector<cplx> c(std::max(p.c_.size(), q.c_.size()), 0.0);
        for (size_t k = 0; k < c.size(); ++k) c[k] = p.coeff(int(k)) + q.coeff(int(k));
        return ComplexPolynomial(std::move(c));
    }
    friend ComplexPolynomial operator-(const ComplexPolynomial& p, const ComplexPolynomial& q) {
        std::vector<cplx> c(std::max(p.c_.size(), q.c_.size()), 0.0);
        for (size_t k = 0; k < c.size(); ++k) c[k] = p.coeff(int(k)) - q.coeff(int(k));
        return ComplexPolynomial(std::move(c));
    }
    friend ComplexPolynomial operator*(const ComplexPolynomial& p, const ComplexPolynomial& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<cplx> c(p.c_.size() + q.c_.size() - 1, 0.0);
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
        return ComplexPolynomial(std::move(c));
    }
    friend ComplexPolynomial operator*(cplx a, const ComplexPolynomial& p) {
        std::vector<cplx> c(p.c_);
        for (auto& x : c) x *= a;
        return ComplexPolynomial(std::move(c));
    }

    // x^k * p
    ComplexPolynomial shifted_up(int k) const {
        if (is_zero()) return {};
        std::vector<cplx> c(c_.size() + size_t(k), 0.0);
        std::copy(c_.begin(), c_.end(), c.begin() + k);
        return ComplexPolynomial(std::move(c));
    }

    // Drop leading coefficients smaller than rel_eps * max|coeff|. Used after
    // compositions where exact cancellation leaves float dust at the top.
    ComplexPolynomial pruned_leading(double rel_eps) const {
        double cut = rel_eps * max_coeff_mag();
        std::vector<cplx> c(c_);
        while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
        return ComplexPolynomial(std::move(c));
    }

    friend bool operator==(const ComplexPolynomial& p, const ComplexPolynomial& q) {
        return p.c_ == q.c_;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
    }
    std::vector<cplx> c_;
};

inline ComplexPolynomial pow(const ComplexPolynomial& p, int e) {
    ComplexPolynomial r = ComplexPolynomial::constant(1.0);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

} // namespace landscape
