#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "landscape/complex_poly.hpp"
#include "landscape/errors.hpp"

namespace landscape {

/// One pole of a partial-fraction expansion: coeffs[m-1] is the coefficient
/// of (z - node)^-(m), m = 1..order.
struct PoleTerm {
    cplx node;
    std::vector<cplx> coeffs;
    int order() const { return static_cast<int>(coeffs.size()); }
};

/// Rational function of one complex variable. Canonically built from a
/// polynomial part plus partial fractions; a cleared-denominator num/den
/// pair is derived on construction and is the only representation carried
/// by composed functions. degree() = max(deg num, deg den).
class RationalFn {
public:
    RationalFn(ComplexPolynomial poly_part, std::vector<PoleTerm> poles)
        : poly_(std::move(poly_part)), poles_(std::move(poles)), has_pf_(true) {
        for (auto& t : poles_)
            while (!t.coeffs.empty() && t.coeffs.back() == cplx(0.0)) t.coeffs.pop_back();
        std::erase_if(poles_, [](const PoleTerm& t) { return t.coeffs.empty(); });
        for (size_t i = 0; i < poles_.size(); ++i)
            for (size_t j = i + 1; j < poles_.size(); ++j)
                if (poles_[i].node == poles_[j].node)
                    throw BadParameters("RationalFn: pole nodes must be pairwise distinct");
        clear_denominators();
    }

    static RationalFn from_fraction(ComplexPolynomial num, ComplexPolynomial den) {
        if (den.is_zero()) throw BadParameters("RationalFn: zero denominator");
        RationalFn f;
        f.num_ = std::move(num);
        f.den_ = std::move(den);
        f.has_pf_ = false;
        return f;
    }

    static RationalFn simple_poles(const std::vector<cplx>& nodes,
                                   const std::vector<cplx>& weights) {
        if (nodes.size() != weights.size())
            throw BadParameters("simple_poles: nodes/weights size mismatch");
        std::vector<PoleTerm> terms;
        terms.reserve(nodes.size());
        for (size_t j = 0; j < nodes.size(); ++j)
            terms.push_back({nodes[j], {weights[j]}});
        return RationalFn({}, std::move(terms));
    }

    bool has_partial_fractions() const { return has_pf_; }
    const ComplexPolynomial& poly_part() const { return poly_; }
    const std::vector<PoleTerm>& poles() const { return poles_; }
    const ComplexPolynomial& numerator() const { return num_; }
    const ComplexPolynomial& denominator() const { return den_; }

    int degree() const { return std::max(num_.degree(), den_.degree()); }

    double pole_guard() const { return pole_guard_; }
    void set_pole_guard(double g) { pole_guard_ = g; }

    /// Term-by-term evaluation (partial-fraction form) or num/den ratio.
    cplx operator()(cplx z) const {
        if (has_pf_) {
            cplx acc = poly_.is_zero() ? cplx(0.0) : poly_(z);
            for (const auto& t : poles_) {
                cplx d = z - t.node;
                if (std::abs(d) <= pole_guard_)
                    throw PoleProximity("rational eval within pole guard");
                cplx inv = 1.0 / d, q = inv;
                for (const auto& cm : t.coeffs) {
                    acc += cm * q;
                    q *= inv;
                }
            }
            return acc;
        }
        cplx dv = den_(z);
        if (std::abs(dv) <= pole_guard_ * std::max(1.0, den_.max_coeff_mag()))
            throw PoleProximity("rational eval near denominator zero");
        return num_(z) / dv;
    }

    RationalFn derivative() const {
        if (has_pf_) {
            std::vector<PoleTerm> dp;
            dp.reserve(poles_.size());
            for (const auto& t : poles_) {
                PoleTerm nt{t.node, std::vector<cplx>(t.coeffs.size() + 1, 0.0)};
                for (size_t m = 1; m <= t.coeffs.size(); ++m)
                    nt.coeffs[m] = -double(m) * t.coeffs[m - 1];
                dp.push_back(std::move(nt));
            }
            return RationalFn(poly_.derivative(), std::move(dp));
        }
        // (n'd - nd') / d^2
        return from_fraction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// Conjugate every coefficient and pole node: realizes z -> conj(f(conj z)).
    RationalFn conj_coeffs() const {
        if (has_pf_) {
            std::vector<PoleTerm> cp;
            cp.reserve(poles_.size());
            for (const auto& t : poles_) {
                PoleTerm nt{std::conj(t.node), t.coeffs};
                for (auto& c : nt.coeffs) c = std::conj(c);
                cp.push_back(std::move(nt));
            }
            RationalFn r(poly_.conjugated(), std::move(cp));
            r.pole_guard_ = pole_guard_;
            return r;
        }
        RationalFn r = from_fraction(num_.conjugated(), den_.conjugated());
        r.pole_guard_ = pole_guard_;
        return r;
    }

private:
    RationalFn() = default;

    void clear_denominators() {
        ComplexPolynomial den = ComplexPolynomial::constant(1.0);
        for (const auto& t : poles_)
            den = den * pow(ComplexPolynomial{-t.node, 1.0}, t.order());
        ComplexPolynomial num = poly_ * den;
        for (size_t j = 0; j < poles_.size(); ++j) {
            ComplexPolynomial rest = ComplexPolynomial::constant(1.0);
            for (size_t i = 0; i < poles_.size(); ++i)
                if (i != j) rest = rest * pow(ComplexPolynomial{-poles_[i].node, 1.0}, poles_[i].order());
            // c_m / (z-a)^m contributes c_m * (z-a)^(M-m) * rest
            const auto& t = poles_[j];
            const int M = t.order();
            for (int m = 1; m <= M; ++m)
                num = num + t.coeffs[size_t(m - 1)] *
                                (pow(ComplexPolynomial{-t.node, 1.0}, M - m) * rest);
        }
        num_ = std::move(num);
        den_ = std::move(den);
    }

    ComplexPolynomial poly_;
    std::vector<PoleTerm> poles_;
    ComplexPolynomial num_, den_;
    bool has_pf_ = false;
    double pole_guard_ = 1e-12;
};

inline int default_compose_degree_cap() { return 400; }

/// outer(inner) in cleared-denominator form. Degree multiplies, so inputs
/// are capped to keep accidental large requests from exploding.
inline RationalFn rat_compose(const RationalFn& outer, const RationalFn& inner,
                              int degree_cap = default_compose_degree_cap()) {
    if (outer.degree() < 1 || inner.degree() < 1)
        throw BadParameters("rat_compose: both operands need degree >= 1");
    if (outer.degree() * inner.degree() > degree_cap)
        throw DegreeOverflow("rat_compose: composed degree " +
                             std::to_string(outer.degree() * inner.degree()) +
                             " exceeds cap " + std::to_string(degree_cap));

    const auto& pn = outer.numerator();
    const auto& pd = outer.denominator();
    const auto& qn = inner.numerator();
    const auto& qd = inner.denominator();
    const int D = std::max(pn.degree(), pd.degree());

    std::vector<ComplexPolynomial> qn_pow(D + 1), qd_pow(D + 1);
    qn_pow[0] = qd_pow[0] = ComplexPolynomial::constant(1.0);
    for (int i = 1; i <= D; ++i) {
        qn_pow[i] = qn_pow[i - 1] * qn;
        qd_pow[i] = qd_pow[i - 1] * qd;
    }
    ComplexPolynomial A, B;
    for (int i = 0; i <= D; ++i) {
        ComplexPolynomial term = qn_pow[i] * qd_pow[D - i];
        if (pn.coeff(i) != cplx(0.0)) A = A + pn.coeff(i) * term;
        if (pd.coeff(i) != cplx(0.0)) B = B + pd.coeff(i) * term;
    }
    return RationalFn::from_fraction(std::move(A), std::move(B));
}

} // namespace landscape
