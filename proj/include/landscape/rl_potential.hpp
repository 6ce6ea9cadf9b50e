#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "landscape/rational.hpp"

namespace landscape {

/// Landscape potential v(z) = Re f(z) - |z|^2/2 + T with f' rational.
/// Simple-pole residues of f' must be real so that Re f is single-valued;
/// the constructor rejects anything else. v -> -inf as |z| -> inf, so
/// {v > 0} is bounded.
class RLPotential {
public:
    RLPotential(RationalFn fprime, double level_T)
        : fprime_(std::move(fprime)), level_T_(level_T) {
        if (!fprime_.has_partial_fractions())
            throw BadParameters("RLPotential: partial-fraction form required");
        for (const auto& t : fprime_.poles()) {
            cplx residue = t.coeffs[0];
            if (std::abs(residue.imag()) > 1e-12 * std::max(1.0, std::abs(residue)))
                throw BadParameters("RLPotential: simple-pole residue must be real");
        }
        // {v > 0} must stay bounded: Re of the antiderivative of the
        // polynomial part may not outgrow |z|^2/2
        const auto& pp = fprime_.poly_part();
        if (pp.degree() >= 2 ||
            (pp.degree() == 1 && std::abs(pp.coeff(1)) >= 1.0 - 1e-12))
            throw BadParameters("RLPotential: polynomial part of f' grows too fast; "
                                "{v > 0} would be unbounded");
        poly_anti_ = fprime_.poly_part().antiderivative();
        fpp_ = fprime_.derivative();
    }

    const RationalFn& fprime() const { return fprime_; }
    double level() const { return level_T_; }
    int order() const { return fprime_.degree(); }

    std::vector<cplx> nodes() const {
        std::vector<cplx> out;
        out.reserve(fprime_.poles().size());
        for (const auto& t : fprime_.poles()) out.push_back(t.node);
        return out;
    }

    /// v(z) = sum c_j log|z-a_j| + Re(higher-order and polynomial antiderivatives)
    ///        - |z|^2/2 + T.
    double eval_v(cplx z) const {
        double acc = level_T_ - 0.5 * std::norm(z);
        if (!poly_anti_.is_zero()) acc += poly_anti_(z).real();
        for (const auto& t : fprime_.poles()) {
            cplx d = z - t.node;
            double r = std::abs(d);
            if (r <= fprime_.pole_guard())
                throw PoleProximity("eval_v within pole guard of a node");
            acc += t.coeffs[0].real() * std::log(r);
            // c_m/(z-a)^m integrates to -c_m/((m-1)(z-a)^(m-1)) for m >= 2
            if (t.order() >= 2) {
                cplx inv = 1.0 / d, q = inv;
                for (int m = 2; m <= t.order(); ++m) {
                    acc += (-t.coeffs[size_t(m - 1)] / double(m - 1) * q).real();
                    q *= inv;
                }
            }
        }
        return acc;
    }

    /// Gradient of v as a complex number v_x + i v_y = conj(F(z)) - z.
    cplx eval_grad(cplx z) const { return std::conj(fprime_(z)) - z; }

    /// |F'(z)|: the fixed-point multiplier used for classification.
    double multiplier(cplx z) const { return std::abs(fpp_(z)); }
    cplx fprime_derivative(cplx z) const { return fpp_(z); }

    /// Radius r with {v > 0} provably inside |z| <= r: bound every term of v
    /// from above for |z| >= max node modulus + 1 and solve the resulting
    /// scalar fixed point from above (monotone decrease keeps it an upper
    /// bound at every iterate).
    double outer_radius() const {
        double D = 0.0, Wpos = 0.0, H = 0.0;
        for (const auto& t : fprime_.poles()) {
            D = std::max(D, std::abs(t.node));
            Wpos += std::max(0.0, t.coeffs[0].real());
            for (int m = 2; m <= t.order(); ++m)
                H += std::abs(t.coeffs[size_t(m - 1)]) / double(m - 1);
        }
        const auto& pp = fprime_.poly_part();
        double c0 = pp.degree() >= 0 ? std::abs(pp.coeff(0)) : 0.0;
        double b = pp.degree() >= 1 ? std::abs(pp.coeff(1)) : 0.0;
        double Tp = std::max(0.0, level_T_) + H;
        double r = D + 10.0 + 10.0 * (Wpos + c0 + Tp);
        for (int it = 0; it < 80; ++it) {
            double rhs = 2.0 * (Wpos * std::log(r + D + 1.0) + c0 * r + Tp) / (1.0 - b);
            r = std::sqrt(std::max(rhs, 0.0));
        }
        return std::max(r * 1.05 + 0.5, D + 1.5);
    }

    /// True when the critical set is a whole circle instead of isolated
    /// points: F(z) = conj(a) + r^2/(z - a) with r^2 > 0, the rational
    /// reflection of a circle of radius r about center a.
    bool annulus_degenerate(double tol = 1e-12) const {
        if (fprime_.poles().size() != 1) return false;
        const auto& t = fprime_.poles()[0];
        if (t.order() != 1) return false;
        if (t.coeffs[0].real() <= 0.0) return false;
        const auto& p = fprime_.poly_part();
        if (p.degree() > 0) return false;
        cplx c = p.is_zero() ? cplx(0.0) : p.coeff(0);
        return std::abs(c - std::conj(t.node)) <= tol * std::max(1.0, std::abs(t.node));
    }

private:
    RationalFn fprime_;
    double level_T_;
    ComplexPolynomial poly_anti_;
    RationalFn fpp_ = RationalFn::from_fraction(ComplexPolynomial::constant(0.0),
                                                ComplexPolynomial::constant(1.0));
};

/// n-pole configuration with a light mass at the origin and n-1 unit masses
/// on a circle of radius a: the extremal arrangement that realizes 5n-5
/// fixed points for suitable (a, eps).
inline RLPotential rhie_config(int n, double a, double eps, double T) {
    if (n < 4) throw BadParameters("rhie_config: n >= 4 required");
    if (a <= 0) throw BadParameters("rhie_config: a must be positive");
    if (eps <= 0 || eps >= a) throw BadParameters("rhie_config: need 0 < eps << a");
    if (T <= 0) throw BadParameters("rhie_config: T must be positive");
    const int m = n - 1;
    std::vector<cplx> nodes{cplx(0.0)};
    std::vector<cplx> weights{cplx(eps)};
    for (int j = 0; j < m; ++j) {
        double th = 2.0 * M_PI * j / m;
        nodes.emplace_back(a * std::cos(th), a * std::sin(th));
        weights.emplace_back(1.0);
    }
    return RLPotential(RationalFn::simple_poles(nodes, weights), T);
}

} // namespace landscape
