#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "landscape/critical_points.hpp"
#include "landscape/poly_roots.hpp"

namespace landscape {

/// Polynomial conformal map phi: D -> Omega with phi(0) = 0 and phi'
/// nonvanishing on the closed unit disk (checked at construction via the
/// roots of phi'). Global univalence is not verified; boundary
/// self-intersection candidates can be listed for a warning.
class PolynomialMap {
public:
    /// coeffs[k] multiplies w^(k+1); the constant term is identically zero.
    explicit PolynomialMap(const std::vector<cplx>& coeffs_from_w) {
        std::vector<cplx> c(coeffs_from_w.size() + 1, 0.0);
        std::copy(coeffs_from_w.begin(), coeffs_from_w.end(), c.begin() + 1);
        phi_ = ComplexPolynomial(std::move(c));
        if (phi_.degree() < 1) throw BadParameters("PolynomialMap: degree >= 1 required");
        dphi_ = phi_.derivative();
        if (dphi_.degree() >= 1) {
            for (cplx r : poly_roots(dphi_, 1e-12))
                if (std::abs(r) <= 1.0 + 1e-12)
                    throw BadParameters(
                        "PolynomialMap: phi' vanishes in the closed unit disk (not locally univalent)");
        } else if (dphi_.is_zero() || dphi_.coeff(0) == cplx(0.0)) {
            throw BadParameters("PolynomialMap: phi' is zero");
        }
    }

    int map_degree() const { return phi_.degree(); }
    const ComplexPolynomial& phi() const { return phi_; }
    const ComplexPolynomial& dphi() const { return dphi_; }
    cplx operator()(cplx w) const { return phi_(w); }

    /// Pairs of angles where the sampled boundary curve comes suspiciously
    /// close to itself away from parameter-adjacency; empty for embeddings.
    std::vector<std::pair<double, double>> boundary_self_intersections(int samples = 1024) const {
        std::vector<cplx> pts(static_cast<size_t>(samples));
        for (int k = 0; k < samples; ++k) {
            double th = 2.0 * M_PI * k / samples;
            pts[size_t(k)] = phi_(cplx(std::cos(th), std::sin(th)));
        }
        return closed_curve_self_approaches(pts);
    }

    /// Parameter pairs (radians) where a sampled closed curve approaches
    /// itself closer than half the adjacent-sample spacing.
    static std::vector<std::pair<double, double>> closed_curve_self_approaches(
        const std::vector<cplx>& pts) {
        const int samples = int(pts.size());
        double minsep = 1e300;
        for (int k = 0; k < samples; ++k)
            minsep = std::min(minsep, std::abs(pts[size_t((k + 1) % samples)] - pts[size_t(k)]));
        std::vector<std::pair<double, double>> out;
        for (int a = 0; a < samples; ++a)
            for (int b = a + 8; b < samples; ++b) {
                if (a == 0 && b >= samples - 8) continue;
                if (std::abs(pts[size_t(a)] - pts[size_t(b)]) < 0.5 * minsep) {
                    out.emplace_back(2.0 * M_PI * a / samples, 2.0 * M_PI * b / samples);
                    if (out.size() >= 8) return out;
                }
            }
        return out;
    }

private:
    ComplexPolynomial phi_, dphi_;
};

/// Analytic half of the pulled-back boundary data: the polynomial P of
/// degree n-1 with P + conj(P) solving the disk Dirichlet problem with data
/// |phi|^2/2 on the circle. Coefficients come straight from the Fourier
/// expansion of |phi(e^{i t})|^2:
///   P_0 = (1/4) sum_j |c_j|^2,   P_m = (1/2) sum_j c_j conj(c_{j-m}).
inline ComplexPolynomial dirichlet_polynomial(const PolynomialMap& map) {
    const auto& c = map.phi().coeffs(); // c[0] = 0
    const int n = map.map_degree();
    std::vector<cplx> P(size_t(n), 0.0);
    double a0 = 0.0;
    for (int j = 1; j <= n; ++j) a0 += std::norm(c[size_t(j)]);
    P[0] = 0.25 * a0;
    for (int m = 1; m <= n - 1; ++m) {
        cplx s = 0.0;
        for (int j = m + 1; j <= n; ++j) s += c[size_t(j)] * std::conj(c[size_t(j - m)]);
        P[size_t(m)] = 0.5 * s;
    }
    return ComplexPolynomial(std::move(P));
}

struct QuadratureResult {
    std::vector<CriticalPoint> points; // locations mapped to z = phi(w)
    std::vector<cplx> disk_points;     // the same points in w coordinates
    int dropped_degenerate_seeds = 0;
    int cap = 0; // (2n-1)^2
};

namespace detail {

// v on the disk side: vhat(w) = 2 Re P(w) - |phi(w)|^2 / 2. Its critical
// points pull back the critical points of v under the conformal map.
inline double vhat(const ComplexPolynomial& P, const PolynomialMap& map, cplx w) {
    return 2.0 * P(w).real() - 0.5 * std::norm(map(w));
}

} // namespace detail

/// Solves conj(P'(w)) = phi(w) conj(phi'(w)) over the open unit disk by
/// grid-seeded damped Newton (256 x 256 seeds restricted to the disk),
/// classifies each solution by the sign of the Hessian determinant of vhat
/// (preserved under the conformal change of variables), and enforces the
/// (2n-1)^2 cap on the deduplicated count.
inline QuadratureResult solve_critical_system(const PolynomialMap& map, double tol = 1e-12,
                                              int seed_n = 256) {
    const ComplexPolynomial P = dirichlet_polynomial(map);
    const ComplexPolynomial dP = P.derivative();
    const ComplexPolynomial ddP = dP.derivative();
    const ComplexPolynomial& phi = map.phi();
    const ComplexPolynomial dphi = phi.derivative();
    const ComplexPolynomial ddphi = dphi.derivative();
    const int n = map.map_degree();

    auto Psi = [&](cplx w) { return std::conj(dP(w)) - phi(w) * std::conj(dphi(w)); };
    // d/dw and d/dconj(w) of Psi
    auto Psi_w = [&](cplx w) { return -dphi(w) * std::conj(dphi(w)); };
    auto Psi_wbar = [&](cplx w) { return std::conj(ddP(w)) - phi(w) * std::conj(ddphi(w)); };

    QuadratureResult out;
    out.cap = (2 * n - 1) * (2 * n - 1);

    std::vector<cplx> found;
    for (int j = 0; j < seed_n; ++j)
        for (int i = 0; i < seed_n; ++i) {
            cplx w(-1.0 + 2.0 * i / (seed_n - 1), -1.0 + 2.0 * j / (seed_n - 1));
            if (std::abs(w) >= 0.995) continue;
            bool converged = false;
            for (int it = 0; it < 80; ++it) {
                cplx H = Psi(w);
                if (std::abs(H) <= tol) {
                    converged = true;
                    break;
                }
                auto step = detail::harmonic_newton_step(H, Psi_w(w), Psi_wbar(w));
                if (!step) {
                    out.dropped_degenerate_seeds++;
                    break;
                }
                cplx dw = *step;
                if (std::abs(dw) > 0.25) dw *= 0.25 / std::abs(dw);
                cplx wn = w + dw;
                for (int hlv = 0; hlv < 12 && std::abs(Psi(wn)) >= std::abs(H); ++hlv) {
                    dw *= 0.5;
                    wn = w + dw;
                }
                w = wn;
                if (std::abs(w) > 2.0) break; // ran away from the disk
            }
            if (converged && std::abs(w) < 1.0) found.push_back(w);
        }

    std::sort(found.begin(), found.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<cplx> dedup;
    for (cplx w : found) {
        bool dup = false;
        for (cplx u : dedup)
            if (std::abs(w - u) <= 1e-8) { dup = true; break; }
        if (!dup) dedup.push_back(w);
    }
    if (int(dedup.size()) > out.cap)
        throw CapViolation("solve_critical_system: more solutions than (2n-1)^2; solver bug");

    const double hfd = 1e-4;
    for (cplx w : dedup) {
        auto vh = [&](cplx u) { return detail::vhat(P, map, u); };
        double vxx = (vh(w + hfd) - 2 * vh(w) + vh(w - hfd)) / (hfd * hfd);
        double vyy = (vh(w + cplx(0, hfd)) - 2 * vh(w) + vh(w - cplx(0, hfd))) / (hfd * hfd);
        double vxy = (vh(w + cplx(hfd, hfd)) - vh(w + cplx(hfd, -hfd)) - vh(w + cplx(-hfd, hfd)) +
                      vh(w + cplx(-hfd, -hfd))) /
                     (4 * hfd * hfd);
        double det = vxx * vyy - vxy * vxy;
        double scale = std::max({std::abs(vxx), std::abs(vyy), std::abs(vxy), 1e-300});
        PointClass cls = PointClass::Degenerate;
        if (std::abs(det) > 1e-6 * scale * scale)
            cls = det > 0.0 ? PointClass::Maximum : PointClass::Saddle;
        double denom = std::norm(dphi(w));
        double mult = std::abs(Psi_wbar(w)) / (denom > 0 ? denom : 1.0);
        out.points.push_back({map(w), cls, mult, std::abs(Psi(w)), vh(w)});
        out.disk_points.push_back(w);
    }
    return out;
}

} // namespace landscape
