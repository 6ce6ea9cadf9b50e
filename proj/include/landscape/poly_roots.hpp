#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "landscape/complex_poly.hpp"
#include "landscape/errors.hpp"

namespace landscape {

struct RootOptions {
    int max_iter = 500;
    unsigned seed = 0x5eedu; // fixed default so runs are reproducible
};

namespace detail {

// Residual scale for the convergence test: max|coeff| * max(1,|z|)^deg.
inline double root_scale(double max_coeff, cplx z, int deg) {
    double m = std::max(1.0, std::abs(z));
    return max_coeff * std::pow(m, deg);
}

} // namespace detail

/// All roots (with multiplicity) of p via Ehrlich–Aberth simultaneous
/// iteration. Initial guesses sit on a Cauchy-bound circle with a small
/// seeded angular jitter, so results are deterministic for a fixed seed.
/// Each returned root satisfies |p(root)| <= tol * max|coeff| * max(1,|root|)^deg.
inline std::vector<cplx> poly_roots(const ComplexPolynomial& p, double tol = 1e-12,
                                    const RootOptions& opt = {}) {
    if (p.is_zero()) throw ZeroPolynomial("poly_roots: zero polynomial");
    if (p.degree() < 1) throw BadParameters("poly_roots: degree >= 1 required");
    if (tol <= 0) throw BadParameters("poly_roots: tol must be positive");

    // Exact roots at the origin come off first.
    std::vector<cplx> c = p.coeffs();
    std::vector<cplx> roots;
    while (c.size() > 1 && c.front() == cplx(0.0)) {
        roots.push_back(0.0);
        c.erase(c.begin());
    }
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) {
        std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return roots;
    }
    ComplexPolynomial q{std::vector<cplx>(c)};
    const double maxc = q.max_coeff_mag();

    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return roots;
    }

    // Cauchy bound radius, guesses centered at the root centroid.
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k] / c[n]));
    double radius = 1.0 + bound;
    cplx center = -c[n - 1] / (double(n) * c[n]);

    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) {
        double theta = 2.0 * M_PI * (k + 0.3 + jitter(rng)) / n + 0.7;
        z[k] = center + radius * cplx(std::cos(theta), std::sin(theta));
    }

    std::vector<bool> done(n, false);
    bool all_done = false;
    for (int iter = 0; iter < opt.max_iter && !all_done; ++iter) {
        all_done = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            auto [pv, dv] = q.eval_with_derivative(z[k]);
            if (std::abs(pv) <= tol * detail::root_scale(maxc, z[k], n)) {
                done[k] = true;
                continue;
            }
            all_done = false;
            if (dv == cplx(0.0)) { // stationary start; nudge off
                z[k] += radius * 1e-4 * cplx(jitter(rng), jitter(rng));
                continue;
            }
            cplx newton = pv / dv;
            cplx repel = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                cplx d = z[k] - z[j];
                if (std::abs(d) < 1e-300)
                    d = radius * 1e-12 * cplx(1.0, 1.0);
                repel += 1.0 / d;
            }
            cplx denom = 1.0 - newton * repel;
            cplx step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            z[k] -= step;
        }
    }
    if (!all_done) {
        // Final check: accept if every iterate meets the residual test anyway.
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            if (std::abs(q(z[k])) > tol * detail::root_scale(maxc, z[k], n))
                throw NonConvergence("poly_roots: Aberth iteration cap reached");
        }
    }

    roots.insert(roots.end(), z.begin(), z.end());
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

} // namespace landscape
