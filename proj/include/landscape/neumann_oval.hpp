#pragma once

#include <cmath>
#include <vector>

#include "landscape/critical_points.hpp"
#include "landscape/grid.hpp"

namespace landscape {

/// The quartic oval {(x²+y²)² = a²(x²+y²) + 4x²}: image of the unit disk
/// under w -> (R⁴-1) w / (R (R² - w²)) with R = (a + sqrt(a²+4))/2 > 1.
/// Its landscape function has the closed form
///   v(z) = Re sqrt((R⁴-1)² + 4R⁴ z²) / (2R²) - |z|²/2,
/// which is exact at z = 0 (the apparent pole of the conformal factor
/// cancels) and continuous everywhere since Re sqrt is cut-free.
class NeumannOval {
public:
    static NeumannOval from_R(double R) {
        if (!(R > 1.0)) throw BadParameters("NeumannOval: R > 1 required");
        NeumannOval o;
        o.R_ = R;
        o.a_ = R - 1.0 / R;
        return o;
    }
    static NeumannOval from_a(double a) {
        if (!(a > 0.0)) throw BadParameters("NeumannOval: a > 0 required");
        return from_R(0.5 * (a + std::sqrt(a * a + 4.0)));
    }

    double R() const { return R_; }
    double a() const { return a_; }

    /// Threshold radius sqrt(1 + sqrt 2): three real critical points below,
    /// one above, a triple root at the origin exactly there.
    static double R0() { return std::sqrt(1.0 + std::sqrt(2.0)); }

    double v(cplx z) const {
        cplx rad = radicand(z);
        return std::sqrt(0.5 * (std::abs(rad) + rad.real())) / (2.0 * R_ * R_) -
               0.5 * std::norm(z);
    }

    /// grad v = conj(2R² z / sqrt((R⁴-1)² + 4R⁴ z²)) - z. The square root
    /// here is branch-sensitive; the principal branch is valid on the oval,
    /// and a radicand pinned to the negative real axis is reported rather
    /// than silently mis-branched.
    cplx grad(cplx z) const { return std::conj(F(z)) - z; }

    cplx F(cplx z) const {
        double R2 = R_ * R_;
        return 2.0 * R2 * z / sqrt_checked(radicand(z));
    }

    /// |F'(z)| = 2R² (R⁴-1)² / |radicand|^{3/2}.
    double multiplier(cplx z) const {
        double R2 = R_ * R_, R4 = R2 * R2;
        cplx rad = radicand(z);
        double m = std::abs(rad);
        return 2.0 * R2 * (R4 - 1.0) * (R4 - 1.0) / (m * std::sqrt(m));
    }

    cplx fprime_derivative(cplx z) const {
        double R2 = R_ * R_, R4 = R2 * R2;
        cplx rad = radicand(z);
        cplx s = sqrt_checked(rad);
        return 2.0 * R2 * (R4 - 1.0) * (R4 - 1.0) / (rad * s);
    }

    /// Positive real critical radius sqrt(4R⁴ - (R⁴-1)²) / (2R²); only
    /// meaningful for R < R0.
    double t_star() const {
        double R2 = R_ * R_, R4 = R2 * R2;
        double disc = 4.0 * R4 - (R4 - 1.0) * (R4 - 1.0);
        return disc > 0.0 ? std::sqrt(disc) / (2.0 * R2) : 0.0;
    }

    /// Closed-form critical set: {0, ±t*} below the threshold, {0} above;
    /// classification falls out of the multiplier (the merge at R = R0 is
    /// flagged degenerate automatically because the multiplier crosses 1).
    std::vector<CriticalPoint> critical_points() const {
        double R2 = R_ * R_, R4 = R2 * R2;
        double disc = 4.0 * R4 - (R4 - 1.0) * (R4 - 1.0);
        std::vector<cplx> locs{cplx(0.0)};
        if (disc > 0.0) {
            double t = std::sqrt(disc) / (2.0 * R2);
            // below ~1e-5 the pair is indistinguishable from the triple root
            // at the origin (R within ~1e-11 of the threshold): collapse it
            if (t > 1e-5) {
                locs.emplace_back(-t, 0.0);
                locs.emplace_back(t, 0.0);
            }
        }
        std::vector<CriticalPoint> out;
        for (cplx z : locs) {
            double m = multiplier(z);
            out.push_back({z, classify_multiplier(m), m, std::abs(grad(z)), v(z)});
        }
        std::sort(out.begin(), out.end(), [](const CriticalPoint& x, const CriticalPoint& y) {
            return x.location.real() < y.location.real();
        });
        return out;
    }

    /// Boundary parametrization through the inverse conformal map
    /// psi(e^{i t}) = (R⁴-1) e^{it} / (R (R² - e^{2it})).
    cplx boundary_point(double theta) const {
        double R2 = R_ * R_, R4 = R2 * R2;
        cplx w(std::cos(theta), std::sin(theta));
        return (R4 - 1.0) * w / (R_ * (R2 - w * w));
    }

    Box bounding_box(double pad = 0.2) const {
        double xr = R_ + 1.0 / R_ + pad;
        double yr = a_ + pad;
        return Box{-xr, xr, -yr, yr};
    }

    /// Full-box Newton sweep over grad v = 0 seeded at residual minima;
    /// independent check that no critical point hides off the real axis.
    std::vector<CriticalPoint> newton_sweep(int grid_n = 256) const {
        Box b = bounding_box();
        const double hx = b.width() / (grid_n - 1);
        const double hy = b.height() / (grid_n - 1);
        std::vector<double> res(size_t(grid_n) * grid_n, 1e300);
        for (int j = 0; j < grid_n; ++j)
            for (int i = 0; i < grid_n; ++i) {
                cplx z(b.xmin + i * hx, b.ymin + j * hy);
                if (v(z) <= 0.0) continue;
                res[size_t(j) * grid_n + i] = std::abs(grad(z));
            }
        std::vector<CriticalPoint> found;
        for (int j = 1; j + 1 < grid_n; ++j)
            for (int i = 1; i + 1 < grid_n; ++i) {
                double c = res[size_t(j) * grid_n + i];
                if (c >= 1e300) continue;
                bool ismin = true;
                for (int dj = -1; dj <= 1 && ismin; ++dj)
                    for (int di = -1; di <= 1; ++di) {
                        if (di == 0 && dj == 0) continue;
                        if (res[size_t(j + dj) * grid_n + (i + di)] < c) {
                            ismin = false;
                            break;
                        }
                    }
                if (!ismin) continue;
                cplx z(b.xmin + i * hx, b.ymin + j * hy);
                try {
                    for (int it = 0; it < 80; ++it) {
                        cplx H = grad(z);
                        if (std::abs(H) < 1e-13) break;
                        auto step = detail::harmonic_newton_step(
                            H, cplx(-1.0), std::conj(fprime_derivative(z)));
                        if (!step) break;
                        cplx dz = *step;
                        if (std::abs(dz) > 0.3) dz *= 0.3 / std::abs(dz);
                        z += dz;
                    }
                    if (std::abs(grad(z)) <= 1e-10 && v(z) > strict_interior_band()) {
                        double m = multiplier(z);
                        found.push_back({z, classify_multiplier(m), m, std::abs(grad(z)), v(z)});
                    }
                } catch (const BranchAmbiguity&) {
                    // iterate strayed onto the cut outside the oval; not a root
                }
            }
        detail::dedup_points(found, 1e-7);
        return found;
    }

private:
    NeumannOval() = default;

    cplx radicand(cplx z) const {
        double R2 = R_ * R_, R4 = R2 * R2;
        return (R4 - 1.0) * (R4 - 1.0) + 4.0 * R4 * z * z;
    }

    cplx sqrt_checked(cplx rad) const {
        if (rad.real() < 0.0 && std::abs(rad.imag()) <= 1e-12 * std::abs(rad.real()))
            throw BranchAmbiguity("oval gradient: radicand pinned to the branch cut");
        return std::sqrt(rad);
    }

    double R_ = 0.0, a_ = 0.0;
};

} // namespace landscape
