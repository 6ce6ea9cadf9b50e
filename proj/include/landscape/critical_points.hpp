#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "landscape/poly_roots.hpp"
#include "landscape/rl_potential.hpp"

namespace landscape {

enum class PointClass { Maximum, Saddle, Degenerate };

inline const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Maximum: return "maximum";
        case PointClass::Saddle: return "saddle";
        default: return "degenerate";
    }
}

/// A located solution of grad v = 0.
///  multiplier |F'| < 1  => Hessian det > 0 => maximum (v is superharmonic),
///  multiplier    > 1  => saddle; within the band of 1 => degenerate.
struct CriticalPoint {
    cplx location;
    PointClass cls;
    double multiplier; // |F'(location)|
    double residual;   // |conj(F(z)) - z|
    double value;      // v(location)
};

inline double degeneracy_band() { return 1e-6; }

inline PointClass classify_multiplier(double mult) {
    if (mult < 1.0 - degeneracy_band()) return PointClass::Maximum;
    if (mult > 1.0 + degeneracy_band()) return PointClass::Saddle;
    return PointClass::Degenerate;
}

struct SolverDiagnostics {
    int roots_total = 0;          // roots of the composed fixed-point polynomial
    int discarded_period2 = 0;    // residual too large: genuine 2-cycles / spurious
    int discarded_outside = 0;    // residual fine but v <= 0
    int dropped_seeds = 0;        // Newton seeds that failed to converge
    std::vector<cplx> boundary_grazing;      // |v| suspiciously close to 0
    std::vector<cplx> discarded_roots;       // locations of discarded roots
    std::vector<double> discarded_residuals; // matching residuals
};

struct CriticalPointResult {
    std::vector<CriticalPoint> points;
    SolverDiagnostics diag;
};

namespace detail {

// Newton step for the map H(z) = conj(F(z)) - z: H_z = -1, H_zbar = conj(F'(z)),
// Jacobian determinant 1 - |F'|^2. Solves J*dz = -H in complex form.
inline std::optional<cplx> harmonic_newton_step(cplx H, cplx A, cplx B) {
    double det = std::norm(A) - std::norm(B);
    if (std::abs(det) < 1e-14) return std::nullopt;
    return (std::conj(A) * (-H) - B * std::conj(-H)) / det;
}

// Polish a candidate fixed point of z -> conj(F(z)). Returns final residual.
inline double polish_fixed_point(const RLPotential& p, cplx& z, int max_iter = 60) {
    double best;
    try {
        best = std::abs(p.eval_grad(z));
    } catch (const PoleProximity&) {
        return std::numeric_limits<double>::infinity();
    }
    for (int it = 0; it < max_iter; ++it) {
        cplx H;
        try {
            H = p.eval_grad(z);
        } catch (const PoleProximity&) {
            return best;
        }
        double r = std::abs(H);
        best = std::min(best, r);
        if (r < 1e-15 * std::max(1.0, std::abs(z))) return r;
        auto step = harmonic_newton_step(H, cplx(-1.0), std::conj(p.fprime_derivative(z)));
        if (!step) return r;
        cplx dz = *step;
        double cap = 0.25 * std::max(1.0, std::abs(z));
        if (std::abs(dz) > cap) dz *= cap / std::abs(dz);
        // halve while the residual does not decrease
        cplx znew = z + dz;
        for (int h = 0; h < 20; ++h) {
            double rn;
            try {
                rn = std::abs(p.eval_grad(znew));
            } catch (const PoleProximity&) {
                rn = 2.0 * r;
            }
            if (rn < r) break;
            dz *= 0.5;
            znew = z + dz;
            if (std::abs(dz) < 1e-17) return r;
        }
        z = znew;
    }
    try {
        return std::abs(p.eval_grad(z));
    } catch (const PoleProximity&) {
        return best;
    }
}

inline void sort_points(std::vector<CriticalPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
}

inline void dedup_points(std::vector<CriticalPoint>& pts, double radius) {
    sort_points(pts);
    std::vector<CriticalPoint> out;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& q : out)
            if (std::abs(p.location - q.location) <= radius) { dup = true; break; }
        if (!dup) out.push_back(p);
    }
    pts = std::move(out);
}

inline CriticalPoint make_point(const RLPotential& p, cplx z, double residual) {
    double mult = p.multiplier(z);
    return {z, classify_multiplier(mult), mult, residual, p.eval_v(z)};
}

} // namespace detail

inline double strict_interior_band() { return 1e-12; }
inline double grazing_band() { return 1e-9; }

/// Finds every critical point by root-finding: fixed points of the
/// anti-regular map z -> conj(F(z)) are among the fixed points of the
/// regular second iterate G = F~ o F (F~ has conjugated coefficients), so
/// the roots of num(G)(z) - z*den(G)(z) enumerate all candidates. Candidates
/// are polished, filtered by direct residual (dropping genuine 2-cycles)
/// and by v > 0, then deduplicated.
inline CriticalPointResult critical_points_composition(const RLPotential& p, double tol = 1e-9,
                                                       const RootOptions& ropt = {}) {
    if (p.order() < 1)
        throw BadParameters("critical_points_composition: degree >= 1 required");
    if (p.annulus_degenerate())
        throw AnnulusDegenerate(
            "critical set is a circle (single positive charge reflecting a circle); "
            "no finite critical-point list exists");

    const RationalFn& F = p.fprime();
    RationalFn G = rat_compose(F.conj_coeffs(), F);
    // num(G) - z*den(G) = 0  <=>  G(z) = z
    ComplexPolynomial fixed = G.numerator() - G.denominator().shifted_up(1);
    fixed = fixed.pruned_leading(1e-13);
    if (fixed.degree() < 1)
        throw NonConvergence("composition solver: degenerate fixed-point polynomial");

    std::vector<cplx> roots = poly_roots(fixed, 1e-12, ropt);

    CriticalPointResult out;
    out.diag.roots_total = static_cast<int>(roots.size());
    for (cplx z : roots) {
        double r0;
        try {
            r0 = std::abs(p.eval_grad(z));
        } catch (const PoleProximity&) {
            out.diag.discarded_period2++;
            out.diag.discarded_roots.push_back(z);
            out.diag.discarded_residuals.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        if (r0 > std::max(10.0 * tol, 1e-6)) {
            out.diag.discarded_period2++;
            out.diag.discarded_roots.push_back(z);
            out.diag.discarded_residuals.push_back(r0);
            continue;
        }
        double r = detail::polish_fixed_point(p, z);
        if (r > tol) {
            out.diag.discarded_period2++;
            out.diag.discarded_roots.push_back(z);
            out.diag.discarded_residuals.push_back(r);
            continue;
        }
        double v = p.eval_v(z);
        if (std::abs(v) <= grazing_band()) out.diag.boundary_grazing.push_back(z);
        if (v <= strict_interior_band()) {
            out.diag.discarded_outside++;
            continue;
        }
        out.points.push_back(detail::make_point(p, z, r));
    }
    detail::dedup_points(out.points, std::max(tol, 1e-9));
    return out;
}

struct SeedBox {
    double xmin, xmax, ymin, ymax;
    bool contains(cplx z) const {
        return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
    }
};

/// Independent solver: damped Newton on (x,y) -> (Re,Im)(conj(F(z)) - z),
/// seeded at grid nodes where |grad v| is a 3x3-local minimum. Jacobian is
/// assembled analytically. Converged points are deduplicated and filtered
/// to v > 0; non-converging seeds are dropped and counted.
inline CriticalPointResult critical_points_newton(const RLPotential& p, const SeedBox& box,
                                                  int grid_n, double tol = 1e-9) {
    if (grid_n < 32) throw BadParameters("critical_points_newton: grid_n >= 32 required");
    if (p.annulus_degenerate())
        throw AnnulusDegenerate(
            "critical set is a circle (single positive charge reflecting a circle); "
            "no finite critical-point list exists");

    const double hx = (box.xmax - box.xmin) / (grid_n - 1);
    const double hy = (box.ymax - box.ymin) / (grid_n - 1);
    // Two seed fields: the raw residual |H|, and the Newton step length
    // |J^-1 H|. The latter is an isotropic distance-to-zero estimate, which
    // still dips at zeros sitting in tilted narrow valleys of |H| where the
    // valley floor drifts past the grid rows.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> res(size_t(grid_n) * grid_n, inf);
    std::vector<double> step(size_t(grid_n) * grid_n, inf);
    for (int j = 0; j < grid_n; ++j)
        for (int i = 0; i < grid_n; ++i) {
            cplx z(box.xmin + i * hx, box.ymin + j * hy);
            try {
                cplx H = p.eval_grad(z);
                res[size_t(j) * grid_n + i] = std::abs(H);
                auto dz = detail::harmonic_newton_step(H, cplx(-1.0),
                                                       std::conj(p.fprime_derivative(z)));
                if (dz) step[size_t(j) * grid_n + i] = std::abs(*dz);
            } catch (const PoleProximity&) {
            }
        }

    std::vector<cplx> seeds;
    for (const auto* field : {&res, &step})
        for (int j = 1; j + 1 < grid_n; ++j)
            for (int i = 1; i + 1 < grid_n; ++i) {
                double c = (*field)[size_t(j) * grid_n + i];
                if (!std::isfinite(c)) continue;
                bool ismin = true;
                for (int dj = -1; dj <= 1 && ismin; ++dj)
                    for (int di = -1; di <= 1; ++di) {
                        if (di == 0 && dj == 0) continue;
                        if ((*field)[size_t(j + dj) * grid_n + (i + di)] < c) {
                            ismin = false;
                            break;
                        }
                    }
                if (ismin)
                    seeds.emplace_back(box.xmin + i * hx, box.ymin + j * hy);
            }

    CriticalPointResult out;
    SeedBox wide{box.xmin - (box.xmax - box.xmin), box.xmax + (box.xmax - box.xmin),
                 box.ymin - (box.ymax - box.ymin), box.ymax + (box.ymax - box.ymin)};
    std::vector<CriticalPoint> found;
    for (cplx z : seeds) {
        double r = detail::polish_fixed_point(p, z);
        if (!(r <= tol) || !wide.contains(z)) {
            out.diag.dropped_seeds++;
            continue;
        }
        double v;
        try {
            v = p.eval_v(z);
        } catch (const PoleProximity&) {
            out.diag.dropped_seeds++;
            continue;
        }
        if (std::abs(v) <= grazing_band()) out.diag.boundary_grazing.push_back(z);
        if (v <= strict_interior_band()) {
            out.diag.discarded_outside++;
            continue;
        }
        found.push_back(detail::make_point(p, z, r));
    }
    detail::dedup_points(found, 1e-7);
    out.points = std::move(found);
    return out;
}

/// Hausdorff distance between two point sets (locations only).
inline double hausdorff_distance(const std::vector<CriticalPoint>& a,
                                 const std::vector<CriticalPoint>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto one_sided = [](const std::vector<CriticalPoint>& s, const std::vector<CriticalPoint>& t) {
        double worst = 0.0;
        for (const auto& x : s) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& y : t) best = std::min(best, std::abs(x.location - y.location));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

inline int count_class(const std::vector<CriticalPoint>& pts, PointClass c) {
    return static_cast<int>(std::count_if(pts.begin(), pts.end(),
                                          [c](const CriticalPoint& p) { return p.cls == c; }));
}

} // namespace landscape
