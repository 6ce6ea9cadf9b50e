#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "landscape/critical_points.hpp"
#include "landscape/grid.hpp"

namespace landscape {

/// Thread cap for data-parallel loops; reductions use fixed chunking so
/// results are bit-identical for any thread count.
inline int solver_threads() {
    static int n = [] {
        if (const char* s = std::getenv("LANDSCAPE_LAB_THREADS")) {
            int v = std::atoi(s);
            if (v >= 1) return v;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return int(hw ? std::min(hw, 4u) : 1);
    }();
    return n;
}

namespace detail {

inline void parallel_for(size_t n, const std::function<void(size_t, size_t)>& body) {
    int nt = solver_threads();
    if (nt <= 1 || n < 1u << 14) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Deterministic dot product: fixed 8192-element chunks accumulated in order,
// chunk partials computed possibly in parallel.
inline double det_dot(const std::vector<double>& a, const std::vector<double>& b) {
    const size_t n = a.size();
    const size_t chunk = 8192;
    const size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(nchunks, 0.0);
    parallel_for(nchunks, [&](size_t lo, size_t hi) {
        for (size_t c = lo; c < hi; ++c) {
            double s = 0.0;
            size_t e = std::min(n, (c + 1) * chunk);
            for (size_t i = c * chunk; i < e; ++i) s += a[i] * b[i];
            partial[c] = s;
        }
    });
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

} // namespace detail

/// Discrete Dirichlet problem for the 5-point Laplacian. Boundary crossings
/// that fall between nodes are handled by linear-extrapolation ghost values
/// (arm fraction theta), which keeps the matrix symmetric positive definite;
/// grid-aligned boundaries are the theta = 1 special case.
struct FDProblem {
    struct Arm {
        double theta = 1.0; // fraction of h to the Dirichlet data along this arm
        bool cut = false;   // true: arm ends at boundary data, not an unknown
        double g = 0.0;     // Dirichlet value at the crossing (cut arms)
        int nb = -1;        // unknown index of the neighbor (interior arms)
    };

    GridField field;   // mask: Interior = unknown, Boundary = prescribed ring
    double rhs = -2.0; // constant source
    std::vector<int> unknown_of_node;
    std::vector<int> node_of_unknown;
    std::vector<std::array<Arm, 4>> arms; // W, E, S, N per unknown

    size_t n_unknowns() const { return node_of_unknown.size(); }
};

inline double theta_floor() { return 1e-6; }

/// Problem on a domain given by an implicit function (psi > 0 inside) with
/// Dirichlet data g on {psi = 0}. Crossings located by bisection.
inline FDProblem fd_from_implicit(
    const Box& box, int grid_n, const std::function<double(cplx)>& psi,
    const std::function<double(cplx)>& g = [](cplx) { return 0.0; }) {
    FDProblem prob;
    GridField& f = prob.field;
    f.box = box;
    f.h = std::max(box.width(), box.height()) / (grid_n - 1);
    f.nx = int(std::lround(box.width() / f.h)) + 1;
    f.ny = int(std::lround(box.height() / f.h)) + 1;
    f.values.assign(size_t(f.nx) * f.ny, 0.0);
    f.mask.assign(size_t(f.nx) * f.ny, Cell::Exterior);

    std::vector<double> psiv(f.values.size());
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            psiv[f.idx(i, j)] = psi(f.point(i, j));
            if (psiv[f.idx(i, j)] > 0.0) f.mask[f.idx(i, j)] = Cell::Interior;
        }

    prob.unknown_of_node.assign(f.values.size(), -1);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            if (f.cell(i, j) == Cell::Interior) {
                prob.unknown_of_node[f.idx(i, j)] = int(prob.node_of_unknown.size());
                prob.node_of_unknown.push_back(int(f.idx(i, j)));
            }

    auto crossing = [&](cplx from, cplx to) {
        double lo = 0.0, hi = 1.0; // psi(from) > 0 >= psi(to)
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (psi(from + mid * (to - from)) > 0.0) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    prob.arms.resize(prob.n_unknowns());
    for (size_t u = 0; u < prob.n_unknowns(); ++u) {
        int node = prob.node_of_unknown[u];
        int i = node % f.nx, j = node / f.nx;
        cplx zp = f.point(i, j);
        for (int d = 0; d < 4; ++d) {
            FDProblem::Arm arm;
            int ni = i + di[d], nj = j + dj[d];
            bool nb_interior = f.in_range(ni, nj) && f.cell(ni, nj) == Cell::Interior;
            if (nb_interior) {
                arm.nb = prob.unknown_of_node[f.idx(ni, nj)];
            } else {
                cplx zn(zp.real() + di[d] * f.h, zp.imag() + dj[d] * f.h);
                double th = crossing(zp, zn);
                arm.cut = true;
                arm.theta = std::max(theta_floor(), th);
                arm.g = g(zp + th * (zn - zp));
                if (f.in_range(ni, nj)) {
                    f.mask[f.idx(ni, nj)] = Cell::Boundary;
                    f.values[f.idx(ni, nj)] = arm.g;
                }
            }
            prob.arms[u][size_t(d)] = arm;
        }
    }
    return prob;
}

/// Problem on a grid-aligned mask: Interior unknowns, Boundary nodes carry
/// prescribed values (taken from field.values), Exterior ignored.
inline FDProblem fd_from_mask(GridField field) {
    FDProblem prob;
    prob.field = std::move(field);
    GridField& f = prob.field;
    prob.unknown_of_node.assign(f.values.size(), -1);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            if (f.cell(i, j) == Cell::Interior) {
                prob.unknown_of_node[f.idx(i, j)] = int(prob.node_of_unknown.size());
                prob.node_of_unknown.push_back(int(f.idx(i, j)));
            }
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    prob.arms.resize(prob.n_unknowns());
    for (size_t u = 0; u < prob.n_unknowns(); ++u) {
        int node = prob.node_of_unknown[u];
        int i = node % f.nx, j = node / f.nx;
        for (int d = 0; d < 4; ++d) {
            FDProblem::Arm arm;
            int ni = i + di[d], nj = j + dj[d];
            if (f.in_range(ni, nj) && f.cell(ni, nj) == Cell::Interior) {
                arm.nb = prob.unknown_of_node[f.idx(ni, nj)];
            } else {
                arm.cut = true;
                arm.theta = 1.0;
                arm.g = (f.in_range(ni, nj) && f.cell(ni, nj) == Cell::Boundary)
                            ? f.value(ni, nj)
                            : 0.0;
            }
            prob.arms[u][size_t(d)] = arm;
        }
    }
    return prob;
}

/// Jacobi-preconditioned conjugate gradients on the SPD system; matrix-free.
/// Deterministic for any thread count. Returns the solved field (boundary
/// nodes keep their prescribed values).
inline GridField fd_solve(const FDProblem& prob, double tol = 1e-10, int max_iter = 0) {
    const size_t n = prob.n_unknowns();
    const GridField& f = prob.field;
    if (n == 0) throw BadParameters("fd_solve: no interior nodes");
    if (max_iter <= 0) max_iter = 40 * std::max(f.nx, f.ny) + 2000;
    const double h2 = f.h * f.h;

    std::vector<double> diag(n), b(n);
    for (size_t u = 0; u < n; ++u) {
        double dsum = 0.0, bsum = -prob.rhs; // -Laplace u = -rhs
        for (const auto& arm : prob.arms[u]) {
            if (arm.cut) {
                dsum += 1.0 / arm.theta;
                bsum += arm.g / (arm.theta * h2);
            } else {
                dsum += 1.0;
            }
        }
        diag[u] = dsum / h2;
        b[u] = bsum;
    }

    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        detail::parallel_for(n, [&](size_t lo, size_t hi) {
            for (size_t u = lo; u < hi; ++u) {
                double acc = diag[u] * x[u];
                for (const auto& arm : prob.arms[u])
                    if (!arm.cut) acc -= x[size_t(arm.nb)] / h2;
                y[u] = acc;
            }
        });
    };

    std::vector<double> x(n, 0.0), r(b), z(n), pvec(n), Ap(n);
    for (size_t u = 0; u < n; ++u) z[u] = r[u] / diag[u];
    pvec = z;
    double rz = detail::det_dot(r, z);
    double bnorm = std::sqrt(detail::det_dot(b, b));
    if (bnorm == 0.0) bnorm = 1.0;

    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        apply(pvec, Ap);
        double pAp = detail::det_dot(pvec, Ap);
        if (pAp <= 0.0) throw NonConvergence("fd_solve: lost positive definiteness");
        double alpha = rz / pAp;
        detail::parallel_for(n, [&](size_t lo, size_t hi) {
            for (size_t u = lo; u < hi; ++u) {
                x[u] += alpha * pvec[u];
                r[u] -= alpha * Ap[u];
            }
        });
        double rnorm = std::sqrt(detail::det_dot(r, r));
        if (rnorm <= tol * bnorm) {
            converged = true;
            break;
        }
        detail::parallel_for(n, [&](size_t lo, size_t hi) {
            for (size_t u = lo; u < hi; ++u) z[u] = r[u] / diag[u];
        });
        double rz_new = detail::det_dot(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        detail::parallel_for(n, [&](size_t lo, size_t hi) {
            for (size_t u = lo; u < hi; ++u) pvec[u] = z[u] + beta * pvec[u];
        });
    }
    if (!converged)
        throw NonConvergence("fd_solve: CG iteration cap reached (degenerate mask?)");

    GridField out = prob.field;
    for (size_t u = 0; u < n; ++u) out.values[size_t(prob.node_of_unknown[u])] = x[u];
    return out;
}

// ---------------------------------------------------------------------------
// Census of a solved grid field.

struct GridPoint {
    cplx location;
    PointClass cls;
    double value;
};

struct GridCensus {
    std::vector<GridPoint> maxima;
    std::vector<GridPoint> saddles;
    int degenerate_cells = 0;
};

/// Local maxima are nodes exceeding all 8 neighbors. Saddle candidates are
/// nodes whose 8-neighbor ring of sign(neighbor - center) shows >= 4 sign
/// changes; each candidate cluster is refined by a least-squares quadratic
/// fit of the 3x3 patch and accepted when the fitted Hessian determinant is
/// negative and the fitted critical point stays within the cell.
inline GridCensus grid_census(const GridField& f) {
    GridCensus out;
    auto valid = [&](int i, int j) {
        return f.in_range(i, j) && f.cell(i, j) != Cell::Exterior;
    };
    // ring order around a node
    const int ri[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    const int rj[8] = {0, 1, 1, 1, 0, -1, -1, -1};

    struct Cand {
        int i, j;
        double det, gnorm;
        cplx loc;
        bool degenerate;
    };
    std::vector<Cand> cands, max_cands;

    for (int j = 1; j + 1 < f.ny; ++j)
        for (int i = 1; i + 1 < f.nx; ++i) {
            if (f.cell(i, j) != Cell::Interior) continue;
            bool all_valid = true;
            for (int d = 0; d < 8 && all_valid; ++d)
                if (!valid(i + ri[d], j + rj[d])) all_valid = false;
            if (!all_valid) continue;

            double c = f.value(i, j);
            // ties happen on symmetry axes; a plateau of equal nodes is one
            // maximum, collapsed by clustering below
            bool is_max = true;
            bool strict = false;
            int sign_changes = 0;
            int prev = 0;
            int first = 0;
            for (int d = 0; d < 8; ++d) {
                double dv = f.value(i + ri[d], j + rj[d]) - c;
                if (dv > 0.0) is_max = false;
                if (dv < 0.0) strict = true;
                int s = dv > 0.0 ? 1 : (dv < 0.0 ? -1 : 0);
                if (s == 0) continue;
                if (prev != 0 && s != prev) ++sign_changes;
                if (first == 0) first = s;
                prev = s;
            }
            is_max = is_max && strict;
            if (prev != 0 && first != 0 && prev != first) ++sign_changes;

            // quadratic least squares on the 3x3 patch (index coordinates)
            double s0 = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int dj2 = -1; dj2 <= 1; ++dj2)
                for (int di2 = -1; di2 <= 1; ++di2) {
                    double v = f.value(i + di2, j + dj2);
                    s0 += v;
                    sx += di2 * v;
                    sy += dj2 * v;
                    sxx += di2 * di2 * v;
                    syy += dj2 * dj2 * v;
                    sxy += di2 * dj2 * v;
                }
            double bcoef = sx / 6.0, ccoef = sy / 6.0, ecoef = sxy / 4.0;
            double dcoef = (-12 * s0 + 18 * sxx) / 36.0;
            double fcoef = (-12 * s0 + 18 * syy) / 36.0;
            double det = 4 * dcoef * fcoef - ecoef * ecoef;

            if (is_max) {
                // subpixel refinement from the fit when well conditioned
                cplx loc = f.point(i, j);
                if (std::abs(det) > 1e-300) {
                    double dx = (-2 * fcoef * bcoef + ecoef * ccoef) / det;
                    double dy = (ecoef * bcoef - 2 * dcoef * ccoef) / det;
                    if (std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0)
                        loc += cplx(dx * f.h, dy * f.h);
                }
                max_cands.push_back({i, j, det, std::hypot(bcoef, ccoef), loc, false});
                continue;
            }
            if (sign_changes >= 4) {
                double scale = std::max({std::abs(dcoef), std::abs(fcoef), std::abs(ecoef), 1e-300});
                if (std::abs(det) <= 1e-9 * scale * scale) {
                    out.degenerate_cells++;
                    continue;
                }
                if (det >= 0.0) continue; // fit says extremum: ring test was noise
                double dx = (-2 * fcoef * bcoef + ecoef * ccoef) / det;
                double dy = (ecoef * bcoef - 2 * dcoef * ccoef) / det;
                if (std::abs(dx) > 1.0 || std::abs(dy) > 1.0) continue;
                Cand cd;
                cd.i = i;
                cd.j = j;
                cd.det = det;
                cd.gnorm = std::hypot(bcoef, ccoef);
                cd.loc = f.point(i, j) + cplx(dx * f.h, dy * f.h);
                cd.degenerate = false;
                cands.push_back(cd);
            }
        }

    // Cluster adjacent candidates (8-connected) and keep the best fit per
    // cluster; collapses both saddle cell pairs and tied maxima plateaus.
    auto collapse = [&f](std::vector<Cand>& cs, std::vector<GridPoint>& dst, PointClass cls) {
        std::vector<char> used(cs.size(), 0);
        for (size_t a = 0; a < cs.size(); ++a) {
            if (used[a]) continue;
            std::vector<size_t> cluster{a};
            used[a] = 1;
            for (size_t qi = 0; qi < cluster.size(); ++qi)
                for (size_t b = 0; b < cs.size(); ++b) {
                    if (used[b]) continue;
                    if (std::abs(cs[cluster[qi]].i - cs[b].i) <= 1 &&
                        std::abs(cs[cluster[qi]].j - cs[b].j) <= 1) {
                        used[b] = 1;
                        cluster.push_back(b);
                    }
                }
            size_t best = cluster[0];
            for (size_t c : cluster)
                if (cs[c].gnorm < cs[best].gnorm) best = c;
            dst.push_back({cs[best].loc, cls, f.value(cs[best].i, cs[best].j)});
        }
    };
    collapse(max_cands, out.maxima, PointClass::Maximum);
    collapse(cands, out.saddles, PointClass::Saddle);

    auto sorter = [](const GridPoint& a, const GridPoint& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    };
    std::sort(out.maxima.begin(), out.maxima.end(), sorter);
    std::sort(out.saddles.begin(), out.saddles.end(), sorter);
    return out;
}

inline std::vector<CriticalPoint> grid_census_points(const GridCensus& gc) {
    std::vector<CriticalPoint> pts;
    for (const auto& m : gc.maxima) pts.push_back({m.location, m.cls, 0.0, 0.0, m.value});
    for (const auto& s : gc.saddles) pts.push_back({s.location, s.cls, 0.0, 0.0, s.value});
    return pts;
}

// ---------------------------------------------------------------------------
// Thin-neck experiment.

struct NeckResult {
    double sup_mid = 0.0; // max of the solution over the segment x = 0
    double bound = 0.0;   // 2M/cosh(pi/(4 eps)) + eps^2
    bool ok = false;
    int grid_nx = 0, grid_ny = 0;
};

/// Solves the source problem on (-1,1) x (-eps,eps) with value M on the
/// short sides and 0 on the long sides, then compares the mid-segment
/// maximum against the barrier bound.
inline NeckResult neck_experiment(double eps, double M, int grid_n, double tol = 1e-10) {
    if (!(eps > 0.0 && eps <= 0.25)) throw BadParameters("neck_experiment: need 0 < eps <= 0.25");
    if (M < 1.0) throw BadParameters("neck_experiment: need M >= 1");
    int k = int(std::lround(grid_n * eps / 2.0));
    if (2 * k < 16)
        throw ResolutionTooCoarse("neck_experiment: fewer than 16 cells across the neck");
    double h = eps / k;
    int nx_cells = int(std::lround(2.0 / h));
    if (nx_cells < 8) throw ResolutionTooCoarse("neck_experiment: grid too coarse along the neck");

    GridField f;
    f.box = Box{-1.0, -1.0 + nx_cells * h, -eps, eps};
    f.h = h;
    f.nx = nx_cells + 1;
    f.ny = 2 * k + 1;
    f.values.assign(size_t(f.nx) * f.ny, 0.0);
    f.mask.assign(size_t(f.nx) * f.ny, Cell::Interior);
    for (int i = 0; i < f.nx; ++i) {
        f.mask[f.idx(i, 0)] = Cell::Boundary;
        f.mask[f.idx(i, f.ny - 1)] = Cell::Boundary;
    }
    for (int j = 0; j < f.ny; ++j) {
        f.mask[f.idx(0, j)] = Cell::Boundary;
        f.mask[f.idx(f.nx - 1, j)] = Cell::Boundary;
        if (j != 0 && j != f.ny - 1) {
            f.values[f.idx(0, j)] = M;
            f.values[f.idx(f.nx - 1, j)] = M;
        }
    }

    GridField sol = fd_solve(fd_from_mask(std::move(f)), tol);
    int i0 = int(std::lround((0.0 - sol.box.xmin) / sol.h));
    NeckResult res;
    res.grid_nx = sol.nx;
    res.grid_ny = sol.ny;
    for (int j = 0; j < sol.ny; ++j)
        res.sup_mid = std::max(res.sup_mid, sol.value(i0, j));
    res.bound = 2.0 * M / std::cosh(M_PI / (4.0 * eps)) + eps * eps;
    res.ok = res.sup_mid <= res.bound;
    return res;
}

// ---------------------------------------------------------------------------
// Dumbbells and chains of near-disks.

struct DumbbellResult {
    GridField field;
    GridCensus census;
    int min_expected = 0; // 2n - 1 for an n-disk chain
    bool ok = false;
};

/// Union of n unit disks in a row (gap 2*delta between rims) joined by
/// rectangular necks of half-width eps; Dirichlet 0 boundary.
inline DumbbellResult dumbbell_experiment(double eps, double delta, int grid_n,
                                          int n_disks = 2, double tol = 1e-10) {
    if (n_disks < 1) throw BadParameters("dumbbell_experiment: n_disks >= 1");
    if (eps <= 0 || eps >= 1.0) throw BadParameters("dumbbell_experiment: need 0 < eps < 1");
    std::vector<double> centers;
    double spacing = 2.0 + 2.0 * delta;
    for (int i = 0; i < n_disks; ++i)
        centers.push_back(spacing * (i - 0.5 * (n_disks - 1)));

    auto psi = [centers, eps](cplx z) {
        double best = -1e300;
        for (double cx : centers)
            best = std::max(best, 1.0 - std::abs(z - cplx(cx, 0.0)));
        for (size_t i = 0; i + 1 < centers.size(); ++i) {
            double lo = centers[i], hi = centers[i + 1];
            double rect = std::min({z.real() - lo, hi - z.real(), eps - z.imag(), z.imag() + eps});
            best = std::max(best, rect);
        }
        return best;
    };

    double pad = 0.15;
    Box box{centers.front() - 1.0 - pad, centers.back() + 1.0 + pad, -1.0 - pad, 1.0 + pad};
    FDProblem prob = fd_from_implicit(box, grid_n, psi);
    double cells_across_neck = 2.0 * eps / prob.field.h;
    if (n_disks > 1 && cells_across_neck < 8)
        throw ResolutionTooCoarse("dumbbell_experiment: neck thinner than 8 cells");

    DumbbellResult res;
    res.field = fd_solve(prob, tol);
    res.census = grid_census(res.field);
    res.min_expected = 2 * n_disks - 1;
    int total = int(res.census.maxima.size() + res.census.saddles.size());
    res.ok = total >= res.min_expected;
    return res;
}

// ---------------------------------------------------------------------------
// Plain-text mask import (PGM, P2): 0 = exterior, bright = interior.

inline GridField read_pgm_mask(const std::string& path, double h = 0.0) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mask file: " + path);
    std::string magic;
    in >> magic;
    if (magic != "P2") throw IoError("mask must be a plain-text PGM (P2): " + path);
    auto next_int = [&in, &path]() {
        for (;;) {
            int c = in.peek();
            if (c == '#') {
                std::string line;
                std::getline(in, line);
                continue;
            }
            if (std::isspace(c)) {
                in.get();
                continue;
            }
            break;
        }
        long v;
        if (!(in >> v)) throw IoError("truncated PGM mask: " + path);
        return v;
    };
    long w = next_int(), ht = next_int(), maxval = next_int();
    if (w < 4 || ht < 4 || maxval <= 0) throw IoError("bad PGM header: " + path);
    GridField f;
    if (h <= 0.0) h = 1.0 / double(std::max(w, ht) - 1);
    f.h = h;
    f.nx = int(w);
    f.ny = int(ht);
    f.box = Box{0.0, (w - 1) * h, 0.0, (ht - 1) * h};
    f.values.assign(size_t(w) * ht, 0.0);
    f.mask.assign(size_t(w) * ht, Cell::Exterior);
    // PGM rows are listed top-down; store bottom-up so y grows with j.
    for (long row = 0; row < ht; ++row)
        for (long col = 0; col < w; ++col) {
            long v = next_int();
            int j = int(ht - 1 - row);
            if (2 * v >= maxval) f.mask[f.idx(int(col), j)] = Cell::Interior;
        }
    // boundary ring: exterior nodes 4-adjacent to the interior
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            if (f.cell(i, j) != Cell::Exterior) continue;
            for (int d = 0; d < 4; ++d)
                if (f.in_range(i + di[d], j + dj[d]) &&
                    f.cell(i + di[d], j + dj[d]) == Cell::Interior) {
                    f.mask[f.idx(i, j)] = Cell::Boundary;
                    break;
                }
        }
    return f;
}

} // namespace landscape
