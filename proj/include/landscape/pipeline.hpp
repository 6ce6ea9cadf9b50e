#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "landscape/bounds.hpp"
#include "landscape/config.hpp"
#include "landscape/contour_svg.hpp"
#include "landscape/critical_points.hpp"
#include "landscape/fd_poisson.hpp"
#include "landscape/grid.hpp"
#include "landscape/neumann_oval.hpp"
#include "landscape/quadrature.hpp"
#include "landscape/rl_potential.hpp"
#include "landscape/topology.hpp"

namespace landscape {

struct Report {
    JobKind kind = JobKind::Rl;
    std::string title;
    std::vector<CriticalPoint> points;
    std::optional<TopologyCensus> census_result;
    std::optional<BoundVerdicts> verdicts;
    std::optional<double> cross_hausdorff;
    SolverDiagnostics diag;
    std::vector<std::pair<std::string, double>> metrics; // ordered, deterministic
    std::vector<std::string> warnings;
    std::vector<std::string> failures; // assertion-grade problems
    std::vector<std::pair<std::string, double>> timings_ms;
    std::optional<GridField> field; // for rendering
    bool field_is_fd = false;

    bool ok() const { return failures.empty(); }
};

struct RunOptions {
    std::string out_dir = ".";
    bool force_svg = false;
    bool force_csv = false;
    std::optional<int> grid_n;
    std::optional<unsigned> seed;
};

inline void export_csv(const Report& rep, const std::string& path);

namespace detail {

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto dt = std::chrono::steady_clock::now() - t0_;
        return std::chrono::duration<double, std::milli>(dt).count();
    }
private:
    std::chrono::steady_clock::time_point t0_;
};

inline RLPotential potential_from_config(const JobConfig& job) {
    std::vector<PoleTerm> terms;
    for (size_t j = 0; j < job.nodes.size(); ++j)
        terms.push_back({job.nodes[j], {cplx(job.weights[j])}});
    return RLPotential(RationalFn(ComplexPolynomial(job.fprime_poly), std::move(terms)),
                       job.level_t);
}

inline SeedBox to_seedbox(const Box& b) { return SeedBox{b.xmin, b.xmax, b.ymin, b.ymax}; }

// |grad v| at the zero crossings of v along grid arms. A healthy level set
// has a gradient bounded away from zero there; a level grazing a saddle
// pinches and the crossing gradient collapses.
inline void boundary_smoothness_warning(const RLPotential& p, const GridField& f,
                                        std::vector<std::string>& warnings) {
    double min_grad = 1e300;
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int j = 1; j + 1 < f.ny; ++j)
        for (int i = 1; i + 1 < f.nx; ++i) {
            if (f.cell(i, j) != Cell::Interior) continue;
            for (int d = 0; d < 4; ++d) {
                int ni = i + di[d], nj = j + dj[d];
                if (f.cell(ni, nj) != Cell::Exterior) continue;
                if (f.value(ni, nj) >= 0.0) continue; // pole-marked, no crossing
                cplx a = f.point(i, j), b = f.point(ni, nj);
                for (int it = 0; it < 40; ++it) {
                    cplx mid = 0.5 * (a + b);
                    try {
                        (p.eval_v(mid) > 0.0 ? a : b) = mid;
                    } catch (const PoleProximity&) {
                        break;
                    }
                }
                try {
                    min_grad = std::min(min_grad, std::abs(p.eval_grad(0.5 * (a + b))));
                } catch (const PoleProximity&) {
                }
            }
        }
    // crossings cannot approach a pinch closer than the grid line passing it,
    // so "near zero" is h-relative: a pinch reads O(h), a healthy level O(1)
    if (min_grad < f.h)
        warnings.push_back("NonSmoothBoundary: |grad v| drops to " + std::to_string(min_grad) +
                           " at the level set (boundary may be singular)");
}

inline void note_common_warnings(const CriticalPointResult& r, std::vector<std::string>& w) {
    if (!r.diag.boundary_grazing.empty())
        w.push_back("boundary-grazing roots: " + std::to_string(r.diag.boundary_grazing.size()) +
                    " (|v| within 1e-9 of the level; suspicious)");
    for (const auto& p : r.points)
        if (p.cls == PointClass::Degenerate) {
            w.push_back("Degenerate critical point near multiplier 1; counts not asserted");
            break;
        }
}

} // namespace detail

/// Parameter search for the extremal n-pole ring-plus-center family:
/// scans eps descending, a ascending, T in {1,2,4,8}, and returns the first
/// triple for which both solvers find exactly 5n-5 points inside {v > 0}.
struct RhieSearchResult {
    double a, eps, T;
    int count;
};

inline RhieSearchResult rhie_search(int n, double tol = 1e-9, unsigned seed = 0x5eedu,
                                    int newton_grid = 512) {
    if (n < 4) throw BadParameters("rhie_search: n >= 4 required");
    const int target = 5 * n - 5;
    RootOptions ropt;
    ropt.seed = seed;
    const double t_ladder[4] = {1.0, 2.0, 4.0, 8.0};
    for (int ei = 0; ei < 30; ++ei) {
        double eps = 0.30 - 0.01 * ei;
        for (int ai = 0; ai <= 20; ++ai) {
            double a = 0.50 + 0.05 * ai;
            if (eps >= a) continue;
            // widest level first: count the whole plane solution set
            RLPotential probe = rhie_config(n, a, eps, t_ladder[3]);
            CriticalPointResult cr;
            try {
                cr = critical_points_composition(probe, tol, ropt);
            } catch (const Error&) {
                continue;
            }
            if (int(cr.points.size()) != target) continue;
            double w_min = 1e300;
            for (const auto& p : cr.points) w_min = std::min(w_min, p.value - t_ladder[3]);
            for (double T : t_ladder) {
                if (w_min + T <= 1e-6) continue;
                RLPotential cand = rhie_config(n, a, eps, T);
                CriticalPointResult comp = critical_points_composition(cand, tol, ropt);
                if (int(comp.points.size()) != target) continue;
                Box box = auto_box(cand);
                CriticalPointResult newt =
                    critical_points_newton(cand, detail::to_seedbox(box), newton_grid, tol);
                if (int(newt.points.size()) != target) continue;
                if (hausdorff_distance(comp.points, newt.points) > 1e-8) continue;
                return {a, eps, T, target};
            }
        }
    }
    throw SearchExhausted("rhie_search: no (a, eps, T) with " + std::to_string(target) +
                          " points in the default search box");
}

namespace detail {

inline void run_rl_like(const JobConfig& job, const RLPotential& p, int grid_n, Report& rep) {
    RootOptions ropt;
    ropt.seed = job.seed;

    Stopwatch sw_comp;
    CriticalPointResult comp = critical_points_composition(p, job.tol, ropt);
    rep.timings_ms.emplace_back("composition_solver", sw_comp.ms());

    Stopwatch sw_box;
    Box box = auto_box(p);
    rep.timings_ms.emplace_back("auto_box", sw_box.ms());

    Stopwatch sw_newton;
    CriticalPointResult newt = critical_points_newton(p, to_seedbox(box), grid_n, job.tol);
    rep.timings_ms.emplace_back("newton_solver", sw_newton.ms());

    rep.points = comp.points;
    rep.diag = comp.diag;
    rep.diag.dropped_seeds = newt.diag.dropped_seeds;
    rep.cross_hausdorff = hausdorff_distance(comp.points, newt.points);
    rep.metrics.emplace_back("order_n", p.order());
    rep.metrics.emplace_back("composition_count", double(comp.points.size()));
    rep.metrics.emplace_back("newton_count", double(newt.points.size()));
    rep.metrics.emplace_back("cross_hausdorff", *rep.cross_hausdorff);
    if (comp.points.size() != newt.points.size() || *rep.cross_hausdorff > 1e-8)
        rep.failures.push_back("solver cross-check failed: composition and Newton sets differ");

    Stopwatch sw_census;
    GridField field = sample_sign_grid(p, box, grid_n);
    TopologyCensus cen = census_nonempty(field, comp.points);
    rep.timings_ms.emplace_back("grid_and_census", sw_census.ms());
    rep.census_result = cen;

    BoundVerdicts bv = bounds_report(p, cen);
    rep.verdicts = bv;
    if (!bv.all_ok()) {
        for (const auto& fmsg : bv.failures) rep.failures.push_back("bound check: " + fmsg);
        if (bv.failures.empty()) rep.failures.push_back("bound check failed");
    }
    if (bv.degenerate_present)
        rep.warnings.push_back("Degenerate critical points: bounds reported, not asserted");

    note_common_warnings(comp, rep.warnings);
    boundary_smoothness_warning(p, field, rep.warnings);
    if (field.pole_cells_marked > 0)
        rep.metrics.emplace_back("pole_cells_marked", double(field.pole_cells_marked));
    rep.field = std::move(field);
}

} // namespace detail

inline int default_grid_n(const JobConfig& job) {
    if (job.grid_n > 0) return job.grid_n;
    switch (job.kind) {
        case JobKind::Dumbbell: return 1024;
        default: return 512;
    }
}

namespace detail {
inline void dispatch(const JobConfig& cfg, int grid_n, Report& rep);
} // namespace detail

/// Executes one job end to end. Assertion-grade problems (failed bounds,
/// solver disagreement, violated caps) land in Report::failures; degenerate
/// or suspicious-but-legal findings land in warnings.
inline Report run(const JobConfig& job, const RunOptions& opts = {}) {
    Report rep;
    rep.kind = job.kind;
    rep.title = job.out_prefix.empty() ? to_string(job.kind) : job.out_prefix;
    JobConfig cfg = job;
    if (opts.grid_n) cfg.grid_n = *opts.grid_n;
    if (opts.seed) cfg.seed = *opts.seed;
    const int grid_n = default_grid_n(cfg);
    detail::Stopwatch sw_total;

    try {
        detail::dispatch(cfg, grid_n, rep);
    } catch (const Error& e) {
        throw Error("job '" + rep.title + "': " + std::string(e.what()));
    }

    rep.timings_ms.emplace_back("total", sw_total.ms());

    if ((cfg.csv || opts.force_csv)) {
        std::string path = opts.out_dir + "/" + rep.title + ".csv";
        export_csv(rep, path);
    }
    if ((cfg.svg || opts.force_svg) && rep.field) {
        std::string path = opts.out_dir + "/" + rep.title + ".svg";
        render_svg(*rep.field, rep.points, {}, path, rep.field_is_fd);
    }
    return rep;
}

namespace detail {

inline void dispatch(const JobConfig& cfg, int grid_n, Report& rep) {
    switch (cfg.kind) {
        case JobKind::Rl: {
            RLPotential p = detail::potential_from_config(cfg);
            detail::run_rl_like(cfg, p, grid_n, rep);
            break;
        }
        case JobKind::Rhie: {
            double a, eps, T;
            if (cfg.rhie_a) {
                a = *cfg.rhie_a;
                eps = cfg.eps;
                T = *cfg.rhie_t;
            } else {
                detail::Stopwatch sw_search;
                RhieSearchResult rs = rhie_search(cfg.n, cfg.tol, cfg.seed);
                rep.timings_ms.emplace_back("rhie_search", sw_search.ms());
                a = rs.a;
                eps = rs.eps;
                T = rs.T;
            }
            rep.metrics.emplace_back("a", a);
            rep.metrics.emplace_back("eps", eps);
            rep.metrics.emplace_back("t", T);
            RLPotential p = rhie_config(cfg.n, a, eps, T);
            detail::run_rl_like(cfg, p, grid_n, rep);
            const int target = 5 * cfg.n - 5;
            rep.metrics.emplace_back("target_5n_minus_5", double(target));
            if (int(rep.points.size()) != target)
                rep.failures.push_back("extremal count mismatch: expected " +
                                       std::to_string(target));
            break;
        }
        case JobKind::Quadrature: {
            PolynomialMap map(cfg.phi);
            ComplexPolynomial P = dirichlet_polynomial(map);
            // boundary data identity on the unit circle
            double bmax = 0.0;
            for (int k = 0; k < 256; ++k) {
                double th = 2.0 * M_PI * k / 256;
                cplx w(std::cos(th), std::sin(th));
                bmax = std::max(bmax, std::abs(2.0 * P(w).real() - 0.5 * std::norm(map(w))));
            }
            rep.metrics.emplace_back("boundary_identity_max_err", bmax);
            if (bmax > 1e-12)
                rep.failures.push_back("disk boundary data mismatch exceeds 1e-12");

            detail::Stopwatch sw_solve;
            QuadratureResult qr = solve_critical_system(map, std::min(cfg.tol, 1e-12));
            rep.timings_ms.emplace_back("disk_newton_sweep", sw_solve.ms());
            rep.points = qr.points;
            rep.metrics.emplace_back("count_cap", double(qr.cap));
            rep.metrics.emplace_back("count", double(qr.points.size()));

            auto warn_si = map.boundary_self_intersections();
            if (!warn_si.empty())
                rep.warnings.push_back("boundary self-intersection candidates: " +
                                       std::to_string(warn_si.size()) +
                                       " (univalence not verified)");

            // image-domain field via disk preimages, for census and rendering
            detail::Stopwatch sw_field;
            double rad = 0.0;
            for (int k = 0; k < 256; ++k) {
                double th = 2.0 * M_PI * k / 256;
                rad = std::max(rad, std::abs(map(cplx(std::cos(th), std::sin(th)))));
            }
            Box box{-rad - 0.2, rad + 0.2, -rad - 0.2, rad + 0.2};
            ComplexPolynomial Pd = P;
            auto vhat = [&](cplx w) { return 2.0 * Pd(w).real() - 0.5 * std::norm(map(w)); };
            auto preimage = [&](cplx z) -> std::optional<cplx> {
                ComplexPolynomial shifted = map.phi() - ComplexPolynomial::constant(z);
                std::optional<cplx> best;
                for (cplx w : poly_roots(shifted, 1e-12))
                    if (std::abs(w) < 1.0 && (!best || std::abs(w) < std::abs(*best))) best = w;
                return best;
            };
            GridField field = sample_field(
                [&](cplx z) {
                    auto w = preimage(z);
                    return w ? vhat(*w) : -0.1;
                },
                box, grid_n);
            rep.timings_ms.emplace_back("image_field", sw_field.ms());
            TopologyCensus cen = census_nonempty(field, rep.points);
            rep.census_result = cen;
            if (cen.all_nondegenerate() && !cen.morse_all_ok())
                rep.failures.push_back("image-domain census violates S - M = k - 2");
            rep.field = std::move(field);
            break;
        }
        case JobKind::Oval: {
            NeumannOval oval =
                cfg.oval_r ? NeumannOval::from_R(*cfg.oval_r) : NeumannOval::from_a(*cfg.oval_a);
            rep.metrics.emplace_back("r", oval.R());
            rep.metrics.emplace_back("a", oval.a());
            rep.metrics.emplace_back("r0", NeumannOval::R0());
            rep.points = oval.critical_points();
            detail::Stopwatch sw_sweep;
            std::vector<CriticalPoint> swept = oval.newton_sweep(std::min(grid_n, 384));
            rep.timings_ms.emplace_back("newton_sweep", sw_sweep.ms());
            int nonreal = 0;
            for (const auto& s : swept)
                if (std::abs(s.location.imag()) > 1e-8) ++nonreal;
            rep.metrics.emplace_back("sweep_count", double(swept.size()));
            rep.metrics.emplace_back("sweep_nonreal", double(nonreal));
            if (nonreal > 0) rep.failures.push_back("Newton sweep found nonreal critical points");
            bool degen = false;
            for (const auto& p : rep.points)
                if (p.cls == PointClass::Degenerate) degen = true;
            if (degen) {
                rep.warnings.push_back("Degenerate critical point (R within the threshold band)");
            } else {
                rep.cross_hausdorff = hausdorff_distance(rep.points, swept);
                rep.metrics.emplace_back("cross_hausdorff", *rep.cross_hausdorff);
                if (swept.size() != rep.points.size() || *rep.cross_hausdorff > 1e-8)
                    rep.failures.push_back("closed-form and sweep critical sets differ");
            }
            GridField field =
                sample_field([&](cplx z) { return oval.v(z); }, oval.bounding_box(), grid_n);
            TopologyCensus cen = census_nonempty(field, rep.points);
            rep.census_result = cen;
            if (cen.all_nondegenerate() && !cen.morse_all_ok())
                rep.failures.push_back("oval census violates S - M = k - 2");
            rep.field = std::move(field);
            break;
        }
        case JobKind::Neck: {
            detail::Stopwatch sw;
            NeckResult nr = neck_experiment(cfg.eps, cfg.m_value, grid_n, 1e-10);
            rep.timings_ms.emplace_back("fd_solve", sw.ms());
            rep.metrics.emplace_back("eps", cfg.eps);
            rep.metrics.emplace_back("m", cfg.m_value);
            rep.metrics.emplace_back("sup_mid", nr.sup_mid);
            rep.metrics.emplace_back("bound", nr.bound);
            if (!nr.ok) rep.failures.push_back("mid-neck maximum exceeds the barrier bound");
            break;
        }
        case JobKind::Dumbbell: {
            detail::Stopwatch sw;
            DumbbellResult dr = dumbbell_experiment(cfg.eps, cfg.delta, grid_n, cfg.disks, 1e-10);
            rep.timings_ms.emplace_back("fd_solve_census", sw.ms());
            rep.points = grid_census_points(dr.census);
            detail::sort_points(rep.points);
            rep.metrics.emplace_back("maxima", double(dr.census.maxima.size()));
            rep.metrics.emplace_back("saddles", double(dr.census.saddles.size()));
            rep.metrics.emplace_back("min_expected", double(dr.min_expected));
            if (!dr.ok)
                rep.failures.push_back("chain census found fewer than 2n - 1 critical points");
            if (dr.census.degenerate_cells > 0)
                rep.warnings.push_back("Degenerate census cells: " +
                                       std::to_string(dr.census.degenerate_cells));
            TopologyCensus cen = census_nonempty(dr.field, rep.points);
            rep.census_result = cen;
            if (cen.all_nondegenerate() && !cen.morse_all_ok())
                rep.failures.push_back("dumbbell census violates S - M = k - 2");
            rep.field = std::move(dr.field);
            rep.field_is_fd = true;
            break;
        }
        case JobKind::Pde: {
            GridField mask = read_pgm_mask(cfg.mask_path, cfg.mask_h);
            detail::Stopwatch sw;
            GridField sol = fd_solve(fd_from_mask(std::move(mask)), 1e-10);
            rep.timings_ms.emplace_back("fd_solve", sw.ms());
            GridCensus gc = grid_census(sol);
            rep.points = grid_census_points(gc);
            detail::sort_points(rep.points);
            rep.metrics.emplace_back("maxima", double(gc.maxima.size()));
            rep.metrics.emplace_back("saddles", double(gc.saddles.size()));
            if (gc.degenerate_cells > 0)
                rep.warnings.push_back("Degenerate census cells: " +
                                       std::to_string(gc.degenerate_cells));
            TopologyCensus cen = census_nonempty(sol, rep.points);
            rep.census_result = cen;
            if (cen.all_nondegenerate() && !cen.morse_all_ok())
                rep.warnings.push_back("mask census violates S - M = k - 2 at this resolution");
            rep.field = std::move(sol);
            rep.field_is_fd = true;
            break;
        }
    }
}

} // namespace detail

/// CSV report: one row per critical point, then census/bounds/metrics
/// blocks. Plain numerics need no quoting; stable column order and fixed
/// float formatting keep bytes reproducible.
inline void export_csv(const Report& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write CSV: " + path);
    char buf[160];
    out << "re,im,class,multiplier,v,residual\n";
    for (const auto& p : rep.points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s,%.12g,%.12g,%.3g\n", p.location.real(),
                      p.location.imag(), to_string(p.cls), p.multiplier, p.value, p.residual);
        out << buf;
    }
    if (rep.census_result) {
        out << "\ncensus\ncomponent,maxima,saddles,degenerate,k,morse_ok\n";
        for (const auto& c : rep.census_result->components) {
            std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%s\n", c.component_id, c.maxima,
                          c.saddles, c.degenerate, c.connectivity, c.morse_ok ? "true" : "false");
            out << buf;
        }
    }
    if (rep.verdicts) {
        out << "\nbounds\ncheck,pass\n";
        const auto& v = *rep.verdicts;
        out << "morse_identity," << (v.morse_ok ? "true" : "false") << "\n";
        out << "total_le_4n_plus_k_minus_6,"
            << (v.total_bound_applies ? (v.total_bound_ok ? "true" : "false") : "n/a") << "\n";
        out << "maxima_le_2n_minus_2," << (v.maxima_bound_ok ? "true" : "false") << "\n";
        out << "k_le_n_plus_1," << (v.connectivity_bound_ok ? "true" : "false") << "\n";
        out << "asserted," << (v.asserted() ? "true" : "false") << "\n";
    }
    if (!rep.metrics.empty()) {
        out << "\nmetrics\nname,value\n";
        for (const auto& [k, x] : rep.metrics) {
            std::snprintf(buf, sizeof buf, "%s,%.12g\n", k.c_str(), x);
            out << buf;
        }
    }
    if (!rep.warnings.empty()) {
        out << "\nwarnings\n";
        for (const auto& w : rep.warnings) {
            std::string q = w;
            bool need = q.find_first_of(",\"\n") != std::string::npos;
            if (need) {
                std::string esc = "\"";
                for (char c : q) esc += (c == '"') ? std::string("\"\"") : std::string(1, c);
                esc += "\"";
                q = esc;
            }
            out << q << "\n";
        }
    }
    if (!rep.failures.empty()) {
        out << "\nfailures\n";
        for (const auto& f : rep.failures) out << f << "\n";
    }
    if (!out) throw IoError("failed writing CSV: " + path);
}

} // namespace landscape
