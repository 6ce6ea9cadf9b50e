#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "landscape/critical_points.hpp"
#include "landscape/fd_poisson.hpp"
#include "landscape/rl_potential.hpp"
#include "landscape/topology.hpp"

using namespace landscape;

namespace {

cplx unit_root(int k, int n) { return std::polar(1.0, 2.0 * M_PI * k / n); }

RLPotential trefoil(double T) {
    std::vector<cplx> nodes{unit_root(0, 3), unit_root(1, 3), unit_root(2, 3)};
    return RLPotential(RationalFn::simple_poles(nodes, {0.75, 0.75, 0.75}), T);
}

double disk_max_error(int grid_n) {
    auto psi = [](cplx z) { return 1.0 - std::abs(z); };
    FDProblem prob = fd_from_implicit(Box{-1.15, 1.15, -1.15, 1.15}, grid_n, psi);
    GridField sol = fd_solve(prob, 1e-11);
    double err = 0.0;
    for (int j = 0; j < sol.ny; ++j)
        for (int i = 0; i < sol.nx; ++i) {
            if (sol.cell(i, j) != Cell::Interior) continue;
            double exact = 0.5 * (1.0 - std::norm(sol.point(i, j)));
            err = std::max(err, std::abs(sol.value(i, j) - exact));
        }
    return err;
}

} // namespace

TEST_CASE("disk benchmark: second-order convergence, correct center value") {
    double e129 = disk_max_error(129);
    double e257 = disk_max_error(257);
    double e513 = disk_max_error(513);
    INFO("errors " << e129 << " " << e257 << " " << e513);
    CHECK(e129 / e257 > 3.5);
    CHECK(e129 / e257 < 4.5);
    CHECK(e257 / e513 > 3.5);
    CHECK(e257 / e513 < 4.5);

    auto psi = [](cplx z) { return 1.0 - std::abs(z); };
    GridField sol = fd_solve(fd_from_implicit(Box{-1.15, 1.15, -1.15, 1.15}, 257, psi), 1e-11);
    auto [i0, j0] = sol.nearest(cplx(0.0));
    CHECK(std::abs(sol.value(i0, j0) - 0.5) < 1e-4);
}

TEST_CASE("square torsion value at the center matches the classical series") {
    // grid-aligned square [-1,1]^2, Dirichlet 0
    GridField f;
    int n = 257;
    f.box = Box{-1, 1, -1, 1};
    f.h = 2.0 / (n - 1);
    f.nx = f.ny = n;
    f.values.assign(size_t(n) * n, 0.0);
    f.mask.assign(size_t(n) * n, Cell::Interior);
    for (int k = 0; k < n; ++k) {
        f.mask[f.idx(k, 0)] = f.mask[f.idx(k, n - 1)] = Cell::Boundary;
        f.mask[f.idx(0, k)] = f.mask[f.idx(n - 1, k)] = Cell::Boundary;
    }
    GridField sol = fd_solve(fd_from_mask(std::move(f)), 1e-11);

    // series oracle: v(0,0) = 1 - (32/pi^3) sum_{k odd} (-1)^((k-1)/2) / (k^3 cosh(k pi/2))
    double s = 0.0;
    for (int k = 1; k < 40; k += 2)
        s += ((k / 2) % 2 == 0 ? 1.0 : -1.0) / (k * k * k * std::cosh(k * M_PI / 2));
    double exact = 1.0 - 32.0 / (M_PI * M_PI * M_PI) * s;
    CHECK(exact == Catch::Approx(0.58937082625211).epsilon(1e-10));
    CHECK(std::abs(sol.value((n - 1) / 2, (n - 1) / 2) - exact) < 2e-5);
}

TEST_CASE("discrete minimum principle: positive inside for admissible data") {
    auto psi = [](cplx z) { return 1.0 - std::abs(z); };
    GridField sol = fd_solve(fd_from_implicit(Box{-1.15, 1.15, -1.15, 1.15}, 201, psi), 1e-11);
    for (int j = 0; j < sol.ny; ++j)
        for (int i = 0; i < sol.nx; ++i)
            if (sol.cell(i, j) == Cell::Interior) CHECK(sol.value(i, j) > 0.0);
}

TEST_CASE("solver determinism: identical bits across runs") {
    auto psi = [](cplx z) { return 1.0 - std::abs(z); };
    GridField a = fd_solve(fd_from_implicit(Box{-1.15, 1.15, -1.15, 1.15}, 129, psi), 1e-11);
    GridField b = fd_solve(fd_from_implicit(Box{-1.15, 1.15, -1.15, 1.15}, 129, psi), 1e-11);
    REQUIRE(a.values.size() == b.values.size());
    for (size_t k = 0; k < a.values.size(); ++k) CHECK(a.values[k] == b.values[k]);
}

TEST_CASE("order-3 field: grid solution matches the closed form at O(h^2)") {
    RLPotential p = trefoil(0.5);
    auto run_err = [&p](int grid_n) {
        FDProblem prob = fd_from_implicit(Box{-2.6, 2.6, -2.6, 2.6}, grid_n,
                                          [&p](cplx z) { return p.eval_v(z); });
        GridField sol = fd_solve(prob, 1e-11);
        double err = 0.0;
        for (int j = 0; j < sol.ny; ++j)
            for (int i = 0; i < sol.nx; ++i)
                if (sol.cell(i, j) == Cell::Interior)
                    err = std::max(err, std::abs(sol.value(i, j) - p.eval_v(sol.point(i, j))));
        return err;
    };
    double e256 = run_err(257), e512 = run_err(513);
    INFO("errors " << e256 << " " << e512);
    CHECK(e256 < 0.01);
    CHECK(e256 / e512 > 2.5);
    CHECK(e256 / e512 < 6.0);
}

TEST_CASE("grid census reproduces the analytic counts and locations") {
    RLPotential p = trefoil(0.4); // simply connected example: 4 maxima, 3 saddles
    FDProblem prob = fd_from_implicit(Box{-2.6, 2.6, -2.6, 2.6}, 513,
                                      [&p](cplx z) { return p.eval_v(z); });
    GridField sol = fd_solve(prob, 1e-11);
    GridCensus gc = grid_census(sol);
    auto analytic = critical_points_composition(p).points;
    REQUIRE(gc.maxima.size() == 4);
    REQUIRE(gc.saddles.size() == 3);
    for (const auto& gp : gc.maxima) {
        double best = 1e300;
        for (const auto& ap : analytic) best = std::min(best, std::abs(gp.location - ap.location));
        CHECK(best <= 2.0 * sol.h);
    }
    for (const auto& gp : gc.saddles) {
        double best = 1e300;
        for (const auto& ap : analytic) best = std::min(best, std::abs(gp.location - ap.location));
        CHECK(best <= 2.0 * sol.h);
    }
}

TEST_CASE("neck bound holds and tightens as the neck thins") {
    NeckResult r02 = neck_experiment(0.2, 10.0, 512);
    NeckResult r01 = neck_experiment(0.1, 10.0, 512);
    NeckResult r005 = neck_experiment(0.05, 10.0, 512);
    CHECK(r02.bound == Catch::Approx(0.82780908945207649).epsilon(1e-12));
    CHECK(r01.bound == Catch::Approx(0.025528125816955264).epsilon(1e-12));
    CHECK(r005.bound == Catch::Approx(0.0025060280691015601).epsilon(1e-12));
    CHECK(r02.ok);
    CHECK(r01.ok);
    CHECK(r005.ok);
    CHECK(r02.sup_mid > r01.sup_mid);
    CHECK(r01.sup_mid > r005.sup_mid);
    CHECK(r005.sup_mid > 0.0);
    CHECK_THROWS_AS(neck_experiment(0.3, 10.0, 512), BadParameters);
    CHECK_THROWS_AS(neck_experiment(0.1, 0.5, 512), BadParameters);
    CHECK_THROWS_AS(neck_experiment(0.01, 10.0, 64), ResolutionTooCoarse);
}

TEST_CASE("dumbbell: two maxima and the neck saddle") {
    DumbbellResult res = dumbbell_experiment(0.05, 0.05, 512, 2);
    CHECK(res.census.maxima.size() == 2);
    CHECK(res.census.saddles.size() == 1);
    CHECK(res.ok);
    // maxima near the disk centers, saddle near the origin
    for (const auto& m : res.census.maxima)
        CHECK(std::abs(std::abs(m.location.real()) - 1.05) < 0.35);
    CHECK(std::abs(res.census.saddles[0].location) < 0.1);
}

TEST_CASE("three-disk chain: at least five critical points") {
    DumbbellResult res = dumbbell_experiment(0.05, 0.05, 768, 3);
    CHECK(res.min_expected == 5);
    CHECK(res.ok);
    CHECK(res.census.maxima.size() == 3);
    CHECK(res.census.saddles.size() >= 2);
}

TEST_CASE("wide neck limit: a single ovaloid with one maximum") {
    DumbbellResult res = dumbbell_experiment(0.95, 0.05, 384, 2);
    CHECK(res.census.maxima.size() == 1);
    CHECK(res.census.saddles.empty());
}

TEST_CASE("plain-text mask import and solve") {
    // write a coarse disk mask
    std::string path = "fd_mask_test.pgm";
    {
        std::ofstream out(path);
        out << "P2\n# test disk\n41 41\n255\n";
        for (int row = 0; row < 41; ++row) {
            for (int col = 0; col < 41; ++col) {
                double x = (col - 20) / 20.0, y = (row - 20) / 20.0;
                out << ((x * x + y * y < 0.9) ? 255 : 0) << " ";
            }
            out << "\n";
        }
    }
    GridField mask = read_pgm_mask(path);
    CHECK(mask.nx == 41);
    CHECK(mask.ny == 41);
    GridField sol = fd_solve(fd_from_mask(std::move(mask)), 1e-11);
    GridCensus gc = grid_census(sol);
    CHECK(gc.maxima.size() == 1);
    CHECK(gc.saddles.empty());
    std::remove(path.c_str());

    CHECK_THROWS_AS(read_pgm_mask("does_not_exist.pgm"), IoError);
    {
        std::ofstream out(path);
        out << "P5\n41 41\n255\n";
    }
    CHECK_THROWS_AS(read_pgm_mask(path), IoError);
    std::remove(path.c_str());
}
