#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "landscape/bounds.hpp"
#include "landscape/pipeline.hpp"
#include "landscape/critical_points.hpp"
#include "landscape/grid.hpp"
#include "landscape/rl_potential.hpp"
#include "landscape/topology.hpp"

using namespace landscape;

namespace {

cplx unit_root(int k, int n) { return std::polar(1.0, 2.0 * M_PI * k / n); }

RLPotential trefoil(double T) {
    std::vector<cplx> nodes{unit_root(0, 3), unit_root(1, 3), unit_root(2, 3)};
    return RLPotential(RationalFn::simple_poles(nodes, {0.75, 0.75, 0.75}), T);
}

RLPotential five_ring_plus_center(double T) {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
    for (int k = 0; k < 5; ++k) {
        nodes.push_back(unit_root(k, 5));
        weights.push_back(cplx(1.0 / 3.0));
    }
    nodes.push_back(0.0);
    weights.push_back(cplx(9.0 / 40.0));
    return RLPotential(RationalFn::simple_poles(nodes, weights), T);
}

// central finite difference of eval_v
cplx fd_grad(const RLPotential& p, cplx z, double h = 1e-5) {
    double gx = (p.eval_v(z + h) - p.eval_v(z - h)) / (2 * h);
    double gy = (p.eval_v(z + cplx(0, h)) - p.eval_v(z - cplx(0, h))) / (2 * h);
    return {gx, gy};
}

double fd_hessian_det(const RLPotential& p, cplx z, double h = 1e-4) {
    double vxx = (p.eval_v(z + h) - 2 * p.eval_v(z) + p.eval_v(z - h)) / (h * h);
    double vyy =
        (p.eval_v(z + cplx(0, h)) - 2 * p.eval_v(z) + p.eval_v(z - cplx(0, h))) / (h * h);
    double vxy = (p.eval_v(z + cplx(h, h)) - p.eval_v(z + cplx(h, -h)) -
                  p.eval_v(z + cplx(-h, h)) + p.eval_v(z + cplx(-h, -h))) /
                 (4 * h * h);
    return vxx * vyy - vxy * vxy;
}

} // namespace

TEST_CASE("eval_v closed forms") {
    // single node, weight 1, T = 0: v = log|z| - |z|^2/2
    RLPotential single(RationalFn::simple_poles({cplx(0.0)}, {cplx(1.0)}), 0.0);
    CHECK(std::abs(single.eval_v(cplx(1.0)) - (-0.5)) < 1e-15);
    CHECK(std::abs(single.eval_v(cplx(0, 1)) - (-0.5)) < 1e-15);

    // trefoil level sets: v(0) = T because the nodes have unit modulus
    CHECK(std::abs(trefoil(0.4).eval_v(cplx(0.0)) - 0.4) < 1e-15);
    CHECK(std::abs(trefoil(0.5).eval_v(cplx(0.0)) - 0.5) < 1e-15);

    // boundary: |z|^2/2 - (3/4) sum log|z - w^k| = T on the level curve
    RLPotential pL = trefoil(0.5);
    // point on the boundary along the symmetry ray theta = pi/3 (bisected)
    double lo = 1.5, hi = 2.5;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (pL.eval_v(std::polar(mid, M_PI / 3)) > 0) lo = mid;
        else hi = mid;
    }
    cplx zb = std::polar(0.5 * (lo + hi), M_PI / 3);
    CHECK(std::abs(pL.eval_v(zb)) < 1e-12);
    double lhs = 0.5 * std::norm(zb);
    for (int k = 0; k < 3; ++k) lhs -= 0.75 * std::log(std::abs(zb - unit_root(k, 3)));
    CHECK(std::abs(lhs - 0.5) < 1e-12);
}

TEST_CASE("complex residue on a simple pole is rejected") {
    CHECK_THROWS_AS(RLPotential(RationalFn::simple_poles({cplx(0.0)}, {cplx(1.0, 0.5)}), 1.0),
                    BadParameters);
}

TEST_CASE("eval_grad: symmetry zeros and finite-difference oracle") {
    RLPotential pL = trefoil(0.5);
    CHECK(std::abs(pL.eval_grad(cplx(0.0))) < 1e-14);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    int checked = 0;
    for (int k = 0; k < 4000 && checked < 1000; ++k) {
        cplx z(u(rng), u(rng));
        bool near = false;
        for (cplx a : pL.nodes())
            if (std::abs(z - a) < 0.25) near = true;
        if (near) continue;
        CHECK(std::abs(pL.eval_grad(z) - fd_grad(pL, z)) < 1e-8);
        ++checked;
    }
    REQUIRE(checked == 1000);
}

TEST_CASE("order-3 trefoil, tight level: 10 points, 4 maxima, 6 saddles") {
    RLPotential p = trefoil(0.5);
    auto res = critical_points_composition(p);
    REQUIRE(res.points.size() == 10);
    CHECK(count_class(res.points, PointClass::Maximum) == 4);
    CHECK(count_class(res.points, PointClass::Saddle) == 6);
    CHECK(count_class(res.points, PointClass::Degenerate) == 0);

    // frozen locations on the real axis: roots of t^3 - (9/4) t - 1
    bool found_center = false, found_inner = false, found_ring = false, found_outer = false;
    for (const auto& cp : res.points) {
        CHECK(cp.residual <= 1e-9);
        CHECK(cp.value > 0.0);
        if (std::abs(cp.location) < 1e-10) {
            found_center = true;
            CHECK(cp.cls == PointClass::Maximum);
            CHECK(cp.multiplier < 1e-10);
            CHECK(std::abs(cp.value - 0.5) < 1e-12);
        }
        if (std::abs(cp.location - cplx(-0.5, 0.0)) < 1e-10) {
            found_inner = true;
            CHECK(cp.cls == PointClass::Saddle);
            CHECK(std::abs(cp.multiplier - 5.0 / 3.0) < 1e-10);
            CHECK(std::abs(cp.value - 0.46333727674228759) < 1e-12);
        }
        if (std::abs(cp.location - cplx(-1.1861406616345072, 0.0)) < 1e-9) {
            found_ring = true;
            CHECK(cp.cls == PointClass::Maximum);
            CHECK(std::abs(cp.multiplier - 0.12409377442300478) < 1e-9);
            CHECK(std::abs(cp.value - 0.53276149901463014) < 1e-11);
        }
        if (std::abs(cp.location - cplx(1.6861406616345072, 0.0)) < 1e-9) {
            found_outer = true;
            CHECK(cp.cls == PointClass::Saddle);
            CHECK(std::abs(cp.multiplier - 1.7907604410896714) < 1e-9);
            CHECK(std::abs(cp.value - 0.07849421072982199) < 1e-11);
        }
    }
    CHECK(found_center);
    CHECK(found_inner);
    CHECK(found_ring);
    CHECK(found_outer);
}

TEST_CASE("order-3 trefoil, loose level: same plane set, 7 inside") {
    RLPotential p = trefoil(0.4);
    auto res = critical_points_composition(p);
    REQUIRE(res.points.size() == 7);
    CHECK(count_class(res.points, PointClass::Maximum) == 4);
    CHECK(count_class(res.points, PointClass::Saddle) == 3);
    CHECK(res.diag.discarded_outside == 3); // the outer saddles drop below the level
}

TEST_CASE("order-6 example: 25 points, 10 maxima, 15 saddles") {
    RLPotential p = five_ring_plus_center(0.5);
    auto res = critical_points_composition(p);
    REQUIRE(res.points.size() == 25);
    CHECK(count_class(res.points, PointClass::Maximum) == 10);
    CHECK(count_class(res.points, PointClass::Saddle) == 15);
}

TEST_CASE("newton solver matches composition solver on the shipped examples") {
    for (auto& p : {trefoil(0.5), trefoil(0.4), five_ring_plus_center(0.5)}) {
        auto comp = critical_points_composition(p);
        Box b = auto_box(p);
        auto newt = critical_points_newton(p, SeedBox{b.xmin, b.xmax, b.ymin, b.ymax}, 256);
        REQUIRE(newt.points.size() == comp.points.size());
        CHECK(hausdorff_distance(comp.points, newt.points) < 1e-8);
    }
}

TEST_CASE("two symmetric nodes in the neck regime: saddle between two real maxima") {
    // nodes +-i, unit weights: real-axis maxima at exactly +-1, saddle at 0
    RLPotential p(RationalFn::simple_poles({cplx(0, 1), cplx(0, -1)}, {1.0, 1.0}), 0.5);
    auto comp = critical_points_composition(p);
    REQUIRE(comp.points.size() == 3);
    CHECK(count_class(comp.points, PointClass::Maximum) == 2);
    CHECK(count_class(comp.points, PointClass::Saddle) == 1);
    for (const auto& cp : comp.points) CHECK(std::abs(cp.location.imag()) < 1e-12);
    CHECK(std::abs(comp.points[0].location - cplx(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(comp.points[1].location) < 1e-12);
    CHECK(std::abs(comp.points[2].location - cplx(1.0, 0.0)) < 1e-12);

    // dense 1-D oracle along the real axis: v restricted there peaks at +-1
    auto v_line = [&p](double t) { return p.eval_v(cplx(t, 0.0)); };
    double best_t = 0.0, best_v = -1e300;
    for (int k = 0; k <= 20000; ++k) {
        double t = 0.02 + 2.48 * k / 20000.0;
        if (v_line(t) > best_v) {
            best_v = v_line(t);
            best_t = t;
        }
    }
    CHECK(std::abs(best_t - 1.0) < 5e-4);

    Box b = auto_box(p);
    auto newt = critical_points_newton(p, SeedBox{b.xmin, b.xmax, b.ymin, b.ymax}, 256);
    REQUIRE(newt.points.size() == 3);
    CHECK(hausdorff_distance(comp.points, newt.points) < 1e-10);
}

TEST_CASE("annulus-degenerate inputs are refused by both solvers") {
    RLPotential ann(RationalFn::simple_poles({cplx(0.0)}, {cplx(1.0)}), 3.0);
    CHECK(ann.annulus_degenerate());
    CHECK_THROWS_AS(critical_points_composition(ann), AnnulusDegenerate);
    CHECK_THROWS_AS(critical_points_newton(ann, SeedBox{-3, 3, -3, 3}, 64), AnnulusDegenerate);

    // shifted circle-reflection form: constant part conj(a) plus r^2/(z - a)
    cplx a(0.5, -0.25);
    RLPotential shifted(RationalFn(ComplexPolynomial{std::conj(a)}, {PoleTerm{a, {cplx(2.0)}}}),
                        3.0);
    CHECK(shifted.annulus_degenerate());
    CHECK_THROWS_AS(critical_points_composition(shifted), AnnulusDegenerate);

    // a two-node potential is not degenerate
    CHECK_FALSE(trefoil(0.5).annulus_degenerate());
}

TEST_CASE("classification agrees with finite-difference Hessians") {
    for (auto& p : {trefoil(0.5), trefoil(0.4), five_ring_plus_center(0.5)}) {
        auto res = critical_points_composition(p);
        for (const auto& cp : res.points) {
            double det = fd_hessian_det(p, cp.location);
            double sign_mult = 1.0 - cp.multiplier * cp.multiplier;
            CHECK(det * sign_mult > 0.0);
            CHECK((cp.cls == PointClass::Maximum) == (det > 0.0));
        }
    }
}

TEST_CASE("discarded roots fail the residual filter decisively or sit outside") {
    RLPotential p = five_ring_plus_center(0.5);
    double tol = 1e-9;
    auto res = critical_points_composition(p, tol);
    // composed fixed-point polynomial has degree n^2 = 36 here
    CHECK(res.diag.roots_total == 36);
    CHECK(res.diag.discarded_period2 + res.diag.discarded_outside +
              int(res.points.size()) ==
          res.diag.roots_total);
    for (double r : res.diag.discarded_residuals) CHECK(r >= 10.0 * tol);
}

TEST_CASE("counting bounds hold and are attained on the shipped examples") {
    struct Case {
        RLPotential p;
        int n, k, total;
    };
    std::vector<Case> cases{{trefoil(0.5), 3, 4, 10},
                            {trefoil(0.4), 3, 1, 7},
                            {five_ring_plus_center(0.5), 6, 7, 25}};
    for (auto& cs : cases) {
        auto res = critical_points_composition(cs.p);
        Box b = auto_box(cs.p);
        GridField f = sample_sign_grid(cs.p, b, 512);
        TopologyCensus cen = census_nonempty(f, res.points);
        REQUIRE(cen.components.size() == 1);
        CHECK(cen.components[0].connectivity == cs.k);
        BoundVerdicts v = bounds_report(cs.p, cen);
        CHECK(v.all_ok());
        CHECK(v.asserted());
        CHECK(int(res.points.size()) == cs.total);
        CHECK(cs.total == 4 * cs.n + cs.k - 6); // the bound is attained
    }
}

TEST_CASE("extremal ring-with-center counts at known parameters") {
    RLPotential p = rhie_config(4, 1.30, 0.09, 1.0);
    CHECK(p.order() == 4);
    auto res = critical_points_composition(p);
    REQUIRE(res.points.size() == 15);
    CHECK(count_class(res.points, PointClass::Maximum) == 6);
    CHECK(count_class(res.points, PointClass::Saddle) == 9);

    CHECK_THROWS_AS(rhie_config(3, 1.0, 0.05, 1.0), BadParameters);
    CHECK_THROWS_AS(rhie_config(4, 1.0, 1.5, 1.0), BadParameters);

    // eps = 0: the center node simply drops out (pure polygon of n-1 poles)
    std::vector<cplx> ring_nodes;
    for (int j = 0; j < 3; ++j) ring_nodes.push_back(std::polar(1.3, 2.0 * M_PI * j / 3));
    RLPotential ring(RationalFn::simple_poles(ring_nodes, {1.0, 1.0, 1.0}), 1.0);
    CHECK(ring.order() == 3);
}

TEST_CASE("parameter search returns verified extremal triples") {
    RhieSearchResult r4 = rhie_search(4);
    CHECK(r4.count == 15);
    CHECK(r4.a == Catch::Approx(1.30));
    CHECK(r4.eps == Catch::Approx(0.09));
    CHECK(r4.T == 1.0);

    RhieSearchResult r6 = rhie_search(6);
    CHECK(r6.count == 25);
    auto pts = critical_points_composition(rhie_config(6, r6.a, r6.eps, r6.T)).points;
    CHECK(int(pts.size()) == 25);

    CHECK_THROWS_AS(rhie_search(3), BadParameters);
}

TEST_CASE("auto_box: border negative, translation covariance") {
    RLPotential p = trefoil(0.5);
    Box b = auto_box(p);
    CHECK(b.xmin <= -2.5);
    CHECK(b.xmax >= 2.5);
    for (int k = 0; k < 512; ++k) {
        double t = double(k) / 511.0;
        CHECK(p.eval_v(cplx(b.xmin + t * b.width(), b.ymin)) < 0);
        CHECK(p.eval_v(cplx(b.xmin + t * b.width(), b.ymax)) < 0);
        CHECK(p.eval_v(cplx(b.xmin, b.ymin + t * b.height())) < 0);
        CHECK(p.eval_v(cplx(b.xmax, b.ymin + t * b.height())) < 0);
    }

    // a single far node: {v > 0} sits near the origin (where |z|^2/2 is
    // small), nowhere near the node; the box must still contain it
    RLPotential far(RationalFn::simple_poles({cplx(10.0, 0.0)}, {cplx(1.0)}), 0.25);
    CHECK(far.eval_v(cplx(0.0)) > 0.0);
    Box bf = auto_box(far);
    CHECK(bf.xmin < 0.0);
    CHECK(bf.xmax > 10.0);
    auto res = critical_points_newton(far, SeedBox{bf.xmin, bf.xmax, bf.ymin, bf.ymax}, 512);
    REQUIRE(!res.points.empty());
    for (const auto& cp : res.points) {
        CHECK(cp.location.real() > bf.xmin);
        CHECK(cp.location.real() < bf.xmax);
        CHECK(std::abs(cp.location) < 3.0); // the domain hugs the origin
    }
}
