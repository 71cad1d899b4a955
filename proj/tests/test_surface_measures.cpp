#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ballconv/arc_body.hpp"
#include "ballconv/bodies.hpp"
#include "ballconv/errors.hpp"
#include "ballconv/numerics.hpp"
#include "ballconv/surface_measures.hpp"

using namespace ballconv;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ConvexBody unit_disk() { return Ball{Point(0.0, 0.0), 1.0}; }
ConvexBody ellipse21() { return Ellipsoid{Point(0.0, 0.0), {2.0, 1.0, 1.0}}; }
ConvexBody ellipsoid3() { return Ellipsoid{Point(0.0, 0.0, 0.0), {2.0, 1.5, 1.0}}; }

ConvexBody perturbed_disk() {
    SupportCurve2D sc;
    sc.c0 = 1.0;
    sc.cos_coef = {0.0, 0.0, 0.1};
    return sc;
}

} // namespace

TEST_CASE("exponent limits and exclusions") {
    OmegaExponents e = omega_exponents(kInf, 2);
    CHECK(e.support_exp == 2.0);
    CHECK(e.curv_exp == 1.0);
    OmegaExponents em = omega_exponents(-kInf, 2);
    CHECK(em.support_exp == 2.0);
    CHECK(em.curv_exp == 1.0);
    CHECK_THROWS_AS(omega_exponents(-2.0, 2), ParamError);
    OmegaExponents sat = omega_exponents(-2.0 + 1e-9, 2);
    CHECK(sat.saturated);
    CHECK(std::abs(sat.support_exp) == 1e6);
}

TEST_CASE("unit ball closed form, independent of p") {
    SphereRule rule = build_rule(2, 512);
    for (double R : {1.5, 2.0, 10.0}) {
        double want = 2.0 * kPi * std::pow(1.0 - 1.0 / R, 1.0 / 3.0);
        for (double p : {-1.0, 0.0, 1.0, 2.0, kInf, -kInf}) {
            MeasureResult m = omega_p_R(unit_disk(), OmegaParams{p, R}, rule);
            CHECK(std::abs(m.value - want) / want < 1e-9);
        }
    }
}

TEST_CASE("bodies built from radius-R balls have vanishing measure") {
    SphereRule rule = build_rule(2, 128);
    // K = R B^2
    MeasureResult m = omega_p_R(ConvexBody{Ball{Point(0.0, 0.0), 2.0}}, OmegaParams{1.0, 2.0}, rule);
    CHECK(m.value == 0.0);
    // R-ball polygon (intersection of radius-R disks)
    std::vector<Disk> disks{{Point(0.3, 0.0), 2.0}, {Point(-0.2, 0.2), 2.0}, {Point(0.0, -0.3), 2.0}};
    ConvexBody poly = disk_intersection(disks);
    for (double p : {-1.0, 0.0, 1.0, 5.0, kInf}) {
        MeasureResult mp = omega_p_R(poly, OmegaParams{p, 2.0}, rule);
        CHECK(mp.value == 0.0);
    }
}

TEST_CASE("ellipsoid ratio law") {
    SphereRule rule2 = build_rule(2, 512);
    double k2 = std::pow(2.0, -2.0 / 3.0); // (ab)^{-2/(n+1)}
    double om1 = omega_p_R(ellipse21(), OmegaParams{1.0, 5.0}, rule2).value;
    for (double p : {0.0, 2.0, 5.0, kInf}) {
        double om = omega_p_R(ellipse21(), OmegaParams{p, 5.0}, rule2).value;
        double e1 = std::isinf(p) ? 2.0 : 2.0 * (p - 1.0) / (2.0 + p);
        CHECK(std::abs(om / om1 - std::pow(k2, e1)) < 1e-7 * std::pow(k2, e1));
    }
    SphereRule rule3 = build_rule(3, 48);
    double k3 = std::pow(2.0 * 1.5 * 1.0, -2.0 / 4.0);
    double om1_3 = omega_p_R(ellipsoid3(), OmegaParams{1.0, 5.0}, rule3).value;
    for (double p : {0.0, 2.0, 5.0, kInf}) {
        double om = omega_p_R(ellipsoid3(), OmegaParams{p, 5.0}, rule3).value;
        double e1 = std::isinf(p) ? 3.0 : 3.0 * (p - 1.0) / (3.0 + p);
        CHECK(std::abs(om / om1_3 - std::pow(k3, e1)) < 1e-7 * std::pow(k3, e1));
    }
}

TEST_CASE("special cases against volume and polar volume") {
    SphereRule rule = build_rule(2, 1024);
    for (const ConvexBody& body : {unit_disk(), ellipse21(), perturbed_disk()}) {
        double as0 = as_p(body, 0.0, rule).value;
        CHECK(std::abs(as0 - 2.0 * volume(body)) / (2.0 * volume(body)) < 1e-7);
        double asinf = as_p(body, kInf, rule).value;
        double pv = polar_volume(body, rule);
        CHECK(std::abs(asinf - 2.0 * pv) / (2.0 * pv) < 1e-7);
    }
    // Classical affine isoperimetric equality on the ellipse:
    // as_1(E)^3 = (2 pi)^3 vol(E) / vol(B^2).
    double as1 = as_p(ellipse21(), 1.0, rule).value;
    double want = std::cbrt(std::pow(2.0 * kPi, 3.0) * 2.0 * kPi / kPi);
    CHECK(std::abs(as1 - want) / want < 1e-6);
}

TEST_CASE("weight examples") {
    CHECK(weight_w(unit_disk(), Direction::from_angle(0.3), 2.0) ==
          doctest::Approx(std::pow(0.5, 1.0 / 3.0)).epsilon(1e-13));
    CHECK(weight_w(unit_disk(), Direction::from_angle(0.3), kInf) ==
          doctest::Approx(1.0).epsilon(1e-13));
    // Radius-R arc contributes weight 0.
    ConvexBody rball = ConvexBody{full_circle(Disk{Point(0.0, 0.0), 2.0})};
    CHECK(weight_w(rball, Direction::from_angle(1.0), 2.0) == 0.0);
}

TEST_CASE("homogeneity") {
    SphereRule rule = build_rule(2, 512);
    // Closed form both sides for the ball.
    CHECK(verify_homogeneity(unit_disk(), 2.0, OmegaParams{1.0, 2.0}, rule) < 1e-10);
    CHECK(verify_homogeneity(ellipse21(), 3.0, OmegaParams{0.0, 5.0}, rule) < 1e-8);
    // p = n: homogeneity degree 0, dilation invariance.
    double om = omega_p_R(ellipse21(), OmegaParams{2.0, 5.0}, rule).value;
    double om_scaled =
        omega_p_R(scale_body(ellipse21(), 3.0), OmegaParams{2.0, 15.0}, rule).value;
    CHECK(std::abs(om - om_scaled) / om < 1e-9);
}

TEST_CASE("valuation identity on a disk construction") {
    // D3 is covered by D1 and D2 but contained in neither.
    Disk d1{Point(0.0, 0.5), 1.0};
    Disk d2{Point(0.0, -0.3), 1.2};
    Disk d3{Point(0.0, 0.0), 1.0};
    REQUIRE(circle_covered_by(d3, std::vector<Disk>{d1, d2}));
    ArcBody2D K = disk_intersection(std::vector<Disk>{d1, d3});
    ArcBody2D L = disk_intersection(std::vector<Disk>{d2, d3});
    ArcBody2D uni = full_circle(d3);
    ArcBody2D inter = disk_intersection(std::vector<Disk>{d1, d2, d3});
    for (double p : {0.0, 1.0, 2.0}) {
        double dev = verify_valuation(K, L, uni, inter, OmegaParams{p, 2.0});
        CHECK(dev < 1e-9);
    }
    // K = L: trivial identity.
    CHECK(verify_valuation(K, K, K, K, OmegaParams{1.0, 2.0}) == 0.0);
}

TEST_CASE("valuation with all radii equal to R gives zero on both sides") {
    const double R = 2.0;
    Disk d1{Point(0.3, 0.0), R}, d2{Point(0.1, 0.0), R}, d3{Point(-0.2, 0.0), R};
    ArcBody2D K = disk_intersection(std::vector<Disk>{d1, d3});
    ArcBody2D L = disk_intersection(std::vector<Disk>{d2, d3});
    // K is nested inside L, so union = L and intersection = K.
    double dev = verify_valuation(K, L, L, K, OmegaParams{1.0, R});
    CHECK(dev == 0.0);
    SphereRule unused;
    CHECK(omega_p_R(ConvexBody{K}, OmegaParams{1.0, R}, unused).value == 0.0);
    CHECK(omega_p_R(ConvexBody{L}, OmegaParams{1.0, R}, unused).value == 0.0);
}

TEST_CASE("smooth and arc evaluation paths agree on disks") {
    SphereRule rule = build_rule(2, 512);
    ConvexBody smooth = Ball{Point(0.0, 0.0), 1.0};
    ConvexBody arcs = ConvexBody{full_circle(Disk{Point(0.0, 0.0), 1.0})};
    for (double p : {-1.0, 0.0, 1.0, 3.0}) {
        double a = omega_p_R(smooth, OmegaParams{p, 2.0}, rule).value;
        double b = omega_p_R(arcs, OmegaParams{p, 2.0}, rule).value;
        CHECK(std::abs(a - b) / a < 1e-10);
    }
}

TEST_CASE("bounds chains") {
    SphereRule rule = build_rule(2, 512);
    BoundsChainReport ball = verify_bounds(unit_disk(), OmegaParams{2.0, 2.0}, rule);
    CHECK(ball.all_hold);
    REQUIRE(ball.checks.size() == 3);
    CHECK(ball.checks[1].slack > 0.0); // strict middle inequality
    CHECK(ball.checks[2].slack > 0.0);

    BoundsChainReport ell = verify_bounds(ellipse21(), OmegaParams{1.0, 5.0}, rule);
    CHECK(ell.all_hold);
    CHECK(ell.checks.back().slack > 0.0); // affine isoperimetric upper bound

    BoundsChainReport neg = verify_bounds(ellipse21(), OmegaParams{-1.0, 5.0}, rule);
    CHECK(neg.all_hold);
}

TEST_CASE("p-norm ball diverges for p(r-1) = -2") {
    double r = 1.5;
    double R_thr = std::pow(2.0, -(2.0 - r) / (2.0 * r)) / (r - 1.0);
    ConvexBody body = PNormBall2D{r, 1e-9};
    DivergenceProbe probe = probe_divergence(body, OmegaParams{-4.0, R_thr}, 64, 5);
    CHECK(probe.divergent);
    for (double ratio : probe.ratios) CHECK(ratio >= 1.1);

    SphereRule rule = build_rule(2, 512);
    BoundsChainReport rep = verify_bounds(body, OmegaParams{-4.0, R_thr}, rule);
    CHECK(rep.divergent);
    CHECK(rep.checks.empty());

    // A ball converges under the same probe.
    DivergenceProbe ok = probe_divergence(unit_disk(), OmegaParams{-4.0, 2.0}, 64, 5);
    CHECK(!ok.divergent);
}

TEST_CASE("errors") {
    SphereRule rule = build_rule(2, 128);
    CHECK_THROWS_AS(omega_p_R(unit_disk(), OmegaParams{-2.0, 2.0}, rule), ParamError);
    // Ellipse(2,1) has kappa_min = 1/4, so R = 1 violates ball convexity.
    CHECK_THROWS_AS(omega_p_R(ellipse21(), OmegaParams{1.0, 1.0}, rule), NotBallConvexError);
    // The flattest point of the ellipse (top, kappa = 1/4) violates 1/R = 1.
    CHECK_THROWS_AS(weight_w(ellipse21(), Direction::from_angle(0.5 * kPi), 1.0),
                    NotBallConvexError);
}
