// Acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "ballconv/arc_body.hpp"
#include "ballconv/bodies.hpp"
#include "ballconv/entropy.hpp"
#include "ballconv/errors.hpp"
#include "ballconv/floating.hpp"
#include "ballconv/numerics.hpp"
#include "ballconv/quadrature.hpp"
#include "ballconv/surface_measures.hpp"
#include "oracles.hpp"

using namespace ballconv;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s -- %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

ConvexBody unit_disk() { return Ball{Point(0.0, 0.0), 1.0}; }
ConvexBody ellipse21() { return Ellipsoid{Point(0.0, 0.0), {2.0, 1.0, 1.0}}; }
ConvexBody ellipsoid3() { return Ellipsoid{Point(0.0, 0.0, 0.0), {2.0, 1.5, 1.0}}; }

ConvexBody perturbed_disk() {
    SupportCurve2D sc;
    sc.c0 = 1.0;
    sc.cos_coef = {0.0, 0.0, 0.1};
    return sc;
}

// Seeded xorshift64*, log-uniform coefficients in [1,100].
struct Rng {
    std::uint64_t state;
    double uniform() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
};

void criterion_1() {
    double t0 = now_seconds();
    Rng rng{20250810ull};
    double worst2 = 0.0, worst3 = 0.0, worst_cond = 0.0;
    SphereRule rule2 = build_rule(2, 512);
    SphereRule rule3 = build_rule(3, 64);
    for (int trial = 0; trial < 20; ++trial) {
        double c2[2], c3[3];
        for (double& c : c2) c = std::exp(rng.uniform() * std::log(100.0));
        for (double& c : c3) c = std::exp(rng.uniform() * std::log(100.0));
        double cond3 = std::max({c3[0], c3[1], c3[2]}) / std::min({c3[0], c3[1], c3[2]});
        worst_cond = std::max(worst_cond, cond3);
        auto [l2, r2] = check_integral_identity(2, c2, rule2);
        worst2 = std::max(worst2, std::abs(l2 - r2) / r2);
        auto [l3, r3] = check_integral_identity(3, c3, rule3);
        worst3 = std::max(worst3, std::abs(l3 - r3) / r3);
    }
    double dt = now_seconds() - t0;
    bool pass = worst2 <= 1e-8 && worst3 <= 1e-8 && dt < 10.0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "n=2 worst %.2e, n=3 worst %.2e at 64x128 (max cond %.0f), gate 1e-8, %.1fs",
                  worst2, worst3, worst_cond, dt);
    std::string detail = buf;
    if (worst3 > 1e-8) {
        // Show the resolution that would meet the gate.
        SphereRule fine = build_rule(3, 128);
        Rng rng2{20250810ull};
        double worst_fine = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            double c2[2], c3[3];
            for (double& c : c2) c = std::exp(rng2.uniform() * std::log(100.0));
            for (double& c : c3) c = std::exp(rng2.uniform() * std::log(100.0));
            auto [l3, r3] = check_integral_identity(3, c3, fine);
            worst_fine = std::max(worst_fine, std::abs(l3 - r3) / r3);
        }
        std::snprintf(buf, sizeof(buf), "; at 128x256 the same draws give %.2e", worst_fine);
        detail += buf;
    }
    report(1, "sphere integral identity", pass, detail);
}

void criterion_2() {
    SphereRule rule = build_rule(2, 512);
    double worst = 0.0;
    for (double R : {1.5, 2.0, 10.0}) {
        double want = 2.0 * kPi * std::pow(1.0 - 1.0 / R, 1.0 / 3.0);
        for (double p : {-1.0, 0.0, 1.0, 2.0, kInf, -kInf}) {
            double got = omega_p_R(unit_disk(), OmegaParams{p, R}, rule).value;
            worst = std::max(worst, std::abs(got - want) / want);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max rel err %.2e, gate 1e-9", worst);
    report(2, "ball closed form, p-independent", worst <= 1e-9, buf);
}

void criterion_3() {
    double worst = 0.0;
    {
        SphereRule rule = build_rule(2, 512);
        double k = std::pow(2.0, -2.0 / 3.0);
        double om1 = omega_p_R(ellipse21(), OmegaParams{1.0, 5.0}, rule).value;
        for (double p : {0.0, 2.0, 5.0, kInf}) {
            double e1 = std::isinf(p) ? 2.0 : 2.0 * (p - 1.0) / (2.0 + p);
            double got = omega_p_R(ellipse21(), OmegaParams{p, 5.0}, rule).value / om1;
            worst = std::max(worst, std::abs(got - std::pow(k, e1)) / std::pow(k, e1));
        }
    }
    {
        SphereRule rule = build_rule(3, 64);
        double k = std::pow(3.0, -0.5); // (2*1.5*1)^{-2/(n+1)}
        double om1 = omega_p_R(ellipsoid3(), OmegaParams{1.0, 5.0}, rule).value;
        for (double p : {0.0, 2.0, 5.0, kInf}) {
            double e1 = std::isinf(p) ? 3.0 : 3.0 * (p - 1.0) / (3.0 + p);
            double got = omega_p_R(ellipsoid3(), OmegaParams{p, 5.0}, rule).value / om1;
            worst = std::max(worst, std::abs(got - std::pow(k, e1)) / std::pow(k, e1));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max rel err %.2e, gate 1e-7", worst);
    report(3, "ellipsoid ratio law", worst <= 1e-7, buf);
}

void criterion_4() {
    double t0 = now_seconds();
    std::vector<double> deltas;
    for (int k = 0; k < 6; ++k) deltas.push_back(1e-2 * kPi * std::pow(4.0, -k));
    ConvergenceReport rep = converge_primal(unit_disk(), 2.0, WeightFn::one(), deltas, 2048);

    double cut_err = 0.0;
    for (std::size_t lev = 0; lev < rep.cuts_per_delta.size(); ++lev) {
        double d = rep.deltas[lev];
        for (const CutBall& ball : rep.cuts_per_delta[lev]) {
            double numeric = cut_measure(unit_disk(), ball, WeightFn::one());
            double oracle = oracles::disk_cut_area(1.0, 2.0, norm(ball.center));
            cut_err = std::max(cut_err, std::abs(numeric - oracle) / d);
        }
    }
    double dt = now_seconds() - t0;
    bool pass = rep.rel_error <= 0.02 && std::abs(rep.fitted_order - 2.0 / 3.0) <= 0.05 &&
                cut_err <= 1e-6 && dt < 60.0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "rel err %.2e (gate 2%%), order %.4f (want 0.6667+-0.05), worst cut-vs-oracle "
                  "%.2e (gate 1e-6), %.1fs",
                  rep.rel_error, rep.fitted_order, cut_err, dt);
    report(4, "primal convergence on the disk", pass, buf);
}

void criterion_5() {
    SphereRule rule = build_rule(2, 1024);
    std::vector<double> deltas;
    for (int k = 0; k < 6; ++k) deltas.push_back(1e-2 * 2.0 * kPi * std::pow(4.0, -k));
    bool pass = true;
    std::string detail;
    for (double p : {0.0, 2.0}) {
        WeightFn f = WeightFn::fp(ellipse21(), p);
        ConvergenceReport rep = converge_primal(ellipse21(), 5.0, f, deltas, 1024);
        double om = omega_p_R(ellipse21(), OmegaParams{p, 5.0}, rule).value;
        double target = 0.5 * std::pow(1.5, 2.0 / 3.0) * om;
        double err = std::abs(rep.extrapolated - target) / target;
        pass = pass && err <= 0.03;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%sp=%g rel err %.2e", detail.empty() ? "" : ", ", p, err);
        detail += buf;
    }
    report(5, "weighted limits realize c_n * Omega_p", pass, detail + " (gate 3%)");
}

void criterion_6() {
    double t0 = now_seconds();
    std::vector<double> deltas;
    for (int k = 0; k < 6; ++k) deltas.push_back(1e-2 * 2.0 * kPi * std::pow(4.0, -k));
    ConvergenceReport rep = converge_dual(ellipse21(), 5.0, deltas, 2048);
    double dt = now_seconds() - t0;
    bool pass = rep.rel_error <= 0.03 && dt < 120.0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "rel err %.3f vs stated c2=2(3/2)^(2/3) target (gate 3%%); measured constant "
                  "%.5f = stated/%.3f, %.1fs",
                  rep.rel_error, rep.measured_constant,
                  2.0 * std::pow(1.5, 2.0 / 3.0) / rep.measured_constant, dt);
    report(6, "dual convergence on the ellipse", pass, buf);
}

void criterion_7() {
    SphereRule rule = build_rule(2, 1024);
    EntropyResult ball = entropy_integral(unit_disk(), 2.0, rule);
    bool ok_ball = std::abs(ball.E - 1.0) <= 1e-9;

    EntropyResult ell = entropy_integral(ellipse21(), 5.0, rule);
    bool ok_ell = std::abs(ell.E - 16.0) <= 1e-4;

    auto limit = entropy_limit(ellipse21(), 5.0, 300.0, rule);
    bool ok_limit = std::abs(limit.back().second / ell.E - 1.0) <= 0.05;
    bool gap_monotone = true;
    double prev = 1e300;
    for (const auto& [p, est] : limit) {
        (void)p;
        double gap = est - ell.E;
        if (gap > prev + 1e-9) gap_monotone = false;
        prev = gap;
    }
    // The gap shrinkage has substance on a non-ellipsoid.
    auto pd_limit = entropy_limit(perturbed_disk(), 2.0, 300.0, rule);
    double pdE = entropy_integral(perturbed_disk(), 2.0, rule).E;
    prev = 1e300;
    for (const auto& [p, est] : pd_limit) {
        (void)p;
        double gap = est - pdE;
        if (gap > prev + 1e-9 || gap < -1e-9) gap_monotone = false;
        prev = gap;
    }
    bool pass = ok_ball && ok_ell && ok_limit && gap_monotone;
    char buf[192];
    std::snprintf(buf, sizeof(buf), "E(B)=1%+.1e, E(ellipse)=16%+.1e, limit/integral-1=%.2e, gaps %s",
                  ball.E - 1.0, ell.E - 16.0, limit.back().second / ell.E - 1.0,
                  gap_monotone ? "monotone" : "NOT monotone");
    report(7, "entropy power", pass, buf);
}

void criterion_8() {
    SphereRule rule = build_rule(2, 1024);
    double worst_gap = 0.0, worst_neg = 0.0, ell_kl = 0.0;
    struct Case {
        ConvexBody body;
        double R;
    };
    for (const Case& c : {Case{unit_disk(), 2.0}, Case{ellipse21(), 5.0},
                          Case{perturbed_disk(), 2.0}}) {
        const int n = 2;
        double kl = kl_divergence(c.body, c.R, rule);
        EntropyResult er = entropy_integral(c.body, c.R, rule);
        double om0 = omega_p_R(c.body, OmegaParams{0.0, c.R}, rule).value;
        double ominf = omega_p_R(c.body, OmegaParams{kInf, c.R}, rule).value;
        double rhs = std::log(om0 / ominf) - er.log_E / n;
        worst_gap = std::max(worst_gap, std::abs(kl - rhs));
        worst_neg = std::min(worst_neg, kl);
        if (std::get_if<Ellipsoid>(&c.body)) ell_kl = kl;
    }
    bool pass = worst_gap <= 1e-6 && worst_neg >= 0.0 && ell_kl <= 1e-7;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max identity gap %.2e (gate 1e-6), min KL %.1e, KL(ellipse) %.1e",
                  worst_gap, worst_neg, ell_kl);
    report(8, "KL divergence identity", pass, buf);
}

void criterion_9() {
    SphereRule rule = build_rule(2, 1024);
    std::vector<double> grid{-1.0, -0.5, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 300.0};

    Theorem4Report pd = verify_theorem4(perturbed_disk(), 2.0, 1.0, 0.0, 2.0, rule);
    MonotonicityReport pdm = verify_monotonicity(perturbed_disk(), 2.0, grid, rule);
    bool strict = pd.slack_i > 1e-4 && pd.slack_ii > 1e-4 && pdm.min_slack_decreasing > 1e-4 &&
                  pdm.min_slack_increasing > 1e-4;

    Theorem4Report ell = verify_theorem4(ellipse21(), 5.0, 1.0, 0.0, 2.0, rule);
    MonotonicityReport ellm = verify_monotonicity(ellipse21(), 5.0, grid, rule);
    double ell_spread = 0.0;
    for (std::size_t k = 0; k + 1 < ellm.seq_decreasing.size(); ++k)
        ell_spread = std::max(ell_spread,
                              std::abs(ellm.seq_decreasing[k] - ellm.seq_decreasing[k + 1]));
    bool equality = std::abs(ell.slack_i) <= 1e-7 && std::abs(ell.slack_ii) <= 1e-7 &&
                    ell_spread <= 1e-7;

    bool rejected = false;
    std::string msg;
    try {
        verify_theorem4(perturbed_disk(), 2.0, 2.0, 0.0, 1.0, rule);
    } catch (const ParamError& e) {
        msg = e.what();
        rejected = msg.find("(n+r)(t-s)/((n+t)(r-s))") != std::string::npos;
    }

    bool pass = strict && equality && rejected;
    char buf[224];
    std::snprintf(buf, sizeof(buf),
                  "perturbed-disk slacks (%.1e, %.1e, mono %.1e/%.1e) > 1e-4; ellipse slacks <= "
                  "1e-7 (%.1e); bad exponents %s",
                  pd.slack_i, pd.slack_ii, pdm.min_slack_decreasing, pdm.min_slack_increasing,
                  std::max(std::abs(ell.slack_i), std::abs(ell.slack_ii)),
                  rejected ? "rejected by name" : "NOT rejected");
    report(9, "Holder and monotonicity suites", pass, buf);
}

void criterion_10() {
    // Radii multiset {1, 1, 1.2}: two radius-1 disks and one radius-1.2 disk,
    // arranged so D3 is covered by D1 and D2 but contained in neither.
    Disk d1{Point(0.0, 0.5), 1.0};
    Disk d2{Point(0.0, -0.3), 1.2};
    Disk d3{Point(0.0, 0.0), 1.0};
    bool covered = circle_covered_by(d3, std::vector<Disk>{d1, d2});
    ArcBody2D K = disk_intersection(std::vector<Disk>{d1, d3});
    ArcBody2D L = disk_intersection(std::vector<Disk>{d2, d3});
    ArcBody2D uni = full_circle(d3);
    ArcBody2D inter = disk_intersection(std::vector<Disk>{d1, d2, d3});
    double worst = 0.0;
    for (double p : {0.0, 1.0, 2.0})
        worst = std::max(worst, verify_valuation(K, L, uni, inter, OmegaParams{p, 2.0}));

    // All-radius-R variant: nested lenses of radius-R arcs; every term is 0.
    const double R = 2.0;
    ArcBody2D K2 = disk_intersection(std::vector<Disk>{{Point(0.3, 0.0), R}, {Point(-0.2, 0.0), R}});
    ArcBody2D L2 = disk_intersection(std::vector<Disk>{{Point(0.1, 0.0), R}, {Point(-0.2, 0.0), R}});
    double dev_zero = verify_valuation(K2, L2, L2, K2, OmegaParams{1.0, R});
    SphereRule unused;
    double om_zero = omega_p_R(ConvexBody{L2}, OmegaParams{1.0, R}, unused).value;

    bool pass = covered && worst <= 1e-9 && dev_zero == 0.0 && om_zero == 0.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max deviation %.2e (gate 1e-9); all-radius-R variant 0 = 0 %s",
                  worst, (dev_zero == 0.0 && om_zero == 0.0) ? "holds" : "FAILS");
    report(10, "valuation identity", pass, buf);
}

void criterion_11() {
    SphereRule rule = build_rule(2, 512);
    double worst = 0.0;
    for (double a : {0.5, 3.0})
        for (double p : {0.0, 1.0, 2.0}) {
            worst = std::max(worst, verify_homogeneity(unit_disk(), a, OmegaParams{p, 2.0}, rule));
            worst = std::max(worst, verify_homogeneity(ellipse21(), a, OmegaParams{p, 5.0}, rule));
        }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max deviation %.2e, gate 1e-8", worst);
    report(11, "homogeneity", worst <= 1e-8, buf);
}

void criterion_12() {
    double r = 1.5;
    double R_thr = std::pow(2.0, -(2.0 - r) / (2.0 * r)) / (r - 1.0);
    ConvexBody body = PNormBall2D{r, 1e-9};
    DivergenceProbe probe = probe_divergence(body, OmegaParams{-4.0, R_thr}, 64, 5);
    double min_ratio = 1e300;
    for (double q : probe.ratios) min_ratio = std::min(min_ratio, q);
    SphereRule rule = build_rule(2, 512);
    BoundsChainReport rep = verify_bounds(body, OmegaParams{-4.0, R_thr}, rule);
    bool pass = probe.divergent && rep.divergent && rep.checks.empty();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "4 refinement steps, min growth ratio %.3f (gate 1.1); reported divergent, no value",
                  min_ratio);
    report(12, "divergence diagnostic for B^2_1.5, p=-4", pass, buf);
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%d of 12 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
