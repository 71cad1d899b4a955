#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ballconv/bodies.hpp"
#include "ballconv/quadrature.hpp"

namespace ballconv {

struct EntropyResult {
    double log_E = 0.0;
    double E = 1.0;
    // (p, (Omega_p/Omega_inf)^{n+p}) pairs; nonincreasing in p.
    std::vector<std::pair<double, double>> limit_estimates;
};

// p- and q-densities against the weighted boundary measure dw = w_K d mu,
// discretized on the rule's nodes. Raw norms are the pre-renormalization
// integrals (each 1 up to quadrature error).
struct DensityPair {
    std::vector<double> p, q;
    std::vector<double> measure_w;  // quadrature weights of dw
    double p_norm_raw = 0.0, q_norm_raw = 0.0;
};

struct MonotonicityReport {
    std::vector<double> p_grid;
    std::vector<double> seq_decreasing;  // log (Omega_p/Omega_inf)^{n+p}
    std::vector<double> seq_increasing;  // log (Omega_p/Omega_0)^{(n+p)/p}, p != 0
    std::vector<double> p_grid_ii;       // grid used for the increasing sequence
    double min_slack_decreasing = 0.0;   // min adjacent decrease (log scale)
    double min_slack_increasing = 0.0;   // min adjacent increase (log scale)
    bool ok_decreasing = false;
    bool ok_increasing = false;
};

struct Theorem4Report {
    double r = 0.0, s = 0.0, t = 0.0;
    double cond_i = 0.0, cond_ii = 0.0;  // exponent-condition values
    bool degenerate_i = false, degenerate_ii = false;
    double slack_i = 0.0, slack_ii = 0.0;  // rhs - lhs in log scale; >= 0 when the inequality holds
};

// Entropy power E^R(K) via the boundary-integral formula; also fills limit
// estimates at p in {10, 30, 100, 300}.
EntropyResult entropy_integral(const ConvexBody& body, double R, const SphereRule& rule);

// (Omega_p/Omega_inf)^{n+p} on a geometric p grid up to p_max, in log space.
std::vector<std::pair<double, double>> entropy_limit(const ConvexBody& body, double R,
                                                     double p_max, const SphereRule& rule);

DensityPair densities(const ConvexBody& body, double R, const SphereRule& rule);

// Kullback-Leibler divergence D(P||Q) with densities renormalized by their
// computed integrals, so the discrete Gibbs bound D >= 0 holds exactly.
double kl_divergence(const ConvexBody& body, double R, const SphereRule& rule);

MonotonicityReport verify_monotonicity(const ConvexBody& body, double R,
                                       std::span<const double> p_grid, const SphereRule& rule);

// Holder inequalities for (r,s,t); throws ParamError naming the violated
// exponent condition unless it degenerates to the trivial-equality cases.
Theorem4Report verify_theorem4(const ConvexBody& body, double R, double r, double s, double t,
                               const SphereRule& rule);

} // namespace ballconv
