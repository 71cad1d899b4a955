#pragma once

#include <string>
#include <vector>

#include "ballconv/bodies.hpp"
#include "ballconv/quadrature.hpp"

namespace ballconv {

// p is an extended real (+-infinity allowed, p = -n excluded); R > 0, with
// R = +infinity giving the classical (unweighted) surface areas.
struct OmegaParams {
    double p = 1.0;
    double R = 1.0;
};

struct MeasureResult {
    double value = 0.0;
    std::size_t rule_size = 0;
    std::string clamp_report;  // empty when nothing was clamped or saturated
};

// Exponents n(p-1)/(n+p) and p/(n+p) with explicit limits at p = +-infinity
// (n and 1 respectively); |support_exp| is capped at 1e6 near p = -n.
struct OmegaExponents {
    double support_exp = 0.0;
    double curv_exp = 0.0;
    bool saturated = false;
};
OmegaExponents omega_exponents(double p, int n);

// L_p relative surface area. Smooth variants integrate the sphere
// representation through the inverse Gauss map; arc bodies use exact arc-wise
// boundary integrals (curvature constant per arc).
MeasureResult omega_p_R(const ConvexBody& body, const OmegaParams& params, const SphereRule& rule);

// Classical L_p surface area (the R -> infinity limit of omega_p_R).
MeasureResult as_p(const ConvexBody& body, double p, const SphereRule& rule);

// Relative-curvature weight prod_i (1 - 1/(R kappa_i))^{1/(n+1)} in [0,1].
double weight_w(const ConvexBody& body, const Direction& u, double R);

// |Omega_p^{aR}(aK) - a^{n(n-p)/(n+p)} Omega_p^R(K)| / rhs.
double verify_homogeneity(const ConvexBody& body, double a, const OmegaParams& params,
                          const SphereRule& rule);

// |Om(K u L) + Om(K n L) - Om(K) - Om(L)| / (Om(K) + Om(L)); 0/0 counts as 0.
// All four bodies must be arc bodies with radii <= R; the union must validate
// as R-ball convex.
double verify_valuation(const ArcBody2D& K, const ArcBody2D& L, const ArcBody2D& uni,
                        const ArcBody2D& inter, const OmegaParams& params);

struct BoundsCheck {
    std::string lhs_name, rhs_name;
    double lhs = 0.0, rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool holds = false;
};

struct BoundsChainReport {
    double p = 0.0, R = 0.0;
    std::vector<BoundsCheck> checks;
    bool all_hold = false;
    bool divergent = false;
    std::vector<double> divergence_estimates;
};

// Evaluates the boundedness chain applicable to the given p range. For
// p < -n the measure can be unbounded; a refinement probe runs first and a
// divergent result is reported instead of chain values.
BoundsChainReport verify_bounds(const ConvexBody& body, const OmegaParams& params,
                                const SphereRule& rule);

struct DivergenceProbe {
    std::vector<int> resolutions;
    std::vector<double> estimates;
    std::vector<double> ratios;  // estimates[k+1] / estimates[k]
    bool divergent = false;
};

// Omega estimates across doubling rule resolutions; divergent when every
// refinement grows the estimate by at least growth_gate.
DivergenceProbe probe_divergence(const ConvexBody& body, const OmegaParams& params,
                                 int base_resolution, int levels, double growth_gate = 1.1);

} // namespace ballconv
