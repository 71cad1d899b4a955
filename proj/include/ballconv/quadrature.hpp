#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ballconv/vec.hpp"

namespace ballconv {

// Counting measure of S^0 = {-1,+1}; used by the n=2 specialization of the
// sphere integral identity and the cap asymptotics.
inline constexpr double kSigmaS0 = 2.0;

// Deterministic quadrature rule on S^{n-1}.
//   n=2: midpoint-offset uniform angles, weight 2*pi/N each.
//   n=3: Gauss-Legendre in cos(polar) x offset-uniform azimuth, m x 2m nodes.
struct SphereRule {
    int dim = 2;
    int resolution = 0;
    std::vector<Direction> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

struct IntegralEstimate {
    double value = 0.0;
    std::size_t rule_size = 0;
    // Value change under one refinement; only set when measured, never inferred.
    double refinement_ratio = 0.0;
    bool refinement_measured = false;
};

SphereRule build_rule(int n, int resolution);

// Weighted sum via a fixed-shape pairwise tree keyed by node index; integrand
// evaluations may run concurrently. Non-finite values raise EvalError naming
// the node.
IntegralEstimate integrate(const SphereRule& rule,
                           const std::function<double(const Direction&)>& integrand);

// Same, with the refinement delta measured against a coarser companion rule.
IntegralEstimate integrate_refined(const SphereRule& coarse, const SphereRule& fine,
                                   const std::function<double(const Direction&)>& integrand);

// Proposition-12-style identity: lhs = quadrature of (sum c_i u_i^2)^{-n/2},
// rhs = sigma(S^{n-1}) * prod c_i^{-1/2}.
std::pair<double, double> check_integral_identity(int n, std::span<const double> c,
                                                  const SphereRule& rule);

} // namespace ballconv
