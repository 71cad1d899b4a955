#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ballconv/bodies.hpp"
#include "ballconv/quadrature.hpp"

namespace ballconv {

struct CutBall {
    Point center;
    double radius = 1.0;
};

// Positive weight on K with a declared lower bound c > 0; evaluations below
// the bound are hard errors.
class WeightFn {
public:
    static WeightFn one();
    static WeightFn constant(double c);
    // Radial extension into K of the p-dependent boundary weight
    // f_p(x) = (<x,N>^{n(n+1)(p-1)} / kappa^{n(p-1)})^{1/(2(n+p))}.
    static WeightFn fp(const ConvexBody& body, double p);

    double operator()(const Point& y) const;
    double lower_bound() const { return lower_; }
    bool is_constant() const { return constant_; }
    double constant_value() const { return const_value_; }
    const std::string& describe() const { return desc_; }

private:
    WeightFn() = default;
    std::function<double(const Point&)> eval_;
    double lower_ = 1.0;
    bool constant_ = true;
    double const_value_ = 1.0;
    std::string desc_ = "one";
};

// Weighted measure of K \ ball. 2-D: angular slicing about an interior anchor
// with adaptive quadrature to 1e-12*vol(K) absolute. 3-D: closed form for
// balls, a rotational 1-D reduction for spheroids cut along their axis, and
// seeded stratified Monte Carlo otherwise (standard error via *std_error).
double cut_measure(const ConvexBody& body, const CutBall& ball, const WeightFn& f,
                   unsigned seed = 0, double* std_error = nullptr);

// Ball of radius R centered at x(u) - (R+t)u whose cut measure equals delta
// to 1e-3 relative; t is the cap depth along the inward normal.
CutBall find_cut_depth(const ConvexBody& body, const Direction& u, double delta,
                       const WeightFn& f, double R);

struct FloatingBodyApprox {
    std::vector<Direction> grid;
    std::vector<double> grid_weights;
    std::vector<double> radial;   // r(w) per grid direction
    std::vector<CutBall> cuts;    // empty when delta = 0
    double delta = 0.0;
    double R = 0.0;
};

// Sampled weighted floating body: one cut ball per grid direction, radial
// values are exact for the intersection of the sampled ball family.
FloatingBodyApprox floating_body(const ConvexBody& body, double delta, double R,
                                 const WeightFn& f, const SphereRule& grid);

// (1/n) * sum w_i r_i^n over the direction grid's rule.
double floating_volume(const FloatingBodyApprox& approx);

// Polar volume of the sampled intersection; its support function is recovered
// by maximizing r(w)<w,v> over the radial grid.
double dual_floating_volume(const FloatingBodyApprox& approx, const SphereRule& rule);

// Corollary-11 boundary weight at the boundary point with normal u.
double fp_weight(const ConvexBody& body, double p, const Direction& u);

struct ConvergenceReport {
    std::vector<double> deltas;     // strictly decreasing, possibly trimmed
    std::vector<double> vol_diffs;  // volume (or polar-volume) differences
    std::vector<double> ratios;     // vol_diffs / delta^{2/(n+1)}
    double extrapolated = 0.0;      // Richardson limit in delta^{2/(n+1)}
    double target = 0.0;            // pinned constant times the boundary integral
    double rel_error = 0.0;         // |extrapolated - target| / target
    double fitted_order = 0.0;      // log-log slope over the smallest deltas
    double boundary_integral = 0.0;
    double measured_constant = 0.0; // extrapolated / boundary_integral
    std::vector<std::string> notes;
    std::vector<Direction> grid;
    std::vector<std::vector<CutBall>> cuts_per_delta;
};

ConvergenceReport converge_primal(const ConvexBody& body, double R, const WeightFn& f,
                                  std::span<const double> deltas, int grid_resolution);

ConvergenceReport converge_dual(const ConvexBody& body, double R,
                                std::span<const double> deltas, int grid_resolution);

// Numeric vs asymptotic volume of the cap cut from an osculating ellipsoid by
// an R-ball at height h above the touching point.
std::pair<double, double> cap_volume_check(std::span<const double> semi_axes, double R, double h);

} // namespace ballconv
