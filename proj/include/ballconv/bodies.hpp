#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ballconv/vec.hpp"

namespace ballconv {

struct SphereRule; // quadrature.hpp

// ---------------------------------------------------------------------------
// Body catalog. Dimensions are restricted to n in {2,3}; n=3 supports Ball
// and Ellipsoid only.
// ---------------------------------------------------------------------------

struct Ball {
    Point center;
    double radius = 1.0;
};

// Axis-aligned, centered at `center`; semi_axes[0..dim-1] > 0.
struct Ellipsoid {
    Point center;
    std::array<double, 3> semi_axes{1.0, 1.0, 1.0};
};

// h(theta) = c0 + sum_m (cos_coef[m-1] cos(m theta) + sin_coef[m-1] sin(m theta)).
// Strict convexity requires h + h'' > 0 everywhere.
struct SupportCurve2D {
    double c0 = 1.0;
    std::vector<double> cos_coef;
    std::vector<double> sin_coef;

    double h(double theta) const;
    double h1(double theta) const;  // dh/dtheta
    double h2(double theta) const;  // d2h/dtheta2
};

// B^2_r = {|x|^r + |y|^r <= 1}, 1 < r < 2. Near the axis points the curvature
// blows up; normal directions closer than clamp_angle to an axis are evaluated
// at the clamp boundary and flagged on the returned sample.
struct PNormBall2D {
    double exponent = 1.5;
    double clamp_angle = 1e-9;
};

// One circular arc of the boundary, described by its outward-normal angle
// range [normal_begin, normal_end] (radians, nondecreasing around the curve).
// The boundary point at normal angle phi is center + radius*(cos phi, sin phi).
struct Arc {
    Point center;
    double radius = 1.0;
    double normal_begin = 0.0;
    double normal_end = 0.0;
};

// Closed convex curve made of arcs; normal angles increase by exactly 2*pi
// over one loop, with jumps at corners (normal cones).
struct ArcBody2D {
    std::vector<Arc> arcs;
};

using ConvexBody = std::variant<Ball, Ellipsoid, SupportCurve2D, PNormBall2D, ArcBody2D>;

int dimension(const ConvexBody& body);
std::string kind_name(const ConvexBody& body);

// Parameter/invariant validation; throws ParamError / GeometryError.
void validate(const ConvexBody& body);

// ---------------------------------------------------------------------------
// Boundary evaluation
// ---------------------------------------------------------------------------

struct BoundarySample {
    Point x;
    Direction normal;
    std::vector<double> kappas;  // n-1 principal curvatures, 1/length
    double support_dot = 0.0;    // <x, N(x)>
    bool clamped = false;        // p-norm axis clamp engaged

    double gauss_curvature() const {
        double k = 1.0;
        for (double v : kappas) k *= v;
        return k;
    }
};

struct BallConvexityReport {
    double R = 0.0;
    double min_slack = 0.0;  // min over sampled boundary of (min_i kappa_i - 1/R)
    bool all_strict = false;
    Direction witness;
};

// Support function h_K(u) = sup_{x in K} <x,u>.
double support(const ConvexBody& body, const Direction& u);

// Boundary point with outward normal u, with curvatures. Throws CornerError
// for arc-body corner directions.
BoundarySample inverse_gauss(const ConvexBody& body, const Direction& u);

// Boundary point with outward normal u; corner directions resolve to the
// corner point instead of throwing.
Point boundary_point_for_normal(const ConvexBody& body, const Direction& u);

BallConvexityReport validate_ball_convex(const ConvexBody& body, double R, int resolution);

double volume(const ConvexBody& body);

// (1/n) * integral of h^{-n} over S^{n-1}.
double polar_volume(const ConvexBody& body, const SphereRule& rule);

// Mean and max relative deviation of kappa^{1/(n+1)} / <x,N> over the rule's
// normal directions; the deviation vanishes exactly on ellipsoids.
std::pair<double, double> petty_constant_diagnostic(const ConvexBody& body, const SphereRule& rule);

// Distance from the origin to the boundary along direction w (0 interior).
double radial_extent(const ConvexBody& body, const Direction& w);

// Interior anchor used for angular slicing (body center where one exists).
Point anchor_point(const ConvexBody& body);

// Distance from `anchor` to the boundary along polar angle phi (2-D only).
double radial_from(const ConvexBody& body, const Point& anchor, double phi);

// Curvature and support data at the boundary point hit by the ray from the
// origin with polar angle phi (2-D). Used by radial weight extensions; at an
// arc-body corner returns the corner with the bisector normal.
struct RadialBoundaryInfo {
    Point x;
    double kappa = 0.0;        // Gauss curvature at the hit point
    double support_dot = 0.0;  // <x, N(x)>
};
RadialBoundaryInfo radial_boundary_info(const ConvexBody& body, double phi);

// Dilation by a > 0 about the origin (PNormBall2D is not scalable).
ConvexBody scale_body(const ConvexBody& body, double a);

} // namespace ballconv
