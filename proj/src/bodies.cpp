#include "ballconv/bodies.hpp"

#include <algorithm>
#include <cmath>

#include "ballconv/errors.hpp"
#include "ballconv/numerics.hpp"
#include "ballconv/quadrature.hpp"

namespace ballconv {

namespace {

double wrap_2pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

// Is angle a inside the (possibly >2*pi-offset) range [lo,hi]?
bool angle_in_range(double a, double lo, double hi, double tol = 1e-12) {
    double shifted = lo + wrap_2pi(a - lo);
    if (shifted <= hi + tol) return true;
    // a could sit just below lo (wrapped to lo+2pi).
    return shifted - 2.0 * kPi >= lo - tol;
}

Vec unit2(double phi) { return Vec(std::cos(phi), std::sin(phi)); }

// --- p-norm ball helpers (first-quadrant geometry) -------------------------

struct PnormPoint {
    double x, y;      // first-quadrant boundary point
    double kappa;
    bool clamped;
};

// Boundary point whose outward normal makes angle phi in [0, pi/2] with e1.
PnormPoint pnorm_point_for_normal(const PNormBall2D& b, double phi) {
    const double r = b.exponent;
    bool clamped = false;
    double lo = b.clamp_angle, hi = 0.5 * kPi - b.clamp_angle;
    if (phi < lo) {
        phi = lo;
        clamped = true;
    } else if (phi > hi) {
        phi = hi;
        clamped = true;
    }
    // (y/x)^(r-1) = tan(phi). Work from the smaller tangent for stability.
    double x, y;
    if (phi <= 0.25 * kPi) {
        double q = std::pow(std::tan(phi), 1.0 / (r - 1.0)); // y/x <= 1
        x = std::pow(1.0 + std::pow(q, r), -1.0 / r);
        y = x * q;
    } else {
        double q = std::pow(std::tan(0.5 * kPi - phi), 1.0 / (r - 1.0)); // x/y <= 1
        y = std::pow(1.0 + std::pow(q, r), -1.0 / r);
        x = y * q;
    }
    double kap = (r - 1.0) * std::pow(x * y, r - 2.0) /
                 std::pow(std::pow(x, 2.0 * (r - 1.0)) + std::pow(y, 2.0 * (r - 1.0)), 1.5);
    return {x, y, kap, clamped};
}

double pnorm_radial(const PNormBall2D& b, double phi) {
    const double r = b.exponent;
    double cx = std::abs(std::cos(phi)), cy = std::abs(std::sin(phi));
    return std::pow(std::pow(cx, r) + std::pow(cy, r), -1.0 / r);
}

// --- ellipsoid curvature ----------------------------------------------------

// Principal curvature radii at the boundary point with outward normal u:
// eigenvalues of P^T M P, M = A^2/w - (A^2 u)(A^2 u)^T / w^3, P spanning u-perp.
void ellipsoid_curvature_radii(const Ellipsoid& e, const Direction& u, int n,
                               std::vector<double>& radii) {
    double w2 = 0.0;
    for (int i = 0; i < n; ++i) w2 += e.semi_axes[static_cast<std::size_t>(i)] *
                                      e.semi_axes[static_cast<std::size_t>(i)] * u[i] * u[i];
    double w = std::sqrt(w2);
    Vec a2u;
    a2u.n = n;
    for (int i = 0; i < n; ++i)
        a2u[i] = e.semi_axes[static_cast<std::size_t>(i)] *
                 e.semi_axes[static_cast<std::size_t>(i)] * u[i];
    auto M = [&](const Vec& s, const Vec& t) {
        double m = 0.0;
        for (int i = 0; i < n; ++i)
            m += s[i] * t[i] * e.semi_axes[static_cast<std::size_t>(i)] *
                 e.semi_axes[static_cast<std::size_t>(i)];
        return m / w - dot(s, a2u) * dot(t, a2u) / (w * w * w);
    };
    radii.clear();
    if (n == 2) {
        Vec tau(-u[1], u[0]);
        radii.push_back(M(tau, tau));
    } else {
        // Orthonormal tangent basis.
        Vec seed = std::abs(u[0]) <= std::abs(u[1])
                       ? (std::abs(u[0]) <= std::abs(u[2]) ? Vec(1, 0, 0) : Vec(0, 0, 1))
                       : (std::abs(u[1]) <= std::abs(u[2]) ? Vec(0, 1, 0) : Vec(0, 0, 1));
        Vec t1 = seed - dot(seed, u.vec()) * u.vec();
        t1 = (1.0 / norm(t1)) * t1;
        Vec t2(u[1] * t1[2] - u[2] * t1[1], u[2] * t1[0] - u[0] * t1[2],
               u[0] * t1[1] - u[1] * t1[0]);
        double m11 = M(t1, t1), m22 = M(t2, t2), m12 = M(t1, t2);
        double tr = m11 + m22;
        double disc = std::sqrt(std::max(0.0, 0.25 * (m11 - m22) * (m11 - m22) + m12 * m12));
        radii.push_back(0.5 * tr - disc);
        radii.push_back(0.5 * tr + disc);
    }
}

// --- support-curve boundary parametrization ---------------------------------

Point support_curve_point(const SupportCurve2D& sc, double theta) {
    double h = sc.h(theta), h1 = sc.h1(theta);
    return Vec(h * std::cos(theta) - h1 * std::sin(theta),
               h * std::sin(theta) + h1 * std::cos(theta));
}

// Normal-angle parameter of the boundary point on the ray with polar angle phi.
double support_curve_theta_for_ray(const SupportCurve2D& sc, double phi) {
    // The polar angle of x(theta) increases monotonically with theta and stays
    // within the normal cone width of theta; bracket by coarse scan, then bisect.
    auto diff = [&](double th) {
        Point x = support_curve_point(sc, th);
        double d = std::atan2(x[1], x[0]) - phi;
        return std::remainder(d, 2.0 * kPi);
    };
    const int M = 64;
    double prev_th = phi - kPi, prev_d = diff(prev_th);
    double lo = 0, hi = 0, flo = 0;
    bool found = false;
    for (int k = 1; k <= M; ++k) {
        double th = phi - kPi + 2.0 * kPi * k / M;
        double d = diff(th);
        if (prev_d <= 0.0 && d >= 0.0 && std::abs(prev_d) < kPi / 2 && std::abs(d) < kPi / 2) {
            lo = prev_th;
            hi = th;
            flo = prev_d;
            found = true;
            break;
        }
        prev_th = th;
        prev_d = d;
    }
    if (!found) throw NumericError("support curve: no radial bracket (body not star-shaped about 0?)");
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double d = diff(mid);
        if ((d >= 0.0) == (flo >= 0.0)) {
            lo = mid;
            flo = d;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// --- arc bodies --------------------------------------------------------------

// Arc index whose normal range contains phi; -1 if phi lies in a corner cone.
int find_arc(const ArcBody2D& body, double phi, double tol = 1e-12) {
    for (std::size_t i = 0; i < body.arcs.size(); ++i)
        if (angle_in_range(phi, body.arcs[i].normal_begin, body.arcs[i].normal_end, tol))
            return static_cast<int>(i);
    return -1;
}

Point arc_start_point(const Arc& a) { return a.center + a.radius * unit2(a.normal_begin); }
Point arc_end_point(const Arc& a) { return a.center + a.radius * unit2(a.normal_end); }

// Corner point for a normal direction in a corner cone.
Point arc_corner_for_normal(const ArcBody2D& body, double phi) {
    const std::size_t m = body.arcs.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Arc& cur = body.arcs[i];
        const Arc& nxt = body.arcs[(i + 1) % m];
        double lo = cur.normal_end;
        double hi = nxt.normal_begin;
        while (hi < lo - 1e-12) hi += 2.0 * kPi;
        if (angle_in_range(phi, lo, hi, 1e-9)) return arc_end_point(cur);
    }
    throw NumericError("arc body: normal direction matches neither arc nor corner");
}

} // namespace

// --- SupportCurve2D series ---------------------------------------------------

double SupportCurve2D::h(double theta) const {
    double v = c0;
    for (std::size_t m = 0; m < cos_coef.size(); ++m)
        v += cos_coef[m] * std::cos((static_cast<double>(m) + 1) * theta);
    for (std::size_t m = 0; m < sin_coef.size(); ++m)
        v += sin_coef[m] * std::sin((static_cast<double>(m) + 1) * theta);
    return v;
}

double SupportCurve2D::h1(double theta) const {
    double v = 0.0;
    for (std::size_t m = 0; m < cos_coef.size(); ++m) {
        double k = static_cast<double>(m) + 1;
        v -= k * cos_coef[m] * std::sin(k * theta);
    }
    for (std::size_t m = 0; m < sin_coef.size(); ++m) {
        double k = static_cast<double>(m) + 1;
        v += k * sin_coef[m] * std::cos(k * theta);
    }
    return v;
}

double SupportCurve2D::h2(double theta) const {
    double v = 0.0;
    for (std::size_t m = 0; m < cos_coef.size(); ++m) {
        double k = static_cast<double>(m) + 1;
        v -= k * k * cos_coef[m] * std::cos(k * theta);
    }
    for (std::size_t m = 0; m < sin_coef.size(); ++m) {
        double k = static_cast<double>(m) + 1;
        v -= k * k * sin_coef[m] * std::sin(k * theta);
    }
    return v;
}

// --- basic queries -----------------------------------------------------------

int dimension(const ConvexBody& body) {
    return std::visit(
        [](const auto& b) -> int {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) return b.center.n;
            else if constexpr (std::is_same_v<T, Ellipsoid>) return b.center.n;
            else return 2;
        },
        body);
}

std::string kind_name(const ConvexBody& body) {
    return std::visit(
        [](const auto& b) -> std::string {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) return "ball";
            else if constexpr (std::is_same_v<T, Ellipsoid>) return "ellipsoid";
            else if constexpr (std::is_same_v<T, SupportCurve2D>) return "support_curve";
            else if constexpr (std::is_same_v<T, PNormBall2D>) return "pnorm2d";
            else return "arc_body";
        },
        body);
}

void validate(const ConvexBody& body) {
    std::visit(
        [](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                if (b.center.n != 2 && b.center.n != 3)
                    throw ParamError("ball: dimension must be 2 or 3");
                if (!(b.radius > 0.0)) throw ParamError("ball: radius must be positive");
                if (!(norm(b.center) < b.radius))
                    throw GeometryError("ball: origin is not strictly interior");
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                int n = b.center.n;
                if (n != 2 && n != 3) throw ParamError("ellipsoid: dimension must be 2 or 3");
                double q = 0.0;
                for (int i = 0; i < n; ++i) {
                    double a = b.semi_axes[static_cast<std::size_t>(i)];
                    if (!(a > 0.0)) throw ParamError("ellipsoid: semi-axes must be positive");
                    q += b.center[i] * b.center[i] / (a * a);
                }
                if (!(q < 1.0)) throw GeometryError("ellipsoid: origin is not strictly interior");
            } else if constexpr (std::is_same_v<T, SupportCurve2D>) {
                const int N = 4096;
                for (int j = 0; j < N; ++j) {
                    double th = 2.0 * kPi * j / N;
                    if (!(b.h(th) > 0.0))
                        throw GeometryError("support curve: origin is not strictly interior");
                    if (!(b.h(th) + b.h2(th) > 0.0))
                        throw ParamError("support curve: h + h'' must stay positive (strict convexity)");
                }
            } else if constexpr (std::is_same_v<T, PNormBall2D>) {
                if (!(b.exponent > 1.0 && b.exponent < 2.0))
                    throw ParamError("pnorm2d: exponent must lie in (1,2)");
                if (!(b.clamp_angle >= 0.0 && b.clamp_angle < 0.25 * kPi))
                    throw ParamError("pnorm2d: clamp angle out of range");
            } else {
                if (b.arcs.empty()) throw ParamError("arc body: needs at least one arc");
                double turn = 0.0;
                for (std::size_t i = 0; i < b.arcs.size(); ++i) {
                    const Arc& a = b.arcs[i];
                    if (!(a.radius > 0.0)) throw ParamError("arc body: arc radius must be positive");
                    if (a.normal_end < a.normal_begin - 1e-12)
                        throw ParamError("arc body: normal angles must be nondecreasing");
                    turn += a.normal_end - a.normal_begin;
                    const Arc& nxt = b.arcs[(i + 1) % b.arcs.size()];
                    Point pe = arc_end_point(a);
                    Point ps = arc_start_point(nxt);
                    if (norm(pe - ps) > 1e-9)
                        throw ParamError("arc body: arcs do not join continuously");
                    double gap = (i + 1 == b.arcs.size())
                                     ? nxt.normal_begin + 2.0 * kPi - a.normal_end
                                     : nxt.normal_begin - a.normal_end;
                    if (gap < -1e-9)
                        throw ParamError("arc body: outward normal angle decreases at a joint");
                    turn += std::max(0.0, gap);
                }
                if (std::abs(turn - 2.0 * kPi) > 1e-6)
                    throw ParamError("arc body: total normal turn must be 2*pi");
                for (const Arc& a : b.arcs) {
                    // min of <c,e(phi)> + rho over the arc's normal range
                    double amp = norm(a.center);
                    double worst = a.radius - amp;
                    if (amp > 0.0) {
                        double ca = std::atan2(a.center[1], a.center[0]);
                        // farthest admissible phi from ca within [begin,end]
                        double lo = a.normal_begin, hi = a.normal_end;
                        double best_cos = -1.0;
                        double opp = ca + kPi;
                        if (angle_in_range(opp, lo, hi))
                            best_cos = -1.0;
                        else
                            best_cos = std::min(std::cos(lo - ca), std::cos(hi - ca));
                        worst = a.radius + amp * best_cos;
                    }
                    if (!(worst > 0.0))
                        throw GeometryError("arc body: origin is not strictly interior");
                }
            }
        },
        body);
}

// --- support -----------------------------------------------------------------

double support(const ConvexBody& body, const Direction& u) {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return dot(b.center, u) + b.radius;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                double q = 0.0;
                for (int i = 0; i < b.center.n; ++i)
                    q += b.semi_axes[static_cast<std::size_t>(i)] *
                         b.semi_axes[static_cast<std::size_t>(i)] * u[i] * u[i];
                return dot(b.center, u) + std::sqrt(q);
            } else if constexpr (std::is_same_v<T, SupportCurve2D>) {
                return b.h(u.angle());
            } else if constexpr (std::is_same_v<T, PNormBall2D>) {
                // Bounded 1-D maximization over the boundary parametrization
                // x(t) = (sgn cos|cos t|^{2/r}, sgn sin|sin t|^{2/r}).
                const double e = 2.0 / b.exponent;
                auto pt = [&](double t) {
                    double ct = std::cos(t), st = std::sin(t);
                    double x = std::copysign(std::pow(std::abs(ct), e), ct);
                    double y = std::copysign(std::pow(std::abs(st), e), st);
                    return x * u[0] + y * u[1];
                };
                const int M = 256;
                int best = 0;
                double fbest = pt(0.0);
                for (int k = 1; k < M; ++k) {
                    double f = pt(2.0 * kPi * k / M);
                    if (f > fbest) {
                        fbest = f;
                        best = k;
                    }
                }
                double lo = 2.0 * kPi * (best - 1) / M;
                double hi = 2.0 * kPi * (best + 1) / M;
                double t = golden_max(pt, lo, hi, 1e-12);
                return std::max({pt(t), pt(lo), pt(hi)});
            } else {
                double phi = u.angle();
                double best = -1e300;
                for (const Arc& a : b.arcs) {
                    if (angle_in_range(phi, a.normal_begin, a.normal_end))
                        best = std::max(best, dot(a.center, u) + a.radius);
                    best = std::max(best, dot(arc_start_point(a), u.vec()));
                    best = std::max(best, dot(arc_end_point(a), u.vec()));
                }
                return best;
            }
        },
        body);
}

// --- inverse Gauss map ---------------------------------------------------------

BoundarySample inverse_gauss(const ConvexBody& body, const Direction& u) {
    return std::visit(
        [&](const auto& b) -> BoundarySample {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                BoundarySample s{b.center + b.radius * u.vec(), u, {}, 0.0, false};
                s.kappas.assign(static_cast<std::size_t>(b.center.n - 1), 1.0 / b.radius);
                s.support_dot = dot(s.x, u);
                return s;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                int n = b.center.n;
                double w2 = 0.0;
                for (int i = 0; i < n; ++i)
                    w2 += b.semi_axes[static_cast<std::size_t>(i)] *
                          b.semi_axes[static_cast<std::size_t>(i)] * u[i] * u[i];
                double w = std::sqrt(w2);
                Point x = b.center;
                for (int i = 0; i < n; ++i)
                    x[i] += b.semi_axes[static_cast<std::size_t>(i)] *
                            b.semi_axes[static_cast<std::size_t>(i)] * u[i] / w;
                std::vector<double> radii;
                ellipsoid_curvature_radii(b, u, n, radii);
                BoundarySample s{x, u, {}, dot(x, u), false};
                for (double r : radii) s.kappas.push_back(1.0 / r);
                return s;
            } else if constexpr (std::is_same_v<T, SupportCurve2D>) {
                double th = u.angle();
                double rho = b.h(th) + b.h2(th);
                BoundarySample s{support_curve_point(b, th), u, {1.0 / rho}, b.h(th), false};
                return s;
            } else if constexpr (std::is_same_v<T, PNormBall2D>) {
                double phi = u.angle();
                double fold = wrap_2pi(phi);
                int quadrant = static_cast<int>(fold / (0.5 * kPi));
                if (quadrant > 3) quadrant = 3;
                double local = fold - quadrant * 0.5 * kPi;
                PnormPoint p = pnorm_point_for_normal(b, local);
                double px = p.x, py = p.y;
                // Rotate the first-quadrant point back into the right quadrant.
                for (int q = 0; q < quadrant; ++q) {
                    double nx = -py, ny = px;
                    px = nx;
                    py = ny;
                }
                Point x(px, py);
                Direction nrm = u;
                if (p.clamped) {
                    double r = b.exponent;
                    double gx = std::copysign(std::pow(std::abs(px), r - 1.0), px);
                    double gy = std::copysign(std::pow(std::abs(py), r - 1.0), py);
                    nrm = Direction::of(Vec(gx, gy));
                }
                BoundarySample s{x, nrm, {p.kappa}, dot(x, nrm), p.clamped};
                return s;
            } else {
                double phi = u.angle();
                int idx = find_arc(b, phi);
                if (idx < 0) {
                    Point c = arc_corner_for_normal(b, phi);
                    throw CornerError("arc body: normal direction lies in a corner cone", c[0],
                                      c[1]);
                }
                const Arc& a = b.arcs[static_cast<std::size_t>(idx)];
                Point x = a.center + a.radius * unit2(phi);
                BoundarySample s{x, u, {1.0 / a.radius}, dot(x, u), false};
                return s;
            }
        },
        body);
}

Point boundary_point_for_normal(const ConvexBody& body, const Direction& u) {
    if (const ArcBody2D* ab = std::get_if<ArcBody2D>(&body)) {
        double phi = u.angle();
        int idx = find_arc(*ab, phi);
        if (idx < 0) return arc_corner_for_normal(*ab, phi);
        const Arc& a = ab->arcs[static_cast<std::size_t>(idx)];
        return a.center + a.radius * unit2(phi);
    }
    return inverse_gauss(body, u).x;
}

// --- ball-convexity validation --------------------------------------------------

BallConvexityReport validate_ball_convex(const ConvexBody& body, double R, int resolution) {
    if (!(R > 0.0)) throw ParamError("validate_ball_convex: R must be positive");
    if (resolution < 8) throw ParamError("validate_ball_convex: resolution must be >= 8");
    const int n = dimension(body);
    BallConvexityReport rep{R, 1e300, false, Direction::from_angle(0.0)};

    auto consider = [&](const Direction& u, const std::vector<double>& kappas) {
        for (double k : kappas) {
            double slack = k - 1.0 / R;
            if (slack < rep.min_slack) {
                rep.min_slack = slack;
                rep.witness = u;
            }
        }
    };

    if (const ArcBody2D* ab = std::get_if<ArcBody2D>(&body)) {
        for (const Arc& a : ab->arcs) {
            double mid = 0.5 * (a.normal_begin + a.normal_end);
            consider(Direction::from_angle(mid), {1.0 / a.radius});
        }
    } else if (n == 2) {
        for (int j = 0; j < resolution; ++j) {
            Direction u = Direction::from_angle(2.0 * kPi * j / resolution);
            consider(u, inverse_gauss(body, u).kappas);
        }
        // Curvature extremes of the catalog sit on the axes and diagonals.
        for (int k = 0; k < 8; ++k) {
            Direction u = Direction::from_angle(0.25 * kPi * k);
            consider(u, inverse_gauss(body, u).kappas);
        }
    } else {
        SphereRule rule = build_rule(3, std::max(8, resolution / 2));
        for (const Direction& u : rule.nodes) consider(u, inverse_gauss(body, u).kappas);
        for (int axis = 0; axis < 3; ++axis)
            for (double sgn : {-1.0, 1.0}) {
                Vec v(0.0, 0.0, 0.0);
                v.n = 3;
                v[axis] = sgn;
                Direction u = Direction::of(v);
                consider(u, inverse_gauss(body, u).kappas);
            }
    }
    if (std::abs(rep.min_slack) <= 1e-12) rep.min_slack = 0.0;
    rep.all_strict = rep.min_slack > 0.0;
    return rep;
}

// --- volume ---------------------------------------------------------------------

double volume(const ConvexBody& body) {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return unit_ball_volume(b.center.n) * std::pow(b.radius, b.center.n);
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                double v = unit_ball_volume(b.center.n);
                for (int i = 0; i < b.center.n; ++i) v *= b.semi_axes[static_cast<std::size_t>(i)];
                return v;
            } else if constexpr (std::is_same_v<T, SupportCurve2D>) {
                // (1/2) * integral of (h^2 - h'^2); exact for the finite series.
                double acc = 2.0 * kPi * b.c0 * b.c0;
                for (std::size_t m = 0; m < b.cos_coef.size(); ++m) {
                    double k = static_cast<double>(m) + 1;
                    acc += kPi * (1.0 - k * k) * b.cos_coef[m] * b.cos_coef[m];
                }
                for (std::size_t m = 0; m < b.sin_coef.size(); ++m) {
                    double k = static_cast<double>(m) + 1;
                    acc += kPi * (1.0 - k * k) * b.sin_coef[m] * b.sin_coef[m];
                }
                return 0.5 * acc;
            } else if constexpr (std::is_same_v<T, PNormBall2D>) {
                // Planimeter in polar form, one quadrant.
                auto f = [&](double phi) {
                    double r = pnorm_radial(b, phi);
                    return 0.5 * r * r;
                };
                return 4.0 * integrate_adaptive(f, 0.0, 0.5 * kPi, 1e-13);
            } else {
                double acc = 0.0;
                for (const Arc& a : b.arcs) {
                    double s = a.normal_begin, e = a.normal_end;
                    double lin = a.center[0] * (std::sin(e) - std::sin(s)) -
                                 a.center[1] * (std::cos(e) - std::cos(s));
                    acc += a.radius * lin + a.radius * a.radius * (e - s);
                }
                return 0.5 * acc;
            }
        },
        body);
}

double polar_volume(const ConvexBody& body, const SphereRule& rule) {
    const int n = dimension(body);
    if (rule.dim != n) throw ParamError("polar_volume: rule dimension mismatch");
    IntegralEstimate est = integrate(rule, [&](const Direction& u) {
        double h = support(body, u);
        if (!(h > 0.0)) throw GeometryError("polar_volume: nonpositive support value (origin not interior)");
        return std::pow(h, -static_cast<double>(n));
    });
    return est.value / n;
}

std::pair<double, double> petty_constant_diagnostic(const ConvexBody& body,
                                                    const SphereRule& rule) {
    const int n = dimension(body);
    if (rule.dim != n) throw ParamError("petty_constant_diagnostic: rule dimension mismatch");
    std::vector<double> g(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        BoundarySample s = inverse_gauss(body, rule.nodes[i]);
        g[i] = std::pow(s.gauss_curvature(), 1.0 / (n + 1)) / s.support_dot;
    }
    double wsum = pairwise_sum(rule.weights);
    std::vector<double> terms(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) terms[i] = rule.weights[i] * g[i];
    double mean = pairwise_sum(terms) / wsum;
    double dev = 0.0;
    for (double v : g) dev = std::max(dev, std::abs(v - mean) / mean);
    return {mean, dev};
}

// --- radial geometry --------------------------------------------------------------

Point anchor_point(const ConvexBody& body) {
    if (const Ball* b = std::get_if<Ball>(&body)) return b->center;
    if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) return e->center;
    Point origin;
    origin.n = dimension(body);
    return origin;
}

namespace {

double ray_exit_ball(const Point& from, const Vec& dir, const Point& center, double radius) {
    Vec d = center - from;
    double b = dot(dir, d);
    double disc = radius * radius - dot(d, d) + b * b;
    if (disc < 0.0) throw GeometryError("radial query: ray misses the body");
    return b + std::sqrt(disc);
}

} // namespace

double radial_from(const ConvexBody& body, const Point& anchor, double phi) {
    Vec e = unit2(phi);
    e.n = anchor.n;
    if (const Ball* b = std::get_if<Ball>(&body)) return ray_exit_ball(anchor, e, b->center, b->radius);
    if (const Ellipsoid* el = std::get_if<Ellipsoid>(&body)) {
        int n = el->center.n;
        double A = 0, B = 0, C = 0;
        for (int i = 0; i < n; ++i) {
            double ai = el->semi_axes[static_cast<std::size_t>(i)];
            double di = anchor[i] - el->center[i];
            A += e[i] * e[i] / (ai * ai);
            B += e[i] * di / (ai * ai);
            C += di * di / (ai * ai);
        }
        double disc = B * B - A * (C - 1.0);
        if (disc < 0.0) throw GeometryError("radial query: anchor outside the ellipsoid");
        return (-B + std::sqrt(disc)) / A;
    }
    if (norm(anchor) > 1e-14)
        throw ParamError("radial_from: non-central anchor is only supported for ball/ellipsoid");
    return radial_extent(body, Direction::from_angle(phi));
}

double radial_extent(const ConvexBody& body, const Direction& w) {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                Point origin;
                origin.n = b.center.n;
                return ray_exit_ball(origin, w.vec(), b.center, b.radius);
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                int n = b.center.n;
                double A = 0, B = 0, C = 0;
                for (int i = 0; i < n; ++i) {
                    double ai = b.semi_axes[static_cast<std::size_t>(i)];
                    A += w[i] * w[i] / (ai * ai);
                    B += w[i] * (-b.center[i]) / (ai * ai);
                    C += b.center[i] * b.center[i] / (ai * ai);
                }
                double disc = B * B - A * (C - 1.0);
                if (disc < 0.0) throw GeometryError("radial query: origin outside the ellipsoid");
                return (-B + std::sqrt(disc)) / A;
            } else if constexpr (std::is_same_v<T, SupportCurve2D>) {
                double th = support_curve_theta_for_ray(b, w.angle());
                return norm(support_curve_point(b, th));
            } else if constexpr (std::is_same_v<T, PNormBall2D>) {
                return pnorm_radial(b, w.angle());
            } else {
                double best = -1.0, best_quality = 1e300;
                for (const Arc& a : b.arcs) {
                    Vec d = a.center;
                    double bb = dot(w.vec(), d);
                    double disc = a.radius * a.radius - dot(d, d) + bb * bb;
                    if (disc < 0.0) continue;
                    for (double s : {bb + std::sqrt(disc), bb - std::sqrt(disc)}) {
                        if (s <= 0.0) continue;
                        Point hit = s * w.vec() - a.center;
                        double psi = std::atan2(hit[1], hit[0]);
                        double lo = a.normal_begin, hi = a.normal_end;
                        double shifted = lo + wrap_2pi(psi - lo);
                        double outside =
                            shifted <= hi ? 0.0 : std::min(shifted - hi, lo + 2.0 * kPi - shifted);
                        if (outside < best_quality) {
                            best_quality = outside;
                            best = s;
                        }
                    }
                }
                if (best < 0.0 || best_quality > 1e-6)
                    throw NumericError("arc body: radial ray found no boundary hit");
                return best;
            }
        },
        body);
}

RadialBoundaryInfo radial_boundary_info(const ConvexBody& body, double phi) {
    return std::visit(
        [&](const auto& b) -> RadialBoundaryInfo {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                ConvexBody self = b;
                double s = radial_extent(self, Direction::from_angle(phi));
                Point x = s * unit2(phi);
                Direction nrm = Direction::of(x - b.center);
                int n = b.center.n;
                return {x, std::pow(1.0 / b.radius, n - 1), dot(x, nrm)};
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                ConvexBody self = b;
                double s = radial_extent(self, Direction::from_angle(phi));
                Point x = s * unit2(phi);
                int n = b.center.n;
                Vec g;
                g.n = n;
                for (int i = 0; i < n; ++i)
                    g[i] = (x[i] - b.center[i]) /
                           (b.semi_axes[static_cast<std::size_t>(i)] *
                            b.semi_axes[static_cast<std::size_t>(i)]);
                Direction nrm = Direction::of(g);
                double prod = 1.0;
                for (int i = 0; i < n; ++i) prod *= b.semi_axes[static_cast<std::size_t>(i)];
                double h_rel = dot(x - b.center, nrm.vec());
                double kappa = std::pow(h_rel, n + 1) / (prod * prod);
                return {x, kappa, dot(x, nrm)};
            } else if constexpr (std::is_same_v<T, SupportCurve2D>) {
                double th = support_curve_theta_for_ray(b, phi);
                Point x = support_curve_point(b, th);
                return {x, 1.0 / (b.h(th) + b.h2(th)), b.h(th)};
            } else if constexpr (std::is_same_v<T, PNormBall2D>) {
                ConvexBody self = b;
                double s = radial_extent(self, Direction::from_angle(phi));
                Point x = s * unit2(phi);
                double r = b.exponent;
                double ax = std::abs(x[0]), ay = std::abs(x[1]);
                double gx = std::copysign(std::pow(ax, r - 1.0), x[0]);
                double gy = std::copysign(std::pow(ay, r - 1.0), x[1]);
                Direction nrm = Direction::of(Vec(gx, gy));
                double kap = (r - 1.0) * std::pow(ax * ay, r - 2.0) /
                             std::pow(std::pow(ax, 2.0 * (r - 1.0)) + std::pow(ay, 2.0 * (r - 1.0)),
                                      1.5);
                return {x, kap, dot(x, nrm)};
            } else {
                ConvexBody self = b;
                double s = radial_extent(self, Direction::from_angle(phi));
                Point x = s * unit2(phi);
                // Locate the arc the hit point lies on.
                const Arc* best = nullptr;
                double best_err = 1e300;
                for (const Arc& a : b.arcs) {
                    double err = std::abs(norm(x - a.center) - a.radius);
                    if (err < best_err) {
                        best_err = err;
                        best = &a;
                    }
                }
                Direction nrm = Direction::of(x - best->center);
                return {x, 1.0 / best->radius, dot(x, nrm)};
            }
        },
        body);
}

ConvexBody scale_body(const ConvexBody& body, double a) {
    if (!(a > 0.0)) throw ParamError("scale_body: factor must be positive");
    return std::visit(
        [&](const auto& b) -> ConvexBody {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                Ball s = b;
                s.center = a * s.center;
                s.radius *= a;
                return s;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                Ellipsoid s = b;
                s.center = a * s.center;
                for (double& ax : s.semi_axes) ax *= a;
                return s;
            } else if constexpr (std::is_same_v<T, SupportCurve2D>) {
                SupportCurve2D s = b;
                s.c0 *= a;
                for (double& c : s.cos_coef) c *= a;
                for (double& c : s.sin_coef) c *= a;
                return s;
            } else if constexpr (std::is_same_v<T, PNormBall2D>) {
                throw ParamError("scale_body: pnorm2d is a fixed unit body");
            } else {
                ArcBody2D s = b;
                for (Arc& arc : s.arcs) {
                    arc.center = a * arc.center;
                    arc.radius *= a;
                }
                return s;
            }
        },
        body);
}

} // namespace ballconv
