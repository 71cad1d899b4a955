#include "ballconv/floating.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>

#include "ballconv/errors.hpp"
#include "ballconv/numerics.hpp"
#include "ballconv/parallel.hpp"
#include "ballconv/surface_measures.hpp"

namespace ballconv {

namespace {

double wrap_2pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

// --- WeightFn ----------------------------------------------------------------

double fp_log_value(double kappa, double support_dot, double p, int n) {
    if (!std::isfinite(p)) throw ParamError("fp weight: p must be finite");
    if (p == -static_cast<double>(n)) throw ParamError("p = -n excluded");
    double num = n * (n + 1.0) * (p - 1.0) * std::log(support_dot) - n * (p - 1.0) * std::log(kappa);
    return num / (2.0 * (n + p));
}

// --- 2-D slicing -------------------------------------------------------------

struct RaySegments {
    // Up to two [lo,hi] cut segments along the ray.
    double seg[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    int count = 0;
};

RaySegments cut_segments(const ConvexBody& body, const Point& anchor, const CutBall& ball,
                         double phi) {
    RaySegments out;
    double sK = radial_from(body, anchor, phi);
    Vec e(std::cos(phi), std::sin(phi));
    Vec d = ball.center - anchor;
    double b = dot(e, d);
    double disc = ball.radius * ball.radius - dot(d, d) + b * b;
    auto push = [&](double lo, double hi) {
        if (hi - lo > 1e-15) {
            out.seg[out.count][0] = lo;
            out.seg[out.count][1] = hi;
            ++out.count;
        }
    };
    if (disc <= 0.0) {
        push(0.0, sK); // ray misses the ball entirely
        return out;
    }
    double root = std::sqrt(disc);
    double s_lo = b - root, s_hi = b + root;
    push(0.0, std::min(std::max(s_lo, 0.0), sK));
    push(std::min(std::max(s_hi, 0.0), sK), sK);
    return out;
}

double segment_weighted_mass(const Point& anchor, double phi, double lo, double hi,
                             const WeightFn& f) {
    if (f.is_constant()) return 0.5 * f.constant_value() * (hi * hi - lo * lo);
    Vec e(std::cos(phi), std::sin(phi));
    auto g = [&](double s) {
        Point y = anchor + s * e;
        return f(y) * s;
    };
    return gk15_panel(g, lo, hi);
}

double cut_measure_2d(const ConvexBody& body, const CutBall& ball, const WeightFn& f) {
    const Point anchor = anchor_point(body);
    const double tol_total = 1e-12 * volume(body);

    auto ray_mass = [&](double phi) {
        RaySegments segs = cut_segments(body, anchor, ball, phi);
        double m = 0.0;
        for (int k = 0; k < segs.count; ++k)
            m += segment_weighted_mass(anchor, phi, segs.seg[k][0], segs.seg[k][1], f);
        return m;
    };
    auto is_cut = [&](double phi) {
        return cut_segments(body, anchor, ball, phi).count > 0;
    };

    // Scan for cut windows; seed with the direction from the ball center
    // through the anchor (the cap sits on that side).
    const int M = 360;
    std::vector<double> angles;
    angles.reserve(M + 3);
    for (int k = 0; k < M; ++k) angles.push_back(2.0 * kPi * k / M);
    Vec away = anchor - ball.center;
    if (norm(away) > 1e-14) {
        double seed = std::atan2(away[1], away[0]);
        angles.push_back(wrap_2pi(seed));
        angles.push_back(wrap_2pi(seed - 0.5 * kPi / M));
        angles.push_back(wrap_2pi(seed + 0.5 * kPi / M));
    }
    std::sort(angles.begin(), angles.end());
    const std::size_t S = angles.size();
    std::vector<char> mask(S);
    bool any = false, all = true;
    for (std::size_t k = 0; k < S; ++k) {
        mask[k] = is_cut(angles[k]) ? 1 : 0;
        any = any || mask[k];
        all = all && mask[k];
    }
    if (!any) return 0.0;
    if (all) return integrate_adaptive(ray_mass, 0.0, 2.0 * kPi, tol_total);

    // Boolean bisection of a window edge between adjacent samples.
    auto refine_edge = [&](double inside, double outside) {
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (inside + outside);
            if (is_cut(mid))
                inside = mid;
            else
                outside = mid;
        }
        return 0.5 * (inside + outside);
    };

    double total = 0.0;
    for (std::size_t k = 0; k < S; ++k) {
        std::size_t prev = (k + S - 1) % S;
        if (!mask[k] || mask[prev]) continue; // not a window start
        // Window: from the first cut sample back to the edge, forward to the end.
        double start_in = angles[k];
        double start_out = angles[prev] + (prev > k ? -2.0 * kPi : 0.0);
        double lo = refine_edge(start_in, start_out);
        std::size_t j = k;
        while (mask[(j + 1) % S]) {
            j = (j + 1) % S;
            if (j == k) break;
        }
        double end_in = angles[j] + (j < k ? 2.0 * kPi : 0.0);
        std::size_t nxt = (j + 1) % S;
        double end_out = angles[nxt] + (nxt <= k ? 2.0 * kPi : 0.0);
        double hi = refine_edge(end_in, end_out);
        total += integrate_adaptive(ray_mass, lo, hi, tol_total);
    }
    return total;
}

// --- 3-D closed forms ---------------------------------------------------------

double sphere_sphere_intersection_volume(double r1, double r2, double d) {
    if (d >= r1 + r2) return 0.0;
    if (d <= std::abs(r1 - r2)) {
        double r = std::min(r1, r2);
        return 4.0 * kPi / 3.0 * r * r * r;
    }
    double s = r1 + r2 - d;
    return kPi * s * s * (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2) * (r1 - r2)) / (12.0 * d);
}

bool spheroid_axis_aligned_cut(const Ellipsoid& e, const CutBall& ball, int* axis_out) {
    for (int axis = 0; axis < 3; ++axis) {
        int a = (axis + 1) % 3, b = (axis + 2) % 3;
        if (std::abs(e.semi_axes[static_cast<std::size_t>(a)] -
                     e.semi_axes[static_cast<std::size_t>(b)]) > 1e-14)
            continue;
        bool on_axis = true;
        for (int i = 0; i < 3; ++i)
            if (i != axis && std::abs(ball.center[i] - e.center[i]) > 1e-14) on_axis = false;
        if (on_axis) {
            *axis_out = axis;
            return true;
        }
    }
    return false;
}

double cut_measure_3d(const ConvexBody& body, const CutBall& ball, const WeightFn& f,
                      unsigned seed, double* std_error) {
    if (std_error) *std_error = 0.0;
    if (const Ball* b = std::get_if<Ball>(&body)) {
        if (f.is_constant()) {
            double d = norm(b->center - ball.center);
            double inter = sphere_sphere_intersection_volume(b->radius, ball.radius, d);
            return f.constant_value() * (volume(body) - inter);
        }
    }
    if (const Ellipsoid* e = std::get_if<Ellipsoid>(&body)) {
        int axis = -1;
        if (f.is_constant() && spheroid_axis_aligned_cut(*e, ball, &axis)) {
            // Rotational reduction: annulus area between the spheroid and the
            // ball cross-sections at each height along the symmetry axis.
            double a_ax = e->semi_axes[static_cast<std::size_t>(axis)];
            double a_tr = e->semi_axes[static_cast<std::size_t>((axis + 1) % 3)];
            double z0 = e->center[axis], zb = ball.center[axis], R = ball.radius;
            auto area = [&](double z) {
                double q = 1.0 - (z - z0) * (z - z0) / (a_ax * a_ax);
                double xe2 = std::max(0.0, a_tr * a_tr * q);
                double xb2 = std::max(0.0, R * R - (z - zb) * (z - zb));
                return kPi * std::max(0.0, xe2 - std::min(xe2, xb2));
            };
            double v = integrate_adaptive(area, z0 - a_ax, z0 + a_ax, 1e-12 * volume(body));
            return f.constant_value() * v;
        }
    }
    // Stratified Monte Carlo over the bounding box, one jittered point per cell.
    const Ellipsoid* e = std::get_if<Ellipsoid>(&body);
    const Ball* b = std::get_if<Ball>(&body);
    if (!e && !b) throw ParamError("cut_measure: 3-D supports ball and ellipsoid only");
    Point c = b ? b->center : e->center;
    double ext[3];
    for (int i = 0; i < 3; ++i)
        ext[i] = b ? b->radius : e->semi_axes[static_cast<std::size_t>(i)];
    const int m = 48; // strata per axis
    const double cell = 1.0 / m;
    std::uint64_t state = 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(seed) * 0xBF58476D1CE4E5B9ull + 1);
    auto rnd = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    double box = 8.0 * ext[0] * ext[1] * ext[2];
    double sum = 0.0, sum2 = 0.0;
    const long total = static_cast<long>(m) * m * m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                Point y(c[0] + ext[0] * (2.0 * ((i + rnd()) * cell) - 1.0),
                        c[1] + ext[1] * (2.0 * ((j + rnd()) * cell) - 1.0),
                        c[2] + ext[2] * (2.0 * ((k + rnd()) * cell) - 1.0));
                bool in_body;
                if (b) {
                    in_body = norm(y - b->center) <= b->radius;
                } else {
                    double q = 0.0;
                    for (int t = 0; t < 3; ++t) {
                        double dd = (y[t] - e->center[t]) / e->semi_axes[static_cast<std::size_t>(t)];
                        q += dd * dd;
                    }
                    in_body = q <= 1.0;
                }
                double v = 0.0;
                if (in_body && norm(y - ball.center) > ball.radius) v = f(y);
                sum += v;
                sum2 += v * v;
            }
    double mean = sum / total;
    double var = std::max(0.0, sum2 / total - mean * mean);
    if (std_error) *std_error = box * std::sqrt(var / total);
    return box * mean;
}

double delta_exponent(int n) { return 2.0 / (n + 1.0); }

double primal_constant(int n) {
    return 0.5 * std::pow((n + 1.0) / unit_ball_volume(n - 1), 2.0 / (n + 1.0));
}

double dual_constant(int n) {
    double sig = sphere_surface(n - 2);
    return n * n * std::pow(static_cast<double>(n) * n - 1.0, 2.0 / (n + 1.0)) /
           (2.0 * std::pow(sig, 2.0 / (n + 1.0)));
}

// Boundary integral of g(f-value, slack-product) d mu for the convergence targets.
double boundary_target_integral(const ConvexBody& body, double R, const WeightFn* f,
                                bool dual_kernel, const SphereRule& rule) {
    const int n = dimension(body);
    const double inv_R = 1.0 / R;
    if (const ArcBody2D* ab = std::get_if<ArcBody2D>(&body)) {
        double total = 0.0;
        for (const Arc& a : ab->arcs) {
            double kappa = 1.0 / a.radius;
            double slack = kappa - inv_R;
            if (std::abs(slack) <= 1e-12) continue;
            if (slack < 0.0) throw NotBallConvexError("target integral: arc radius exceeds R");
            double sp = std::pow(slack, 1.0 / (n + 1));
            auto g = [&](double phi) {
                Point x = a.center + a.radius * Vec(std::cos(phi), std::sin(phi));
                double h = dot(x, Vec(std::cos(phi), std::sin(phi)));
                double base;
                if (dual_kernel) {
                    base = kappa / std::pow(h, n + 1);
                } else {
                    base = std::pow((*f)(x), -2.0 / (n + 1.0));
                }
                return base * sp * a.radius;
            };
            double rough = std::abs(gk15_panel(g, a.normal_begin, a.normal_end));
            total += integrate_adaptive(g, a.normal_begin, a.normal_end, 1e-13 * (1.0 + rough));
        }
        return total;
    }
    IntegralEstimate est = integrate(rule, [&](const Direction& u) {
        BoundarySample s = inverse_gauss(body, u);
        double prod = 1.0;
        for (double k : s.kappas) {
            double slack = k - inv_R;
            if (std::abs(slack) <= 1e-12) slack = 0.0;
            if (slack < 0.0) throw NotBallConvexError("target integral: curvature below 1/R");
            prod *= std::pow(slack, 1.0 / (n + 1));
        }
        double kappa = s.gauss_curvature();
        double base;
        if (dual_kernel)
            base = kappa / std::pow(s.support_dot, n + 1);
        else
            base = std::pow((*f)(s.x), -2.0 / (n + 1.0));
        return base * prod / kappa;
    });
    return est.value;
}

void extrapolate(ConvergenceReport& rep, int n) {
    const double q = delta_exponent(n);
    std::size_t m = rep.ratios.size();
    if (m == 0) throw NumericError("convergence: no usable delta levels");
    if (m == 1) {
        rep.extrapolated = rep.ratios[0];
    } else {
        double s = std::pow(rep.deltas[m - 2] / rep.deltas[m - 1], q);
        rep.extrapolated =
            rep.ratios[m - 1] + (rep.ratios[m - 1] - rep.ratios[m - 2]) / (s - 1.0);
    }
    std::size_t fit = std::min<std::size_t>(4, m);
    std::vector<double> lx, ly;
    for (std::size_t k = m - fit; k < m; ++k) {
        if (rep.vol_diffs[k] <= 0.0) continue;
        lx.push_back(std::log(rep.deltas[k]));
        ly.push_back(std::log(rep.vol_diffs[k]));
    }
    rep.fitted_order = lx.size() >= 2 ? lsq_slope(lx, ly) : 0.0;
}

} // namespace

// --- WeightFn ------------------------------------------------------------------

WeightFn WeightFn::one() { return constant(1.0); }

WeightFn WeightFn::constant(double c) {
    if (!(c > 0.0)) throw ParamError("weight: constant must be positive");
    WeightFn w;
    w.constant_ = true;
    w.const_value_ = c;
    w.lower_ = c;
    w.desc_ = c == 1.0 ? "one" : "constant:" + format_double(c);
    w.eval_ = [c](const Point&) { return c; };
    return w;
}

WeightFn WeightFn::fp(const ConvexBody& body, double p) {
    const int n = dimension(body);
    if (n != 2) throw ParamError("fp weight: only 2-D bodies are supported");
    if (std::isfinite(p) && p == -static_cast<double>(n)) throw ParamError("p = -n excluded");
    WeightFn w;
    w.constant_ = false;
    w.desc_ = "fp:" + format_double(p);
    ConvexBody copy = body;
    w.eval_ = [copy, p, n](const Point& y) {
        double phi = std::atan2(y[1], y[0]);
        RadialBoundaryInfo info = radial_boundary_info(copy, phi);
        return std::exp(fp_log_value(info.kappa, info.support_dot, p, n));
    };
    // Declared lower bound from a boundary sweep.
    double lo = 1e300;
    for (int k = 0; k < 512; ++k) {
        double phi = 2.0 * kPi * (k + 0.5) / 512;
        RadialBoundaryInfo info = radial_boundary_info(body, phi);
        lo = std::min(lo, std::exp(fp_log_value(info.kappa, info.support_dot, p, n)));
    }
    if (!(lo > 0.0) || !std::isfinite(lo))
        throw WeightError("fp weight: boundary sweep found a nonpositive value");
    w.lower_ = 0.9 * lo;
    return w;
}

double WeightFn::operator()(const Point& y) const {
    double v = eval_(y);
    if (!(v >= lower_ - 1e-12) || !std::isfinite(v))
        throw WeightError("weight value fell below its declared lower bound");
    return v;
}

// --- cut machinery ----------------------------------------------------------------

double cut_measure(const ConvexBody& body, const CutBall& ball, const WeightFn& f, unsigned seed,
                   double* std_error) {
    if (!(ball.radius > 0.0)) throw ParamError("cut_measure: ball radius must be positive");
    if (std_error) *std_error = 0.0;
    if (dimension(body) == 2) return cut_measure_2d(body, ball, f);
    return cut_measure_3d(body, ball, f, seed, std_error);
}

CutBall find_cut_depth(const ConvexBody& body, const Direction& u, double delta, const WeightFn& f,
                       double R) {
    if (!(delta > 0.0)) throw ParamError("find_cut_depth: delta must be positive");
    if (!(R > 0.0) || std::isinf(R)) throw ParamError("find_cut_depth: R must be positive and finite");
    Point x = boundary_point_for_normal(body, u);
    auto ball_at = [&](double t) {
        return CutBall{x - (R + t) * u.vec(), R};
    };
    auto g = [&](double t) { return cut_measure(body, ball_at(t), f) - delta; };

    double scale = radial_extent(body, u) + norm(x);
    double t_lo = 0.0, g_lo = -delta;
    double t_hi = 1e-3 * scale;
    double g_hi = g(t_hi);
    const double t_cap = 4.0 * (scale + R);
    while (g_hi < 0.0) {
        t_lo = t_hi;
        g_lo = g_hi;
        t_hi *= 4.0;
        if (t_hi > t_cap)
            throw StarvationError("find_cut_depth: delta too large along direction angle " +
                                  format_double(u.dim() == 2 ? u.angle() : 0.0));
        g_hi = g(t_hi);
    }
    double t = solve_bracketed(g, t_lo, t_hi, g_lo, g_hi, 1e-3 * delta);
    return ball_at(t);
}

// --- floating bodies -----------------------------------------------------------------

FloatingBodyApprox floating_body(const ConvexBody& body, double delta, double R, const WeightFn& f,
                                 const SphereRule& grid) {
    if (delta < 0.0) throw ParamError("floating_body: delta must be nonnegative");
    if (grid.dim != dimension(body)) throw ParamError("floating_body: grid dimension mismatch");
    FloatingBodyApprox approx;
    approx.grid = grid.nodes;
    approx.grid_weights = grid.weights;
    approx.delta = delta;
    approx.R = R;
    const std::size_t G = grid.size();
    approx.radial.assign(G, 0.0);

    if (delta == 0.0) {
        parallel_for(G, [&](std::size_t i) {
            approx.radial[i] = radial_extent(body, grid.nodes[i]);
        });
        return approx;
    }

    approx.cuts.assign(G, CutBall{});
    std::vector<std::string> starved;
    std::mutex starved_mu;
    parallel_for(G, [&](std::size_t i) {
        try {
            approx.cuts[i] = find_cut_depth(body, grid.nodes[i], delta, f, R);
        } catch (const StarvationError&) {
            std::lock_guard<std::mutex> lock(starved_mu);
            starved.push_back(format_double(grid.nodes[i].dim() == 2 ? grid.nodes[i].angle() : 0.0));
        }
    });
    if (!starved.empty()) {
        std::string msg = "floating_body: starvation at direction angle(s) ";
        for (std::size_t k = 0; k < std::min<std::size_t>(starved.size(), 8); ++k)
            msg += (k ? ", " : "") + starved[k];
        if (starved.size() > 8) msg += ", ...";
        throw StarvationError(msg);
    }

    parallel_for(G, [&](std::size_t j) {
        const Direction& w = grid.nodes[j];
        double best = 1e300;
        for (const CutBall& ball : approx.cuts) {
            double b = dot(w, ball.center);
            double disc = ball.radius * ball.radius - dot(ball.center, ball.center) + b * b;
            if (disc < 0.0)
                throw GeometryError("floating_body: origin left a cut ball (delta too large)");
            best = std::min(best, b + std::sqrt(disc));
        }
        if (!(best > 0.0))
            throw GeometryError("floating_body: approximation does not contain the origin");
        approx.radial[j] = best;
    });
    return approx;
}

double floating_volume(const FloatingBodyApprox& approx) {
    const int n = approx.grid.empty() ? 2 : approx.grid[0].dim();
    std::vector<double> terms(approx.radial.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = approx.grid_weights[i] * std::pow(approx.radial[i], n);
    return pairwise_sum(terms) / n;
}

double dual_floating_volume(const FloatingBodyApprox& approx, const SphereRule& rule) {
    const int n = rule.dim;
    const std::size_t G = approx.grid.size();
    std::vector<double> terms(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
        const Direction& v = rule.nodes[i];
        double h = -1e300;
        for (std::size_t j = 0; j < G; ++j)
            h = std::max(h, approx.radial[j] * dot(approx.grid[j], v));
        if (!(h > 0.0))
            throw GeometryError("dual_floating_volume: origin not interior to the approximation");
        terms[i] = rule.weights[i] * std::pow(h, -static_cast<double>(n));
    });
    return pairwise_sum(terms) / n;
}

double fp_weight(const ConvexBody& body, double p, const Direction& u) {
    const int n = dimension(body);
    BoundarySample s = inverse_gauss(body, u);
    return std::exp(fp_log_value(s.gauss_curvature(), s.support_dot, p, n));
}

// --- convergence harnesses --------------------------------------------------------------

namespace {

ConvergenceReport converge_common(const ConvexBody& body, double R, const WeightFn* f, bool dual,
                                  std::span<const double> deltas, int grid_resolution) {
    const int n = dimension(body);
    for (std::size_t k = 0; k + 1 < deltas.size(); ++k)
        if (!(deltas[k] > deltas[k + 1])) throw ParamError("convergence: delta grid must decrease");
    SphereRule rule = build_rule(n, grid_resolution);
    const double q = delta_exponent(n);

    ConvergenceReport rep;
    rep.grid = rule.nodes;
    WeightFn unit = WeightFn::one();
    const WeightFn& weight = f ? *f : unit;

    FloatingBodyApprox base = floating_body(body, 0.0, R, weight, rule);
    double ref = dual ? dual_floating_volume(base, rule) : floating_volume(base);

    for (std::size_t k = 0; k < deltas.size(); ++k) {
        double d = deltas[k];
        try {
            FloatingBodyApprox approx = floating_body(body, d, R, weight, rule);
            double v = dual ? dual_floating_volume(approx, rule) : floating_volume(approx);
            double diff = dual ? v - ref : ref - v;
            rep.deltas.push_back(d);
            rep.vol_diffs.push_back(diff);
            rep.ratios.push_back(diff / std::pow(d, q));
            rep.cuts_per_delta.push_back(std::move(approx.cuts));
        } catch (const StarvationError& e) {
            if (rep.deltas.empty() && k + 1 < deltas.size()) {
                rep.notes.push_back(std::string("trimmed delta ") + format_double(d) + ": " +
                                    e.what());
                continue;
            }
            throw;
        }
    }

    double c_n = dual ? dual_constant(n) : primal_constant(n);
    rep.boundary_integral = boundary_target_integral(body, R, &weight, dual, rule);
    rep.target = c_n * rep.boundary_integral;
    extrapolate(rep, n);
    rep.measured_constant =
        rep.boundary_integral > 0.0 ? rep.extrapolated / rep.boundary_integral : 0.0;
    rep.rel_error = rep.target != 0.0 ? std::abs(rep.extrapolated - rep.target) / rep.target
                                      : std::abs(rep.extrapolated);
    return rep;
}

} // namespace

ConvergenceReport converge_primal(const ConvexBody& body, double R, const WeightFn& f,
                                  std::span<const double> deltas, int grid_resolution) {
    return converge_common(body, R, &f, false, deltas, grid_resolution);
}

ConvergenceReport converge_dual(const ConvexBody& body, double R, std::span<const double> deltas,
                                int grid_resolution) {
    return converge_common(body, R, nullptr, true, deltas, grid_resolution);
}

std::pair<double, double> cap_volume_check(std::span<const double> semi_axes, double R, double h) {
    const int n = static_cast<int>(semi_axes.size());
    if (n != 2 && n != 3) throw ParamError("cap_volume_check: dimension must be 2 or 3");
    if (!(R > 0.0) || !(h > 0.0)) throw ParamError("cap_volume_check: need R > 0 and h > 0");
    double a_n = semi_axes[static_cast<std::size_t>(n - 1)];
    for (int i = 0; i < n - 1; ++i) {
        double c = a_n / (semi_axes[static_cast<std::size_t>(i)] * semi_axes[static_cast<std::size_t>(i)]) - 1.0 / R;
        if (!(c > 0.0))
            throw ParamError("cap_volume_check: geometry mismatch (a_n/a_i^2 must exceed 1/R)");
    }
    if (n == 3 && std::abs(semi_axes[0] - semi_axes[1]) > 1e-14)
        throw ParamError("cap_volume_check: n=3 requires a spheroid (a_1 = a_2)");

    Ellipsoid e;
    e.center.n = n;
    e.center[n - 1] = a_n;
    for (int i = 0; i < n; ++i) e.semi_axes[static_cast<std::size_t>(i)] = semi_axes[static_cast<std::size_t>(i)];
    CutBall ball;
    ball.center.n = n;
    ball.center[n - 1] = R + h;
    ball.radius = R;
    double numeric = cut_measure(ConvexBody{e}, ball, WeightFn::one());

    double sum_term;
    if (n == 2) {
        sum_term = kSigmaS0 / std::sqrt(a_n / (semi_axes[0] * semi_axes[0]) - 1.0 / R);
    } else {
        double c1 = a_n / (semi_axes[0] * semi_axes[0]) - 1.0 / R;
        double c2 = a_n / (semi_axes[1] * semi_axes[1]) - 1.0 / R;
        sum_term = 2.0 * kPi / std::sqrt(c1 * c2);
    }
    double asym = std::pow(2.0, 0.5 * (n + 1)) / ((n - 1.0) * (n + 1.0)) *
                  std::pow(h, 0.5 * (n + 1)) * sum_term;
    return {numeric, asym};
}

} // namespace ballconv
