#include "ballconv/numerics.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstring>

#include "ballconv/errors.hpp"

namespace ballconv {

double unit_ball_volume(int n) {
    switch (n) {
        case 0: return 1.0;
        case 1: return 2.0;
        case 2: return kPi;
        case 3: return 4.0 * kPi / 3.0;
        default: throw ParamError("unit_ball_volume: dimension out of range");
    }
}

double sphere_surface(int n_minus_1) {
    switch (n_minus_1) {
        case 0: return 2.0;
        case 1: return 2.0 * kPi;
        case 2: return 4.0 * kPi;
        default: throw ParamError("sphere_surface: dimension out of range");
    }
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n == 1) return values[0];
    const std::size_t half = n / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    if (m < 1) throw ParamError("gauss_legendre: order must be >= 1");
    nodes.assign(static_cast<std::size_t>(m), 0.0);
    weights.assign(static_cast<std::size_t>(m), 0.0);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_m.
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(m - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(m - 1 - i)] = w;
    }
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (abscissae/weights on [-1,1]).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double err;
};

PanelResult gk15_core(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kXgk[j]);
        fv[14 - j] = f(c + h * kXgk[j]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int j = 0; j < 7; ++j) resk += kWgk[j] * (fv[j] + fv[14 - j]);
    for (int j = 0; j < 3; ++j) resg += kWg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    return {resk * h, std::abs((resk - resg) * h)};
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int depth, int max_depth) {
    PanelResult r = gk15_core(f, a, b);
    if (r.err <= abs_tol || depth >= max_depth) return r.value;
    double m = 0.5 * (a + b);
    return adaptive_rec(f, a, m, 0.5 * abs_tol, depth + 1, max_depth) +
           adaptive_rec(f, m, b, 0.5 * abs_tol, depth + 1, max_depth);
}

} // namespace

double gk15_panel(const std::function<double(double)>& f, double a, double b, double* err) {
    PanelResult r = gk15_core(f, a, b);
    if (err) *err = r.err;
    return r.value;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (!(b > a)) return 0.0;
    return adaptive_rec(f, a, b, abs_tol, 0, max_depth);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double invphi = 0.6180339887498948482;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

double solve_bracketed(const std::function<double(double)>& f, double a, double b,
                       double fa, double fb, double f_tol, double x_tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NumericError("solve_bracketed: endpoints do not bracket a root");
    for (int it = 0; it < 200; ++it) {
        // Secant candidate, guarded to the interior of the bracket.
        double x = b - fb * (b - a) / (fb - fa);
        double lo = std::min(a, b), hi = std::max(a, b);
        if (!(x > lo && x < hi)) x = 0.5 * (a + b);
        double fx = f(x);
        if (std::abs(fx) <= f_tol || (x_tol > 0.0 && std::abs(b - a) <= x_tol)) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    return 0.5 * (a + b);
}

double lsq_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double d = n * sxx - sx * sx;
    if (d == 0.0) throw NumericError("lsq_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / d;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return std::string(buf);
}

} // namespace ballconv
