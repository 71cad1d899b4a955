#include "ballconv/entropy.hpp"

#include <cmath>
#include <limits>

#include "ballconv/errors.hpp"
#include "ballconv/numerics.hpp"
#include "ballconv/surface_measures.hpp"

namespace ballconv {

namespace {

// Discretized boundary measure: per node the d mu quadrature weight, the
// Gauss curvature, <x,N>, and the relative-curvature weight w_K.
struct BoundaryGrid {
    std::vector<double> mu_w;
    std::vector<double> kappa;
    std::vector<double> h;
    std::vector<double> w;
};

BoundaryGrid boundary_grid(const ConvexBody& body, double R, const SphereRule& rule) {
    const int n = dimension(body);
    const double inv_R = std::isinf(R) ? 0.0 : 1.0 / R;
    BoundaryGrid g;
    if (const ArcBody2D* ab = std::get_if<ArcBody2D>(&body)) {
        // Composite Gauss-Legendre nodes along each arc.
        std::vector<double> gl_x, gl_w;
        gauss_legendre(64, gl_x, gl_w);
        for (const Arc& a : ab->arcs) {
            double kappa = 1.0 / a.radius;
            double slack = kappa - inv_R;
            if (std::abs(slack) <= 1e-12) slack = 0.0;
            if (slack < 0.0) throw NotBallConvexError("entropy: arc radius exceeds R");
            double wk = std::pow(slack / kappa, 1.0 / (n + 1));
            double mid = 0.5 * (a.normal_begin + a.normal_end);
            double half = 0.5 * (a.normal_end - a.normal_begin);
            if (half <= 0.0) continue;
            for (std::size_t k = 0; k < gl_x.size(); ++k) {
                double phi = mid + half * gl_x[k];
                double h = a.center[0] * std::cos(phi) + a.center[1] * std::sin(phi) + a.radius;
                if (!(h > 0.0)) throw GeometryError("entropy: nonpositive <x,N> on an arc");
                g.mu_w.push_back(gl_w[k] * half * a.radius);
                g.kappa.push_back(kappa);
                g.h.push_back(h);
                g.w.push_back(wk);
            }
        }
        return g;
    }
    g.mu_w.resize(rule.size());
    g.kappa.resize(rule.size());
    g.h.resize(rule.size());
    g.w.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        BoundarySample s = inverse_gauss(body, rule.nodes[i]);
        double kappa = s.gauss_curvature();
        double wk = 1.0;
        for (double k : s.kappas) {
            double slack = k - inv_R;
            if (std::abs(slack) <= 1e-12) slack = 0.0;
            if (slack < 0.0) throw NotBallConvexError("entropy: curvature below 1/R at a node");
            wk *= std::pow(slack / k, 1.0 / (n + 1));
        }
        if (!(s.support_dot > 0.0)) throw GeometryError("entropy: nonpositive <x,N>");
        g.mu_w[i] = rule.weights[i] / kappa;  // d mu against the sphere rule
        g.kappa[i] = kappa;
        g.h[i] = s.support_dot;
        g.w[i] = wk;
    }
    return g;
}

// Integrals S_inf = int kappa/h^n dw, S_0 = int h dw, T = int kappa/h^n log(kappa/h^{n+1}) dw.
struct EntropyIntegrals {
    double S_inf = 0.0, S_0 = 0.0, T = 0.0;
};

EntropyIntegrals entropy_integrals(const BoundaryGrid& g, int n) {
    std::vector<double> a(g.mu_w.size()), b(g.mu_w.size()), c(g.mu_w.size());
    for (std::size_t i = 0; i < g.mu_w.size(); ++i) {
        double base = g.kappa[i] / std::pow(g.h[i], n);
        double dw = g.mu_w[i] * g.w[i];
        a[i] = base * dw;
        b[i] = g.h[i] * dw;
        c[i] = base * std::log(g.kappa[i] / std::pow(g.h[i], n + 1)) * dw;
    }
    return {pairwise_sum(a), pairwise_sum(b), pairwise_sum(c)};
}

double log_omega(const ConvexBody& body, double p, double R, const SphereRule& rule) {
    double v = omega_p_R(body, OmegaParams{p, R}, rule).value;
    if (!(v > 0.0)) throw GeometryError("entropy: Omega vanished (degenerate body)");
    return std::log(v);
}

} // namespace

EntropyResult entropy_integral(const ConvexBody& body, double R, const SphereRule& rule) {
    const int n = dimension(body);
    BoundaryGrid g = boundary_grid(body, R, rule);
    EntropyIntegrals I = entropy_integrals(g, n);
    if (!(I.S_inf > 0.0))
        throw GeometryError("entropy: Omega_inf^R = 0 (degenerate body, no strict-slack set)");
    EntropyResult res;
    res.log_E = -n * I.T / I.S_inf;
    res.E = std::exp(res.log_E);
    double log_inf = std::log(I.S_inf);
    for (double p : {10.0, 30.0, 100.0, 300.0}) {
        double lo = log_omega(body, p, R, rule);
        res.limit_estimates.emplace_back(p, std::exp((n + p) * (lo - log_inf)));
    }
    return res;
}

std::vector<std::pair<double, double>> entropy_limit(const ConvexBody& body, double R,
                                                     double p_max, const SphereRule& rule) {
    if (!(p_max > 2.0)) throw ParamError("entropy_limit: p_max must exceed 2");
    const int n = dimension(body);
    double log_inf = log_omega(body, std::numeric_limits<double>::infinity(), R, rule);
    std::vector<std::pair<double, double>> est;
    const int m = 8;
    for (int k = 0; k < m; ++k) {
        double p = 2.0 * std::pow(p_max / 2.0, static_cast<double>(k) / (m - 1));
        double lo = log_omega(body, p, R, rule);
        est.emplace_back(p, std::exp((n + p) * (lo - log_inf)));
    }
    return est;
}

DensityPair densities(const ConvexBody& body, double R, const SphereRule& rule) {
    const int n = dimension(body);
    BoundaryGrid g = boundary_grid(body, R, rule);
    EntropyIntegrals I = entropy_integrals(g, n);
    if (!(I.S_inf > 0.0) || !(I.S_0 > 0.0))
        throw GeometryError("densities: degenerate body (strict-slack set has measure zero)");
    DensityPair d;
    d.measure_w.resize(g.mu_w.size());
    d.p.resize(g.mu_w.size());
    d.q.resize(g.mu_w.size());
    std::vector<double> pr(g.mu_w.size()), qr(g.mu_w.size());
    for (std::size_t i = 0; i < g.mu_w.size(); ++i) {
        d.measure_w[i] = g.mu_w[i] * g.w[i];
        d.p[i] = g.kappa[i] / (I.S_inf * std::pow(g.h[i], n));
        d.q[i] = g.h[i] / I.S_0;
        pr[i] = d.measure_w[i] * d.p[i];
        qr[i] = d.measure_w[i] * d.q[i];
    }
    d.p_norm_raw = pairwise_sum(pr);
    d.q_norm_raw = pairwise_sum(qr);
    return d;
}

double kl_divergence(const ConvexBody& body, double R, const SphereRule& rule) {
    DensityPair d = densities(body, R, rule);
    // Renormalize so both densities integrate to exactly 1 on the grid.
    std::vector<double> terms(d.p.size());
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        double pi = d.p[i] / d.p_norm_raw;
        double qi = d.q[i] / d.q_norm_raw;
        if (!(pi > 0.0) || !(qi > 0.0))
            throw EvalError("kl_divergence: nonpositive density at node " + std::to_string(i));
        terms[i] = d.measure_w[i] * pi * std::log(pi / qi);
    }
    return pairwise_sum(terms);
}

MonotonicityReport verify_monotonicity(const ConvexBody& body, double R,
                                       std::span<const double> p_grid, const SphereRule& rule) {
    const int n = dimension(body);
    MonotonicityReport rep;
    double log_inf = log_omega(body, std::numeric_limits<double>::infinity(), R, rule);
    double log_0 = log_omega(body, 0.0, R, rule);
    for (double p : p_grid) {
        if (!(p > -static_cast<double>(n)))
            throw ParamError("verify_monotonicity: p grid must stay inside (-n, inf)");
        rep.p_grid.push_back(p);
        double lo = log_omega(body, p, R, rule);
        rep.seq_decreasing.push_back((n + p) * (lo - log_inf));
        if (p != 0.0) {
            rep.p_grid_ii.push_back(p);
            rep.seq_increasing.push_back(((n + p) / p) * (lo - log_0));
        }
    }
    const double tol = 1e-9;
    rep.min_slack_decreasing = 1e300;
    rep.ok_decreasing = true;
    for (std::size_t k = 0; k + 1 < rep.seq_decreasing.size(); ++k) {
        double step = rep.seq_decreasing[k] - rep.seq_decreasing[k + 1];
        rep.min_slack_decreasing = std::min(rep.min_slack_decreasing, step);
        if (step < -tol) rep.ok_decreasing = false;
    }
    rep.min_slack_increasing = 1e300;
    rep.ok_increasing = true;
    for (std::size_t k = 0; k + 1 < rep.seq_increasing.size(); ++k) {
        double step = rep.seq_increasing[k + 1] - rep.seq_increasing[k];
        rep.min_slack_increasing = std::min(rep.min_slack_increasing, step);
        if (step < -tol) rep.ok_increasing = false;
    }
    return rep;
}

Theorem4Report verify_theorem4(const ConvexBody& body, double R, double r, double s, double t,
                               const SphereRule& rule) {
    const int n = dimension(body);
    for (double v : {r, s, t})
        if (!(v > -static_cast<double>(n)))
            throw ParamError("verify_theorem4: r, s, t must exceed -n");
    Theorem4Report rep;
    rep.r = r;
    rep.s = s;
    rep.t = t;

    // (i): requires 1 < (n+r)(t-s)/((n+t)(r-s)) < infinity; the boundary cases
    // r = t (ratio 1) and r = s (ratio infinity) are trivial equalities.
    if (r == t || r == s) {
        rep.degenerate_i = true;
        rep.cond_i = (r == s) ? std::numeric_limits<double>::infinity() : 1.0;
        rep.slack_i = 0.0;
    } else {
        rep.cond_i = (n + r) * (t - s) / ((n + t) * (r - s));
        if (!(rep.cond_i > 1.0))
            throw ParamError("verify_theorem4: condition (n+r)(t-s)/((n+t)(r-s)) > 1 violated");
        double a = (r - s) * (n + t) / ((t - s) * (n + r));
        double b = (t - r) * (n + s) / ((t - s) * (n + r));
        double lr = log_omega(body, r, R, rule);
        double lt = log_omega(body, t, R, rule);
        double ls = log_omega(body, s, R, rule);
        rep.slack_i = a * lt + b * ls - lr;
    }

    // (ii): requires (n+r)t/((n+t)r) > 1; r = t gives ratio 1 and r = 0 gives
    // ratio infinity, both trivial equalities.
    if (r == t || r == 0.0) {
        rep.degenerate_ii = true;
        rep.cond_ii = (r == 0.0) ? std::numeric_limits<double>::infinity() : 1.0;
        rep.slack_ii = 0.0;
    } else if (t == 0.0) {
        throw ParamError("verify_theorem4: condition (n+r)t/((n+t)r) > 1 violated");
    } else {
        rep.cond_ii = (n + r) * t / ((n + t) * r);
        if (!(rep.cond_ii > 1.0))
            throw ParamError("verify_theorem4: condition (n+r)t/((n+t)r) > 1 violated");
        double lr = log_omega(body, r, R, rule);
        double lt = log_omega(body, t, R, rule);
        double l0 = log_omega(body, 0.0, R, rule);
        rep.slack_ii = (r * (n + t) / (t * (n + r))) * (lt - l0) - (lr - l0);
    }
    return rep;
}

} // namespace ballconv
