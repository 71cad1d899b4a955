#include "ballconv/surface_measures.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "ballconv/errors.hpp"
#include "ballconv/numerics.hpp"

namespace ballconv {

namespace {

constexpr double kSlackQuantum = 1e-12;  // curvature slack this close to 0 is 0
constexpr double kExponentCap = 1e6;

double quantize_slack(double s) { return std::abs(s) <= kSlackQuantum ? 0.0 : s; }

void check_p(double p, int n) {
    if (std::isfinite(p) && p == -static_cast<double>(n))
        throw ParamError("p = -n excluded");
}

// Shared integrand of Definition-3.1-type measures at one boundary sample,
// already including the sphere-measure Jacobian 1/kappa. A zero slack factor
// yields 0; a negative one is a contract violation.
double omega_node_value(const BoundarySample& s, const OmegaExponents& ex, double inv_R, int n) {
    double prod = 1.0;
    for (double k : s.kappas) {
        double slack = quantize_slack(k - inv_R);
        if (slack < 0.0)
            throw NotBallConvexError("omega: curvature slack negative (body is not R-ball convex)");
        prod *= std::pow(slack, 1.0 / (n + 1));
    }
    if (prod == 0.0) return 0.0;
    if (!(s.support_dot > 0.0))
        throw GeometryError("omega: nonpositive <x,N(x)> (origin not interior)");
    double kappa = s.gauss_curvature();
    double g = std::pow(kappa, 1.0 / (n + 1)) / s.support_dot;
    return std::pow(g, ex.support_exp) * prod / kappa;
}

MeasureResult measure_smooth(const ConvexBody& body, const OmegaExponents& ex, double inv_R,
                             const SphereRule& rule) {
    const int n = dimension(body);
    std::atomic<long> clamped{0};
    IntegralEstimate est = integrate(rule, [&](const Direction& u) {
        BoundarySample s = inverse_gauss(body, u);
        if (s.clamped) clamped.fetch_add(1, std::memory_order_relaxed);
        return omega_node_value(s, ex, inv_R, n);
    });
    MeasureResult r;
    r.value = est.value;
    r.rule_size = est.rule_size;
    long c = clamped.load();
    if (c > 0)
        r.clamp_report = std::to_string(c) + " node(s) clamped at the p-norm axis cutoff";
    if (ex.saturated) {
        if (!r.clamp_report.empty()) r.clamp_report += "; ";
        r.clamp_report += "support exponent saturated at 1e6 (p near -n)";
    }
    return r;
}

MeasureResult measure_arcs(const ArcBody2D& body, const OmegaExponents& ex, double inv_R) {
    const int n = 2;
    MeasureResult r;
    double total = 0.0;
    std::size_t evals = 0;
    for (const Arc& a : body.arcs) {
        double kappa = 1.0 / a.radius;
        double slack = quantize_slack(kappa - inv_R);
        if (slack < 0.0)
            throw NotBallConvexError("omega: arc radius exceeds R (body is not R-ball convex)");
        if (slack == 0.0 || a.normal_end <= a.normal_begin) continue;
        double slack_pow = std::pow(slack, 1.0 / (n + 1));
        double kpow = std::pow(kappa, 1.0 / (n + 1));
        auto f = [&](double phi) {
            double h = a.center[0] * std::cos(phi) + a.center[1] * std::sin(phi) + a.radius;
            if (!(h > 0.0))
                throw GeometryError("omega: nonpositive <x,N(x)> on an arc (origin not interior)");
            ++evals;
            return std::pow(kpow / h, ex.support_exp) * slack_pow * a.radius;
        };
        double rough = std::abs(gk15_panel(f, a.normal_begin, a.normal_end));
        total += integrate_adaptive(f, a.normal_begin, a.normal_end, 1e-13 * (1.0 + rough));
    }
    r.value = total;
    r.rule_size = evals;
    if (ex.saturated) r.clamp_report = "support exponent saturated at 1e6 (p near -n)";
    return r;
}

double homogeneity_exponent(double p, int n) {
    if (std::isinf(p)) return -static_cast<double>(n);
    return n * (n - p) / (n + p);
}

} // namespace

OmegaExponents omega_exponents(double p, int n) {
    check_p(p, n);
    OmegaExponents ex;
    if (std::isinf(p)) {
        ex.support_exp = static_cast<double>(n);
        ex.curv_exp = 1.0;
        return ex;
    }
    ex.support_exp = n * (p - 1.0) / (n + p);
    ex.curv_exp = p / (n + p);
    if (std::abs(ex.support_exp) > kExponentCap) {
        ex.support_exp = std::copysign(kExponentCap, ex.support_exp);
        ex.saturated = true;
    }
    if (std::abs(ex.curv_exp) > kExponentCap) {
        ex.curv_exp = std::copysign(kExponentCap, ex.curv_exp);
        ex.saturated = true;
    }
    return ex;
}

MeasureResult omega_p_R(const ConvexBody& body, const OmegaParams& params, const SphereRule& rule) {
    const int n = dimension(body);
    check_p(params.p, n);
    if (!(params.R > 0.0)) throw ParamError("omega: R must be positive");
    OmegaExponents ex = omega_exponents(params.p, n);
    double inv_R = std::isinf(params.R) ? 0.0 : 1.0 / params.R;
    if (const ArcBody2D* ab = std::get_if<ArcBody2D>(&body)) return measure_arcs(*ab, ex, inv_R);
    return measure_smooth(body, ex, inv_R, rule);
}

MeasureResult as_p(const ConvexBody& body, double p, const SphereRule& rule) {
    OmegaParams params{p, std::numeric_limits<double>::infinity()};
    return omega_p_R(body, params, rule);
}

double weight_w(const ConvexBody& body, const Direction& u, double R) {
    const int n = dimension(body);
    if (!(R > 0.0)) throw ParamError("weight_w: R must be positive");
    double inv_R = std::isinf(R) ? 0.0 : 1.0 / R;
    BoundarySample s = inverse_gauss(body, u);
    double w = 1.0;
    for (double k : s.kappas) {
        double slack = quantize_slack(k - inv_R);
        if (slack < 0.0) throw NotBallConvexError("weight_w: curvature below 1/R at the sample");
        w *= std::pow(slack / k, 1.0 / (n + 1));
    }
    return w;
}

double verify_homogeneity(const ConvexBody& body, double a, const OmegaParams& params,
                          const SphereRule& rule) {
    if (!(a > 0.0)) throw ParamError("verify_homogeneity: a must be positive");
    const int n = dimension(body);
    ConvexBody scaled = scale_body(body, a);
    OmegaParams scaled_params{params.p, a * params.R};
    double lhs = omega_p_R(scaled, scaled_params, rule).value;
    double rhs = std::pow(a, homogeneity_exponent(params.p, n)) * omega_p_R(body, params, rule).value;
    if (rhs == 0.0) return std::abs(lhs);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

double verify_valuation(const ArcBody2D& K, const ArcBody2D& L, const ArcBody2D& uni,
                        const ArcBody2D& inter, const OmegaParams& params) {
    if (!(params.R > 0.0)) throw ParamError("verify_valuation: R must be positive");
    for (const ArcBody2D* b : {&K, &L, &uni, &inter})
        for (const Arc& a : b->arcs)
            if (a.radius > params.R + 1e-12)
                throw ParamError("verify_valuation: arc radius exceeds R");
    BallConvexityReport rep = validate_ball_convex(ConvexBody{uni}, params.R, 256);
    if (rep.min_slack < 0.0)
        throw ParamError("verify_valuation: union fails ball-convexity validation");
    SphereRule unused; // arc path never touches the rule
    double oK = omega_p_R(ConvexBody{K}, params, unused).value;
    double oL = omega_p_R(ConvexBody{L}, params, unused).value;
    double oU = omega_p_R(ConvexBody{uni}, params, unused).value;
    double oI = omega_p_R(ConvexBody{inter}, params, unused).value;
    double denom = oK + oL;
    double num = std::abs(oU + oI - oK - oL);
    if (denom == 0.0) return num == 0.0 ? 0.0 : num;
    return num / denom;
}

DivergenceProbe probe_divergence(const ConvexBody& body, const OmegaParams& params,
                                 int base_resolution, int levels, double growth_gate) {
    if (levels < 2) throw ParamError("probe_divergence: need at least two levels");
    DivergenceProbe probe;
    const int n = dimension(body);
    int res = base_resolution;
    for (int k = 0; k < levels; ++k) {
        SphereRule rule = build_rule(n, res);
        probe.resolutions.push_back(res);
        probe.estimates.push_back(omega_p_R(body, params, rule).value);
        res *= 2;
    }
    probe.divergent = true;
    for (std::size_t k = 0; k + 1 < probe.estimates.size(); ++k) {
        double ratio = probe.estimates[k + 1] / probe.estimates[k];
        probe.ratios.push_back(ratio);
        if (!(ratio >= growth_gate)) probe.divergent = false;
    }
    return probe;
}

BoundsChainReport verify_bounds(const ConvexBody& body, const OmegaParams& params,
                                const SphereRule& rule) {
    const int n = dimension(body);
    check_p(params.p, n);
    BoundsChainReport rep;
    rep.p = params.p;
    rep.R = params.R;

    const double p = params.p;
    const bool p_pos_inf = std::isinf(p) && p > 0;
    const bool below_minus_n = !std::isinf(p) && p < -static_cast<double>(n);

    if (below_minus_n || (std::isinf(p) && p < 0)) {
        DivergenceProbe probe = probe_divergence(body, params, 64, 5);
        rep.divergence_estimates = probe.estimates;
        if (probe.divergent) {
            rep.divergent = true;
            rep.all_hold = false;
            return rep;
        }
    }

    double omega = omega_p_R(body, params, rule).value;
    double omega1 = omega_p_R(body, OmegaParams{1.0, params.R}, rule).value;
    double vol = volume(body);
    double ball_vol = unit_ball_volume(n);

    auto add = [&](const std::string& a, const std::string& b, double lhs, double rhs) {
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        rep.checks.push_back({a, b, lhs, rhs, rhs - lhs, rhs - lhs >= -1e-9 * scale});
    };

    // Exponents with their p -> +-infinity limits.
    double e_sq = p_pos_inf || std::isinf(p) ? n * n / double(n + 1)
                                             : n * n * (p - 1.0) / ((n + 1.0) * (n + p));
    double e_vol1 = p_pos_inf ? 2.0 : 2.0 * p / (n + p);
    double e_vol2 = p_pos_inf ? -1.0 : (n - p) / (n + p);

    if (p_pos_inf || (std::isfinite(p) && p >= 1.0)) {
        double lower = std::pow(1.0 / params.R, e_sq) * omega1;
        double upper = n * std::pow(ball_vol, e_vol1) * std::pow(vol, e_vol2);
        add("0", "R_power*as1R", 0.0, lower);
        add("R_power*as1R", "omega_p", lower, omega);
        add("omega_p", "vol_bound", omega, upper);
    } else if (std::isfinite(p) && p >= 0.0) {
        double upper = n * std::pow(ball_vol, e_vol1) * std::pow(vol, e_vol2);
        double e_r = n * (n - 1.0) * (p - 1.0) / ((n + 1.0) * (n + p));
        double upper_r = std::pow(1.0 / params.R, e_r) * omega1;
        add("0", "omega_p", 0.0, omega);
        add("omega_p", "vol_bound", omega, upper);
        add("omega_p", "R_power*omega1", omega, upper_r);
    } else if (std::isfinite(p) && p > -static_cast<double>(n)) {
        double e_r = n * (n - 1.0) * (p - 1.0) / ((n + 1.0) * (n + p));
        double upper_r = std::pow(1.0 / params.R, e_r) * omega1;
        add("0", "omega_p", 0.0, omega);
        add("omega_p", "R_power*omega1", omega, upper_r);
    } else {
        double lower = std::pow(1.0 / params.R, e_sq) * omega1;
        double asp = as_p(body, p, rule).value;
        add("0", "R_power*omega1", 0.0, lower);
        add("R_power*omega1", "omega_p", lower, omega);
        add("omega_p", "as_p", omega, asp);
    }

    rep.all_hold = true;
    for (const BoundsCheck& c : rep.checks)
        if (!c.holds) rep.all_hold = false;
    return rep;
}

} // namespace ballconv
