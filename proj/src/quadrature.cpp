#include "ballconv/quadrature.hpp"

#include <cmath>

#include "ballconv/errors.hpp"
#include "ballconv/numerics.hpp"
#include "ballconv/parallel.hpp"

namespace ballconv {

SphereRule build_rule(int n, int resolution) {
    if (n != 2 && n != 3) throw ParamError("build_rule: dimension must be 2 or 3");
    if (resolution < 8) throw ParamError("build_rule: resolution must be >= 8");
    SphereRule rule;
    rule.dim = n;
    rule.resolution = resolution;
    if (n == 2) {
        const int N = resolution;
        rule.nodes.reserve(static_cast<std::size_t>(N));
        rule.weights.assign(static_cast<std::size_t>(N), 2.0 * kPi / N);
        for (int j = 0; j < N; ++j) {
            double th = 2.0 * kPi * (j + 0.5) / N;
            rule.nodes.push_back(Direction::from_angle(th));
        }
    } else {
        const int m = resolution;
        std::vector<double> t, wt;
        gauss_legendre(m, t, wt);
        const int naz = 2 * m;
        const double wphi = 2.0 * kPi / naz;
        rule.nodes.reserve(static_cast<std::size_t>(m) * naz);
        rule.weights.reserve(static_cast<std::size_t>(m) * naz);
        for (int i = 0; i < m; ++i) {
            double ct = t[static_cast<std::size_t>(i)];
            double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int j = 0; j < naz; ++j) {
                double phi = 2.0 * kPi * (j + 0.5) / naz;
                rule.nodes.push_back(
                    Direction::of(Vec(st * std::cos(phi), st * std::sin(phi), ct)));
                rule.weights.push_back(wt[static_cast<std::size_t>(i)] * wphi);
            }
        }
    }
    return rule;
}

IntegralEstimate integrate(const SphereRule& rule,
                           const std::function<double(const Direction&)>& integrand) {
    const std::size_t n = rule.size();
    std::vector<double> terms(n);
    parallel_for(n, [&](std::size_t i) {
        double v = integrand(rule.nodes[i]);
        terms[i] = rule.weights[i] * v;
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(terms[i])) {
            const Vec& u = rule.nodes[i].vec();
            std::string where = "(" + format_double(u[0]) + "," + format_double(u[1]);
            if (rule.dim == 3) where += "," + format_double(u[2]);
            where += ")";
            throw EvalError("integrate: non-finite integrand at node " + where);
        }
    }
    IntegralEstimate est;
    est.value = pairwise_sum(terms);
    est.rule_size = n;
    return est;
}

IntegralEstimate integrate_refined(const SphereRule& coarse, const SphereRule& fine,
                                   const std::function<double(const Direction&)>& integrand) {
    IntegralEstimate lo = integrate(coarse, integrand);
    IntegralEstimate hi = integrate(fine, integrand);
    hi.refinement_ratio = hi.value - lo.value;
    hi.refinement_measured = true;
    return hi;
}

std::pair<double, double> check_integral_identity(int n, std::span<const double> c,
                                                  const SphereRule& rule) {
    if (static_cast<int>(c.size()) != n)
        throw ParamError("check_integral_identity: need n coefficients");
    if (rule.dim != n) throw ParamError("check_integral_identity: rule dimension mismatch");
    double prod = 1.0;
    for (double ci : c) {
        if (!(ci > 0.0)) throw ParamError("check_integral_identity: c_i must be positive");
        prod *= ci;
    }
    const double half_n = 0.5 * n;
    IntegralEstimate lhs = integrate(rule, [&](const Direction& u) {
        double q = 0.0;
        for (int i = 0; i < n; ++i) q += c[static_cast<std::size_t>(i)] * u[i] * u[i];
        return std::pow(q, -half_n);
    });
    double rhs = sphere_surface(n - 1) / std::sqrt(prod);
    return {lhs.value, rhs};
}

} // namespace ballconv
