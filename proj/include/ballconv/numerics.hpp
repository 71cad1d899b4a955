#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ballconv {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Unit ball volume v_n = vol(B^n_2).
double unit_ball_volume(int n);

// Sphere surface measure sigma(S^{n-1}); sigma(S^0) = 2 (counting measure on two points).
double sphere_surface(int n_minus_1);

// Deterministic pairwise-tree reduction keyed by index; result is independent
// of the order in which the entries were produced.
double pairwise_sum(std::span<const double> values);

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

// Adaptive Gauss-Kronrod (15/7) quadrature on [a,b] to an absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

// Fixed 15-point Gauss-Kronrod panel (no refinement); err receives |K15-G7|.
double gk15_panel(const std::function<double(double)>& f, double a, double b, double* err = nullptr);

// Golden-section maximization of f on [a,b] to parameter tolerance tol.
double golden_max(const std::function<double(double)>& f, double a, double b, double tol);

// Bracketed scalar root solve (bisection with secant acceleration).
// Requires f(a) and f(b) of opposite sign; tolerance on |f|.
double solve_bracketed(const std::function<double(double)>& f, double a, double b,
                       double fa, double fb, double f_tol, double x_tol = 0.0);

// Least-squares slope of y against x.
double lsq_slope(std::span<const double> x, std::span<const double> y);

// Shortest-double decimal formatting used everywhere reports must be
// byte-reproducible.
std::string format_double(double v);

// FNV-1a 64-bit over a byte string, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

} // namespace ballconv
