#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "ballconv/errors.hpp"

namespace ballconv {

// Small fixed-capacity vector for ambient dimension 2 or 3.
struct Vec {
    int n = 2;
    std::array<double, 3> c{0.0, 0.0, 0.0};

    Vec() = default;
    Vec(double x, double y) : n(2), c{x, y, 0.0} {}
    Vec(double x, double y, double z) : n(3), c{x, y, z} {}

    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
};

using Point = Vec;

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r[i] += b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r[i] -= b[i];
    return r;
}

inline Vec operator*(double s, const Vec& a) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r[i] *= s;
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// Unit vector on S^{n-1}; constructor enforces the unit-norm invariant.
class Direction {
public:
    explicit Direction(const Vec& v) : v_(v) {
        double len = norm(v);
        if (std::abs(len - 1.0) > 1e-12)
            throw ParamError("Direction: coordinates are not unit length");
        v_ = (1.0 / len) * v_;
    }

    // Normalizes an arbitrary nonzero vector.
    static Direction of(const Vec& v) {
        double len = norm(v);
        if (!(len > 0.0) || !std::isfinite(len))
            throw ParamError("Direction: cannot normalize zero or non-finite vector");
        return Direction((1.0 / len) * v, 0);
    }

    static Direction from_angle(double theta) {
        return Direction(Vec(std::cos(theta), std::sin(theta)), 0);
    }

    const Vec& vec() const { return v_; }
    int dim() const { return v_.n; }
    double operator[](int i) const { return v_[i]; }

    // Polar angle, 2-D only.
    double angle() const { return std::atan2(v_[1], v_[0]); }

private:
    Direction(const Vec& v, int) : v_(v) {}
    Vec v_;
};

inline double dot(const Direction& a, const Vec& b) { return dot(a.vec(), b); }
inline double dot(const Vec& a, const Direction& b) { return dot(a, b.vec()); }
inline double dot(const Direction& a, const Direction& b) { return dot(a.vec(), b.vec()); }

} // namespace ballconv
