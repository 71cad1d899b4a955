#pragma once

#include <stdexcept>
#include <string>

namespace ballconv {

// Error categories map onto the CLI exit-code contract:
//   validation -> 2, numeric -> 3, starvation -> 4.
enum class ErrorKind { Validation, Numeric, Starvation };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Bad parameters, violated invariants, unmet preconditions.
class ParamError : public Error {
public:
    explicit ParamError(const std::string& msg) : Error(ErrorKind::Validation, msg) {}
};

// Origin not interior, nonpositive support, geometric setup mismatch.
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& msg) : Error(ErrorKind::Validation, msg) {}
};

// Curvature query landed in the normal cone of an arc-body corner.
class CornerError : public Error {
public:
    CornerError(const std::string& msg, double cx, double cy)
        : Error(ErrorKind::Validation, msg), corner_x(cx), corner_y(cy) {}
    double corner_x, corner_y;
};

// Curvature slack below -1e-12 where ball convexity is required.
class NotBallConvexError : public Error {
public:
    explicit NotBallConvexError(const std::string& msg) : Error(ErrorKind::Validation, msg) {}
};

// Weight function dipped below its declared lower bound.
class WeightError : public Error {
public:
    explicit WeightError(const std::string& msg) : Error(ErrorKind::Validation, msg) {}
};

// Non-finite integrand value; carries a description of the offending node.
class EvalError : public Error {
public:
    explicit EvalError(const std::string& msg) : Error(ErrorKind::Numeric, msg) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(ErrorKind::Numeric, msg) {}
};

// Requested cut volume cannot be bracketed (delta too large).
class StarvationError : public Error {
public:
    explicit StarvationError(const std::string& msg) : Error(ErrorKind::Starvation, msg) {}
};

} // namespace ballconv
