#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace hhsimplex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different ambient dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Vertices are (numerically) affinely dependent.
class DegenerateSimplexError : public Error {
public:
    using Error::Error;
};

/// A documented precondition on the arguments does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured size limit would be exceeded.
class ResourceLimitError : public Error {
public:
    ResourceLimitError(const std::string& what, double limit) : Error(what), limit_(limit) {}
    double limit() const noexcept { return limit_; }

private:
    double limit_;
};

/// A function produced a non-finite value; carries the offending point.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, Eigen::VectorXd point)
        : Error(what), point_(std::move(point)) {}
    const Eigen::VectorXd& point() const noexcept { return point_; }

private:
    Eigen::VectorXd point_;
};

} // namespace hhsimplex
