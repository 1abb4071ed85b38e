#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "hhsimplex/polynomial.hpp"

namespace hhsimplex {

enum class FunctionKind { affine, psd_quadratic, max_affine, norm_p, log_sum_exp, custom };

inline std::string_view to_string(FunctionKind k)
{
    switch (k) {
    case FunctionKind::affine: return "affine";
    case FunctionKind::psd_quadratic: return "psd_quadratic";
    case FunctionKind::max_affine: return "max_affine";
    case FunctionKind::norm_p: return "norm_p";
    case FunctionKind::log_sum_exp: return "log_sum_exp";
    case FunctionKind::custom: return "custom";
    }
    return "custom";
}

/// A real function on R^n together with what is known about it.
struct TestFunction {
    std::string id;
    std::function<double(const Vector&)> eval;
    FunctionKind kind = FunctionKind::custom;
    bool is_convex = false;
    /// Present iff the function is a polynomial; `eval` must agree with it.
    std::optional<Polynomial> polynomial;

    double operator()(const Vector& x) const { return eval(x); }
    bool is_polynomial() const noexcept { return polynomial.has_value(); }

    static TestFunction from_polynomial(std::string id, Polynomial p, FunctionKind kind, bool is_convex)
    {
        TestFunction f;
        f.id = std::move(id);
        f.kind = kind;
        f.is_convex = is_convex;
        f.eval = [p](const Vector& x) { return p(x); };
        f.polynomial = std::move(p);
        return f;
    }

    static TestFunction custom(std::string id, std::function<double(const Vector&)> eval, bool is_convex)
    {
        TestFunction f;
        f.id = std::move(id);
        f.eval = std::move(eval);
        f.kind = FunctionKind::custom;
        f.is_convex = is_convex;
        return f;
    }
};

} // namespace hhsimplex
