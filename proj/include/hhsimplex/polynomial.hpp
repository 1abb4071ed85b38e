#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "hhsimplex/geometry.hpp"

namespace hhsimplex {

/// coefficient * prod_d x_d^exponents[d]
struct Monomial {
    double coefficient = 0.0;
    std::vector<int> exponents;

    int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
};

/// Multivariate polynomial on R^n kept in expanded monomial form.
class Polynomial {
public:
    explicit Polynomial(int dimension) : dimension_(dimension)
    {
        if (dimension < 1) throw PreconditionError("polynomial dimension must be >= 1");
    }

    Polynomial(int dimension, std::vector<Monomial> terms) : Polynomial(dimension)
    {
        for (auto& t : terms) add_term(t.coefficient, std::move(t.exponents));
    }

    void add_term(double coefficient, std::vector<int> exponents)
    {
        if (static_cast<int>(exponents.size()) != dimension_)
            throw DimensionError("monomial exponent count does not match polynomial dimension");
        for (int e : exponents)
            if (e < 0) throw PreconditionError("negative monomial exponent");
        if (!std::isfinite(coefficient)) throw PreconditionError("non-finite monomial coefficient");
        terms_.push_back({coefficient, std::move(exponents)});
    }

    void add_constant(double c) { add_term(c, std::vector<int>(static_cast<std::size_t>(dimension_), 0)); }

    int dimension() const noexcept { return dimension_; }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }

    int degree() const
    {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.degree());
        return d;
    }

    double operator()(const Vector& x) const
    {
        if (x.size() != dimension_) throw DimensionError("polynomial evaluated at point of wrong dimension");
        double sum = 0.0;
        for (const auto& t : terms_) {
            double v = t.coefficient;
            for (int d = 0; d < dimension_; ++d)
                for (int e = 0; e < t.exponents[static_cast<std::size_t>(d)]; ++e) v *= x[d];
            sum += v;
        }
        return sum;
    }

    /// sum_d x_d^2
    static Polynomial sum_of_squares(int n, double scale = 1.0)
    {
        Polynomial p(n);
        for (int d = 0; d < n; ++d) {
            std::vector<int> e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(d)] = 2;
            p.add_term(scale, std::move(e));
        }
        return p;
    }

    /// c . x + offset
    static Polynomial affine(const Vector& c, double offset)
    {
        Polynomial p(static_cast<int>(c.size()));
        for (int d = 0; d < c.size(); ++d) {
            std::vector<int> e(static_cast<std::size_t>(c.size()), 0);
            e[static_cast<std::size_t>(d)] = 1;
            p.add_term(c[d], std::move(e));
        }
        p.add_constant(offset);
        return p;
    }

    /// x^T A x + b . x + offset, with A read as given (no symmetry assumed).
    static Polynomial quadratic(const Eigen::MatrixXd& a, const Vector& b, double offset)
    {
        const auto n = static_cast<int>(b.size());
        if (a.rows() != n || a.cols() != n) throw DimensionError("quadratic form shape mismatch");
        Polynomial p = affine(b, offset);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double c = i == j ? a(i, i) : a(i, j) + a(j, i);
                if (c == 0.0) continue;
                std::vector<int> e(static_cast<std::size_t>(n), 0);
                ++e[static_cast<std::size_t>(i)];
                ++e[static_cast<std::size_t>(j)];
                p.add_term(c, std::move(e));
            }
        }
        return p;
    }

private:
    int dimension_;
    std::vector<Monomial> terms_;
};

} // namespace hhsimplex
