#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhsimplex/function.hpp"
#include "hhsimplex/quadrature.hpp"
#include "hhsimplex/random.hpp"
#include "hhsimplex/subdivision.hpp"

namespace hhsimplex {

/// Names of the catalog entries, in catalog order. The last one is the non-convex control.
inline const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names = {"affine",     "sum_squares", "quadratic",      "max_affine",
                                                   "norm",       "log_sum_exp", "neg_sum_squares"};
    return names;
}

inline constexpr const char* kNonConvexControl = "neg_sum_squares";

/// Test functions on R^n; random parameters are a deterministic function of (n, seed).
inline std::vector<TestFunction> catalog(int n, std::uint64_t seed)
{
    if (n < 1) throw PreconditionError("catalog dimension must be >= 1");
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    std::normal_distribution<double> normal(0.0, 1.0);
    auto random_vector = [&](int size) {
        Vector v(size);
        for (int i = 0; i < size; ++i) v[i] = normal(rng);
        return v;
    };

    std::vector<TestFunction> out;

    {
        const Vector c = random_vector(n);
        out.push_back(TestFunction::from_polynomial("affine", Polynomial::affine(c, normal(rng)), FunctionKind::affine, true));
    }

    out.push_back(TestFunction::from_polynomial("sum_squares", Polynomial::sum_of_squares(n), FunctionKind::psd_quadratic,
                                                true));

    {
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
        const Eigen::MatrixXd a = m.transpose() * m;
        const Vector b = random_vector(n);
        out.push_back(TestFunction::from_polynomial("quadratic", Polynomial::quadratic(a, b, 0.0),
                                                    FunctionKind::psd_quadratic, true));
    }

    {
        std::uniform_int_distribution<int> pieces_dist(3, 6);
        const int pieces = pieces_dist(rng);
        std::vector<Vector> slopes;
        std::vector<double> offsets;
        for (int i = 0; i < pieces; ++i) {
            slopes.push_back(random_vector(n));
            offsets.push_back(normal(rng));
        }
        TestFunction f;
        f.id = "max_affine";
        f.kind = FunctionKind::max_affine;
        f.is_convex = true;
        f.eval = [slopes, offsets](const Vector& x) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < slopes.size(); ++i) best = std::max(best, slopes[i].dot(x) + offsets[i]);
            return best;
        };
        out.push_back(std::move(f));
    }

    {
        std::uniform_real_distribution<double> centre_coord(-0.5, 0.5);
        Vector centre(n);
        for (int i = 0; i < n; ++i) centre[i] = centre_coord(rng);
        TestFunction f;
        f.id = "norm";
        f.kind = FunctionKind::norm_p;
        f.is_convex = true;
        f.eval = [centre](const Vector& x) { return (x - centre).norm(); };
        out.push_back(std::move(f));
    }

    {
        const int forms = 4;
        std::vector<Vector> slopes;
        std::vector<double> offsets;
        for (int i = 0; i < forms; ++i) {
            slopes.push_back(random_vector(n));
            offsets.push_back(normal(rng));
        }
        TestFunction f;
        f.id = "log_sum_exp";
        f.kind = FunctionKind::log_sum_exp;
        f.is_convex = true;
        f.eval = [slopes, offsets](const Vector& x) {
            std::vector<double> a(slopes.size());
            for (std::size_t i = 0; i < slopes.size(); ++i) a[i] = slopes[i].dot(x) + offsets[i];
            const double top = *std::max_element(a.begin(), a.end());
            double s = 0.0;
            for (double v : a) s += std::exp(v - top);
            return top + std::log(s);
        };
        out.push_back(std::move(f));
    }

    out.push_back(TestFunction::from_polynomial(kNonConvexControl, Polynomial::sum_of_squares(n, -1.0),
                                                FunctionKind::custom, false));
    return out;
}

/// Catalog entry by name; throws PreconditionError for unknown names.
inline TestFunction catalog_entry(int n, std::uint64_t seed, const std::string& name)
{
    for (auto& f : catalog(n, seed))
        if (f.id == name) return f;
    throw PreconditionError("unknown catalog function '" + name + "'");
}

struct ConvexityVerdict {
    bool pass = true;
    /// A pair with f((x+y)/2) > (f(x)+f(y))/2 + tolerance; the worst one found.
    std::optional<std::pair<Vector, Vector>> witness;
    /// max over pairs of f((x+y)/2) - (f(x)+f(y))/2.
    double max_gap = -std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    double tolerance = 0.0;
    std::size_t pairs = 0;
};

/// Randomized Jensen-midpoint falsifier. It can refute convexity, never certify it.
inline ConvexityVerdict midpoint_convexity_check(const TestFunction& f, const Simplex& domain, std::size_t n_pairs,
                                                 Rng& rng)
{
    if (n_pairs < 1) throw PreconditionError("midpoint check needs at least one pair");
    struct Pair {
        Vector x, y;
        double gap;
    };
    auto checked = [&f](const Vector& p) {
        const double v = f(p);
        if (!std::isfinite(v)) throw EvaluationError("function '" + f.id + "' is not finite during convexity check", p);
        return v;
    };

    std::vector<Pair> pairs;
    pairs.reserve(n_pairs);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        Vector x = sample_uniform(domain, rng);
        Vector y = sample_uniform(domain, rng);
        const double fx = checked(x);
        const double fy = checked(y);
        const double fm = checked(0.5 * (x + y));
        max_abs = std::max({max_abs, std::abs(fx), std::abs(fy), std::abs(fm)});
        pairs.push_back({std::move(x), std::move(y), fm - 0.5 * (fx + fy)});
    }

    ConvexityVerdict verdict;
    verdict.pairs = n_pairs;
    verdict.tolerance = 1e-10 * (1.0 + max_abs);
    const Pair* worst = nullptr;
    for (const auto& p : pairs) {
        verdict.min_gap = std::min(verdict.min_gap, p.gap);
        if (p.gap > verdict.max_gap) {
            verdict.max_gap = p.gap;
            worst = &p;
        }
    }
    if (worst != nullptr && worst->gap > verdict.tolerance) {
        verdict.pass = false;
        verdict.witness = std::make_pair(worst->x, worst->y);
    }
    return verdict;
}

inline double barycenter_average(const TestFunction& f, const SubdivisionLevel& level)
{
    return barycenter_average(f.eval, level);
}

} // namespace hhsimplex
