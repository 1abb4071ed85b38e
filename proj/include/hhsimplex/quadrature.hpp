#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hhsimplex/function.hpp"
#include "hhsimplex/geometry.hpp"
#include "hhsimplex/polynomial.hpp"
#include "hhsimplex/random.hpp"

namespace hhsimplex {

inline constexpr int kMaxExactDegree = 8;

/// Allowance applied to the magnitude sum of the exact expansion; covers
/// accumulated rounding in the barycentric rewrite and the summation.
inline constexpr double kExactRoundingAllowance = 1e-12;

enum class MeanMethod { exact_polynomial, monte_carlo, point_evaluation };

inline std::string_view to_string(MeanMethod m)
{
    switch (m) {
    case MeanMethod::exact_polynomial: return "exact_polynomial";
    case MeanMethod::monte_carlo: return "monte_carlo";
    case MeanMethod::point_evaluation: return "point_evaluation";
    }
    return "?";
}

/// (1/Vol) * integral of f over a simplex, with the method that produced it.
struct MeanValueEstimate {
    double value = 0.0;
    MeanMethod method = MeanMethod::point_evaluation;
    double error_bound = 0.0;
    std::size_t sample_count = 0;
};

enum class MethodChoice { automatic, exact, monte_carlo };

struct QuadratureConfig {
    MethodChoice method = MethodChoice::automatic;
    std::size_t mc_samples = 100'000;
    double z = 3.0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// Uniform barycentric weights on the standard (count-1)-simplex via normalized
/// standard exponentials.
inline std::vector<double> sample_barycentric(std::size_t count, Rng& rng)
{
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(count);
    double total = 0.0;
    for (auto& x : w) {
        x = expo(rng);
        total += x;
    }
    if (total <= 0.0) {
        // All draws were zero; probability zero but keep the output a valid point.
        for (auto& x : w) x = 1.0 / static_cast<double>(count);
        return w;
    }
    for (auto& x : w) x /= total;
    return w;
}

inline Vector sample_uniform(const Simplex& s, Rng& rng)
{
    if (s.dimension() == 0) return s.vertex(0);
    const auto w = sample_barycentric(s.vertex_count(), rng);
    Vector x = Vector::Zero(s.ambient_dimension());
    for (std::size_t i = 0; i < w.size(); ++i) x += w[i] * s.vertex(i);
    return x;
}

namespace detail {

/// Running mean and centered second moment (Welford), mergeable (Chan et al.).
struct RunningMoments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x)
    {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const RunningMoments& other)
    {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(other.count);
        const double delta = other.mean - mean;
        const double total = na + nb;
        mean += delta * nb / total;
        m2 += other.m2 + delta * delta * na * nb / total;
        count += other.count;
    }
};

inline RunningMoments sample_moments(const TestFunction& f, const Simplex& s, std::size_t n, Rng& rng)
{
    RunningMoments acc;
    for (std::size_t i = 0; i < n; ++i) {
        Vector x = sample_uniform(s, rng);
        const double y = f(x);
        if (!std::isfinite(y)) throw EvaluationError("function '" + f.id + "' is not finite at a sample point", std::move(x));
        acc.push(y);
    }
    return acc;
}

inline double pairwise_sum(std::span<const double> xs)
{
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const auto half = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

using BarycentricPoly = std::map<std::vector<int>, double>;

/// Multiply by the linear form sum_i weights[i] * lambda_i.
inline BarycentricPoly multiply_linear(const BarycentricPoly& p, const std::vector<double>& weights)
{
    BarycentricPoly out;
    for (const auto& [exps, c] : p) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] == 0.0) continue;
            auto e = exps;
            ++e[i];
            out[e] += c * weights[i];
        }
    }
    return out;
}

/// Rewrite a monomial in the barycentric coordinates of s (x = sum_i lambda_i v_i)
/// and add it to `acc`. With `absolute`, every input is replaced by its magnitude.
inline void accumulate_barycentric(const Monomial& m, const Simplex& s, bool absolute, BarycentricPoly& acc)
{
    const std::size_t vars = s.vertex_count();
    BarycentricPoly p;
    p[std::vector<int>(vars, 0)] = absolute ? std::abs(m.coefficient) : m.coefficient;
    for (int d = 0; d < s.ambient_dimension(); ++d) {
        const int power = m.exponents[static_cast<std::size_t>(d)];
        if (power == 0) continue;
        std::vector<double> w(vars);
        for (std::size_t i = 0; i < vars; ++i) w[i] = absolute ? std::abs(s.vertex(i)[d]) : s.vertex(i)[d];
        for (int e = 0; e < power; ++e) p = multiply_linear(p, w);
    }
    for (const auto& [exps, c] : p) acc[exps] += c;
}

/// Mean of lambda^alpha over a k-simplex: k! prod(alpha_i!) / (k + |alpha|)!.
inline double dirichlet_mean(const std::vector<int>& alpha, int k)
{
    double numerator = 1.0;
    int total = 0;
    for (int a : alpha) {
        numerator *= factorial(a);
        total += a;
    }
    double rising = 1.0;
    for (int i = 1; i <= total; ++i) rising *= static_cast<double>(k + i);
    return numerator / rising;
}

inline std::vector<double> weighted_terms(const BarycentricPoly& p, int k)
{
    std::vector<double> terms;
    terms.reserve(p.size());
    for (const auto& [exps, c] : p) terms.push_back(c * dirichlet_mean(exps, k));
    return terms;
}

} // namespace detail

/// Monte Carlo mean from uniform samples. With workers > 1 the samples are split
/// into contiguous shares, worker i drawing from derive_seed(seed, i); the result is
/// a deterministic function of (seed, n_samples, workers).
inline MeanValueEstimate mc_mean(const TestFunction& f, const Simplex& s, std::size_t n_samples, std::uint64_t seed,
                                 double z = 3.0, unsigned workers = 1)
{
    if (n_samples < 2) throw PreconditionError("Monte Carlo mean needs at least 2 samples");
    if (!(z >= 0.0) || !std::isfinite(z)) throw PreconditionError("confidence multiplier z must be finite and >= 0");
    if (workers == 0) workers = 1;

    detail::RunningMoments total;
    if (workers == 1) {
        Rng rng(seed);
        total = detail::sample_moments(f, s, n_samples, rng);
    } else {
        std::vector<detail::RunningMoments> parts(workers);
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t share = n_samples / workers + (w < n_samples % workers ? 1 : 0);
            pool.emplace_back([&, w, share] {
                try {
                    Rng rng(derive_seed(seed, w));
                    parts[w] = detail::sample_moments(f, s, share, rng);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (const auto& p : parts) total.merge(p);
    }

    const double n = static_cast<double>(total.count);
    const double variance = total.m2 > 0.0 ? total.m2 / (n - 1.0) : 0.0;
    return {total.mean, MeanMethod::monte_carlo, z * std::sqrt(variance) / std::sqrt(n), total.count};
}

inline MeanValueEstimate mc_mean(const TestFunction& f, const Simplex& s, std::size_t n_samples, Rng& rng,
                                 double z = 3.0)
{
    return mc_mean(f, s, n_samples, rng(), z, 1);
}

/// Exact mean of a polynomial over a simplex of any intrinsic dimension.
inline MeanValueEstimate exact_mean_poly(const Polynomial& f, const Simplex& s)
{
    if (f.dimension() != s.ambient_dimension()) throw DimensionError("polynomial and simplex dimensions differ");
    if (f.degree() > kMaxExactDegree)
        throw PreconditionError("polynomial degree " + std::to_string(f.degree()) + " exceeds the exact-path cap of " +
                                std::to_string(kMaxExactDegree));
    if (s.dimension() > 0) require_nondegenerate(s);

    detail::BarycentricPoly signed_poly, magnitude_poly;
    for (const auto& m : f.terms()) {
        detail::accumulate_barycentric(m, s, false, signed_poly);
        detail::accumulate_barycentric(m, s, true, magnitude_poly);
    }
    const int k = s.dimension();
    const auto terms = detail::weighted_terms(signed_poly, k);
    const auto magnitudes = detail::weighted_terms(magnitude_poly, k);
    const double value = detail::pairwise_sum(terms);
    const double magnitude = detail::pairwise_sum(magnitudes);
    return {value, MeanMethod::exact_polynomial, kExactRoundingAllowance * magnitude, 0};
}

inline MeanValueEstimate point_mean(const TestFunction& f, const Vector& p)
{
    const double y = f(p);
    if (!std::isfinite(y)) throw EvaluationError("function '" + f.id + "' is not finite at the point", p);
    return {y, MeanMethod::point_evaluation, 0.0, 0};
}

/// Dispatch: a point is evaluated directly; polynomials go to the exact path unless
/// Monte Carlo is forced; everything else is sampled.
inline MeanValueEstimate mean_value(const TestFunction& f, const Simplex& s, const QuadratureConfig& cfg)
{
    if (s.dimension() == 0) return point_mean(f, s.vertex(0));
    switch (cfg.method) {
    case MethodChoice::exact:
        if (!f.is_polynomial())
            throw PreconditionError("exact quadrature requested for non-polynomial function '" + f.id + "'");
        return exact_mean_poly(*f.polynomial, s);
    case MethodChoice::automatic:
        if (f.is_polynomial() && f.polynomial->degree() <= kMaxExactDegree) return exact_mean_poly(*f.polynomial, s);
        [[fallthrough]];
    case MethodChoice::monte_carlo:
        break;
    }
    return mc_mean(f, s, cfg.mc_samples, cfg.seed, cfg.z, cfg.workers);
}

} // namespace hhsimplex
