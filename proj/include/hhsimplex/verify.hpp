#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "hhsimplex/convexfns.hpp"
#include "hhsimplex/geometry.hpp"
#include "hhsimplex/quadrature.hpp"
#include "hhsimplex/subdivision.hpp"

namespace hhsimplex {

/// Outcome of checking "left <= right".
struct Verdict {
    double left = 0.0;
    double right = 0.0;
    /// right - left; negative values are reversals.
    double slack = 0.0;
    double tolerance = 0.0;
    bool pass = true;

    /// Amount by which the reversal exceeds the tolerance (0 when passing).
    double violation() const { return std::max(0.0, -slack - tolerance); }
};

/// Conservative one-sided rule for independent symmetric error bounds.
inline double combined_tolerance(const MeanValueEstimate& a, const MeanValueEstimate& b)
{
    return a.error_bound + b.error_bound;
}

inline Verdict compare_leq(const MeanValueEstimate& a, const MeanValueEstimate& b)
{
    Verdict v;
    v.left = a.value;
    v.right = b.value;
    v.slack = b.value - a.value;
    v.tolerance = combined_tolerance(a, b);
    v.pass = a.value <= b.value + v.tolerance;
    return v;
}

/// FNV-1a over the dimension and vertex coordinate bytes, as 16 hex digits.
inline std::string simplex_digest(const Simplex& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::int64_t dims[2] = {s.dimension(), s.ambient_dimension()};
    mix(dims, sizeof dims);
    for (const auto& v : s.vertices())
        for (Eigen::Index d = 0; d < v.size(); ++d) {
            const double c = v[d] == 0.0 ? 0.0 : v[d];
            mix(&c, sizeof c);
        }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    return out;
}

/// Means over the members Delta^[K] of one base simplex, computed once per K.
/// Monte Carlo estimates for K use the sub-seed derive_seed(cfg.seed, mask(K)).
class FamilyMeans {
public:
    FamilyMeans(TestFunction f, Simplex base, QuadratureConfig cfg)
        : f_(std::move(f)), base_(std::move(base)), cfg_(cfg)
    {
        if (base_.dimension() != base_.ambient_dimension())
            throw PreconditionError("base must be a full-dimensional n-simplex in R^n");
        require_nondegenerate(base_);
    }

    int n() const noexcept { return base_.dimension(); }
    const TestFunction& function() const noexcept { return f_; }
    const Simplex& base() const noexcept { return base_; }
    const QuadratureConfig& config() const noexcept { return cfg_; }

    const MeanValueEstimate& mean(const SubsetIndex& k_set)
    {
        const auto key = k_set.mask();
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        QuadratureConfig sub = cfg_;
        sub.seed = derive_seed(cfg_.seed, key);
        return cache_.emplace(key, mean_value(f_, build_delta_k(base_, k_set), sub)).first->second;
    }

    const MeanValueEstimate& full_mean() { return mean(SubsetIndex(n(), {})); }

private:
    TestFunction f_;
    Simplex base_;
    QuadratureConfig cfg_;
    std::map<std::uint64_t, MeanValueEstimate> cache_;
};

struct HermiteHadamardBounds {
    double left = 0.0;  ///< f(barycenter)
    MeanValueEstimate mid;
    double right = 0.0; ///< mean of the vertex values
    Verdict left_verdict;
    Verdict right_verdict;

    bool pass() const { return left_verdict.pass && right_verdict.pass; }
};

inline HermiteHadamardBounds hh_bounds(const TestFunction& f, const Simplex& s, const QuadratureConfig& cfg)
{
    HermiteHadamardBounds out;
    const auto left = point_mean(f, barycenter(s));
    double vertex_sum = 0.0;
    for (const auto& v : s.vertices()) vertex_sum += point_mean(f, v).value;
    const MeanValueEstimate right{vertex_sum / static_cast<double>(s.vertex_count()), MeanMethod::point_evaluation, 0.0,
                                  0};
    out.left = left.value;
    out.right = right.value;
    out.mid = mean_value(f, s, cfg);
    out.left_verdict = compare_leq(left, out.mid);
    out.right_verdict = compare_leq(out.mid, right);
    return out;
}

/// mean over Delta^[L] <= mean over Delta^[K] for K subset of L.
struct TheoremComparison {
    SubsetIndex k_set;
    SubsetIndex l_set;
    MeanValueEstimate mean_k;
    MeanValueEstimate mean_l;
    Verdict verdict; ///< left = mean_l, right = mean_k
};

inline TheoremComparison theorem_main_check(FamilyMeans& family, const SubsetIndex& k_set, const SubsetIndex& l_set)
{
    if (!k_set.is_subset_of(l_set))
        throw PreconditionError("K = " + k_set.to_string() + " is not a subset of L = " + l_set.to_string());
    if (l_set.is_full()) throw PreconditionError("L must be a proper subset of N");
    TheoremComparison out{k_set, l_set, family.mean(k_set), family.mean(l_set), {}};
    out.verdict = compare_leq(out.mean_l, out.mean_k);
    return out;
}

inline TheoremComparison theorem_main_check(const TestFunction& f, const Simplex& base, const SubsetIndex& k_set,
                                            const SubsetIndex& l_set, const QuadratureConfig& cfg)
{
    FamilyMeans family(f, base, cfg);
    return theorem_main_check(family, k_set, l_set);
}

/// Every pair K strictly inside L strictly inside N, L-major in proper_subsets order.
inline std::vector<TheoremComparison> theorem_sweep(FamilyMeans& family)
{
    std::vector<TheoremComparison> out;
    const auto subsets = proper_subsets(family.n());
    for (const auto& l_set : subsets)
        for (const auto& k_set : subsets)
            if (k_set.size() < l_set.size() && k_set.is_subset_of(l_set))
                out.push_back(theorem_main_check(family, k_set, l_set));
    return out;
}

struct ChainEntry {
    SubsetIndex k_set;
    MeanValueEstimate estimate;
};

struct ChainComparison {
    std::size_t left = 0;  ///< index of the smaller mean (larger K)
    std::size_t right = 0;
    Verdict verdict;
};

struct ChainReport {
    std::string function_id;
    std::string simplex_digest;
    int dimension = 0;
    std::vector<ChainEntry> entries;
    std::vector<ChainComparison> comparisons;
    std::uint64_t seed = 0;
    QuadratureConfig method_config;

    bool pass() const
    {
        return std::all_of(comparisons.begin(), comparisons.end(), [](const auto& c) { return c.verdict.pass; });
    }
};

/// K_0 = {} subset K_1 subset ... subset K_{n-1}, each adding the smallest index not yet used.
inline std::vector<SubsetIndex> first_maximal_chain(int n)
{
    std::vector<SubsetIndex> chain;
    std::vector<int> members;
    for (int i = 0; i <= n; ++i) {
        chain.emplace_back(n, members);
        members.push_back(i);
    }
    return chain;
}

inline void check_chain(const std::vector<SubsetIndex>& chain, int n)
{
    if (chain.empty()) throw PreconditionError("chain is empty");
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& k_set = chain[i];
        if (k_set.bound() != n) throw PreconditionError("chain member bound does not match the simplex dimension");
        if (k_set.size() != i) throw PreconditionError("chain member " + std::to_string(i) + " must have cardinality " +
                                                       std::to_string(i));
        if (k_set.is_full()) throw PreconditionError("chain members must be proper subsets of N");
        if (i > 0 && !chain[i - 1].is_subset_of(k_set))
            throw PreconditionError("chain is not increasing at position " + std::to_string(i));
    }
}

inline ChainReport corollary_chain(FamilyMeans& family, const std::vector<SubsetIndex>& chain)
{
    check_chain(chain, family.n());
    ChainReport report;
    report.function_id = family.function().id;
    report.simplex_digest = simplex_digest(family.base());
    report.dimension = family.n();
    report.seed = family.config().seed;
    report.method_config = family.config();
    for (const auto& k_set : chain) report.entries.push_back({k_set, family.mean(k_set)});
    for (std::size_t i = 0; i + 1 < report.entries.size(); ++i)
        report.comparisons.push_back(
            {i + 1, i, compare_leq(report.entries[i + 1].estimate, report.entries[i].estimate)});
    return report;
}

inline ChainReport corollary_chain(const TestFunction& f, const Simplex& base, const std::vector<SubsetIndex>& chain,
                                   const QuadratureConfig& cfg)
{
    FamilyMeans family(f, base, cfg);
    return corollary_chain(family, chain);
}

/// A_k: the average over all K with card K = k of the mean over Delta^[K].
struct SubsetAverage {
    int k = 0;
    std::vector<ChainEntry> members;
    /// value: arithmetic mean of member values; error_bound: mean of member bounds.
    MeanValueEstimate average;
};

inline SubsetAverage subset_average(FamilyMeans& family, int k)
{
    const int n = family.n();
    if (k < 0 || k > n) throw PreconditionError("k must lie in [0, n]");
    SubsetAverage out;
    out.k = k;
    double sum = 0.0;
    double bound = 0.0;
    std::size_t samples = 0;
    for (const auto& k_set : subsets_of_size(n, k)) {
        const auto& m = family.mean(k_set);
        out.members.push_back({k_set, m});
        sum += m.value;
        bound += m.error_bound;
        samples += m.sample_count;
    }
    const auto count = static_cast<double>(out.members.size());
    const bool all_points = k == n;
    const bool any_mc = std::any_of(out.members.begin(), out.members.end(),
                                    [](const auto& e) { return e.estimate.method == MeanMethod::monte_carlo; });
    const MeanMethod method = all_points ? MeanMethod::point_evaluation
                              : any_mc   ? MeanMethod::monte_carlo
                                         : MeanMethod::exact_polynomial;
    out.average = {sum / count, method, bound / count, samples};
    return out;
}

/// A_upper_k >= A_lower_k for upper_k < lower_k.
struct AverageComparison {
    SubsetAverage lower; ///< A_l, expected to be the smaller value
    SubsetAverage upper; ///< A_k
    Verdict verdict;
};

inline AverageComparison corollary_avg_monotone(FamilyMeans& family, int k, int l)
{
    if (k >= l) throw PreconditionError("corollary needs k < l");
    if (k < 0 || l > family.n()) throw PreconditionError("need 0 <= k < l <= n");
    AverageComparison out{subset_average(family, l), subset_average(family, k), {}};
    out.verdict = compare_leq(out.lower.average, out.upper.average);
    return out;
}

/// A_k <= mean over the whole simplex.
inline AverageComparison corollary_avg_k(FamilyMeans& family, int k)
{
    if (k < 0 || k > family.n()) throw PreconditionError("k must lie in [0, n]");
    AverageComparison out{subset_average(family, k), subset_average(family, 0), {}};
    out.verdict = compare_leq(out.lower.average, out.upper.average);
    return out;
}

inline AverageComparison corollary_avg_k(const TestFunction& f, const Simplex& base, int k, const QuadratureConfig& cfg)
{
    FamilyMeans family(f, base, cfg);
    return corollary_avg_k(family, k);
}

inline AverageComparison corollary_avg_monotone(const TestFunction& f, const Simplex& base, int k, int l,
                                                const QuadratureConfig& cfg)
{
    FamilyMeans family(f, base, cfg);
    return corollary_avg_monotone(family, k, l);
}

struct SeriesPoint {
    int p = 0;
    std::size_t count = 0;
    double average = 0.0;
    bool nondecreasing = true; ///< against the previous level
    bool below_mean = true;    ///< against the reference mean
};

struct ConvergenceSeries {
    std::vector<SeriesPoint> points;
    MeanValueEstimate reference;
    double final_gap = 0.0; ///< |last average - reference|

    bool pass() const
    {
        return std::all_of(points.begin(), points.end(),
                           [](const auto& p) { return p.nondecreasing && p.below_mean; });
    }
};

/// Allowance for monotonicity checks between consecutive levels.
inline constexpr double kSeriesTolerance = 1e-12;

inline ConvergenceSeries dr_convergence_report(const TestFunction& f, const Simplex& root, int p_max,
                                               const QuadratureConfig& cfg)
{
    if (p_max < 0) throw PreconditionError("p_max must be >= 0");
    check_level_cap(root, p_max);
    ConvergenceSeries out;
    out.reference = mean_value(f, root, cfg);
    SubdivisionLevel level = dr_level(root, 0);
    for (int p = 0; p <= p_max; ++p) {
        if (p > 0) level = dr_level(root, p);
        SeriesPoint point;
        point.p = p;
        point.count = level.simplices.size();
        point.average = barycenter_average(f, level);
        const double scale = std::max(1.0, std::abs(point.average));
        if (!out.points.empty()) point.nondecreasing = point.average >= out.points.back().average - kSeriesTolerance * scale;
        point.below_mean = point.average <= out.reference.value + out.reference.error_bound + kSeriesTolerance * scale;
        out.points.push_back(point);
    }
    out.final_gap = std::abs(out.points.back().average - out.reference.value);
    return out;
}

/// Every check run for one (function, simplex) instance.
struct FunctionReport {
    TestFunction function;
    std::string simplex_digest;
    HermiteHadamardBounds hh;
    std::vector<TheoremComparison> theorem;
    ChainReport chain;
    std::vector<AverageComparison> avg_k;      ///< k = 1..n
    std::vector<AverageComparison> avg_monotone; ///< all 0 <= k < l <= n

    /// Labels of every failed comparison.
    std::vector<std::string> failures() const
    {
        std::vector<std::string> out;
        const std::string prefix = function.id + ": ";
        if (!hh.left_verdict.pass) out.push_back(prefix + "hh_left f(b) <= mean");
        if (!hh.right_verdict.pass) out.push_back(prefix + "hh_right mean <= vertex average");
        for (const auto& t : theorem)
            if (!t.verdict.pass)
                out.push_back(prefix + "theorem mean[L=" + t.l_set.to_string() + "] <= mean[K=" + t.k_set.to_string() + "]");
        for (const auto& c : chain.comparisons)
            if (!c.verdict.pass)
                out.push_back(prefix + "chain mean[" + chain.entries[c.left].k_set.to_string() + "] <= mean[" +
                              chain.entries[c.right].k_set.to_string() + "]");
        for (const auto& a : avg_k)
            if (!a.verdict.pass) out.push_back(prefix + "avg_k A_" + std::to_string(a.lower.k) + " <= mean");
        for (const auto& a : avg_monotone)
            if (!a.verdict.pass)
                out.push_back(prefix + "avg_monotone A_" + std::to_string(a.lower.k) + " <= A_" +
                              std::to_string(a.upper.k));
        return out;
    }

    std::vector<Verdict> verdicts() const
    {
        std::vector<Verdict> out{hh.left_verdict, hh.right_verdict};
        for (const auto& t : theorem) out.push_back(t.verdict);
        for (const auto& c : chain.comparisons) out.push_back(c.verdict);
        for (const auto& a : avg_k) out.push_back(a.verdict);
        for (const auto& a : avg_monotone) out.push_back(a.verdict);
        return out;
    }
};

/// Runs the Hermite-Hadamard bounds, the exhaustive subset sweep, the first maximal
/// chain and both averaged forms for one function on one base simplex.
inline FunctionReport verify_function(const TestFunction& f, const Simplex& base, const QuadratureConfig& cfg)
{
    FamilyMeans family(f, base, cfg);
    const int n = family.n();
    FunctionReport report;
    report.function = f;
    report.simplex_digest = simplex_digest(base);
    QuadratureConfig hh_cfg = cfg;
    hh_cfg.seed = derive_seed(cfg.seed, 0);
    report.hh = hh_bounds(f, base, hh_cfg);
    report.theorem = theorem_sweep(family);
    report.chain = corollary_chain(family, first_maximal_chain(n));
    for (int k = 1; k <= n; ++k) report.avg_k.push_back(corollary_avg_k(family, k));
    for (int k = 0; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) report.avg_monotone.push_back(corollary_avg_monotone(family, k, l));
    return report;
}

} // namespace hhsimplex
