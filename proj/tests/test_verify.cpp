#include <gtest/gtest.h>

#include <cmath>

#include "hhsimplex/verify.hpp"

using namespace hhsimplex;

namespace {

Simplex unit_interval() { return Simplex{make_vector({0.0}), make_vector({1.0})}; }
Simplex unit_triangle() { return Simplex{make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})}; }

TestFunction squares(int n)
{
    return TestFunction::from_polynomial("sum_squares", Polynomial::sum_of_squares(n), FunctionKind::psd_quadratic, true);
}

QuadratureConfig exact_cfg()
{
    QuadratureConfig cfg;
    cfg.method = MethodChoice::exact;
    return cfg;
}

} // namespace

TEST(CombinedTolerance, Rule)
{
    const MeanValueEstimate a{1.0, MeanMethod::monte_carlo, 0.1, 10};
    const MeanValueEstimate b{0.85, MeanMethod::monte_carlo, 0.05, 10};
    EXPECT_DOUBLE_EQ(combined_tolerance(a, b), 0.15);
    EXPECT_TRUE(compare_leq(a, b).pass);
    const MeanValueEstimate c{0.84, MeanMethod::monte_carlo, 0.05, 10};
    EXPECT_FALSE(compare_leq(a, c).pass);
    EXPECT_NEAR(compare_leq(a, c).violation(), 0.01, 1e-12);
}

TEST(CombinedTolerance, ShrinkingBoundsNeverBreaksExactComparisons)
{
    // Exact-path values satisfy the inequality on their own; error bounds only widen it.
    Rng rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 10'000; ++i) {
        const double lo = u(rng), hi = lo + u(rng);
        double ea = u(rng), eb = u(rng);
        bool passed = true;
        for (int step = 0; step < 20; ++step) {
            const bool pass = compare_leq({lo, MeanMethod::monte_carlo, ea, 2}, {hi, MeanMethod::monte_carlo, eb, 2}).pass;
            EXPECT_FALSE(passed && !pass);
            passed = pass;
            ea *= 0.5;
            eb *= 0.5;
        }
        EXPECT_TRUE(passed);
    }
}

TEST(HhBounds, Examples)
{
    const auto cfg = exact_cfg();
    const auto affine =
        TestFunction::from_polynomial("a", Polynomial::affine(make_vector({0.3, -1.2}), 2.0), FunctionKind::affine, true);
    const auto h_affine = hh_bounds(affine, unit_triangle(), cfg);
    EXPECT_NEAR(h_affine.left, h_affine.mid.value, 1e-10);
    EXPECT_NEAR(h_affine.right, h_affine.mid.value, 1e-10);
    EXPECT_TRUE(h_affine.pass());

    const auto h1 = hh_bounds(squares(1), unit_interval(), cfg);
    EXPECT_NEAR(h1.left, 0.25, 1e-15);
    EXPECT_NEAR(h1.mid.value, 1.0 / 3, 1e-15);
    EXPECT_NEAR(h1.right, 0.5, 1e-15);
    EXPECT_TRUE(h1.pass());

    const auto h2 = hh_bounds(squares(2), unit_triangle(), cfg);
    EXPECT_NEAR(h2.left, 2.0 / 9, 1e-15);
    EXPECT_NEAR(h2.mid.value, 1.0 / 3, 1e-15);
    EXPECT_NEAR(h2.right, 2.0 / 3, 1e-15);
    EXPECT_TRUE(h2.pass());
}

TEST(TheoremMainCheck, Examples)
{
    const auto cfg = exact_cfg();
    const auto same = theorem_main_check(squares(2), unit_triangle(), SubsetIndex(2, {1}), SubsetIndex(2, {1}), cfg);
    EXPECT_EQ(same.verdict.slack, 0.0);
    EXPECT_TRUE(same.verdict.pass);

    const auto t = theorem_main_check(squares(2), unit_triangle(), SubsetIndex(2, {}), SubsetIndex(2, {0}), cfg);
    EXPECT_NEAR(t.mean_l.value, 8.0 / 27, 1e-15);
    EXPECT_NEAR(t.mean_k.value, 1.0 / 3, 1e-15);
    EXPECT_NEAR(t.verdict.slack, 1.0 / 27, 1e-15);
    EXPECT_TRUE(t.verdict.pass);

    const auto to_point =
        theorem_main_check(squares(2), unit_triangle(), SubsetIndex(2, {0}), SubsetIndex(2, {0, 1}), cfg);
    EXPECT_EQ(to_point.mean_l.method, MeanMethod::point_evaluation);
    EXPECT_NEAR(to_point.mean_l.value, 2.0 / 9, 1e-15);
    EXPECT_NEAR(to_point.mean_k.value, 8.0 / 27, 1e-15);
    EXPECT_TRUE(to_point.verdict.pass);

    EXPECT_THROW(theorem_main_check(squares(2), unit_triangle(), SubsetIndex(2, {1}), SubsetIndex(2, {0}), cfg),
                 PreconditionError);
    EXPECT_THROW(
        theorem_main_check(squares(2), unit_triangle(), SubsetIndex(2, {0}), SubsetIndex(2, {0, 1, 2}), cfg),
        PreconditionError);
}

TEST(CorollaryChain, Examples)
{
    const auto cfg = exact_cfg();
    const auto c1 = corollary_chain(squares(1), unit_interval(), {SubsetIndex(1, {}), SubsetIndex(1, {0})}, cfg);
    ASSERT_EQ(c1.entries.size(), 2u);
    EXPECT_NEAR(c1.entries[1].estimate.value, 0.25, 1e-15);
    EXPECT_NEAR(c1.entries[0].estimate.value, 1.0 / 3, 1e-15);
    EXPECT_TRUE(c1.pass());

    const auto c2 = corollary_chain(squares(2), unit_triangle(), first_maximal_chain(2), cfg);
    ASSERT_EQ(c2.entries.size(), 3u);
    EXPECT_NEAR(c2.entries[0].estimate.value, 1.0 / 3, 1e-15);
    EXPECT_NEAR(c2.entries[1].estimate.value, 8.0 / 27, 1e-15);
    EXPECT_NEAR(c2.entries[2].estimate.value, 2.0 / 9, 1e-15);
    ASSERT_EQ(c2.comparisons.size(), 2u);
    EXPECT_EQ(c2.comparisons[0].left, 1u);
    EXPECT_EQ(c2.comparisons[0].right, 0u);
    EXPECT_TRUE(c2.pass());
    EXPECT_EQ(c2.dimension, 2);
    EXPECT_EQ(c2.simplex_digest, simplex_digest(unit_triangle()));

    EXPECT_THROW(corollary_chain(squares(2), unit_triangle(), {SubsetIndex(2, {}), SubsetIndex(2, {0, 1})}, cfg),
                 PreconditionError);
    EXPECT_THROW(corollary_chain(squares(2), unit_triangle(),
                                 {SubsetIndex(2, {}), SubsetIndex(2, {0}), SubsetIndex(2, {1, 2})}, cfg),
                 PreconditionError);
}

TEST(CorollaryChain, AffineIsFlatAndEndpointsMatchHhBounds)
{
    Rng rng(8);
    for (int n = 1; n <= 5; ++n) {
        const Simplex base = random_simplex(n, rng);
        for (const auto& f : catalog(n, 2)) {
            if (!f.is_polynomial() || !f.is_convex) continue;
            const auto chain = corollary_chain(f, base, first_maximal_chain(n), QuadratureConfig{});
            EXPECT_TRUE(chain.pass()) << f.id;
            const auto h = hh_bounds(f, base, QuadratureConfig{});
            EXPECT_NEAR(chain.entries.back().estimate.value, h.left, 1e-10 * std::max(1.0, std::abs(h.left)));
            EXPECT_NEAR(chain.entries.front().estimate.value, h.mid.value, 1e-10 * std::max(1.0, std::abs(h.mid.value)));
            if (f.kind == FunctionKind::affine) {
                for (const auto& e : chain.entries) EXPECT_NEAR(e.estimate.value, h.left, 1e-10);
            }
        }
    }
}

TEST(CorollaryAverages, Examples)
{
    const auto cfg = exact_cfg();
    const auto a0 = corollary_avg_k(squares(2), unit_triangle(), 0, cfg);
    EXPECT_EQ(a0.verdict.slack, 0.0);
    EXPECT_TRUE(a0.verdict.pass);

    const auto a1 = corollary_avg_k(squares(1), unit_interval(), 1, cfg);
    EXPECT_NEAR(a1.lower.average.value, 0.25, 1e-15);
    EXPECT_TRUE(a1.verdict.pass);

    const auto t1 = corollary_avg_k(squares(2), unit_triangle(), 1, cfg);
    ASSERT_EQ(t1.lower.members.size(), 3u);
    // Mean of |x|^2 over segment [u, v] is (|u|^2 + |v|^2 + u.v) / 3.
    const Simplex base = unit_triangle();
    for (const auto& m : t1.lower.members) {
        const Simplex seg = build_delta_k(base, m.k_set);
        const double a = seg.vertex(0).squaredNorm(), b = seg.vertex(1).squaredNorm(), ab = seg.vertex(0).dot(seg.vertex(1));
        EXPECT_NEAR(m.estimate.value, (a + b + ab) / 3.0, 1e-15) << m.k_set.to_string();
    }
    EXPECT_NEAR(t1.lower.members[0].estimate.value, 8.0 / 27, 1e-15);
    EXPECT_NEAR(t1.lower.members[1].estimate.value, 7.0 / 27, 1e-15);
    EXPECT_NEAR(t1.lower.members[2].estimate.value, 7.0 / 27, 1e-15);
    EXPECT_NEAR(t1.lower.average.value, 22.0 / 81, 1e-15);
    EXPECT_TRUE(t1.verdict.pass);

    const auto mono = corollary_avg_monotone(squares(2), unit_triangle(), 1, 2, cfg);
    EXPECT_NEAR(mono.lower.average.value, 2.0 / 9, 1e-15);
    EXPECT_NEAR(mono.upper.average.value, 22.0 / 81, 1e-15);
    EXPECT_TRUE(mono.verdict.pass);

    const auto ends = corollary_avg_monotone(squares(2), unit_triangle(), 0, 2, cfg);
    EXPECT_NEAR(ends.lower.average.value, 2.0 / 9, 1e-15);
    EXPECT_NEAR(ends.upper.average.value, 1.0 / 3, 1e-15);

    EXPECT_THROW(corollary_avg_monotone(squares(2), unit_triangle(), 2, 1, cfg), PreconditionError);
    EXPECT_THROW(corollary_avg_monotone(squares(2), unit_triangle(), 1, 1, cfg), PreconditionError);
    EXPECT_THROW(corollary_avg_k(squares(2), unit_triangle(), 3, cfg), PreconditionError);
}

TEST(CorollaryAverages, AverageIsMeanOfStoredMembers)
{
    Rng rng(21);
    for (int n = 1; n <= 4; ++n) {
        const Simplex base = random_simplex(n, rng);
        FamilyMeans family(catalog_entry(n, 1, "quadratic"), base, QuadratureConfig{});
        for (int k = 0; k <= n; ++k) {
            const auto a = subset_average(family, k);
            double sum = 0.0;
            for (const auto& m : a.members) sum += m.estimate.value;
            EXPECT_NEAR(a.average.value, sum / static_cast<double>(a.members.size()), 1e-12);
        }
    }
}

TEST(CorollaryAverages, AffineEqualityWithinTolerance)
{
    const Simplex base = unit_triangle();
    const auto f = catalog_entry(2, 5, "affine");
    for (int k = 0; k <= 2; ++k)
        for (int l = k + 1; l <= 2; ++l) {
            const auto r = corollary_avg_monotone(f, base, k, l, QuadratureConfig{});
            EXPECT_TRUE(r.verdict.pass);
            EXPECT_LE(std::abs(r.verdict.slack), 1e-12);
        }
}

TEST(TheoremSweep, MonteCarloForNonPolynomialEntries)
{
    Rng rng(55);
    const Simplex base = random_simplex(2, rng);
    QuadratureConfig cfg;
    cfg.mc_samples = 20'000;
    cfg.seed = 4;
    for (const auto& name : {"max_affine", "norm", "log_sum_exp"}) {
        FamilyMeans family(catalog_entry(2, 4, name), base, cfg);
        const auto sweep = theorem_sweep(family);
        EXPECT_EQ(sweep.size(), 12u); // 3 pairs (empty, {i}) plus 3 per two-element L
        for (const auto& t : sweep) {
            EXPECT_TRUE(t.k_set.is_subset_of(t.l_set));
            EXPECT_LT(t.k_set.size(), t.l_set.size());
        }
    }
}

TEST(FamilyMeans, SubSeedsAreStablePerSubset)
{
    const Simplex base = unit_triangle();
    QuadratureConfig cfg;
    cfg.method = MethodChoice::monte_carlo;
    cfg.mc_samples = 1000;
    FamilyMeans a(squares(2), base, cfg), b(squares(2), base, cfg);
    const SubsetIndex k(2, {1});
    EXPECT_EQ(a.mean(k).value, b.mean(k).value);
    EXPECT_NE(a.mean(SubsetIndex(2, {})).value, a.mean(SubsetIndex(2, {0})).value);
}

TEST(DrConvergenceReport, Examples)
{
    const auto cfg = exact_cfg();
    const auto series = dr_convergence_report(squares(1), unit_interval(), 2, cfg);
    ASSERT_EQ(series.points.size(), 3u);
    EXPECT_DOUBLE_EQ(series.points[0].average, 0.25);
    EXPECT_DOUBLE_EQ(series.points[1].average, 0.3125);
    EXPECT_DOUBLE_EQ(series.points[2].average, 0.328125);
    EXPECT_NEAR(series.reference.value, 1.0 / 3, 1e-15);
    EXPECT_NEAR(series.final_gap, 1.0 / 3 - 0.328125, 1e-15);
    EXPECT_TRUE(series.pass());

    const auto affine = catalog_entry(2, 0, "affine");
    const auto flat = dr_convergence_report(affine, unit_triangle(), 4, cfg);
    for (const auto& p : flat.points) EXPECT_NEAR(p.average, affine(barycenter(unit_triangle())), 1e-12);
    EXPECT_TRUE(flat.pass());

    Rng rng(6);
    const Simplex tri = random_simplex(2, rng);
    for (const auto& f : catalog(2, 6)) {
        if (!f.is_polynomial() || !f.is_convex) continue;
        const auto s = dr_convergence_report(f, tri, 5, QuadratureConfig{});
        EXPECT_TRUE(s.pass()) << f.id;
    }
    EXPECT_THROW(dr_convergence_report(squares(2), unit_triangle(), 13, cfg), ResourceLimitError);
}

TEST(VerifyFunction, NonConvexControlIsCaught)
{
    for (int n = 1; n <= 3; ++n) {
        const auto r = verify_function(catalog_entry(n, 0, kNonConvexControl), standard_simplex(n), QuadratureConfig{});
        EXPECT_FALSE(r.failures().empty()) << "n=" << n;
        EXPECT_FALSE(r.chain.pass());
    }
    const auto ok = verify_function(squares(3), standard_simplex(3), QuadratureConfig{});
    EXPECT_TRUE(ok.failures().empty());
    EXPECT_EQ(ok.avg_k.size(), 3u);
    EXPECT_EQ(ok.avg_monotone.size(), 6u);
}

TEST(SimplexDigest, StableAndSensitive)
{
    EXPECT_EQ(simplex_digest(unit_triangle()), simplex_digest(unit_triangle()));
    EXPECT_EQ(simplex_digest(unit_triangle()).size(), 16u);
    const Simplex moved{make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1.0000001})};
    EXPECT_NE(simplex_digest(unit_triangle()), simplex_digest(moved));
}
