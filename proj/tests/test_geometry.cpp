#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hhsimplex/geometry.hpp"
#include "hhsimplex/random.hpp"

using namespace hhsimplex;

namespace {

Simplex unit_triangle() { return Simplex{make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})}; }

Eigen::MatrixXd random_orthogonal(int n, Rng& rng)
{
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

} // namespace

TEST(Barycenter, TriangleSegmentPoint)
{
    EXPECT_TRUE(barycenter(unit_triangle()).isApprox(make_vector({1.0 / 3, 1.0 / 3}), 1e-15));
    EXPECT_DOUBLE_EQ(barycenter(Simplex{make_vector({2.0}), make_vector({5.0})})[0], 3.5);
    const Vector p = make_vector({0.25, -4.0, 9.0});
    EXPECT_EQ(barycenter(Simplex{p}), p);
}

TEST(Homothety, IdentityCollapseAndScaling)
{
    const Vector a = make_vector({1.5, -2.0});
    const Vector x = make_vector({-3.0, 7.25});
    EXPECT_EQ(homothety_apply(a, 1.0, x), x);
    EXPECT_EQ(homothety_apply(a, 0.0, x), a);
    EXPECT_EQ(homothety_apply(make_vector({0, 0}), 0.5, make_vector({2, 4})), make_vector({1, 2}));
    EXPECT_THROW(homothety_apply(a, 0.5, make_vector({1, 2, 3})), DimensionError);
}

TEST(Volume, KnownValues)
{
    EXPECT_DOUBLE_EQ(volume(unit_triangle()), 0.5);
    for (int n = 1; n <= 7; ++n) EXPECT_NEAR(volume(standard_simplex(n)), 1.0 / factorial(n), 1e-15) << "n=" << n;
    const Simplex segment{make_vector({2.0 / 3, 0}), make_vector({0, 2.0 / 3})};
    EXPECT_NEAR(volume(segment), 2.0 / 3 * std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(volume(segment), 0.942809, 1e-6);
    EXPECT_EQ(volume(Simplex{make_vector({3, 4})}), 1.0);
}

TEST(Volume, DegenerateSimplexIsRejected)
{
    const Simplex collinear{make_vector({0, 0}), make_vector({1, 1}), make_vector({2, 2})};
    EXPECT_TRUE(collinear.is_degenerate());
    EXPECT_THROW(volume(collinear), DegenerateSimplexError);
    EXPECT_THROW(volume(Simplex{make_vector({1, 1}), make_vector({1, 1})}), DegenerateSimplexError);
}

TEST(Volume, MatchesDeterminantOfSquareEdgeMatrix)
{
    // |det E| / n! is a separate route for full-dimensional simplices.
    Rng rng(11);
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const Simplex s = random_simplex(n, rng);
            const double direct = std::abs(s.edge_matrix().determinant()) / factorial(n);
            EXPECT_NEAR(volume(s), direct, 1e-12 * direct);
        }
}

TEST(Volume, InvariantUnderPermutationAndRigidMotion)
{
    Rng rng(5);
    for (int n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const Simplex s = random_simplex(n, rng);
            const double v = volume(s);
            EXPECT_GT(v, 0.0);

            auto verts = s.vertices();
            std::shuffle(verts.begin(), verts.end(), rng);
            EXPECT_NEAR(volume(Simplex(verts)), v, 1e-10 * v);

            const Eigen::MatrixXd q = random_orthogonal(n, rng);
            std::uniform_real_distribution<double> shift(-10, 10);
            Vector t(n);
            for (int d = 0; d < n; ++d) t[d] = shift(rng);
            std::vector<Vector> moved;
            for (const auto& x : s.vertices()) moved.push_back(q * x + t);
            EXPECT_NEAR(volume(Simplex(moved)), v, 1e-10 * v);
        }
    }
}

TEST(Volume, LowerDimensionalSimplexInHigherSpace)
{
    // Unit right triangle lifted into R^3 and rotated.
    Rng rng(3);
    const Eigen::MatrixXd q = random_orthogonal(3, rng);
    const Simplex s{q * make_vector({0, 0, 0}), q * make_vector({1, 0, 0}), q * make_vector({0, 1, 0})};
    EXPECT_NEAR(volume(s), 0.5, 1e-14);
}

TEST(FaceOpposite, RemovesVertexPreservingOrder)
{
    const Vector a = make_vector({0, 0, 0}), b = make_vector({1, 0, 0}), c = make_vector({0, 1, 0}),
                 d = make_vector({0, 0, 1});
    EXPECT_EQ(face_opposite(Simplex{a, b, c}, 0), (Simplex{b, c}));
    EXPECT_EQ(face_opposite(Simplex{a, b}, 1), (Simplex{a}));
    EXPECT_EQ(face_opposite(Simplex{a, b, c, d}, 2), (Simplex{a, b, d}));
    EXPECT_THROW(face_opposite(Simplex{a, b, c}, 3), PreconditionError);
    EXPECT_THROW(face_opposite(Simplex{a, b, c}, -1), PreconditionError);
    EXPECT_THROW(face_opposite(Simplex{a}, 0), PreconditionError);
}

TEST(SubsetIndex, ValidationAndEnumeration)
{
    EXPECT_THROW(SubsetIndex(2, {0, 3}), PreconditionError);
    EXPECT_THROW(SubsetIndex(2, {1, 1}), PreconditionError);
    const SubsetIndex k(3, {2, 0});
    EXPECT_EQ(k.members(), (std::vector<int>{0, 2}));
    EXPECT_EQ(k.complement(), (std::vector<int>{1, 3}));
    EXPECT_EQ(k.to_string(), "{0,2}");
    EXPECT_TRUE(SubsetIndex(3, {0}).is_subset_of(k));
    EXPECT_FALSE(SubsetIndex(3, {1}).is_subset_of(k));

    for (int n = 0; n <= 6; ++n) {
        const auto all = proper_subsets(n);
        EXPECT_EQ(all.size(), (std::size_t{1} << (n + 1)) - 1);
        for (int k_size = 0; k_size <= n + 1; ++k_size) {
            const auto level = subsets_of_size(n, k_size);
            double binom = 1;
            for (int i = 0; i < k_size; ++i) binom = binom * (n + 1 - i) / (i + 1);
            EXPECT_EQ(static_cast<double>(level.size()), binom);
        }
    }
}

TEST(BuildDeltaK, HandComputedExamples)
{
    const Simplex base = unit_triangle();
    EXPECT_EQ(build_delta_k(base, SubsetIndex(2, {})), base);

    const Simplex seg = build_delta_k(base, SubsetIndex(2, {0}));
    ASSERT_EQ(seg.vertex_count(), 2u);
    EXPECT_NEAR(max_vertex_deviation(seg, Simplex{make_vector({2.0 / 3, 0}), make_vector({0, 2.0 / 3})}), 0.0, 1e-15);

    for (const auto& k : subsets_of_size(2, 2)) {
        const Simplex point = build_delta_k(base, k);
        ASSERT_EQ(point.vertex_count(), 1u);
        EXPECT_NEAR((point.vertex(0) - barycenter(base)).norm(), 0.0, 1e-15);
    }
    EXPECT_THROW(build_delta_k(base, SubsetIndex(2, {0, 1, 2})), PreconditionError);
    EXPECT_THROW(build_delta_k(base, SubsetIndex(3, {0})), PreconditionError);
}

TEST(BuildDeltaK, IntrinsicDimensionAndCommonBarycenter)
{
    Rng rng(2024);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const Simplex base = random_simplex(n, rng);
            const Vector b = barycenter(base);
            const double scale = base.max_edge_length();
            for (const auto& k : proper_subsets(n)) {
                const Simplex member = build_delta_k(base, k);
                EXPECT_EQ(member.dimension(), n - static_cast<int>(k.size()));
                EXPECT_EQ(member.vertex_count(), static_cast<std::size_t>(n + 1) - k.size());
                EXPECT_LE((barycenter(member) - b).cwiseAbs().maxCoeff(), 1e-12 * scale)
                    << "n=" << n << " K=" << k.to_string();
            }
        }
    }
}

TEST(DeltaLViaHomothety, Examples)
{
    const Simplex base = unit_triangle();
    const Simplex via = delta_l_via_homothety(base, SubsetIndex(2, {}), 0);
    EXPECT_NEAR(max_vertex_deviation(via, Simplex{make_vector({2.0 / 3, 0}), make_vector({0, 2.0 / 3})}), 0.0, 1e-15);

    const Simplex interval{make_vector({0.0}), make_vector({1.0})};
    const Simplex mid = delta_l_via_homothety(interval, SubsetIndex(1, {}), 0);
    ASSERT_EQ(mid.vertex_count(), 1u);
    EXPECT_DOUBLE_EQ(mid.vertex(0)[0], 0.5);

    EXPECT_THROW(delta_l_via_homothety(base, SubsetIndex(2, {0}), 0), PreconditionError);
    EXPECT_THROW(delta_l_via_homothety(base, SubsetIndex(2, {0, 1}), 2), PreconditionError);
    EXPECT_THROW(delta_l_via_homothety(base, SubsetIndex(2, {}), 3), PreconditionError);
}

TEST(DeltaLViaHomothety, AgreesWithDirectConstructionExhaustively)
{
    Rng rng(99);
    for (int n = 1; n <= 6; ++n) {
        const Simplex base = random_simplex(n, rng);
        const double scale = base.max_edge_length();
        for (const auto& k : proper_subsets(n)) {
            if (static_cast<int>(k.size()) >= n) continue;
            for (int l : k.complement()) {
                const Simplex via = delta_l_via_homothety(base, k, l);
                const Simplex direct = build_delta_k(base, k.with(l));
                EXPECT_LE(max_vertex_deviation(via, direct), 1e-12 * scale);
                EXPECT_LE((barycenter(via) - barycenter(base)).cwiseAbs().maxCoeff(), 1e-12 * scale);
            }
        }
    }
}

TEST(ConeOver, Examples)
{
    const Simplex tri = cone_over(Simplex{make_vector({1, 0}), make_vector({0, 1})}, make_vector({0, 0}));
    EXPECT_DOUBLE_EQ(volume(tri), 0.5);
    EXPECT_EQ(tri.vertex(2), make_vector({0, 0}));

    const Simplex seg = cone_over(Simplex{make_vector({0.5, 0.5})}, make_vector({1, 2}));
    EXPECT_EQ(seg.vertex_count(), 2u);
    EXPECT_THROW(cone_over(Simplex{make_vector({1, 0}), make_vector({0, 1})}, make_vector({0.5, 0.5})),
                 DegenerateSimplexError);
}

TEST(Simplex, RejectsMalformedInput)
{
    EXPECT_THROW(Simplex(std::vector<Vector>{}), PreconditionError);
    EXPECT_THROW((Simplex{make_vector({0, 0}), make_vector({1})}), DimensionError);
    EXPECT_THROW((Simplex{make_vector({0}), make_vector({1}), make_vector({2})}), DimensionError);
    EXPECT_THROW((Simplex{make_vector({0, std::nan("")})}), PreconditionError);
}
