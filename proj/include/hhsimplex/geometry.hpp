#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hhsimplex/errors.hpp"

namespace hhsimplex {

using Vector = Eigen::VectorXd;

/// Relative threshold on the Gram determinant below which a simplex counts as degenerate.
inline constexpr double kDegenerateGramTolerance = 1e-12;

inline bool all_finite(const Vector& v) { return v.size() > 0 && v.allFinite(); }

inline Vector make_vector(std::initializer_list<double> coords)
{
    Vector v(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) v[i++] = c;
    return v;
}

inline double factorial(int k)
{
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

/// Ordered list of k+1 points sharing one ambient dimension n >= k.
///
/// The vertex order is part of the value: faces, splits and derived
/// simplices all refer to vertices by position.
class Simplex {
public:
    explicit Simplex(std::vector<Vector> vertices) : vertices_(std::move(vertices))
    {
        if (vertices_.empty()) throw PreconditionError("simplex needs at least one vertex");
        const auto n = vertices_.front().size();
        if (n < 1) throw DimensionError("vertices must have ambient dimension >= 1");
        for (const auto& v : vertices_) {
            if (v.size() != n) throw DimensionError("simplex vertices differ in ambient dimension");
            if (!v.allFinite()) throw PreconditionError("simplex vertex has a non-finite coordinate");
        }
        if (static_cast<Eigen::Index>(vertices_.size()) > n + 1)
            throw DimensionError("more than n+1 vertices in ambient dimension n");
    }

    Simplex(std::initializer_list<Vector> vertices) : Simplex(std::vector<Vector>(vertices)) {}

    /// Intrinsic dimension k (vertex count minus one).
    int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    int ambient_dimension() const noexcept { return static_cast<int>(vertices_.front().size()); }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }

    const Vector& vertex(std::size_t i) const { return vertices_.at(i); }
    const std::vector<Vector>& vertices() const noexcept { return vertices_; }

    /// Columns are the edge vectors x_i - x_0, i = 1..k.
    Eigen::MatrixXd edge_matrix() const
    {
        Eigen::MatrixXd e(ambient_dimension(), dimension());
        for (int i = 1; i <= dimension(); ++i) e.col(i - 1) = vertices_[i] - vertices_[0];
        return e;
    }

    double max_edge_length() const
    {
        double m = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                m = std::max(m, (vertices_[i] - vertices_[j]).norm());
        return m;
    }

    double gram_determinant() const
    {
        if (dimension() == 0) return 1.0;
        const Eigen::MatrixXd e = edge_matrix();
        return (e.transpose() * e).determinant();
    }

    bool is_degenerate() const
    {
        const int k = dimension();
        if (k == 0) return false;
        const double scale = max_edge_length();
        if (scale == 0.0) return true;
        return gram_determinant() <= kDegenerateGramTolerance * std::pow(scale, 2 * k);
    }

    friend bool operator==(const Simplex& a, const Simplex& b)
    {
        if (a.vertices_.size() != b.vertices_.size()) return false;
        for (std::size_t i = 0; i < a.vertices_.size(); ++i)
            if (a.vertices_[i].size() != b.vertices_[i].size() || a.vertices_[i] != b.vertices_[i]) return false;
        return true;
    }

private:
    std::vector<Vector> vertices_;
};

inline void require_nondegenerate(const Simplex& s)
{
    if (s.is_degenerate())
        throw DegenerateSimplexError("degenerate " + std::to_string(s.dimension()) + "-simplex (Gram determinant below " +
                                     "relative threshold)");
}

/// A subset K of N = {0,...,n}; members are kept sorted and unique.
class SubsetIndex {
public:
    SubsetIndex() = default;

    SubsetIndex(int n, std::vector<int> members) : n_(n), members_(std::move(members))
    {
        if (n < 0 || n > 62) throw PreconditionError("subset index bound n must lie in [0, 62]");
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw PreconditionError("subset has duplicate members");
        for (int m : members_)
            if (m < 0 || m > n) throw PreconditionError("subset member " + std::to_string(m) + " outside {0.." +
                                                        std::to_string(n) + "}");
    }

    static SubsetIndex from_mask(int n, std::uint64_t mask)
    {
        std::vector<int> members;
        for (int i = 0; i <= n; ++i)
            if (mask & (std::uint64_t{1} << i)) members.push_back(i);
        return SubsetIndex(n, std::move(members));
    }

    int bound() const noexcept { return n_; }
    const std::vector<int>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool is_full() const noexcept { return static_cast<int>(members_.size()) == n_ + 1; }

    bool contains(int i) const { return std::binary_search(members_.begin(), members_.end(), i); }

    std::uint64_t mask() const noexcept
    {
        std::uint64_t m = 0;
        for (int i : members_) m |= std::uint64_t{1} << i;
        return m;
    }

    bool is_subset_of(const SubsetIndex& other) const noexcept
    {
        return n_ == other.n_ && (mask() & ~other.mask()) == 0;
    }

    /// N \ K in increasing order.
    std::vector<int> complement() const
    {
        std::vector<int> out;
        for (int j = 0; j <= n_; ++j)
            if (!contains(j)) out.push_back(j);
        return out;
    }

    SubsetIndex with(int l) const
    {
        auto m = members_;
        m.push_back(l);
        return SubsetIndex(n_, std::move(m));
    }

    std::string to_string() const
    {
        std::string s = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(members_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const SubsetIndex& a, const SubsetIndex& b) = default;

private:
    int n_ = 0;
    std::vector<int> members_;
};

/// All subsets K of {0..n} with card K = k, in lexicographic order of member lists.
inline std::vector<SubsetIndex> subsets_of_size(int n, int k)
{
    std::vector<SubsetIndex> out;
    if (k < 0 || k > n + 1) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.emplace_back(n, idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// Every K strictly contained in N = {0..n}, ordered by cardinality then lexicographically.
inline std::vector<SubsetIndex> proper_subsets(int n)
{
    std::vector<SubsetIndex> out;
    for (int k = 0; k <= n; ++k) {
        auto level = subsets_of_size(n, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

inline Vector barycenter(const Simplex& s)
{
    Vector sum = Vector::Zero(s.ambient_dimension());
    for (const auto& v : s.vertices()) sum += v;
    return sum / static_cast<double>(s.vertex_count());
}

/// H(a, lambda)(x) = a + lambda (x - a).
inline Vector homothety_apply(const Vector& center, double lambda, const Vector& x)
{
    if (center.size() != x.size()) throw DimensionError("homothety center and point differ in dimension");
    if (!std::isfinite(lambda)) throw PreconditionError("homothety scale must be finite");
    return center + lambda * (x - center);
}

inline Simplex homothety_apply(const Vector& center, double lambda, const Simplex& s)
{
    std::vector<Vector> image;
    image.reserve(s.vertex_count());
    for (const auto& v : s.vertices()) image.push_back(homothety_apply(center, lambda, v));
    return Simplex(std::move(image));
}

/// k-dimensional volume sqrt(det(E^T E)) / k!; a point has volume 1.
inline double volume(const Simplex& s)
{
    const int k = s.dimension();
    if (k == 0) return 1.0;
    require_nondegenerate(s);
    return std::sqrt(std::max(s.gram_determinant(), 0.0)) / factorial(k);
}

inline Simplex face_opposite(const Simplex& s, int vertex_index)
{
    if (s.dimension() < 1) throw PreconditionError("a point has no proper faces");
    if (vertex_index < 0 || vertex_index > s.dimension())
        throw PreconditionError("vertex index " + std::to_string(vertex_index) + " out of range");
    std::vector<Vector> rest;
    rest.reserve(s.vertex_count() - 1);
    for (int i = 0; i <= s.dimension(); ++i)
        if (i != vertex_index) rest.push_back(s.vertex(static_cast<std::size_t>(i)));
    return Simplex(std::move(rest));
}

/// Vertex x_j^[K] = (1/(n+1)) sum_{i in K} x_i + ((n+1-|K|)/(n+1)) x_j.
inline Vector delta_k_vertex(const Simplex& base, const SubsetIndex& k_set, int j)
{
    const int n = base.dimension();
    const double np1 = n + 1;
    Vector sum = Vector::Zero(base.ambient_dimension());
    for (int i : k_set.members()) sum += base.vertex(static_cast<std::size_t>(i));
    return sum / np1 + ((np1 - static_cast<double>(k_set.size())) / np1) * base.vertex(static_cast<std::size_t>(j));
}

inline void check_family_base(const Simplex& base, const SubsetIndex& k_set)
{
    if (base.dimension() != base.ambient_dimension())
        throw PreconditionError("base must be a full-dimensional n-simplex in R^n");
    if (k_set.bound() != base.dimension())
        throw PreconditionError("subset bound " + std::to_string(k_set.bound()) + " does not match simplex dimension " +
                                std::to_string(base.dimension()));
}

/// The (n - |K|)-simplex Delta^[K]; vertices ordered by increasing j in N \ K.
inline Simplex build_delta_k(const Simplex& base, const SubsetIndex& k_set)
{
    check_family_base(base, k_set);
    require_nondegenerate(base);
    if (k_set.is_full()) throw PreconditionError("K = N leaves no vertices");
    std::vector<Vector> vertices;
    for (int j : k_set.complement()) vertices.push_back(delta_k_vertex(base, k_set, j));
    return Simplex(std::move(vertices));
}

/// Delta^[K u {l}] obtained as the image of the face of Delta^[K] opposite x_l^[K]
/// under H(x_l^[K], (n - |K|) / (n + 1 - |K|)).
inline Simplex delta_l_via_homothety(const Simplex& base, const SubsetIndex& k_set, int l)
{
    check_family_base(base, k_set);
    const int n = base.dimension();
    if (l < 0 || l > n || k_set.contains(l))
        throw PreconditionError("l = " + std::to_string(l) + " is not in N \\ K");
    if (k_set.size() + 1 == static_cast<std::size_t>(n + 1))
        throw PreconditionError("K u {l} = N leaves no vertices");

    const Simplex delta_k = build_delta_k(base, k_set);
    const auto remaining = k_set.complement();
    const int position = static_cast<int>(std::find(remaining.begin(), remaining.end(), l) - remaining.begin());
    const double k = static_cast<double>(k_set.size());
    const double scale = (n - k) / (n + 1 - k);
    return homothety_apply(delta_k.vertex(static_cast<std::size_t>(position)), scale, face_opposite(delta_k, position));
}

/// conv(base_face u {apex}); apex is appended as the last vertex.
inline Simplex cone_over(const Simplex& base_face, const Vector& apex)
{
    if (apex.size() != base_face.ambient_dimension()) throw DimensionError("cone apex dimension mismatch");
    auto vertices = base_face.vertices();
    vertices.push_back(apex);
    Simplex cone(std::move(vertices));
    require_nondegenerate(cone);
    return cone;
}

/// conv{0, e_1, ..., e_n}.
inline Simplex standard_simplex(int n)
{
    if (n < 1) throw PreconditionError("dimension must be >= 1");
    std::vector<Vector> v;
    v.push_back(Vector::Zero(n));
    for (int i = 0; i < n; ++i) v.push_back(Vector::Unit(n, i));
    return Simplex(std::move(v));
}

/// Uniform vertices in [-scale, scale]^n, redrawn until the simplex is reasonably shaped
/// (Gram determinant at least 1e-6 of max_edge^(2n)).
template <class Rng>
Simplex random_simplex(int n, Rng& rng, double scale = 1.0)
{
    if (n < 1) throw PreconditionError("dimension must be >= 1");
    std::uniform_real_distribution<double> coord(-scale, scale);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Vector> v(static_cast<std::size_t>(n + 1), Vector(n));
        for (auto& x : v)
            for (int d = 0; d < n; ++d) x[d] = coord(rng);
        Simplex s(std::move(v));
        const double edge = s.max_edge_length();
        if (edge > 0 && s.gram_determinant() >= 1e-6 * std::pow(edge, 2 * n)) return s;
    }
    throw DegenerateSimplexError("could not draw a well-shaped random simplex");
}

/// Max-norm distance between two vertex lists of equal shape.
inline double max_vertex_deviation(const Simplex& a, const Simplex& b)
{
    if (a.vertex_count() != b.vertex_count() || a.ambient_dimension() != b.ambient_dimension())
        throw DimensionError("simplices differ in shape");
    double m = 0.0;
    for (std::size_t i = 0; i < a.vertex_count(); ++i)
        m = std::max(m, (a.vertex(i) - b.vertex(i)).cwiseAbs().maxCoeff());
    return m;
}

} // namespace hhsimplex
