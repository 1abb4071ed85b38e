#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hhsimplex/geometry.hpp"

namespace hhsimplex {

/// Upper bound on the member count of a materialized subdivision level.
inline constexpr std::size_t kMaxLevelMembers = 1'000'000;

/// Member p of the barycentric subdivision sequence of a root simplex.
struct SubdivisionLevel {
    int level = 0;
    std::vector<Simplex> simplices;
};

namespace detail {

inline std::vector<Simplex> split_at_barycenter(const Simplex& s)
{
    const Vector b = barycenter(s);
    std::vector<Simplex> parts;
    parts.reserve(s.vertex_count());
    for (std::size_t i = 0; i < s.vertex_count(); ++i) {
        auto v = s.vertices();
        v[i] = b;
        parts.emplace_back(std::move(v));
    }
    return parts;
}

} // namespace detail

/// D_i = conv{x_0, ..., x_{i-1}, b, x_{i+1}, ..., x_m}, i = 0..m.
inline std::vector<Simplex> barycentric_split(const Simplex& s)
{
    if (s.dimension() < 1) throw PreconditionError("barycentric split needs intrinsic dimension >= 1");
    require_nondegenerate(s);
    return detail::split_at_barycenter(s);
}

/// (m+1)^p, or 0 when it would exceed `cap`.
inline std::size_t level_member_count(int intrinsic_dim, int p, std::size_t cap = kMaxLevelMembers)
{
    std::size_t count = 1;
    const auto branching = static_cast<std::size_t>(intrinsic_dim + 1);
    for (int i = 0; i < p; ++i) {
        if (count > cap / branching) return 0;
        count *= branching;
    }
    return count <= cap ? count : 0;
}

inline void check_level_cap(const Simplex& root, int p)
{
    if (p < 0) throw PreconditionError("subdivision level must be >= 0");
    if (level_member_count(root.dimension(), p) == 0)
        throw ResourceLimitError("subdivision level " + std::to_string(p) + " of a " + std::to_string(root.dimension()) +
                                     "-simplex exceeds the member limit of " + std::to_string(kMaxLevelMembers),
                                 static_cast<double>(kMaxLevelMembers));
}

/// Level p of the sequence. Children of member i precede those of member i+1;
/// within one split they follow the replaced-vertex index. A point root is its own
/// subdivision at every level.
inline SubdivisionLevel dr_level(const Simplex& root, int p)
{
    check_level_cap(root, p);
    if (root.dimension() > 0) require_nondegenerate(root);
    SubdivisionLevel current{0, {root}};
    if (root.dimension() == 0) {
        current.level = p;
        return current;
    }
    for (int q = 0; q < p; ++q) {
        SubdivisionLevel next{q + 1, {}};
        next.simplices.reserve(current.simplices.size() * root.vertex_count());
        for (const auto& member : current.simplices) {
            // Members shrink into slivers at deep levels; only the root is checked.
            auto parts = detail::split_at_barycenter(member);
            for (auto& part : parts) next.simplices.push_back(std::move(part));
        }
        current = std::move(next);
    }
    return current;
}

/// Mean of f over the barycenters of the level's members.
inline double barycenter_average(const std::function<double(const Vector&)>& f, const SubdivisionLevel& level)
{
    double sum = 0.0;
    for (const auto& member : level.simplices) sum += f(barycenter(member));
    return sum / static_cast<double>(level.simplices.size());
}

} // namespace hhsimplex
