#pragma once

#include <charconv>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhsimplex/verify.hpp"

namespace hhsimplex::report {

using Json = nlohmann::ordered_json;

/// 17 significant digits with a '.' decimal point, independent of the locale.
inline std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline Json to_json(const Vector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

inline Json to_json(const Simplex& s)
{
    Json out = Json::array();
    for (const auto& v : s.vertices()) out.push_back(to_json(v));
    return out;
}

inline Json to_json(const SubsetIndex& k) { return Json(k.members()); }

inline Json to_json(const MeanValueEstimate& m)
{
    return Json{{"value", m.value},
                {"method", std::string(to_string(m.method))},
                {"error_bound", m.error_bound},
                {"sample_count", m.sample_count}};
}

inline Json to_json(const Verdict& v)
{
    return Json{{"left", v.left}, {"right", v.right}, {"slack", v.slack}, {"tolerance", v.tolerance}, {"pass", v.pass}};
}

inline Json to_json(const QuadratureConfig& c)
{
    const char* method = c.method == MethodChoice::automatic ? "auto" : c.method == MethodChoice::exact ? "exact" : "mc";
    return Json{{"method", method}, {"mc_samples", c.mc_samples}, {"z", c.z}, {"seed", c.seed}, {"workers", c.workers}};
}

inline Json to_json(const HermiteHadamardBounds& h)
{
    return Json{{"left", h.left},
                {"mid", to_json(h.mid)},
                {"right", h.right},
                {"left_verdict", to_json(h.left_verdict)},
                {"right_verdict", to_json(h.right_verdict)}};
}

inline Json to_json(const TheoremComparison& t)
{
    return Json{{"K", to_json(t.k_set)},
                {"L", to_json(t.l_set)},
                {"mean_K", to_json(t.mean_k)},
                {"mean_L", to_json(t.mean_l)},
                {"verdict", to_json(t.verdict)}};
}

inline Json to_json(const ChainReport& c)
{
    Json entries = Json::array();
    for (const auto& e : c.entries) entries.push_back(Json{{"K", to_json(e.k_set)}, {"estimate", to_json(e.estimate)}});
    Json comparisons = Json::array();
    for (const auto& cmp : c.comparisons)
        comparisons.push_back(Json{{"left", cmp.left}, {"right", cmp.right}, {"verdict", to_json(cmp.verdict)}});
    return Json{{"function_id", c.function_id},
                {"simplex_digest", c.simplex_digest},
                {"dimension", c.dimension},
                {"entries", entries},
                {"comparisons", comparisons},
                {"seed", c.seed},
                {"method_config", to_json(c.method_config)}};
}

inline Json to_json(const SubsetAverage& a)
{
    Json members = Json::array();
    for (const auto& m : a.members) members.push_back(Json{{"K", to_json(m.k_set)}, {"estimate", to_json(m.estimate)}});
    return Json{{"k", a.k}, {"average", to_json(a.average)}, {"members", members}};
}

inline Json to_json(const AverageComparison& a)
{
    return Json{{"lower", to_json(a.lower)}, {"upper", to_json(a.upper)}, {"verdict", to_json(a.verdict)}};
}

inline Json to_json(const ConvergenceSeries& s)
{
    Json points = Json::array();
    for (const auto& p : s.points)
        points.push_back(Json{{"p", p.p},
                              {"count", p.count},
                              {"average", p.average},
                              {"nondecreasing", p.nondecreasing},
                              {"below_mean", p.below_mean}});
    return Json{{"reference", to_json(s.reference)}, {"series", points}, {"final_gap", s.final_gap}, {"pass", s.pass()}};
}

inline Json to_json(const FunctionReport& r)
{
    Json theorem = Json::array();
    for (const auto& t : r.theorem) theorem.push_back(to_json(t));
    Json avg_k = Json::array();
    for (const auto& a : r.avg_k) avg_k.push_back(to_json(a));
    Json avg_monotone = Json::array();
    for (const auto& a : r.avg_monotone) avg_monotone.push_back(to_json(a));
    return Json{{"function", r.function.id},
                {"kind", std::string(to_string(r.function.kind))},
                {"is_convex", r.function.is_convex},
                {"simplex_digest", r.simplex_digest},
                {"hh_bounds", to_json(r.hh)},
                {"theorem", theorem},
                {"chain", to_json(r.chain)},
                {"avg_k", avg_k},
                {"avg_monotone", avg_monotone},
                {"failures", r.failures()}};
}

/// Minimal CSV writer: fields containing separators or quotes are quoted.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields)
{
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    return line + "\n";
}

} // namespace hhsimplex::report
