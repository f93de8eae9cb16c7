#pragma once

// Labeled graphs, the realization hypotheses, and good-function synthesis.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "reeb/error.hpp"
#include "reeb/label.hpp"
#include "reeb/numeric.hpp"

namespace reeb {

struct GraphVertex {
    std::string id;
    std::optional<Rational> height;

    friend bool operator==(const GraphVertex&, const GraphVertex&) = default;
};

struct GraphEdge {
    std::string id;
    std::array<std::string, 2> ends;
    PreimageLabel label;

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// A finite multigraph with vertex heights and edge preimage labels, together
/// with the dimension m of the manifold to be built.
struct LabeledGraph {
    int dimension = 2;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;

    bool has_heights() const
    {
        return std::all_of(vertices.begin(), vertices.end(),
                           [](const GraphVertex& v) { return v.height.has_value(); });
    }

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

/// Index-based view of a LabeledGraph. Construction validates ids.
class GraphIndex {
public:
    explicit GraphIndex(const LabeledGraph& g)
    {
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            if (!by_id_.emplace(g.vertices[i].id, i).second)
                throw StructuralError("duplicate vertex id '" + g.vertices[i].id + "'");
        std::set<std::string> edge_ids;
        ends_.reserve(g.edges.size());
        incident_.resize(g.vertices.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto& edge = g.edges[e];
            if (!edge_ids.insert(edge.id).second)
                throw StructuralError("duplicate edge id '" + edge.id + "'");
            std::array<std::size_t, 2> ends{};
            for (int k = 0; k < 2; ++k) {
                auto it = by_id_.find(edge.ends[k]);
                if (it == by_id_.end())
                    throw StructuralError("edge '" + edge.id + "' references unknown vertex '" +
                                          edge.ends[k] + "'");
                ends[k] = it->second;
            }
            ends_.push_back(ends);
            incident_[ends[0]].push_back(e);
            if (ends[1] != ends[0])
                incident_[ends[1]].push_back(e);
        }
    }

    std::size_t vertex_count() const noexcept { return incident_.size(); }
    std::size_t edge_count() const noexcept { return ends_.size(); }

    std::optional<std::size_t> find(const std::string& id) const
    {
        auto it = by_id_.find(id);
        if (it == by_id_.end())
            return std::nullopt;
        return it->second;
    }

    const std::array<std::size_t, 2>& ends(std::size_t e) const { return ends_[e]; }
    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }

    bool is_loop(std::size_t e) const { return ends_[e][0] == ends_[e][1]; }

    std::size_t other_end(std::size_t e, std::size_t v) const
    {
        return ends_[e][0] == v ? ends_[e][1] : ends_[e][0];
    }

    /// Degree with multiplicity; a loop counts twice.
    std::size_t degree(std::size_t v) const
    {
        std::size_t d = 0;
        for (auto e : incident_[v])
            d += is_loop(e) ? 2 : 1;
        return d;
    }

    std::vector<std::size_t> distinct_neighbors(std::size_t v) const
    {
        std::set<std::size_t> out;
        for (auto e : incident_[v])
            out.insert(other_end(e, v));
        return {out.begin(), out.end()};
    }

    bool connected() const
    {
        if (vertex_count() == 0)
            return true;
        std::vector<char> seen(vertex_count(), 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto e : incident_[v]) {
                auto w = other_end(e, v);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == vertex_count();
    }

private:
    std::unordered_map<std::string, std::size_t> by_id_;
    std::vector<std::array<std::size_t, 2>> ends_;
    std::vector<std::vector<std::size_t>> incident_;
};

struct Violation {
    std::string rule;
    std::vector<std::string> vertices;
    std::vector<std::string> edges;
    std::string message;

    bool structural() const { return rule.rfind("structure", 0) == 0; }
};

struct HypothesisReport {
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
    bool structural() const
    {
        return std::any_of(violations.begin(), violations.end(),
                           [](const Violation& v) { return v.structural(); });
    }
};

namespace detail {

inline const Rational& height_of(const LabeledGraph& g, std::size_t v)
{
    if (!g.vertices[v].height)
        throw StructuralError("vertex '" + g.vertices[v].id + "' has no height");
    return *g.vertices[v].height;
}

}  // namespace detail

/// Reports loops and edges whose endpoints share a height.
/// Throws StructuralError on dangling ids or missing heights.
inline HypothesisReport validate_good_function(const LabeledGraph& g)
{
    GraphIndex idx(g);
    HypothesisReport report;
    for (std::size_t e = 0; e < idx.edge_count(); ++e) {
        const auto& edge = g.edges[e];
        if (idx.is_loop(e)) {
            report.violations.push_back({"loop", {edge.ends[0]}, {edge.id},
                                         "loop edge at '" + edge.ends[0] + "' admits no good function"});
            continue;
        }
        const auto [a, b] = idx.ends(e);
        if (detail::height_of(g, a) == detail::height_of(g, b))
            report.violations.push_back({"good-function", {edge.ends[0], edge.ends[1]}, {edge.id},
                                         "endpoints of edge '" + edge.id + "' share height " +
                                             to_string(detail::height_of(g, a))});
    }
    return report;
}

enum class ExtremumKind { None, Minimum, Maximum };

inline ExtremumKind extremum_kind(const LabeledGraph& g, const GraphIndex& idx, std::size_t v)
{
    const Rational& h = detail::height_of(g, v);
    bool all_above = true;
    bool all_below = true;
    if (idx.incident(v).empty())
        return ExtremumKind::None;
    for (auto e : idx.incident(v)) {
        const Rational& other = detail::height_of(g, idx.other_end(e, v));
        all_above = all_above && other > h;
        all_below = all_below && other < h;
    }
    if (all_above)
        return ExtremumKind::Minimum;
    if (all_below)
        return ExtremumKind::Maximum;
    return ExtremumKind::None;
}

/// Ids of vertices whose neighbors all lie strictly above or strictly below.
inline std::vector<std::string> local_extrema(const LabeledGraph& g)
{
    GraphIndex idx(g);
    std::vector<std::string> out;
    for (std::size_t v = 0; v < idx.vertex_count(); ++v)
        if (extremum_kind(g, idx, v) != ExtremumKind::None)
            out.push_back(g.vertices[v].id);
    return out;
}

/// Checks every hypothesis needed for the realization construction.
/// Structural problems are reported under "structure.*" rule ids and stop
/// the remaining checks.
inline HypothesisReport validate_hypotheses(const LabeledGraph& g)
{
    HypothesisReport report;
    auto structural = [&](std::string rule, std::string msg) {
        report.violations.push_back({"structure." + std::move(rule), {}, {}, std::move(msg)});
        return report;
    };
    if (g.dimension < 2)
        return structural("dimension", "dimension must be > 1, got " + std::to_string(g.dimension));
    std::optional<GraphIndex> idx;
    try {
        idx.emplace(g);
    } catch (const StructuralError& err) {
        return structural("ids", err.what());
    }
    for (const auto& v : g.vertices)
        if (!v.height)
            return structural("height", "vertex '" + v.id + "' has no height");

    if (idx->edge_count() == 0) {
        report.violations.push_back({"nonempty", {}, {}, "graph has no edges"});
        return report;
    }
    if (!idx->connected())
        report.violations.push_back({"connected", {}, {}, "graph is not connected"});

    auto good = validate_good_function(g);
    report.violations.insert(report.violations.end(), good.violations.begin(), good.violations.end());

    for (std::size_t v = 0; v < idx->vertex_count(); ++v) {
        auto kind = extremum_kind(g, *idx, v);
        if (kind == ExtremumKind::None)
            continue;
        const auto& id = g.vertices[v].id;
        const char* name = kind == ExtremumKind::Minimum ? "minimum" : "maximum";
        if (idx->degree(v) != 1)
            report.violations.push_back({"extremum-degree", {id}, {},
                                         std::string("extremum vertex degree ") +
                                             std::to_string(idx->degree(v)) + ": local " + name +
                                             " '" + id + "' must have degree 1"});
        for (auto e : idx->incident(v))
            if (!g.edges[e].label.is_standard_sphere())
                report.violations.push_back({"extremum-label", {id}, {g.edges[e].id},
                                             "edge '" + g.edges[e].id + "' at local " + name + " '" +
                                                 id + "' carries " + g.edges[e].label.describe() +
                                                 " instead of the sphere"});
    }
    for (const auto& edge : g.edges)
        if (auto why = edge.label.illegal_reason(g.dimension))
            report.violations.push_back({"label-legal", {}, {edge.id},
                                         "edge '" + edge.id + "': " + edge.label.describe() + ": " + *why});
    return report;
}

struct Infeasible {
    std::string witness;
};

/// Either integer heights (in vertex order) or a reason none exist.
using SynthesisResult = std::variant<std::vector<std::int64_t>, Infeasible>;

namespace detail {

struct PlacedSetHash {
    std::size_t operator()(const std::vector<bool>& v) const { return std::hash<std::vector<bool>>{}(v); }
};

}  // namespace detail

/// Finds integer heights, injective on every edge, whose local extrema all sit
/// at degree-1 vertices. Searches vertex orderings bottom-up; the feasibility
/// of a partial ordering depends only on the set already placed, so failed
/// sets are memoized. Deterministic in the vertex order of the input.
inline SynthesisResult synthesize_good_function(const LabeledGraph& g)
{
    GraphIndex idx(g);
    const std::size_t n = idx.vertex_count();
    if (idx.edge_count() == 0)
        throw PreconditionError("graph has no edges");
    if (!idx.connected())
        throw PreconditionError("graph is not connected");
    for (std::size_t e = 0; e < idx.edge_count(); ++e)
        if (idx.is_loop(e))
            return Infeasible{"loop edge '" + g.edges[e].id + "' admits no good function"};

    std::vector<std::vector<std::size_t>> nbrs(n);
    std::vector<std::size_t> degree(n);
    std::size_t leaves = 0;
    for (std::size_t v = 0; v < n; ++v) {
        nbrs[v] = idx.distinct_neighbors(v);
        degree[v] = idx.degree(v);
        if (degree[v] == 1)
            ++leaves;
        else if (nbrs[v].size() < 2)
            return Infeasible{"vertex '" + g.vertices[v].id + "' has degree " + std::to_string(degree[v]) +
                              " but a single neighbor, so it is always a local extremum"};
    }
    if (leaves < 2)
        return Infeasible{"the lowest and highest vertices are always local extrema, but the graph has " +
                          std::to_string(leaves) + " degree-1 vertices"};

    std::vector<bool> placed(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::unordered_set<std::vector<bool>, detail::PlacedSetHash> dead;

    auto has_placed_nbr = [&](std::size_t v) {
        return std::any_of(nbrs[v].begin(), nbrs[v].end(), [&](std::size_t w) { return placed[w]; });
    };
    auto has_open_nbr = [&](std::size_t v) {
        return std::any_of(nbrs[v].begin(), nbrs[v].end(), [&](std::size_t w) { return !placed[w]; });
    };

    std::function<bool()> search = [&]() -> bool {
        if (order.size() == n)
            return true;
        if (dead.count(placed))
            return false;
        for (std::size_t v = 0; v < n; ++v) {
            if (placed[v])
                continue;
            if (degree[v] != 1 && !(has_placed_nbr(v) && has_open_nbr(v)))
                continue;
            placed[v] = true;
            // An unplaced neighbor that just lost its last higher candidate is doomed.
            bool doomed = std::any_of(nbrs[v].begin(), nbrs[v].end(), [&](std::size_t w) {
                return !placed[w] && degree[w] != 1 && !has_open_nbr(w);
            });
            if (!doomed) {
                order.push_back(v);
                if (search())
                    return true;
                order.pop_back();
            }
            placed[v] = false;
        }
        dead.insert(placed);
        return false;
    };

    if (!search())
        return Infeasible{"no ordering of the " + std::to_string(n) +
                          " vertices keeps every local extremum at a degree-1 vertex (exhaustive search, " +
                          std::to_string(dead.size()) + " dead states)"};
    std::vector<std::int64_t> heights(n);
    for (std::size_t rank = 0; rank < n; ++rank)
        heights[order[rank]] = static_cast<std::int64_t>(rank);
    return heights;
}

/// Copy of g with the given heights installed.
inline LabeledGraph with_heights(LabeledGraph g, const std::vector<std::int64_t>& heights)
{
    if (heights.size() != g.vertices.size())
        throw PreconditionError("height count does not match vertex count");
    for (std::size_t i = 0; i < heights.size(); ++i)
        g.vertices[i].height = Rational(heights[i]);
    return g;
}

}  // namespace reeb
