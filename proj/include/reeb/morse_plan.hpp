#pragma once

// Assembly of a Morse function plan from a labeled graph: one block per
// vertex (a cap at each extremum, a two-sided handle cobordism elsewhere)
// and one product tube per edge.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reeb/error.hpp"
#include "reeb/graph.hpp"
#include "reeb/handle_calc.hpp"
#include "reeb/isomorphism.hpp"
#include "reeb/label.hpp"
#include "reeb/numeric.hpp"

namespace reeb {

enum class BlockKind { Minimum, Maximum, Internal };

inline const char* to_string(BlockKind k)
{
    switch (k) {
    case BlockKind::Minimum: return "min";
    case BlockKind::Maximum: return "max";
    case BlockKind::Internal: return "internal";
    }
    return "?";
}

/// Local piece of the construction around one vertex. For internal blocks
/// `upper_plan` builds the part running from a sphere up to the upper
/// boundary and `lower_plan` the part running from the lower boundary up to
/// a sphere; both are glued along a removed product tube.
struct VertexBlock {
    std::string vertex;
    BlockKind kind = BlockKind::Internal;
    Rational value;
    std::vector<std::string> down_edges;
    std::vector<std::string> up_edges;
    std::vector<PreimageLabel> lower_labels;
    std::vector<PreimageLabel> upper_labels;
    std::optional<HandlebodyPlan> upper_plan;
    std::optional<HandlebodyPlan> lower_plan;
    Rational level_low;
    Rational level_high;
    std::vector<int> indices;
    bool connected_singular_level = true;
};

struct EdgeTube {
    std::string edge;
    PreimageLabel label;
    Rational low;
    Rational high;
    std::string lower_vertex;
    std::string upper_vertex;
    std::size_t lower_slot = 0;  // position in the lower block's up_edges
    std::size_t upper_slot = 0;  // position in the upper block's down_edges
};

/// Regular levels strictly between two consecutive critical values.
struct Slice {
    Rational low;
    Rational high;
    std::vector<std::string> edges;
    std::vector<PreimageLabel> labels;
};

enum class Orientability { Yes, No, Unknown };

inline const char* to_string(Orientability o)
{
    switch (o) {
    case Orientability::Yes: return "yes";
    case Orientability::No: return "no";
    case Orientability::Unknown: return "unknown";
    }
    return "?";
}

struct MorsePlan {
    int dimension = 2;
    std::vector<VertexBlock> blocks;
    std::vector<EdgeTube> tubes;
    std::vector<Rational> critical_values;
    std::vector<std::int64_t> morse_counts;
    std::vector<Slice> slices;
    Orientability orientable = Orientability::Unknown;

    const VertexBlock& block(const std::string& vertex) const
    {
        for (const auto& b : blocks)
            if (b.vertex == vertex)
                return b;
        throw PreconditionError("no block for vertex '" + vertex + "'");
    }
};

namespace detail {

inline Rational neighbor_gap(const LabeledGraph& g, const GraphIndex& idx, std::size_t v)
{
    std::optional<Rational> gap;
    const Rational& h = height_of(g, v);
    for (auto e : idx.incident(v)) {
        Rational d = abs(height_of(g, idx.other_end(e, v)) - h);
        if (d > 0 && (!gap || d < *gap))
            gap = d;
    }
    return gap.value_or(Rational(1));
}

}  // namespace detail

/// Cap block: the squared-norm height function on a disk, with a single
/// critical point of index 0 (minimum) or m (maximum).
inline VertexBlock build_extremum_block(const LabeledGraph& g, const std::string& vertex)
{
    GraphIndex idx(g);
    auto v = idx.find(vertex);
    if (!v)
        throw PreconditionError("unknown vertex '" + vertex + "'");
    auto kind = extremum_kind(g, idx, *v);
    if (kind == ExtremumKind::None)
        throw HypothesisError("vertex '" + vertex + "' is not a local extremum");
    if (idx.degree(*v) != 1)
        throw HypothesisError("local extremum '" + vertex + "' has degree " + std::to_string(idx.degree(*v)) +
                              ", expected 1");
    const auto& edge = g.edges[idx.incident(*v).front()];
    if (!edge.label.is_standard_sphere())
        throw HypothesisError("edge '" + edge.id + "' at extremum '" + vertex + "' is labeled " +
                              edge.label.describe() + ", expected the sphere");

    VertexBlock b;
    b.vertex = vertex;
    b.value = *g.vertices[*v].height;
    const Rational half = detail::neighbor_gap(g, idx, *v) / 3;
    b.level_low = b.value - half;
    b.level_high = b.value + half;
    if (kind == ExtremumKind::Minimum) {
        b.kind = BlockKind::Minimum;
        b.up_edges = {edge.id};
        b.upper_labels = {edge.label};
        b.indices = {0};
    } else {
        b.kind = BlockKind::Maximum;
        b.down_edges = {edge.id};
        b.lower_labels = {edge.label};
        b.indices = {g.dimension};
    }
    return b;
}

/// Internal block with a single singular value: handles of the upper plan
/// keep their index, handles of the lower plan are read upside down
/// (k -> m - k).
inline VertexBlock build_internal_block(const std::string& vertex, const Rational& value,
                                        const std::vector<PreimageLabel>& down_labels,
                                        const std::vector<PreimageLabel>& up_labels, int m,
                                        const Rational& half_width = Rational(1, 3))
{
    if (down_labels.empty() || up_labels.empty())
        throw HypothesisError("vertex '" + vertex + "' needs edges both below and above");
    VertexBlock b;
    b.vertex = vertex;
    b.kind = BlockKind::Internal;
    b.value = value;
    b.level_low = value - half_width;
    b.level_high = value + half_width;
    b.lower_labels = down_labels;
    b.upper_labels = up_labels;
    b.upper_plan = attach_plan_for_boundary(m, up_labels);
    b.lower_plan = attach_plan_for_boundary(m, down_labels);
    for (const auto& h : b.upper_plan->handles)
        b.indices.push_back(h.index);
    for (const auto& h : b.lower_plan->handles)
        b.indices.push_back(m - h.index);
    return b;
}

/// Block/tube adjacency as a labeled graph: one vertex per block at its
/// singular value, one edge per tube.
inline LabeledGraph reeb_of_plan(const MorsePlan& plan)
{
    LabeledGraph g;
    g.dimension = plan.dimension;
    for (const auto& b : plan.blocks)
        g.vertices.push_back({b.vertex, b.value});
    for (const auto& t : plan.tubes)
        g.edges.push_back({t.edge, {t.lower_vertex, t.upper_vertex}, t.label});
    return g;
}

inline HeightGraph to_height_graph(const LabeledGraph& g, bool with_labels)
{
    GraphIndex idx(g);
    HeightGraph out;
    for (std::size_t v = 0; v < idx.vertex_count(); ++v)
        out.heights.push_back(detail::height_of(g, v));
    for (std::size_t e = 0; e < idx.edge_count(); ++e) {
        out.edges.push_back(idx.ends(e));
        if (with_labels)
            out.edge_tags.push_back(g.edges[e].label.describe());
    }
    return out;
}

/// Height- and label-respecting isomorphism; maps vertex ids of `a` to ids of `b`.
inline std::optional<std::map<std::string, std::string>> graphs_isomorphic(const LabeledGraph& a,
                                                                           const LabeledGraph& b)
{
    auto image = height_isomorphism(to_height_graph(a, true), to_height_graph(b, true));
    if (!image)
        return std::nullopt;
    std::map<std::string, std::string> out;
    for (std::size_t v = 0; v < image->size(); ++v)
        out[a.vertices[v].id] = b.vertices[(*image)[v]].id;
    return out;
}

struct EulerCheck {
    Integer value = 0;
    bool odd_dimension_checked = false;
    bool passed = true;
};

/// Alternating sum of the Morse counts; closed odd-dimensional manifolds
/// must give zero.
inline EulerCheck euler_char_of_plan(const MorsePlan& plan)
{
    EulerCheck out;
    for (std::size_t k = 0; k < plan.morse_counts.size(); ++k)
        out.value += (k % 2 == 0 ? 1 : -1) * Integer(plan.morse_counts[k]);
    if (plan.dimension % 2 == 1) {
        out.odd_dimension_checked = true;
        out.passed = out.value == 0;
    }
    return out;
}

using AssemblyResult = std::variant<MorsePlan, HypothesisReport>;

/// Builds the full plan, or returns the hypothesis report when the graph
/// cannot be realized.
inline AssemblyResult assemble(const LabeledGraph& g)
{
    auto report = validate_hypotheses(g);
    if (!report.feasible())
        return report;
    GraphIndex idx(g);
    const int m = g.dimension;

    MorsePlan plan;
    plan.dimension = m;
    for (std::size_t v = 0; v < idx.vertex_count(); ++v) {
        const auto& id = g.vertices[v].id;
        if (extremum_kind(g, idx, v) != ExtremumKind::None) {
            plan.blocks.push_back(build_extremum_block(g, id));
            continue;
        }
        std::vector<PreimageLabel> down, up;
        std::vector<std::string> down_ids, up_ids;
        for (auto e : idx.incident(v)) {
            const bool below = detail::height_of(g, idx.other_end(e, v)) < *g.vertices[v].height;
            (below ? down : up).push_back(g.edges[e].label);
            (below ? down_ids : up_ids).push_back(g.edges[e].id);
        }
        auto block = build_internal_block(id, *g.vertices[v].height, down, up, m,
                                          detail::neighbor_gap(g, idx, v) / 3);
        block.down_edges = std::move(down_ids);
        block.up_edges = std::move(up_ids);
        plan.blocks.push_back(std::move(block));
    }

    for (std::size_t e = 0; e < idx.edge_count(); ++e) {
        auto [a, b] = idx.ends(e);
        if (*g.vertices[a].height > *g.vertices[b].height)
            std::swap(a, b);
        const auto& lower = plan.blocks[a];
        const auto& upper = plan.blocks[b];
        EdgeTube t;
        t.edge = g.edges[e].id;
        t.label = g.edges[e].label;
        t.lower_vertex = lower.vertex;
        t.upper_vertex = upper.vertex;
        t.lower_slot = static_cast<std::size_t>(
            std::find(lower.up_edges.begin(), lower.up_edges.end(), t.edge) - lower.up_edges.begin());
        t.upper_slot = static_cast<std::size_t>(
            std::find(upper.down_edges.begin(), upper.down_edges.end(), t.edge) - upper.down_edges.begin());
        t.low = lower.level_high;
        t.high = upper.level_low;
        if (t.lower_slot >= lower.upper_labels.size() || t.upper_slot >= upper.lower_labels.size() ||
            !(lower.upper_labels[t.lower_slot] == t.label) || !(upper.lower_labels[t.upper_slot] == t.label))
            throw InvariantError("tube-slots", "tube '" + t.edge + "' does not match its block slots");
        if (!(t.low < t.high))
            throw InvariantError("tube-interval", "tube '" + t.edge + "' has an empty height interval");
        plan.tubes.push_back(std::move(t));
    }

    for (const auto& b : plan.blocks)
        plan.critical_values.push_back(b.value);
    std::sort(plan.critical_values.begin(), plan.critical_values.end());
    plan.critical_values.erase(std::unique(plan.critical_values.begin(), plan.critical_values.end()),
                               plan.critical_values.end());

    plan.morse_counts.assign(static_cast<std::size_t>(m) + 1, 0);
    for (const auto& b : plan.blocks)
        for (int k : b.indices)
            ++plan.morse_counts[static_cast<std::size_t>(k)];

    for (std::size_t i = 0; i + 1 < plan.critical_values.size(); ++i) {
        Slice s{plan.critical_values[i], plan.critical_values[i + 1], {}, {}};
        for (const auto& t : plan.tubes)
            if (plan.block(t.lower_vertex).value <= s.low && plan.block(t.upper_vertex).value >= s.high) {
                s.edges.push_back(t.edge);
                s.labels.push_back(t.label);
            }
        plan.slices.push_back(std::move(s));
    }

    bool all_orientable_labels = std::all_of(g.edges.begin(), g.edges.end(),
                                             [](const GraphEdge& e) { return e.label.orientable(); });
    if (m == 4 || (m == 3 && all_orientable_labels))
        plan.orientable = Orientability::Yes;

    if (!graphs_isomorphic(reeb_of_plan(plan), g))
        throw InvariantError("plan-reeb-isomorphism", "block/tube adjacency differs from the input graph");
    return plan;
}

}  // namespace reeb
