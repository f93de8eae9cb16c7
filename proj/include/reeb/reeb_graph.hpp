#pragma once

// Reeb graph of a PL height function on a triangulated surface, computed by
// a sweep over the distinct vertex heights.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "reeb/error.hpp"
#include "reeb/graph.hpp"
#include "reeb/isomorphism.hpp"
#include "reeb/numeric.hpp"
#include "reeb/pl_surface.hpp"

namespace reeb {

struct ReebNode {
    std::size_t id = 0;
    Rational height;
    std::vector<std::int64_t> mesh_vertices;
    bool plateau = false;  // the level component contains a horizontal edge
};

struct ReebArc {
    std::size_t lower = 0;
    std::size_t upper = 0;
    /// Euler characteristic of the level component on each open interval
    /// between consecutive mesh heights crossed by the arc, bottom to top.
    std::vector<std::int64_t> level_euler;
};

struct ReebGraph {
    std::vector<ReebNode> nodes;
    std::vector<ReebArc> arcs;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

/// Local ids for keys that show up in one level or interval.
class LocalIds {
public:
    std::size_t get(std::size_t key)
    {
        auto [it, inserted] = ids_.emplace(key, keys_.size());
        if (inserted)
            keys_.push_back(key);
        return it->second;
    }
    std::size_t at(std::size_t key) const { return ids_.at(key); }
    std::size_t size() const { return keys_.size(); }
    const std::vector<std::size_t>& keys() const { return keys_; }

private:
    std::unordered_map<std::size_t, std::size_t> ids_;
    std::vector<std::size_t> keys_;
};

/// Number of lower and upper runs in the link of v; 0 for a plateau vertex.
inline bool regular_vertex(const MeshTopology& topo, std::size_t v)
{
    auto cycle = topo.link_cycle(v);
    if (!cycle)
        return false;
    std::vector<int> side;
    for (auto w : *cycle) {
        auto d = topo.height(w) - topo.height(v);
        if (d == 0)
            return false;
        side.push_back(d < 0 ? -1 : 1);
    }
    std::size_t changes = 0;
    for (std::size_t i = 0; i < side.size(); ++i)
        if (side[i] != side[(i + 1) % side.size()])
            ++changes;
    return changes == 2;
}

}  // namespace detail

/// Reeb graph of the height function. Nodes are the level components that
/// carry a singular vertex, a horizontal edge or a branching; regular level
/// components are contracted into the arcs.
inline ReebGraph compute_reeb(const TriangulatedSurface& mesh)
{
    MeshTopology topo(mesh);
    auto defects = topo.manifold_defects();
    if (!defects.empty())
        throw StructuralError("cannot sweep a non-surface mesh: " + defects.front());

    std::vector<std::int64_t> heights;
    for (std::size_t v = 0; v < topo.vertex_count(); ++v)
        heights.push_back(topo.height(v));
    std::sort(heights.begin(), heights.end());
    heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
    const std::size_t levels = heights.size();
    auto level_of = [&](std::size_t v) {
        return static_cast<std::size_t>(std::lower_bound(heights.begin(), heights.end(), topo.height(v)) -
                                        heights.begin());
    };
    std::vector<std::size_t> vlevel(topo.vertex_count());
    for (std::size_t v = 0; v < topo.vertex_count(); ++v)
        vlevel[v] = level_of(v);

    const std::size_t nv = topo.vertex_count();
    std::vector<std::size_t> elo(topo.edge_count()), ehi(topo.edge_count());
    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        auto [a, b] = topo.edge(e);
        elo[e] = std::min(vlevel[a], vlevel[b]);
        ehi[e] = std::max(vlevel[a], vlevel[b]);
    }
    std::vector<std::vector<std::size_t>> tris_at(levels);
    std::vector<std::size_t> tlo(topo.triangle_count()), thi(topo.triangle_count());
    for (std::size_t t = 0; t < topo.triangle_count(); ++t) {
        const auto& tri = topo.triangle(t);
        tlo[t] = std::min({vlevel[tri[0]], vlevel[tri[1]], vlevel[tri[2]]});
        thi[t] = std::max({vlevel[tri[0]], vlevel[tri[1]], vlevel[tri[2]]});
        if (tlo[t] == thi[t])
            throw StructuralError("horizontal triangle (" + std::to_string(topo.id(tri[0])) + "," +
                                  std::to_string(topo.id(tri[1])) + "," + std::to_string(topo.id(tri[2])) + ")");
        for (auto j = tlo[t]; j <= thi[t]; ++j)
            tris_at[j].push_back(t);
    }

    // Level components. Element keys: vertex v -> v, edge e -> nv + e.
    struct RawNode {
        std::size_t level;
        std::vector<std::size_t> vertices;
        bool plateau = false;
        bool singular = false;
        std::vector<std::size_t> down, up;
    };
    std::vector<RawNode> raw;
    std::vector<std::unordered_map<std::size_t, std::size_t>> element_node(levels);
    for (std::size_t j = 0; j < levels; ++j) {
        detail::LocalIds ids;
        std::vector<std::array<std::size_t, 2>> links;
        for (auto t : tris_at[j]) {
            std::vector<std::size_t> elems;
            for (auto v : topo.triangle(t))
                if (vlevel[v] == j)
                    elems.push_back(ids.get(v));
            for (auto e : topo.triangle_edges(t))
                if (elo[e] < j && j < ehi[e])
                    elems.push_back(ids.get(nv + e));
            for (std::size_t k = 1; k < elems.size(); ++k)
                links.push_back({elems[0], elems[k]});
        }
        detail::UnionFind uf(ids.size());
        for (auto [a, b] : links)
            uf.unite(a, b);
        std::unordered_map<std::size_t, std::size_t> root_node;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            auto r = uf.find(i);
            auto [it, inserted] = root_node.emplace(r, raw.size());
            if (inserted)
                raw.push_back({j, {}, false, false, {}, {}});
            auto key = ids.keys()[i];
            element_node[j][key] = it->second;
            if (key < nv) {
                auto& node = raw[it->second];
                node.vertices.push_back(key);
                if (!detail::regular_vertex(topo, key))
                    node.singular = true;
            }
        }
    }
    for (std::size_t e = 0; e < topo.edge_count(); ++e)
        if (elo[e] == ehi[e])
            raw[element_node[elo[e]].at(topo.edge(e)[0])].plateau = true;

    // Interval components between consecutive levels.
    struct RawArc {
        std::size_t lower, upper;
        std::int64_t euler;
    };
    std::vector<RawArc> raw_arcs;
    auto anchor = [&](std::size_t t, std::size_t j) {
        for (auto v : topo.triangle(t))
            if (vlevel[v] == j)
                return element_node[j].at(v);
        for (auto e : topo.triangle_edges(t))
            if (elo[e] < j && j < ehi[e])
                return element_node[j].at(nv + e);
        throw InvariantError("reeb-sweep", "triangle misses its own level");
    };
    for (std::size_t j = 0; j + 1 < levels; ++j) {
        std::vector<std::size_t> spanning;
        for (auto t : tris_at[j])
            if (thi[t] >= j + 1)
                spanning.push_back(t);
        detail::LocalIds ids;
        for (auto t : spanning)
            ids.get(t);
        detail::UnionFind uf(ids.size());
        std::unordered_map<std::size_t, std::size_t> edge_owner;
        std::vector<std::int64_t> incidences(ids.size(), 0);
        for (auto t : spanning)
            for (auto e : topo.triangle_edges(t))
                if (elo[e] <= j && ehi[e] >= j + 1) {
                    ++incidences[ids.at(t)];
                    auto [it, inserted] = edge_owner.emplace(e, ids.at(t));
                    if (!inserted)
                        uf.unite(it->second, ids.at(t));
                }
        std::map<std::size_t, std::size_t> root_arc;
        std::vector<std::int64_t> inc_sum, tri_sum;
        for (auto t : spanning) {
            auto r = uf.find(ids.at(t));
            auto [it, inserted] = root_arc.emplace(r, raw_arcs.size());
            if (inserted) {
                raw_arcs.push_back({anchor(t, j), anchor(t, j + 1), 0});
                inc_sum.push_back(0);
                tri_sum.push_back(0);
            }
            auto local = it->second - (raw_arcs.size() - inc_sum.size());
            inc_sum[local] += incidences[ids.at(t)];
            tri_sum[local] += 1;
        }
        const std::size_t first = raw_arcs.size() - inc_sum.size();
        for (std::size_t k = 0; k < inc_sum.size(); ++k) {
            raw_arcs[first + k].euler = inc_sum[k] / 2 - tri_sum[k];
            raw[raw_arcs[first + k].lower].up.push_back(first + k);
            raw[raw_arcs[first + k].upper].down.push_back(first + k);
        }
    }

    auto kept = [&](const RawNode& n) { return n.singular || n.plateau || n.down.size() != 1 || n.up.size() != 1; };
    ReebGraph out;
    std::vector<std::optional<std::size_t>> node_id(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!kept(raw[i]))
            continue;
        node_id[i] = out.nodes.size();
        ReebNode node;
        node.id = out.nodes.size();
        node.height = Rational(heights[raw[i].level]);
        for (auto v : raw[i].vertices)
            node.mesh_vertices.push_back(topo.id(v));
        std::sort(node.mesh_vertices.begin(), node.mesh_vertices.end());
        node.plateau = raw[i].plateau;
        out.nodes.push_back(std::move(node));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!node_id[i])
            continue;
        for (auto a : raw[i].up) {
            ReebArc arc;
            arc.lower = *node_id[i];
            std::size_t cur = a;
            while (true) {
                arc.level_euler.push_back(raw_arcs[cur].euler);
                auto up = raw_arcs[cur].upper;
                if (node_id[up]) {
                    arc.upper = *node_id[up];
                    break;
                }
                cur = raw[up].up.front();
            }
            out.arcs.push_back(std::move(arc));
        }
    }
    return out;
}

/// Replaces mesh heights by graph values; every node height must be mapped.
inline ReebGraph remap_heights(ReebGraph g, const std::map<std::int64_t, Rational>& levels)
{
    for (auto& n : g.nodes) {
        if (!is_integral(n.height))
            throw PreconditionError("node height " + to_string(n.height) + " is not a mesh height");
        auto it = levels.find(static_cast<std::int64_t>(numerator(n.height)));
        if (it == levels.end())
            throw InvariantError("reeb-levels", "node " + std::to_string(n.id) + " at mesh height " +
                                                    to_string(n.height) + " is not a singular level");
        n.height = it->second;
    }
    return g;
}

/// Contracts every node with one arc below and one above.
inline ReebGraph reduce(const ReebGraph& g)
{
    std::vector<std::vector<std::size_t>> down(g.nodes.size()), up(g.nodes.size());
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
        up[g.arcs[a].lower].push_back(a);
        down[g.arcs[a].upper].push_back(a);
    }
    auto kept = [&](std::size_t n) { return down[n].size() != 1 || up[n].size() != 1; };
    ReebGraph out;
    std::vector<std::optional<std::size_t>> id(g.nodes.size());
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        if (kept(n)) {
            id[n] = out.nodes.size();
            auto node = g.nodes[n];
            node.id = out.nodes.size();
            out.nodes.push_back(std::move(node));
        }
    for (std::size_t n = 0; n < g.nodes.size(); ++n) {
        if (!id[n])
            continue;
        for (auto a : up[n]) {
            ReebArc arc{*id[n], 0, {}};
            std::size_t cur = a;
            while (true) {
                const auto& ga = g.arcs[cur];
                arc.level_euler.insert(arc.level_euler.end(), ga.level_euler.begin(), ga.level_euler.end());
                if (id[ga.upper]) {
                    arc.upper = *id[ga.upper];
                    break;
                }
                cur = up[ga.upper].front();
            }
            out.arcs.push_back(std::move(arc));
        }
    }
    return out;
}

inline HeightGraph to_height_graph(const ReebGraph& g)
{
    HeightGraph h;
    for (const auto& n : g.nodes)
        h.heights.push_back(n.height);
    for (const auto& a : g.arcs)
        h.edges.push_back({a.lower, a.upper});
    return h;
}

/// Height-preserving isomorphism from Reeb nodes to graph vertex ids.
inline std::optional<std::vector<std::string>> reeb_isomorphic(const ReebGraph& r, const LabeledGraph& g)
{
    if (!g.has_heights())
        throw PreconditionError("graph has no heights");
    GraphIndex idx(g);
    auto map = height_isomorphism(to_height_graph(r), to_height_graph(g, false));
    if (!map)
        return std::nullopt;
    std::vector<std::string> out;
    for (auto v : *map)
        out.push_back(g.vertices[v].id);
    return out;
}

/// Every regular level component is a circle.
inline std::vector<std::string> level_census_violations(const ReebGraph& r)
{
    std::vector<std::string> out;
    for (std::size_t a = 0; a < r.arcs.size(); ++a)
        for (auto chi : r.arcs[a].level_euler)
            if (chi != 0) {
                out.push_back("arc " + std::to_string(a) + " crosses a level component with Euler characteristic " +
                              std::to_string(chi));
                break;
            }
    return out;
}

/// The Reeb graph written as a labeled graph with circle labels.
inline LabeledGraph to_labeled_graph(const ReebGraph& r)
{
    LabeledGraph g;
    g.dimension = 2;
    for (const auto& n : r.nodes)
        g.vertices.push_back({"n" + std::to_string(n.id), n.height});
    for (std::size_t a = 0; a < r.arcs.size(); ++a)
        g.edges.push_back({"a" + std::to_string(a),
                           {"n" + std::to_string(r.arcs[a].lower), "n" + std::to_string(r.arcs[a].upper)},
                           PreimageLabel::sphere()});
    return g;
}

}  // namespace reeb
