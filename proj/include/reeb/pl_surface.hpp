#pragma once

// Triangulated closed surfaces with integer vertex heights, and the explicit
// surface realization of a two-dimensional Morse plan.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reeb/error.hpp"
#include "reeb/morse_plan.hpp"
#include "reeb/numeric.hpp"

namespace reeb {

struct MeshVertex {
    std::int64_t id = 0;
    std::int64_t height = 0;

    friend bool operator==(const MeshVertex&, const MeshVertex&) = default;
};

struct TriangulatedSurface {
    std::vector<MeshVertex> vertices;
    std::vector<std::array<std::int64_t, 3>> triangles;

    friend bool operator==(const TriangulatedSurface&, const TriangulatedSurface&) = default;
};

/// Index-based adjacency of a triangle soup. Construction rejects dangling
/// ids and degenerate triangles; manifoldness is checked separately.
class MeshTopology {
public:
    explicit MeshTopology(const TriangulatedSurface& mesh)
    {
        std::unordered_map<std::int64_t, std::size_t> index;
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
            if (!index.emplace(mesh.vertices[i].id, i).second)
                throw StructuralError("duplicate mesh vertex id " + std::to_string(mesh.vertices[i].id));
            heights_.push_back(mesh.vertices[i].height);
            ids_.push_back(mesh.vertices[i].id);
        }
        vertex_tris_.resize(heights_.size());
        std::map<std::array<std::size_t, 3>, std::size_t> seen;
        for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
            std::array<std::size_t, 3> tri{};
            for (int k = 0; k < 3; ++k) {
                auto it = index.find(mesh.triangles[t][k]);
                if (it == index.end())
                    throw StructuralError("triangle " + std::to_string(t) + " references unknown vertex " +
                                          std::to_string(mesh.triangles[t][k]));
                tri[k] = it->second;
            }
            if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
                throw StructuralError("triangle " + std::to_string(t) + " repeats a vertex");
            auto key = tri;
            std::sort(key.begin(), key.end());
            if (!seen.emplace(key, t).second)
                throw StructuralError("triangle " + std::to_string(t) + " duplicates triangle " +
                                      std::to_string(seen[key]));
            tris_.push_back(tri);
            for (int k = 0; k < 3; ++k) {
                vertex_tris_[tri[k]].push_back(t);
                auto a = tri[k], b = tri[(k + 1) % 3];
                auto ek = edge_key(a, b);
                auto [eit, inserted] = edge_index_.emplace(ek, edges_.size());
                if (inserted) {
                    edges_.push_back({std::min(a, b), std::max(a, b)});
                    edge_tris_.emplace_back();
                }
                edge_tris_[eit->second].push_back(t);
            }
        }
    }

    std::size_t vertex_count() const noexcept { return heights_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t triangle_count() const noexcept { return tris_.size(); }

    std::int64_t height(std::size_t v) const { return heights_[v]; }
    std::int64_t id(std::size_t v) const { return ids_[v]; }
    const std::array<std::size_t, 3>& triangle(std::size_t t) const { return tris_[t]; }
    const std::array<std::size_t, 2>& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<std::size_t>& edge_triangles(std::size_t e) const { return edge_tris_[e]; }
    const std::vector<std::size_t>& vertex_triangles(std::size_t v) const { return vertex_tris_[v]; }

    std::size_t edge_between(std::size_t a, std::size_t b) const { return edge_index_.at(edge_key(a, b)); }

    std::array<std::size_t, 3> triangle_edges(std::size_t t) const
    {
        const auto& tri = tris_[t];
        return {edge_between(tri[0], tri[1]), edge_between(tri[1], tri[2]), edge_between(tri[2], tri[0])};
    }

    /// Human-readable list of manifold defects; empty for a closed connected surface.
    std::vector<std::string> manifold_defects(std::size_t limit = 20) const
    {
        std::vector<std::string> out;
        auto report = [&](std::string s) {
            if (out.size() < limit)
                out.push_back(std::move(s));
        };
        if (tris_.empty())
            report("mesh has no triangles");
        for (std::size_t e = 0; e < edges_.size(); ++e)
            if (edge_tris_[e].size() != 2)
                report("edge (" + std::to_string(ids_[edges_[e][0]]) + "," + std::to_string(ids_[edges_[e][1]]) +
                       ") lies in " + std::to_string(edge_tris_[e].size()) + " triangles");
        for (std::size_t v = 0; v < vertex_count(); ++v) {
            if (vertex_tris_[v].empty()) {
                report("vertex " + std::to_string(ids_[v]) + " is in no triangle");
                continue;
            }
            if (!link_cycle(v))
                report("link of vertex " + std::to_string(ids_[v]) + " is not a single cycle");
        }
        if (out.empty() && !connected())
            report("mesh is not connected");
        return out;
    }

    /// Neighbors of v in cyclic order, or nullopt when the link is not one cycle.
    std::optional<std::vector<std::size_t>> link_cycle(std::size_t v) const
    {
        std::unordered_map<std::size_t, std::vector<std::size_t>> adj;
        for (auto t : vertex_tris_[v]) {
            std::array<std::size_t, 2> opp{};
            int k = 0;
            for (auto w : tris_[t])
                if (w != v)
                    opp[k++] = w;
            adj[opp[0]].push_back(opp[1]);
            adj[opp[1]].push_back(opp[0]);
        }
        for (const auto& [w, nb] : adj)
            if (nb.size() != 2)
                return std::nullopt;
        std::vector<std::size_t> cycle;
        std::size_t start = adj.begin()->first;
        std::size_t prev = start, cur = adj.begin()->second[0];
        cycle.push_back(start);
        while (cur != start) {
            cycle.push_back(cur);
            const auto& nb = adj[cur];
            std::size_t next = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = next;
            if (cycle.size() > adj.size())
                return std::nullopt;
        }
        if (cycle.size() != adj.size())
            return std::nullopt;
        return cycle;
    }

    bool connected() const
    {
        if (tris_.empty())
            return false;
        std::vector<char> seen(vertex_count(), 0);
        std::vector<std::size_t> stack{tris_[0][0]};
        seen[tris_[0][0]] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto t : vertex_tris_[v])
                for (auto w : tris_[t])
                    if (!seen[w]) {
                        seen[w] = 1;
                        ++count;
                        stack.push_back(w);
                    }
        }
        return count == vertex_count();
    }

private:
    static std::uint64_t edge_key(std::size_t a, std::size_t b)
    {
        if (a > b)
            std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
    }

    std::vector<std::int64_t> heights_;
    std::vector<std::int64_t> ids_;
    std::vector<std::array<std::size_t, 3>> tris_;
    std::vector<std::array<std::size_t, 2>> edges_;
    std::vector<std::vector<std::size_t>> edge_tris_;
    std::vector<std::vector<std::size_t>> vertex_tris_;
    std::unordered_map<std::uint64_t, std::size_t> edge_index_;
};

struct SurfaceInvariants {
    std::int64_t euler = 0;
    bool orientable = true;
    int genus = 0;  // orientable genus, or crosscap count when non-orientable
};

/// Euler characteristic, orientability and genus of a closed surface.
/// Throws StructuralError naming the defects of a non-manifold mesh.
inline SurfaceInvariants surface_invariants(const TriangulatedSurface& mesh)
{
    MeshTopology topo(mesh);
    auto defects = topo.manifold_defects();
    if (!defects.empty()) {
        std::string msg = "not a closed surface:";
        for (const auto& d : defects)
            msg += "\n  " + d;
        throw StructuralError(msg);
    }
    SurfaceInvariants out;
    out.euler = static_cast<std::int64_t>(topo.vertex_count()) - static_cast<std::int64_t>(topo.edge_count()) +
                static_cast<std::int64_t>(topo.triangle_count());

    // +1 keeps the listed vertex order, -1 reverses it.
    std::vector<int> sign(topo.triangle_count(), 0);
    auto direction = [&](std::size_t t, std::size_t a, std::size_t b) {
        const auto& tri = topo.triangle(t);
        for (int k = 0; k < 3; ++k)
            if (tri[k] == a && tri[(k + 1) % 3] == b)
                return 1;
        return -1;
    };
    sign[0] = 1;
    std::vector<std::size_t> queue{0};
    for (std::size_t head = 0; head < queue.size() && out.orientable; ++head) {
        auto t = queue[head];
        for (auto e : topo.triangle_edges(t)) {
            auto [a, b] = topo.edge(e);
            for (auto u : topo.edge_triangles(e)) {
                if (u == t)
                    continue;
                int want = -sign[t] * direction(t, a, b) * direction(u, a, b);
                if (sign[u] == 0) {
                    sign[u] = want;
                    queue.push_back(u);
                } else if (sign[u] != want) {
                    out.orientable = false;
                }
            }
        }
    }
    out.genus = static_cast<int>(out.orientable ? (2 - out.euler) / 2 : 2 - out.euler);
    return out;
}

/// Mesh realizing a two-dimensional plan, with the map from mesh heights of
/// singular levels back to plan values.
struct RealizedSurface {
    TriangulatedSurface mesh;
    std::map<std::int64_t, Rational> levels;
    std::map<std::string, std::int64_t> block_heights;
};

namespace detail {

class MeshBuilder {
public:
    std::size_t vertex(std::int64_t height)
    {
        mesh_.vertices.push_back({static_cast<std::int64_t>(mesh_.vertices.size()), height});
        return mesh_.vertices.size() - 1;
    }

    void triangle(std::size_t a, std::size_t b, std::size_t c)
    {
        mesh_.triangles.push_back({static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
                                   static_cast<std::int64_t>(c)});
    }

    /// Circle of `length` vertices with heights in [base, base + 2] and no
    /// two neighbors at the same height.
    std::vector<std::size_t> circle(std::size_t length, std::int64_t base)
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < length; ++i) {
            std::int64_t h = base + static_cast<std::int64_t>(i % 2);
            if (length % 2 == 1 && i + 1 == length)
                h = base + 2;
            out.push_back(vertex(h));
        }
        return out;
    }

    void cone(std::size_t apex, const std::vector<std::size_t>& ring)
    {
        for (std::size_t i = 0; i < ring.size(); ++i)
            triangle(apex, ring[i], ring[(i + 1) % ring.size()]);
    }

    /// Annulus between a closed walk (possibly revisiting vertices) and a
    /// fresh circle of the same length.
    void collar(const std::vector<std::size_t>& walk, const std::vector<std::size_t>& ring, bool flip)
    {
        const std::size_t n = walk.size();
        for (std::size_t k = 0; k < n; ++k) {
            auto w0 = walk[k], w1 = walk[(k + 1) % n];
            auto c0 = ring[k], c1 = ring[(k + 1) % n];
            if (flip) {
                triangle(w1, w0, c0);
                triangle(w1, c0, c1);
            } else {
                triangle(w0, w1, c0);
                triangle(w1, c1, c0);
            }
        }
    }

    /// Annulus between two circles of possibly different lengths.
    void zipper(const std::vector<std::size_t>& low, const std::vector<std::size_t>& high)
    {
        const std::size_t n = low.size(), m = high.size();
        std::size_t i = 0, j = 0;
        while (i < n || j < m) {
            if (i < n && (j == m || i * m <= j * n)) {
                triangle(low[i % n], low[(i + 1) % n], high[j % m]);
                ++i;
            } else {
                triangle(low[i % n], high[(j + 1) % m], high[j % m]);
                ++j;
            }
        }
    }

    TriangulatedSurface take() { return std::move(mesh_); }

private:
    TriangulatedSurface mesh_;
};

/// Singular level of an internal block: `lower` circles pinched together at
/// `pinches` points. Each pinch is one 4-valent vertex; the circles below the
/// level are the lower walks, the circles above are obtained by the oriented
/// resolution at every pinch.
struct PlateauLayout {
    std::vector<std::vector<std::size_t>> lower_walks;
    std::vector<std::vector<std::size_t>> upper_walks;
};

inline PlateauLayout layout_plateau(MeshBuilder& mb, std::int64_t height, std::size_t lower, std::size_t upper,
                                    std::size_t saddles)
{
    const std::size_t base = (lower - 1) + (upper - 1);
    if (saddles < base || (saddles - base) % 2 != 0)
        throw InvariantError("block-saddles", std::to_string(saddles) + " saddles cannot join " +
                                                  std::to_string(lower) + " circles to " + std::to_string(upper));
    const std::size_t genus = (saddles - base) / 2;

    // Specials per lower circle, as pinch numbers.
    std::vector<std::vector<std::size_t>> specials(lower);
    std::size_t pinch_count = 0;
    for (std::size_t i = 0; i + 1 < lower; ++i) {
        specials[i].push_back(pinch_count);
        specials[i + 1].insert(specials[i + 1].begin(), pinch_count);
        ++pinch_count;
    }
    for (std::size_t k = 0; k < genus; ++k) {
        std::size_t x = pinch_count++, y = pinch_count++;
        for (auto p : {x, y, x, y})
            specials[0].push_back(p);
    }
    for (std::size_t k = 0; k + 1 < upper; ++k) {
        std::size_t z = pinch_count++;
        specials[0].push_back(z);
        specials[0].push_back(z);
    }

    std::vector<std::size_t> pinch_vertex(pinch_count);
    for (auto& v : pinch_vertex)
        v = mb.vertex(height);

    PlateauLayout out;
    using Occurrence = std::pair<std::size_t, std::size_t>;
    std::vector<std::vector<Occurrence>> occurrences(pinch_count);
    for (std::size_t c = 0; c < lower; ++c) {
        std::vector<std::size_t> walk;
        for (auto p : specials[c]) {
            occurrences[p].emplace_back(c, walk.size());
            walk.push_back(pinch_vertex[p]);
            walk.push_back(mb.vertex(height));
            walk.push_back(mb.vertex(height));
        }
        out.lower_walks.push_back(std::move(walk));
    }

    // partner[c][k]: the other occurrence of a pinch vertex, if any.
    std::vector<std::vector<std::optional<Occurrence>>> partner(lower);
    for (std::size_t c = 0; c < lower; ++c)
        partner[c].resize(out.lower_walks[c].size());
    for (const auto& occ : occurrences) {
        partner[occ[0].first][occ[0].second] = occ[1];
        partner[occ[1].first][occ[1].second] = occ[0];
    }

    std::vector<std::vector<char>> used(lower);
    for (std::size_t c = 0; c < lower; ++c)
        used[c].assign(out.lower_walks[c].size(), 0);
    for (std::size_t c = 0; c < lower; ++c)
        for (std::size_t k = 0; k < out.lower_walks[c].size(); ++k) {
            if (used[c][k])
                continue;
            std::vector<std::size_t> walk;
            Occurrence dart{c, k};
            while (!used[dart.first][dart.second]) {
                used[dart.first][dart.second] = 1;
                walk.push_back(out.lower_walks[dart.first][dart.second]);
                Occurrence arrival{dart.first, (dart.second + 1) % out.lower_walks[dart.first].size()};
                const auto& other = partner[arrival.first][arrival.second];
                dart = other ? *other : arrival;
            }
            out.upper_walks.push_back(std::move(walk));
        }
    if (out.upper_walks.size() != upper)
        throw InvariantError("block-resolution", "pinch layout produced " + std::to_string(out.upper_walks.size()) +
                                                     " upper circles, expected " + std::to_string(upper));
    return out;
}

}  // namespace detail

/// Builds a closed triangulated surface whose height function follows the
/// plan: cones at extrema, one connected plateau of saddles per internal
/// block, and product annuli along tubes.
inline RealizedSurface realize_surface(const MorsePlan& plan)
{
    if (plan.dimension != 2)
        throw PreconditionError("surface realization needs a dimension-2 plan, got " +
                                std::to_string(plan.dimension));
    for (const auto& t : plan.tubes)
        if (!t.label.is_standard_sphere())
            throw PreconditionError("tube '" + t.edge + "' is labeled " + t.label.describe());

    // Singular levels sit 8 apart; circle bands occupy the three heights just
    // above and just below each of them.
    constexpr std::int64_t spacing = 8;
    RealizedSurface out;
    std::map<Rational, std::int64_t> mesh_level;
    for (std::size_t i = 0; i < plan.critical_values.size(); ++i) {
        mesh_level[plan.critical_values[i]] = spacing * static_cast<std::int64_t>(i);
        out.levels[spacing * static_cast<std::int64_t>(i)] = plan.critical_values[i];
    }

    std::map<std::string, std::size_t> tube_of;
    for (std::size_t i = 0; i < plan.tubes.size(); ++i)
        tube_of[plan.tubes[i].edge] = i;
    std::vector<std::vector<std::size_t>> low_ring(plan.tubes.size()), high_ring(plan.tubes.size());

    detail::MeshBuilder mb;
    for (const auto& b : plan.blocks) {
        const std::int64_t h = mesh_level.at(b.value);
        out.block_heights[b.vertex] = h;
        switch (b.kind) {
        case BlockKind::Minimum: {
            auto apex = mb.vertex(h);
            auto ring = mb.circle(3, h + 1);
            mb.cone(apex, ring);
            low_ring[tube_of.at(b.up_edges.front())] = std::move(ring);
            break;
        }
        case BlockKind::Maximum: {
            auto apex = mb.vertex(h);
            auto ring = mb.circle(3, h - 3);
            mb.cone(apex, std::vector<std::size_t>(ring.rbegin(), ring.rend()));
            high_ring[tube_of.at(b.down_edges.front())] = std::move(ring);
            break;
        }
        case BlockKind::Internal: {
            auto layout = detail::layout_plateau(mb, h, b.down_edges.size(), b.up_edges.size(), b.indices.size());
            for (std::size_t i = 0; i < layout.lower_walks.size(); ++i) {
                auto ring = mb.circle(layout.lower_walks[i].size(), h - 3);
                mb.collar(layout.lower_walks[i], ring, true);
                high_ring[tube_of.at(b.down_edges[i])] = std::move(ring);
            }
            for (std::size_t j = 0; j < layout.upper_walks.size(); ++j) {
                auto ring = mb.circle(layout.upper_walks[j].size(), h + 1);
                mb.collar(layout.upper_walks[j], ring, false);
                low_ring[tube_of.at(b.up_edges[j])] = std::move(ring);
            }
            break;
        }
        }
    }
    for (std::size_t t = 0; t < plan.tubes.size(); ++t)
        mb.zipper(low_ring[t], high_ring[t]);
    out.mesh = mb.take();
    return out;
}

}  // namespace reeb
