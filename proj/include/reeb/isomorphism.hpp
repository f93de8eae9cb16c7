#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reeb/numeric.hpp"

namespace reeb {

/// Multigraph with vertex heights and optional edge tags, the common shape of
/// input graphs, plan adjacencies and extracted Reeb graphs.
struct HeightGraph {
    std::vector<Rational> heights;
    std::vector<std::array<std::size_t, 2>> edges;
    std::vector<std::string> edge_tags;  // empty: tags are not compared
};

namespace detail {

using PairKey = std::pair<std::size_t, std::size_t>;

inline PairKey pair_key(std::size_t a, std::size_t b) { return a < b ? PairKey{a, b} : PairKey{b, a}; }

inline std::map<PairKey, std::vector<std::string>> edge_buckets(const HeightGraph& g, bool tagged)
{
    std::map<PairKey, std::vector<std::string>> out;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        out[pair_key(g.edges[e][0], g.edges[e][1])].push_back(tagged ? g.edge_tags[e] : std::string());
    for (auto& [k, tags] : out)
        std::sort(tags.begin(), tags.end());
    return out;
}

}  // namespace detail

/// Finds a bijection between vertex sets preserving heights, edge
/// multiplicities and (when both graphs carry them) edge tags. Returns the
/// image in `b` of every vertex of `a`.
inline std::optional<std::vector<std::size_t>> height_isomorphism(const HeightGraph& a, const HeightGraph& b)
{
    const std::size_t n = a.heights.size();
    if (n != b.heights.size() || a.edges.size() != b.edges.size())
        return std::nullopt;
    const bool tagged = !a.edge_tags.empty() && !b.edge_tags.empty();
    const auto buckets_a = detail::edge_buckets(a, tagged);
    const auto buckets_b = detail::edge_buckets(b, tagged);

    // Local signature: height plus the multiset of (neighbor height, tag).
    auto signatures = [&](const HeightGraph& g) {
        std::vector<std::vector<std::pair<Rational, std::string>>> sig(g.heights.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            auto [u, v] = g.edges[e];
            std::string tag = tagged ? g.edge_tags[e] : std::string();
            sig[u].emplace_back(g.heights[v], tag);
            sig[v].emplace_back(g.heights[u], tag);
        }
        for (auto& s : sig)
            std::sort(s.begin(), s.end());
        return sig;
    };
    const auto sig_a = signatures(a);
    const auto sig_b = signatures(b);

    std::vector<std::vector<std::size_t>> candidates(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w)
            if (a.heights[v] == b.heights[w] && sig_a[v] == sig_b[w])
                candidates[v].push_back(w);
        if (candidates[v].empty())
            return std::nullopt;
    }

    // Visit order: most constrained first, then grow along edges.
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : a.edges) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    std::vector<std::size_t> order;
    std::vector<char> queued(n, 0);
    while (order.size() < n) {
        std::size_t root = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!queued[v] && (root == n || candidates[v].size() < candidates[root].size()))
                root = v;
        std::vector<std::size_t> frontier{root};
        queued[root] = 1;
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            order.push_back(frontier[head]);
            for (auto w : adj[frontier[head]])
                if (!queued[w]) {
                    queued[w] = 1;
                    frontier.push_back(w);
                }
        }
    }

    static const std::vector<std::string> none;
    auto bucket = [](const auto& buckets, std::size_t u, std::size_t v) -> const std::vector<std::string>& {
        auto it = buckets.find(detail::pair_key(u, v));
        return it == buckets.end() ? none : it->second;
    };

    constexpr std::size_t unmapped = static_cast<std::size_t>(-1);
    std::vector<std::size_t> image(n, unmapped);
    std::vector<char> used(n, 0);
    std::vector<std::size_t> mapped;

    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == n)
            return true;
        const std::size_t v = order[depth];
        for (auto w : candidates[v]) {
            if (used[w])
                continue;
            if (bucket(buckets_a, v, v) != bucket(buckets_b, w, w))
                continue;
            bool ok = true;
            for (auto u : mapped)
                if (bucket(buckets_a, v, u) != bucket(buckets_b, w, image[u])) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            image[v] = w;
            used[w] = 1;
            mapped.push_back(v);
            if (extend(depth + 1))
                return true;
            mapped.pop_back();
            used[w] = 0;
            image[v] = unmapped;
        }
        return false;
    };
    if (!extend(0))
        return std::nullopt;
    return image;
}

}  // namespace reeb
