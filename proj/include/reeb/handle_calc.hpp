#pragma once

// Symbolic handle calculus for most fundamental handlebodies.
//
// Every attaching region lies in the boundary of the base disk. The
// index-(m-1) handles are attached along disjoint separating spheres and cut
// that boundary into regions 0..s; the other handles are recorded by the
// region they are attached into. A 1-handle may instead join two regions
// (`bridge_to`), which forms the boundary connected sum of the two
// components.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "reeb/error.hpp"
#include "reeb/label.hpp"
#include "reeb/numeric.hpp"
#include "reeb/zalgebra.hpp"

namespace reeb {

struct Handle {
    int index = 1;
    int component = 0;
    std::optional<int> bridge_to;
    bool orientation_preserving = true;
    std::optional<Integer> framing;  // 2-handles in dimension 4
    std::vector<Integer> linking;    // with earlier 2-handles of the same region

    friend bool operator==(const Handle&, const Handle&) = default;
};

struct HandlebodyPlan {
    int dimension = 3;
    std::vector<Handle> handles;
    bool most_fundamental = true;

    friend bool operator==(const HandlebodyPlan&, const HandlebodyPlan&) = default;
};

enum class HandleRole { Split, Summand, Bridge };

inline HandleRole role_of(const Handle& h, int m)
{
    if (h.index == 1 && h.bridge_to)
        return HandleRole::Bridge;
    if (h.index == m - 1)
        return HandleRole::Split;
    return HandleRole::Summand;
}

/// Alternating handle count; the base disk contributes 1.
inline Integer euler_characteristic(const HandlebodyPlan& plan)
{
    Integer chi = 1;
    for (const auto& h : plan.handles)
        chi += (h.index % 2 == 0) ? 1 : -1;
    return chi;
}

/// Throws StructuralError describing the first problem with the plan.
inline void validate_plan(const HandlebodyPlan& plan)
{
    const int m = plan.dimension;
    if (m < 2)
        throw StructuralError("plan dimension must be > 1");
    if (plan.handles.empty())
        throw StructuralError("a handlebody needs at least one handle");
    if (!plan.most_fundamental)
        throw StructuralError("boundary tracking needs a most fundamental plan");

    int splits = 0;
    for (const auto& h : plan.handles)
        if (role_of(h, m) == HandleRole::Split)
            ++splits;
    const int regions = splits + 1;

    int seen_splits = 0;
    std::map<int, std::size_t> surgery_handles;
    for (std::size_t i = 0; i < plan.handles.size(); ++i) {
        const auto& h = plan.handles[i];
        const std::string where = "handle " + std::to_string(i) + ": ";
        if (h.index < 1 || h.index > m - 1)
            throw StructuralError(where + "index " + std::to_string(h.index) + " outside 1.." +
                                  std::to_string(m - 1));
        if (h.bridge_to && h.index != 1)
            throw StructuralError(where + "only 1-handles can join two components");
        const bool surgery = m == 4 && h.index == 2;
        if (h.framing && !surgery)
            throw StructuralError(where + "framing is only recorded for 2-handles in dimension 4");
        if (!h.linking.empty() && !surgery)
            throw StructuralError(where + "linking numbers are only recorded for 2-handles in dimension 4");
        switch (role_of(h, m)) {
        case HandleRole::Split:
            if (h.component < 0 || h.component > seen_splits)
                throw StructuralError(where + "splits nonexistent component " + std::to_string(h.component));
            if (m == 2 && !h.orientation_preserving)
                throw StructuralError(where + "a splitting band must be orientation preserving");
            ++seen_splits;
            break;
        case HandleRole::Bridge:
            if (*h.bridge_to < 0 || *h.bridge_to >= regions || *h.bridge_to == h.component)
                throw StructuralError(where + "bridges to invalid component " + std::to_string(*h.bridge_to));
            [[fallthrough]];
        case HandleRole::Summand:
            if (h.component < 0 || h.component >= regions)
                throw StructuralError(where + "attached into nonexistent component " +
                                      std::to_string(h.component));
            if (surgery) {
                auto& earlier = surgery_handles[h.component];
                if (h.linking.size() != earlier)
                    throw StructuralError(where + "expected " + std::to_string(earlier) +
                                          " linking numbers, got " + std::to_string(h.linking.size()));
                ++earlier;
            }
            break;
        }
    }
}

/// One connected boundary component of a handlebody.
struct BoundaryComponent {
    std::vector<int> regions;
    Integer euler = 0;
    bool orientable = true;
    int genus = 0;      // dimension 3, orientable
    int crosscaps = 0;  // dimension 3, non-orientable
    std::optional<AbelianInvariants> h1;
    std::optional<IntMatrix> linking;  // dimension 4, when every 2-handle is framed
};

struct BoundaryInvariants {
    int dimension = 0;
    std::vector<BoundaryComponent> components;
    Integer handlebody_euler = 0;
};

namespace detail {

inline Integer sphere_euler(int dim) { return dim % 2 == 0 ? 2 : 0; }

struct RegionUnion {
    std::vector<int> parent;
    explicit RegionUnion(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace detail

/// Tracks boundary components through the attachments and computes their
/// invariants.
inline BoundaryInvariants boundary_invariants(const HandlebodyPlan& plan)
{
    validate_plan(plan);
    const int m = plan.dimension;
    const int n = m - 1;  // boundary dimension

    int regions = 1;
    for (const auto& h : plan.handles)
        if (role_of(h, m) == HandleRole::Split)
            ++regions;

    struct Tally {
        int preserving_circles = 0;  // S^1 x S^{n-1} summands
        int reversing_circles = 0;   // twisted S^1 bundles over S^{n-1}
        Integer euler_shift = 0;     // sum of chi(summand) - 2
        int h1_free = 0;
        int tree_bridges = 0;
        std::vector<const Handle*> surgery;  // by region order
        std::vector<int> surgery_region;
    };

    detail::RegionUnion uf(regions);
    std::vector<Tally> per_region(regions);
    std::vector<std::pair<int, bool>> loops;  // (region, preserving)
    for (const auto& h : plan.handles) {
        switch (role_of(h, m)) {
        case HandleRole::Split:
            break;
        case HandleRole::Bridge:
            if (!uf.unite(h.component, *h.bridge_to)) {
                if (m == 2)
                    throw StructuralError("a band joining a boundary circle to itself is not tracked in dimension 2");
                loops.emplace_back(h.component, h.orientation_preserving);
            } else {
                per_region[h.component].tree_bridges += 1;
            }
            break;
        case HandleRole::Summand: {
            auto& t = per_region[h.component];
            if (h.index == 1) {
                (h.orientation_preserving ? t.preserving_circles : t.reversing_circles) += 1;
                t.euler_shift += detail::sphere_euler(1) * detail::sphere_euler(n - 1) - 2;
                t.h1_free += 1;
            } else {
                t.euler_shift += detail::sphere_euler(h.index) * detail::sphere_euler(n - h.index) - 2;
                if (m == 4 && h.index == 2) {
                    t.surgery.push_back(&h);
                    t.surgery_region.push_back(h.component);
                } else if (h.index == n - 1) {
                    t.h1_free += 1;  // S^{n-1} x S^1
                }
            }
            break;
        }
        }
    }
    for (auto [region, preserving] : loops) {
        auto& t = per_region[region];
        (preserving ? t.preserving_circles : t.reversing_circles) += 1;
        t.euler_shift += -2;
        t.h1_free += 1;
    }

    std::map<int, std::vector<int>> classes;
    for (int r = 0; r < regions; ++r)
        classes[uf.find(r)].push_back(r);

    BoundaryInvariants out;
    out.dimension = m;
    out.handlebody_euler = euler_characteristic(plan);
    for (const auto& [root, members] : classes) {
        BoundaryComponent comp;
        comp.regions = members;
        int preserving = 0, reversing = 0, h1_free = 0;
        Integer shift = 0;
        std::vector<const Handle*> surgery;
        std::vector<int> surgery_region;
        for (int r : members) {
            const auto& t = per_region[r];
            preserving += t.preserving_circles;
            reversing += t.reversing_circles;
            shift += t.euler_shift;
            h1_free += t.h1_free;
            surgery.insert(surgery.end(), t.surgery.begin(), t.surgery.end());
            surgery_region.insert(surgery_region.end(), t.surgery_region.begin(), t.surgery_region.end());
        }
        comp.orientable = m == 2 || reversing == 0;
        // Boundary connected sums of spheres: each merge cancels one sphere's 2.
        comp.euler = n % 2 == 0 ? Integer(2) + shift : Integer(0);

        if (m == 2) {
            comp.h1 = free_abelian(1);
        } else if (m == 3) {
            if (comp.orientable) {
                comp.genus = preserving;
                comp.h1 = free_abelian(2 * static_cast<std::size_t>(preserving));
            } else {
                comp.crosscaps = 2 * (preserving + reversing);
                comp.h1 = AbelianInvariants{static_cast<std::size_t>(comp.crosscaps - 1), {Integer(2)}};
            }
        } else if (m == 4) {
            const bool framed = std::all_of(surgery.begin(), surgery.end(),
                                            [](const Handle* h) { return h->framing.has_value(); });
            if (framed) {
                // Distinct regions lie in disjoint balls, so their links are unlinked.
                IntMatrix link(surgery.size(), surgery.size());
                for (std::size_t i = 0; i < surgery.size(); ++i) {
                    link(i, i) = *surgery[i]->framing;
                    std::size_t earlier = 0;
                    for (std::size_t j = 0; j < i; ++j)
                        if (surgery_region[j] == surgery_region[i]) {
                            link(i, j) = link(j, i) = surgery[i]->linking[earlier];
                            ++earlier;
                        }
                }
                comp.h1 = direct_sum(free_abelian(static_cast<std::size_t>(h1_free)), cokernel_invariants(link));
                comp.linking = std::move(link);
            }
        } else {
            comp.h1 = free_abelian(static_cast<std::size_t>(h1_free));
        }
        out.components.push_back(std::move(comp));
    }

    if (n % 2 == 0) {
        Integer total = 0;
        for (const auto& c : out.components)
            total += c.euler;
        if (total != 2 * out.handlebody_euler)
            throw InvariantError("boundary-euler", "boundary chi " + total.str() + " != 2 * " +
                                                       out.handlebody_euler.str());
    }
    return out;
}

/// Builds a most fundamental plan whose boundary components realize
/// `targets`, component j carrying targets[j].
inline HandlebodyPlan attach_plan_for_boundary(int m, const std::vector<PreimageLabel>& targets)
{
    if (m < 2)
        throw PreconditionError("dimension must be > 1");
    if (targets.empty())
        throw PreconditionError("at least one boundary component is required");
    for (const auto& t : targets)
        t.require_legal(m);

    HandlebodyPlan plan;
    plan.dimension = m;
    if (targets.size() == 1 && targets.front().is_standard_sphere()) {
        // One 1-handle with its feet on either side of the splitting sphere,
        // then the splitting (m-1)-handle.
        plan.handles.push_back(Handle{1, 0, 1, true, std::nullopt, {}});
        plan.handles.push_back(Handle{m - 1, 0, std::nullopt, true, std::nullopt, {}});
        return plan;
    }

    for (std::size_t j = 1; j < targets.size(); ++j)
        plan.handles.push_back(Handle{m - 1, 0, std::nullopt, true, std::nullopt, {}});
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const int region = static_cast<int>(j);
        const auto& t = targets[j];
        if (t.is_standard_sphere())
            continue;
        if (auto* s = t.surface()) {
            if (s->orientable)
                for (int k = 0; k < s->genus; ++k)
                    plan.handles.push_back(Handle{1, region, std::nullopt, true, std::nullopt, {}});
            else
                for (int k = 0; k < s->crosscaps / 2; ++k)
                    plan.handles.push_back(Handle{1, region, std::nullopt, false, std::nullopt, {}});
        } else if (auto* g = t.surgery()) {
            const auto& link = g->linking;
            for (std::size_t i = 0; i < link.rows(); ++i) {
                Handle h{2, region, std::nullopt, true, link(i, i), {}};
                for (std::size_t k = 0; k < i; ++k)
                    h.linking.push_back(link(i, k));
                plan.handles.push_back(std::move(h));
            }
        }
    }
    return plan;
}

/// Whether a computed boundary component carries the invariants of `label`.
inline bool component_matches(const BoundaryComponent& c, const PreimageLabel& label, int m)
{
    if (m % 2 == 1 && label.is_standard_sphere() && c.euler != 2)
        return false;
    if (auto* s = label.surface(); s && !label.is_standard_sphere()) {
        if (s->orientable)
            return c.orientable && c.genus == s->genus;
        return !c.orientable && c.crosscaps == s->crosscaps;
    }
    if (auto* g = label.surgery(); g && !label.is_standard_sphere())
        return c.linking && *c.linking == g->linking && c.h1 && *c.h1 == cokernel_invariants(g->linking);
    // S^{m-1}
    if (!c.orientable || !c.h1 || !c.h1->trivial())
        return m == 2 && c.h1 && *c.h1 == free_abelian(1);
    if (m == 3 && c.genus != 0)
        return false;
    if (m == 4 && (!c.linking || c.linking->rows() != 0))
        return false;
    return true;
}

}  // namespace reeb
