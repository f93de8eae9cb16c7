#pragma once

// End-to-end verification of a labeled graph: hypotheses, plan assembly and
// independent invariant checks, plus the triangulated round trip when m = 2.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "reeb/error.hpp"
#include "reeb/graph.hpp"
#include "reeb/handle_calc.hpp"
#include "reeb/io.hpp"
#include "reeb/morse_plan.hpp"
#include "reeb/pl_surface.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/zalgebra.hpp"

namespace reeb {

enum class Verdict { Pass, Fail, Infeasible, Malformed };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::Malformed: return "malformed";
    }
    return "?";
}

/// CLI exit code for a verdict.
inline int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Infeasible: return 2;
    case Verdict::Malformed: return 3;
    case Verdict::Fail: return 4;
    }
    return 4;
}

struct StageResult {
    std::string name;
    bool passed = true;
    std::string message;
    Json data = Json::object();
    double millis = 0.0;
};

struct VerificationReport {
    int dimension = 0;
    std::vector<StageResult> stages;
    std::optional<HypothesisReport> hypotheses;
    std::optional<std::string> failed_invariant;

    Verdict verdict() const
    {
        if (hypotheses && !hypotheses->feasible())
            return hypotheses->structural() ? Verdict::Malformed : Verdict::Infeasible;
        for (const auto& s : stages)
            if (!s.passed)
                return Verdict::Fail;
        return Verdict::Pass;
    }

    const StageResult* stage(const std::string& name) const
    {
        for (const auto& s : stages)
            if (s.name == name)
                return &s;
        return nullptr;
    }
};

namespace detail {

inline Integer label_euler(const PreimageLabel& l, int m)
{
    if (auto* s = l.surface())
        return s->orientable ? Integer(2 - 2 * s->genus) : Integer(2 - s->crosscaps);
    return (m - 1) % 2 == 0 ? Integer(2) : Integer(0);
}

inline std::map<std::string, std::size_t> label_multiset(const std::vector<PreimageLabel>& labels)
{
    std::map<std::string, std::size_t> out;
    for (const auto& l : labels)
        ++out[l.describe()];
    return out;
}

}  // namespace detail

/// Runs every applicable stage. Hypothesis failures end the run early;
/// internal invariant failures are recorded on the failing stage.
inline VerificationReport verify_graph(const LabeledGraph& g)
{
    VerificationReport report;
    report.dimension = g.dimension;

    auto run = [&](const std::string& name, const std::function<void(StageResult&)>& body) {
        StageResult s;
        s.name = name;
        auto start = std::chrono::steady_clock::now();
        try {
            body(s);
        } catch (const InvariantError& e) {
            s.passed = false;
            s.message = std::string("invariant '") + e.id() + "': " + e.what();
            if (!report.failed_invariant)
                report.failed_invariant = e.id();
        } catch (const Error& e) {
            s.passed = false;
            s.message = e.what();
        }
        s.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report.stages.push_back(std::move(s));
        return report.stages.back().passed;
    };

    report.hypotheses = validate_hypotheses(g);
    if (!report.hypotheses->feasible())
        return report;

    std::optional<MorsePlan> plan;
    if (!run("plan", [&](StageResult& s) {
            plan = std::get<MorsePlan>(assemble(g));
            s.data["morse_counts"] = plan->morse_counts;
            s.data["critical_values"] = Json::array();
            for (const auto& c : plan->critical_values)
                s.data["critical_values"].push_back(io::number(c));
        }))
        return report;
    const int m = plan->dimension;
    GraphIndex idx(g);

    run("reeb-of-plan", [&](StageResult& s) {
        auto map = graphs_isomorphic(reeb_of_plan(*plan), g);
        s.passed = map.has_value();
        if (!s.passed)
            s.message = "plan adjacency is not isomorphic to the input graph";
    });

    run("morse-counts", [&](StageResult& s) {
        std::int64_t minima = 0, maxima = 0;
        for (std::size_t v = 0; v < idx.vertex_count(); ++v) {
            auto kind = extremum_kind(g, idx, v);
            minima += kind == ExtremumKind::Minimum;
            maxima += kind == ExtremumKind::Maximum;
        }
        s.data["minima"] = minima;
        s.data["maxima"] = maxima;
        const auto& c = plan->morse_counts;
        s.passed = c.front() == minima && c.back() == maxima;
        for (const auto& b : plan->blocks) {
            std::size_t handles = b.kind == BlockKind::Internal
                                      ? b.upper_plan->handles.size() + b.lower_plan->handles.size()
                                      : 1;
            if (b.indices.size() != handles || b.indices.empty())
                s.passed = false;
            for (int k : b.indices)
                if (b.kind == BlockKind::Internal && (k < 1 || k > m - 1))
                    s.passed = false;
        }
        if (!s.passed)
            s.message = "Morse counts disagree with extrema or handle plans";
    });

    run("euler", [&](StageResult& s) {
        auto check = euler_char_of_plan(*plan);
        s.data["euler"] = io::number(check.value);
        s.data["odd_dimension_checked"] = check.odd_dimension_checked;
        s.passed = check.passed;
        if (!s.passed)
            s.message = "closed odd-dimensional manifold with Euler characteristic " + to_string(check.value);
    });

    run("slices", [&](StageResult& s) {
        std::size_t checked = 0;
        for (const auto& slice : plan->slices) {
            Rational t = (slice.low + slice.high) / 2;
            std::vector<PreimageLabel> expected;
            for (std::size_t e = 0; e < idx.edge_count(); ++e) {
                auto [a, b] = idx.ends(e);
                auto lo = std::min(*g.vertices[a].height, *g.vertices[b].height);
                auto hi = std::max(*g.vertices[a].height, *g.vertices[b].height);
                if (lo < t && t < hi)
                    expected.push_back(g.edges[e].label);
            }
            if (detail::label_multiset(expected) != detail::label_multiset(slice.labels)) {
                s.passed = false;
                s.message = "slice at " + to_string(t) + " disagrees with the spanning edges";
            }
            ++checked;
        }
        s.data["checked"] = checked;
    });

    run("block-boundaries", [&](StageResult& s) {
        for (const auto& b : plan->blocks) {
            if (b.kind != BlockKind::Internal)
                continue;
            auto matches = [&](const HandlebodyPlan& hp, const std::vector<PreimageLabel>& targets) {
                auto inv = boundary_invariants(hp);
                if (inv.components.size() != targets.size())
                    return false;
                for (std::size_t i = 0; i < targets.size(); ++i)
                    if (!component_matches(inv.components[i], targets[i], m))
                        return false;
                return true;
            };
            bool ok = matches(*b.upper_plan, b.upper_labels) && matches(*b.lower_plan, b.lower_labels);
            // A cobordism W of odd dimension has chi(dW) = 2 chi(W).
            Integer alternating = 0;
            for (int k : b.indices)
                alternating += k % 2 == 0 ? 1 : -1;
            if (m % 2 == 1) {
                Integer up = 0, down = 0;
                for (const auto& l : b.upper_labels)
                    up += detail::label_euler(l, m);
                for (const auto& l : b.lower_labels)
                    down += detail::label_euler(l, m);
                ok = ok && 2 * alternating == up - down;
            }
            if (m == 2) {
                // A connected surface with a + b boundary circles has
                // chi = 2 - 2g - (a + b) or 2 - c - (a + b).
                Integer circles = b.upper_labels.size() + b.lower_labels.size();
                ok = ok && alternating <= 2 - circles;
            }
            if (!ok) {
                s.passed = false;
                s.message = "block '" + b.vertex + "' does not match its boundary labels";
                return;
            }
        }
    });

    if (m == 3 || m == 4) {
        run("orientability", [&](StageResult& s) {
            bool labels_orientable = std::all_of(g.edges.begin(), g.edges.end(),
                                                 [](const GraphEdge& e) { return e.label.orientable(); });
            s.data["flag"] = to_string(plan->orientable);
            bool expect_yes = m == 4 || labels_orientable;
            s.passed = expect_yes ? plan->orientable == Orientability::Yes
                                  : plan->orientable == Orientability::Unknown;
            if (!s.passed)
                s.message = "orientability flag does not follow the labels";
        });
    }

    if (m == 4) {
        run("slice-homology", [&](StageResult& s) {
            s.data["slices"] = Json::array();
            for (const auto& slice : plan->slices) {
                Json js;
                js["interval"] = {io::number(slice.low), io::number(slice.high)};
                js["h1"] = Json::array();
                for (const auto& l : slice.labels) {
                    const auto* g4 = l.surgery();
                    auto h1 = g4 ? cokernel_invariants(g4->linking) : AbelianInvariants{};
                    js["h1"].push_back(to_json(h1));
                }
                s.data["slices"].push_back(std::move(js));
            }
        });
    }

    if (m == 2) {
        std::optional<RealizedSurface> surface;
        if (!run("realize", [&](StageResult& s) {
                surface = realize_surface(*plan);
                auto inv = surface_invariants(surface->mesh);
                auto plan_euler = euler_char_of_plan(*plan).value;
                s.data["vertices"] = surface->mesh.vertices.size();
                s.data["triangles"] = surface->mesh.triangles.size();
                s.data["euler"] = inv.euler;
                s.data["orientable"] = inv.orientable;
                s.data["genus"] = inv.genus;
                s.passed = Integer(inv.euler) == plan_euler;
                if (!s.passed)
                    s.message = "mesh Euler characteristic " + std::to_string(inv.euler) + " differs from plan " +
                                to_string(plan_euler);
                // Cycle rank of the input bounds the genus from below.
                auto cycle_rank = static_cast<int>(idx.edge_count()) - static_cast<int>(idx.vertex_count()) + 1;
                if (inv.orientable && inv.genus < cycle_rank) {
                    s.passed = false;
                    s.message = "genus below the cycle rank of the graph";
                }
            }))
            return report;

        std::optional<ReebGraph> found;
        run("reeb-extraction", [&](StageResult& s) {
            found = remap_heights(compute_reeb(surface->mesh), surface->levels);
            s.data["nodes"] = found->nodes.size();
            s.data["arcs"] = found->arcs.size();
            auto map = reeb_isomorphic(*found, g);
            s.passed = map.has_value();
            if (!s.passed)
                s.message = "extracted Reeb graph is not isomorphic to the input";
        });
        if (found)
            run("level-census", [&](StageResult& s) {
                auto bad = level_census_violations(*found);
                if (!bad.empty()) {
                    s.passed = false;
                    s.message = bad.front();
                    return;
                }
                for (const auto& slice : plan->slices) {
                    std::size_t arcs = 0;
                    for (const auto& a : found->arcs)
                        if (found->nodes[a.lower].height <= slice.low && found->nodes[a.upper].height >= slice.high)
                            ++arcs;
                    if (arcs != slice.edges.size()) {
                        s.passed = false;
                        s.message = "level at " + to_string((slice.low + slice.high) / 2) + " has " +
                                    std::to_string(arcs) + " circles, expected " + std::to_string(slice.edges.size());
                        return;
                    }
                }
            });
    }
    return report;
}

inline Json to_json(const VerificationReport& r, bool with_timings)
{
    Json out;
    out["schema_version"] = schema_version;
    out["dimension"] = r.dimension;
    out["verdict"] = to_string(r.verdict());
    if (r.hypotheses)
        out["hypotheses"] = to_json(*r.hypotheses);
    out["stages"] = Json::array();
    for (const auto& s : r.stages) {
        Json js;
        js["name"] = s.name;
        js["passed"] = s.passed;
        if (!s.message.empty())
            js["message"] = s.message;
        if (!s.data.empty())
            js["data"] = s.data;
        if (with_timings)
            js["millis"] = s.millis;
        out["stages"].push_back(std::move(js));
    }
    if (r.failed_invariant)
        out["failed_invariant"] = *r.failed_invariant;
    return out;
}

}  // namespace reeb
