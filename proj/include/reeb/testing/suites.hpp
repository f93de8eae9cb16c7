#pragma once

// Seeded property suites shared by `reebctl selftest` and the acceptance run.

#include <chrono>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "reeb/graph.hpp"
#include "reeb/morse_plan.hpp"
#include "reeb/pl_surface.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/testing/generators.hpp"
#include "reeb/testing/meshes.hpp"
#include "reeb/testing/oracles.hpp"
#include "reeb/verify.hpp"
#include "reeb/zalgebra.hpp"

namespace reeb::testing {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    double seconds = 0.0;

    bool passed() const { return cases > 0 && failures == 0; }

    void fail(const std::string& why)
    {
        if (failures++ == 0)
            first_failure = why;
    }
};

namespace detail {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Smith form postconditions on random matrices, plus cokernel invariance
/// under a random change of presentation.
inline SuiteResult snf_suite(std::uint64_t seed, std::size_t count = 500)
{
    SuiteResult r;
    r.name = "smith-normal-form";
    detail::Stopwatch clock;
    Rng rng(seed);
    for (std::size_t c = 0; c < count; ++c) {
        auto rows = static_cast<std::size_t>(uniform(rng, 1, 6));
        auto cols = coin(rng, 0.6) ? rows : static_cast<std::size_t>(uniform(rng, 1, 6));
        auto a = random_matrix(rng, rows, cols, 9);
        auto d = smith_normal_form(a);
        ++r.cases;
        std::string tag = "case " + std::to_string(c);
        if (!(d.left * a * d.right == d.diagonal)) {
            r.fail(tag + ": U A V != S");
            continue;
        }
        if (abs(determinant(d.left)) != 1 || abs(determinant(d.right)) != 1) {
            r.fail(tag + ": transform not unimodular");
            continue;
        }
        bool shape = true;
        Integer previous = 1;
        bool seen_zero = false;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const auto& x = d.diagonal(i, j);
                if (i != j) {
                    shape = shape && x == 0;
                    continue;
                }
                if (x < 0 || (seen_zero && x != 0) || (x != 0 && x % previous != 0))
                    shape = false;
                if (x == 0)
                    seen_zero = true;
                else
                    previous = x;
            }
        if (!shape) {
            r.fail(tag + ": diagonal is not in Smith form");
            continue;
        }
        if (rows == cols) {
            auto det = determinant(a);
            auto inv = cokernel_invariants(a);
            if (det != 0) {
                Integer product = 1;
                for (const auto& t : inv.torsion)
                    product *= t;
                if (inv.free_rank != 0 || product != abs(det)) {
                    r.fail(tag + ": torsion order differs from |det|");
                    continue;
                }
            }
            auto p = random_unimodular(rng, rows), q = random_unimodular(rng, rows);
            if (!(cokernel_invariants(p * a * q) == inv)) {
                r.fail(tag + ": cokernel changed under a change of basis");
                continue;
            }
        }
    }
    r.seconds = clock.seconds();
    return r;
}

/// Feasibility of good-function synthesis against exhaustive orderings on
/// random connected loopless multigraphs with at most 6 vertices and 9 edges.
inline SuiteResult synthesis_suite(std::uint64_t seed, std::size_t count = 5000)
{
    SuiteResult r;
    r.name = "synthesis-vs-exhaustive";
    detail::Stopwatch clock;
    Rng rng(seed);
    for (std::size_t c = 0; c < count; ++c) {
        int n = uniform(rng, 2, 6);
        int edges = uniform(rng, n - 1, 9);
        auto g = random_multigraph(rng, n, edges);
        ++r.cases;
        bool expected = exhaustive_good_function_exists(g);
        auto result = synthesize_good_function(g);
        auto* heights = std::get_if<std::vector<std::int64_t>>(&result);
        if ((heights != nullptr) != expected) {
            r.fail("case " + std::to_string(c) + ": verdicts differ");
            continue;
        }
        if (heights && !validate_hypotheses(with_heights(g, *heights)).feasible())
            r.fail("case " + std::to_string(c) + ": synthesized heights violate the hypotheses");
    }
    r.seconds = clock.seconds();
    return r;
}

/// Full m = 2 verification on random feasible graphs.
inline SuiteResult surface_roundtrip_suite(std::uint64_t seed, std::size_t count = 200)
{
    SuiteResult r;
    r.name = "surface-roundtrip";
    detail::Stopwatch clock;
    Rng rng(seed);
    for (std::size_t c = 0; c < count; ++c) {
        auto g = random_feasible_graph(rng, 12, 16);
        ++r.cases;
        auto report = verify_graph(g);
        if (report.verdict() != Verdict::Pass) {
            std::string why = "case " + std::to_string(c) + ": " + to_string(report.verdict());
            for (const auto& s : report.stages)
                if (!s.passed)
                    why += " at " + s.name + ": " + s.message;
            r.fail(why);
        }
        for (const char* stage : {"realize", "reeb-extraction", "level-census"})
            if (!report.stage(stage)) {
                r.fail("case " + std::to_string(c) + ": stage " + stage + " did not run");
                break;
            }
    }
    r.seconds = clock.seconds();
    return r;
}

/// Sweep extraction against the sampled level-set oracle on fixed meshes
/// and on realized meshes of at most 300 triangles.
inline SuiteResult reeb_oracle_suite(std::uint64_t seed, std::size_t random_meshes = 50)
{
    SuiteResult r;
    r.name = "reeb-vs-level-census";
    detail::Stopwatch clock;
    std::vector<std::pair<std::string, TriangulatedSurface>> corpus{
        {"tetrahedron", tetrahedron()},
        {"octahedron", octahedron()},
        {"seven-vertex torus", seven_vertex_torus()},
        {"seven-vertex torus (shuffled)", seven_vertex_torus({3, 0, 5, 1, 6, 2, 4})},
    };
    Rng rng(seed);
    std::size_t built = 0;
    while (built < random_meshes) {
        auto g = random_feasible_graph(rng, 6, 7);
        auto mesh = realize_surface(std::get<MorsePlan>(assemble(g))).mesh;
        if (mesh.triangles.size() > 300)
            continue;
        corpus.emplace_back("realized " + std::to_string(built++), std::move(mesh));
    }
    for (const auto& [name, mesh] : corpus) {
        ++r.cases;
        if (!same_reeb_graph(compute_reeb(mesh), brute_force_reeb(mesh)))
            r.fail(name + ": sweep and oracle disagree");
    }
    r.seconds = clock.seconds();
    return r;
}

}  // namespace reeb::testing
