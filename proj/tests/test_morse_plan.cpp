#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"
#include "reeb/testing/generators.hpp"

using namespace reeb;
using namespace fixtures;

namespace {

MorsePlan must_assemble(const LabeledGraph& g)
{
    auto r = assemble(g);
    if (auto* rep = std::get_if<HypothesisReport>(&r))
        ADD_FAILURE() << rep->violations.front().message;
    return std::get<MorsePlan>(r);
}

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST(ExtremumBlock, MinimumAndMaximum)
{
    auto b = build_extremum_block(single_edge(3), "a");
    EXPECT_EQ(b.kind, BlockKind::Minimum);
    EXPECT_EQ(b.indices, std::vector<int>{0});
    EXPECT_EQ(b.value, 0);
    auto g = graph(4, {{"a", 0}, {"b", 5}}, {{"a", "b", S()}});
    auto top = build_extremum_block(g, "b");
    EXPECT_EQ(top.kind, BlockKind::Maximum);
    EXPECT_EQ(top.indices, std::vector<int>{4});
    EXPECT_EQ(top.value, 5);
}

TEST(ExtremumBlock, RejectsNonLeaves)
{
    auto tri = graph(2, {{"a", 0}, {"b", 1}, {"c", 2}}, {{"a", "b", S()}, {"b", "c", S()}, {"c", "a", S()}});
    EXPECT_THROW(build_extremum_block(tri, "a"), HypothesisError);
    EXPECT_THROW(build_extremum_block(tri, "b"), HypothesisError);
}

TEST(InternalBlock, GenusOneAboveSphere)
{
    auto b = build_internal_block("v", 1, {S()}, {PreimageLabel::orientable_surface(1)}, 3);
    EXPECT_EQ(b.upper_plan->handles.size(), 1u);
    EXPECT_EQ(b.lower_plan->handles.size(), 2u);
    EXPECT_EQ(sorted(b.indices), (std::vector<int>{1, 1, 2}));
    EXPECT_TRUE(b.connected_singular_level);
    EXPECT_LT(b.level_low, b.value);
    EXPECT_GT(b.level_high, b.value);
}

TEST(InternalBlock, TwoCirclesMergingInDimensionTwo)
{
    auto b = build_internal_block("v", 0, {S(), S()}, {S()}, 2);
    // One circle above: the sphere plan. Two circles below: one split.
    EXPECT_EQ(b.upper_plan->handles.size(), 2u);
    EXPECT_EQ(b.lower_plan->handles.size(), 1u);
    EXPECT_EQ(sorted(b.indices), (std::vector<int>{1, 1, 1}));
}

TEST(InternalBlock, LensAboveSphereInDimensionFour)
{
    auto b = build_internal_block("v", 1, {S()}, {PreimageLabel::surgery(IntMatrix{{3}})}, 4);
    EXPECT_EQ(b.upper_plan->handles.size(), 1u);
    EXPECT_EQ(b.upper_plan->handles[0].framing, Integer(3));
    EXPECT_EQ(sorted(b.indices), (std::vector<int>{1, 2, 3}));
}

TEST(InternalBlock, EmptySideRejected)
{
    EXPECT_THROW(build_internal_block("v", 0, {}, {S()}, 3), HypothesisError);
    EXPECT_THROW(build_internal_block("v", 0, {S()}, {}, 3), HypothesisError);
}

TEST(Assemble, SingleEdgeDimensionThree)
{
    auto p = must_assemble(single_edge(3));
    EXPECT_EQ(p.morse_counts, (std::vector<std::int64_t>{1, 0, 0, 1}));
    EXPECT_EQ(euler_char_of_plan(p).value, 0);
    ASSERT_EQ(p.slices.size(), 1u);
    EXPECT_EQ(p.slices[0].labels, std::vector<PreimageLabel>{S()});
    EXPECT_EQ(p.orientable, Orientability::Yes);
}

TEST(Assemble, PathWithGenusOneMiddle)
{
    auto p = must_assemble(path4(3, PreimageLabel::orientable_surface(1)));
    EXPECT_EQ(p.morse_counts, (std::vector<std::int64_t>{1, 3, 3, 1}));
    auto e = euler_char_of_plan(p);
    EXPECT_EQ(e.value, 0);
    EXPECT_TRUE(e.odd_dimension_checked);
    EXPECT_TRUE(e.passed);
}

TEST(Assemble, KleinMiddleIsNotClaimedOrientable)
{
    auto p = must_assemble(path4(3, PreimageLabel::klein_sum(2)));
    EXPECT_EQ(p.orientable, Orientability::Unknown);
    EXPECT_EQ(euler_char_of_plan(p).value, 0);
}

TEST(Assemble, TorusShapeDimensionTwo)
{
    auto p = must_assemble(torus_shape());
    // Each cycle vertex carries three saddles: a one-circle side always
    // needs the two-handle sphere plan, the two-circle side one split.
    EXPECT_EQ(p.morse_counts, (std::vector<std::int64_t>{1, 6, 1}));
    EXPECT_EQ(euler_char_of_plan(p).value, -4);
    EXPECT_EQ(p.orientable, Orientability::Unknown);
}

TEST(Assemble, YTreeDimensionTwo)
{
    auto p = must_assemble(y_tree());
    EXPECT_EQ(p.morse_counts, (std::vector<std::int64_t>{1, 3, 2}));
    EXPECT_EQ(euler_char_of_plan(p).value, 0);
}

TEST(Assemble, SingleEdgeDimensionFour)
{
    auto p = must_assemble(single_edge(4));
    EXPECT_EQ(p.morse_counts, (std::vector<std::int64_t>{1, 0, 0, 0, 1}));
    EXPECT_EQ(euler_char_of_plan(p).value, 2);
    EXPECT_FALSE(euler_char_of_plan(p).odd_dimension_checked);
}

TEST(Assemble, InfeasibleReturnsReport)
{
    auto tri = graph(2, {{"a", 0}, {"b", 1}, {"c", 2}}, {{"a", "b", S()}, {"b", "c", S()}, {"c", "a", S()}});
    EXPECT_TRUE(std::holds_alternative<HypothesisReport>(assemble(tri)));
}

TEST(ReebOfPlan, MatchesInput)
{
    auto single = reeb_of_plan(must_assemble(single_edge(3)));
    EXPECT_EQ(single.vertices.size(), 2u);
    EXPECT_EQ(single.edges.size(), 1u);
    auto g = path4(3, PreimageLabel::orientable_surface(1));
    auto path = reeb_of_plan(must_assemble(g));
    EXPECT_TRUE(graphs_isomorphic(path, g));
    EXPECT_EQ(path.edges[1].label, PreimageLabel::orientable_surface(1));
    EXPECT_TRUE(graphs_isomorphic(reeb_of_plan(must_assemble(torus_shape())), torus_shape()));
}

TEST(Assemble, EqualHeightsStaySeparate)
{
    auto g = graph(2, {{"r", 0}, {"f", 1}, {"l", 2}, {"t", 2}}, {{"r", "f", S()}, {"f", "l", S()}, {"f", "t", S()}});
    auto p = must_assemble(g);
    EXPECT_EQ(p.blocks.size(), 4u);
    EXPECT_EQ(p.critical_values.size(), 3u);
    EXPECT_EQ(p.morse_counts.back(), 2);
}

TEST(Assemble, RandomPropertiesOddDimension)
{
    reeb::testing::Rng rng(37);
    for (int c = 0; c < 150; ++c) {
        auto g = reeb::testing::with_random_labels(rng, reeb::testing::random_feasible_graph(rng, 12, 16), 3);
        auto p = must_assemble(g);
        EXPECT_EQ(euler_char_of_plan(p).value, 0) << "case " << c;
        GraphIndex idx(g);
        std::int64_t minima = 0, maxima = 0;
        for (std::size_t v = 0; v < idx.vertex_count(); ++v) {
            minima += extremum_kind(g, idx, v) == ExtremumKind::Minimum;
            maxima += extremum_kind(g, idx, v) == ExtremumKind::Maximum;
        }
        EXPECT_EQ(p.morse_counts.front(), minima);
        EXPECT_EQ(p.morse_counts.back(), maxima);
        for (const auto& b : p.blocks)
            EXPECT_EQ(b.value, *g.vertices[*idx.find(b.vertex)].height);
        for (const auto& t : p.tubes) {
            EXPECT_LT(p.block(t.lower_vertex).value, t.low);
            EXPECT_LT(t.low, t.high);
            EXPECT_LT(t.high, p.block(t.upper_vertex).value);
        }
    }
}

TEST(Assemble, SliceTableMatchesSpanningEdges)
{
    reeb::testing::Rng rng(41);
    for (int c = 0; c < 100; ++c) {
        auto g = reeb::testing::with_random_labels(rng, reeb::testing::random_feasible_graph(rng, 12, 16), 4);
        auto p = must_assemble(g);
        for (const auto& s : p.slices) {
            Rational t = (s.low + s.high) / 2;
            std::vector<std::string> expected;
            GraphIndex idx(g);
            for (std::size_t e = 0; e < idx.edge_count(); ++e) {
                auto a = *g.vertices[idx.ends(e)[0]].height, b = *g.vertices[idx.ends(e)[1]].height;
                if (std::min(a, b) < t && t < std::max(a, b))
                    expected.push_back(g.edges[e].id);
            }
            auto got = s.edges;
            std::sort(got.begin(), got.end());
            std::sort(expected.begin(), expected.end());
            EXPECT_EQ(got, expected);
        }
    }
}
