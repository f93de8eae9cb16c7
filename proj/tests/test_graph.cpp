#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"
#include "reeb/testing/generators.hpp"
#include "reeb/testing/oracles.hpp"

using namespace reeb;
using namespace fixtures;

namespace {

bool has_rule(const HypothesisReport& r, const std::string& rule)
{
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

}  // namespace

TEST(GoodFunction, DistinctEndpointsPass) { EXPECT_TRUE(validate_good_function(single_edge(2)).feasible()); }

TEST(GoodFunction, EqualEndpointsReported)
{
    auto g = graph(2, {{"a", 1}, {"b", 1}}, {{"a", "b", S()}});
    auto r = validate_good_function(g);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].rule, "good-function");
    EXPECT_EQ(r.violations[0].edges, std::vector<std::string>{"e0"});
}

TEST(GoodFunction, LoopReported)
{
    auto g = graph(2, {{"a", 0}, {"b", 1}}, {{"a", "b", S()}, {"b", "b", S()}});
    EXPECT_TRUE(has_rule(validate_good_function(g), "loop"));
}

TEST(GoodFunction, DanglingEndpointIsStructural)
{
    auto g = graph(2, {{"a", 0}}, {{"a", "zz", S()}});
    EXPECT_THROW(validate_good_function(g), StructuralError);
    auto r = validate_hypotheses(g);
    EXPECT_TRUE(r.structural());
}

TEST(LocalExtrema, Path)
{
    auto g = graph(2, {{"v0", 0}, {"v1", 1}, {"v2", 2}}, {{"v0", "v1", S()}, {"v1", "v2", S()}});
    EXPECT_EQ(local_extrema(g), (std::vector<std::string>{"v0", "v2"}));
}

TEST(LocalExtrema, StarCenterIsNotExtremal)
{
    auto g = graph(2, {{"lo", 0}, {"c", 1}, {"hi", 2}}, {{"lo", "c", S()}, {"c", "hi", S()}});
    EXPECT_EQ(local_extrema(g), (std::vector<std::string>{"lo", "hi"}));
}

TEST(LocalExtrema, Triangle)
{
    auto g = graph(2, {{"a", 0}, {"b", 1}, {"c", 2}}, {{"a", "b", S()}, {"b", "c", S()}, {"c", "a", S()}});
    EXPECT_EQ(local_extrema(g), (std::vector<std::string>{"a", "c"}));
}

TEST(LocalExtrema, InvariantUnderMonotoneChange)
{
    reeb::testing::Rng rng(3);
    for (int c = 0; c < 50; ++c) {
        auto g = reeb::testing::random_feasible_graph(rng, 10, 14);
        auto before = local_extrema(g);
        for (auto& v : g.vertices)
            v.height = *v.height * *v.height * *v.height * 7 - 2;  // strictly increasing
        EXPECT_EQ(local_extrema(g), before);
    }
}

TEST(Hypotheses, TriangleInfeasibleByDegree)
{
    auto g = graph(2, {{"a", 0}, {"b", 1}, {"c", 2}}, {{"a", "b", S()}, {"b", "c", S()}, {"c", "a", S()}});
    auto r = validate_hypotheses(g);
    EXPECT_FALSE(r.feasible());
    EXPECT_FALSE(r.structural());
    ASSERT_TRUE(has_rule(r, "extremum-degree"));
    EXPECT_NE(r.violations[0].message.find("extremum vertex degree 2"), std::string::npos);
}

TEST(Hypotheses, SingleEdgeFeasible) { EXPECT_TRUE(validate_hypotheses(single_edge(3)).feasible()); }

TEST(Hypotheses, NonSphereAtExtremum)
{
    auto g = graph(3, {{"v0", 0}, {"v1", 1}, {"v2", 2}},
                   {{"v0", "v1", PreimageLabel::orientable_surface(1)}, {"v1", "v2", S()}});
    EXPECT_TRUE(has_rule(validate_hypotheses(g), "extremum-label"));
}

TEST(Hypotheses, IllegalLabelForDimension)
{
    EXPECT_TRUE(has_rule(validate_hypotheses(path4(4, PreimageLabel::orientable_surface(1))), "label-legal"));
    EXPECT_TRUE(has_rule(validate_hypotheses(path4(3, PreimageLabel::klein_sum(3))), "label-legal"));
    EXPECT_TRUE(validate_hypotheses(path4(3, PreimageLabel::klein_sum(2))).feasible());
}

TEST(Hypotheses, StructuralOrder)
{
    LabeledGraph g = single_edge(1);
    EXPECT_EQ(validate_hypotheses(g).violations.front().rule, "structure.dimension");
    g = single_edge(2);
    g.vertices[0].height.reset();
    EXPECT_EQ(validate_hypotheses(g).violations.front().rule, "structure.height");
    g = graph(2, {{"a", 0}}, {});
    EXPECT_EQ(validate_hypotheses(g).violations.front().rule, "nonempty");
    g = graph(2, {{"a", 0}, {"b", 1}, {"c", 0}, {"d", 1}}, {{"a", "b", S()}, {"c", "d", S()}});
    EXPECT_TRUE(has_rule(validate_hypotheses(g), "connected"));
}

TEST(Hypotheses, Deterministic)
{
    auto g = torus_shape();
    g.vertices[3].height = Rational(1);
    auto a = validate_hypotheses(g), b = validate_hypotheses(g);
    ASSERT_EQ(a.violations.size(), b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i)
        EXPECT_EQ(a.violations[i].message, b.violations[i].message);
}

TEST(Synthesis, PathOnThreeVertices)
{
    LabeledGraph g;
    g.vertices = {{"a", std::nullopt}, {"b", std::nullopt}, {"c", std::nullopt}};
    g.edges = {{"ab", {"a", "b"}, S()}, {"bc", {"b", "c"}, S()}};
    auto r = synthesize_good_function(g);
    ASSERT_TRUE(std::holds_alternative<std::vector<std::int64_t>>(r));
    EXPECT_TRUE(validate_hypotheses(with_heights(g, std::get<0>(r))).feasible());
}

TEST(Synthesis, FourCycleInfeasible)
{
    LabeledGraph g;
    for (const char* id : {"a", "b", "c", "d"})
        g.vertices.push_back({id, std::nullopt});
    g.edges = {{"1", {"a", "b"}, S()}, {"2", {"b", "c"}, S()}, {"3", {"c", "d"}, S()}, {"4", {"d", "a"}, S()}};
    auto r = synthesize_good_function(g);
    ASSERT_TRUE(std::holds_alternative<Infeasible>(r));
    EXPECT_FALSE(std::get<Infeasible>(r).witness.empty());
}

TEST(Synthesis, TorusShapeFrozenHeights)
{
    auto g = torus_shape();
    for (auto& v : g.vertices)
        v.height.reset();
    auto r = synthesize_good_function(g);
    ASSERT_TRUE(std::holds_alternative<std::vector<std::int64_t>>(r));
    // Exhaustive ordering search: pendant, cycle, cycle, pendant.
    EXPECT_EQ(std::get<0>(r), (std::vector<std::int64_t>{0, 1, 2, 3}));
}

TEST(Synthesis, LoopIsInfeasible)
{
    LabeledGraph g;
    g.vertices = {{"a", std::nullopt}, {"b", std::nullopt}};
    g.edges = {{"ab", {"a", "b"}, S()}, {"bb", {"b", "b"}, S()}};
    EXPECT_TRUE(std::holds_alternative<Infeasible>(synthesize_good_function(g)));
}

TEST(Synthesis, DisconnectedIsPrecondition)
{
    LabeledGraph g;
    g.vertices = {{"a", std::nullopt}, {"b", std::nullopt}, {"c", std::nullopt}, {"d", std::nullopt}};
    g.edges = {{"ab", {"a", "b"}, S()}, {"cd", {"c", "d"}, S()}};
    EXPECT_THROW(synthesize_good_function(g), PreconditionError);
}

TEST(Synthesis, AgreesWithExhaustiveOrderings)
{
    reeb::testing::Rng rng(17);
    for (int c = 0; c < 1500; ++c) {
        int n = reeb::testing::uniform(rng, 2, 6);
        auto g = reeb::testing::random_multigraph(rng, n, reeb::testing::uniform(rng, n - 1, 9));
        auto r = synthesize_good_function(g);
        bool found = std::holds_alternative<std::vector<std::int64_t>>(r);
        ASSERT_EQ(found, reeb::testing::exhaustive_good_function_exists(g)) << "case " << c;
        if (found)
            EXPECT_TRUE(validate_hypotheses(with_heights(g, std::get<0>(r))).feasible());
    }
}

TEST(Synthesis, Deterministic)
{
    reeb::testing::Rng rng(5);
    auto g = reeb::testing::random_multigraph(rng, 6, 8);
    auto a = synthesize_good_function(g), b = synthesize_good_function(g);
    EXPECT_EQ(a.index(), b.index());
    if (a.index() == 0)
        EXPECT_EQ(std::get<0>(a), std::get<0>(b));
}
