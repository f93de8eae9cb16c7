#include <gtest/gtest.h>

#include <filesystem>

#include "helpers.hpp"
#include "reeb/testing/generators.hpp"
#include "reeb/testing/meshes.hpp"

using namespace reeb;
using namespace fixtures;

TEST(GraphJson, SampleFilesRoundTrip)
{
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(REEB_DATA_DIR)) {
        if (entry.path().extension() != ".json")
            continue;
        auto first = graph_from_json(read_json_file(entry.path().string()));
        auto text = dump(to_json(first));
        auto second = graph_from_json(Json::parse(text));
        EXPECT_EQ(first, second) << entry.path();
        EXPECT_EQ(text, dump(to_json(second))) << entry.path();
        ++seen;
    }
    EXPECT_GE(seen, 8u);
}

TEST(GraphJson, RationalsAndBigIntegers)
{
    auto g = single_edge(4);
    g.vertices[1].height = Rational(7) / 3;
    IntMatrix big(1, 1);
    big(0, 0) = Integer("123456789012345678901234567890");
    g.edges[0].label = PreimageLabel::surgery(big);
    auto j = to_json(g);
    EXPECT_EQ(j["vertices"][1]["height"], "7/3");
    EXPECT_EQ(j["vertices"][0]["height"], 0);
    EXPECT_EQ(j["edges"][0]["label"]["matrix"][0][0], "123456789012345678901234567890");
    EXPECT_EQ(graph_from_json(Json::parse(j.dump())), g);
}

TEST(GraphJson, RandomGraphsRoundTrip)
{
    reeb::testing::Rng rng(53);
    for (int c = 0; c < 50; ++c) {
        auto g = reeb::testing::with_random_labels(rng, reeb::testing::random_feasible_graph(rng, 12, 16), 3 + c % 2);
        EXPECT_EQ(graph_from_json(Json::parse(to_json(g).dump())), g);
    }
}

TEST(GraphJson, MalformedInputs)
{
    EXPECT_THROW(graph_from_json(Json::parse(R"({"vertices": [], "edges": []})")), StructuralError);
    EXPECT_THROW(graph_from_json(Json::parse(R"({"dimension": 2, "vertices": [{"id": "a", "height": 1.5}], "edges": []})")),
                 StructuralError);
    EXPECT_THROW(graph_from_json(Json::parse(
                     R"({"dimension": 2, "vertices": [], "edges": [{"id": "e", "ends": ["a"], "label": {"kind": "sphere"}}]})")),
                 StructuralError);
    EXPECT_THROW(graph_from_json(Json::parse(
                     R"({"dimension": 2, "vertices": [], "edges": [{"id": "e", "ends": ["a", "b"], "label": {"kind": "torus"}}]})")),
                 StructuralError);
    EXPECT_THROW(read_json_file(data_file("does_not_exist.json")), StructuralError);
}

TEST(GraphJson, HeightsOptional)
{
    auto g = graph_from_json(read_json_file(data_file("torus_shape_unheighted.json")));
    EXPECT_FALSE(g.has_heights());
    EXPECT_FALSE(to_json(g)["vertices"][0].contains("height"));
}

TEST(PlanJson, HandlePlanRoundTrip)
{
    auto p = attach_plan_for_boundary(4, {PreimageLabel::surgery(IntMatrix{{1, 2}, {2, -3}}), S()});
    EXPECT_EQ(handle_plan_from_json(Json::parse(to_json(p).dump())), p);
    auto example = attach_plan_for_boundary(3, {S()});
    auto j = to_json(example);
    EXPECT_EQ(j["handles"][0]["bridge_to"], 1);
    EXPECT_TRUE(j["handles"][1]["framing"].is_null());
    EXPECT_EQ(handle_plan_from_json(j), example);
}

TEST(PlanJson, MorsePlanFields)
{
    auto j = to_json(std::get<MorsePlan>(assemble(path4(4, PreimageLabel::surgery(IntMatrix{{3}})))));
    EXPECT_EQ(j["schema_version"], schema_version);
    EXPECT_EQ(j["morse_counts"], Json::parse("[1,2,2,2,1]"));
    EXPECT_EQ(j["slices"].size(), 3u);
    EXPECT_EQ(j["slices"][1]["labels"][0]["matrix"], Json::parse("[[3]]"));
    EXPECT_EQ(j["orientable"], "yes");
    EXPECT_EQ(j["blocks"][1]["interval"], Json::parse(R"(["2/3", "4/3"])"));
}

TEST(MeshJson, RoundTrip)
{
    auto m = reeb::testing::seven_vertex_torus();
    EXPECT_EQ(mesh_from_json(Json::parse(to_json(m).dump())), m);
    EXPECT_THROW(mesh_from_json(Json::parse(R"({"vertices": [{"id": 0}], "triangles": []})")), StructuralError);
    EXPECT_THROW(mesh_from_json(Json::parse(R"({"vertices": [], "triangles": [[0, 1]]})")), StructuralError);
}

TEST(ReebJson, MirrorsGraphSchema)
{
    auto r = compute_reeb(reeb::testing::seven_vertex_torus());
    auto j = to_json(r);
    auto g = graph_from_json(j);
    EXPECT_EQ(g.vertices.size(), 4u);
    EXPECT_EQ(g.edges.size(), 4u);
    EXPECT_EQ(j["edges"][0]["level_euler"], Json::parse("[0, 0]"));
}

TEST(Dot, Attributes)
{
    auto dot = to_dot(path4(3, PreimageLabel::orientable_surface(1)));
    EXPECT_NE(dot.find("\"v1\" [height=\"1\"]"), std::string::npos);
    EXPECT_NE(dot.find("label=\"surface(genus 1)\""), std::string::npos);
    EXPECT_EQ(dot.rfind("graph \"K\" {", 0), 0u);
    auto plan_dot = to_dot(std::get<MorsePlan>(assemble(y_tree())));
    EXPECT_NE(plan_dot.find("--"), std::string::npos);
}
