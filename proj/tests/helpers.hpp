#pragma once

#include <string>
#include <vector>

#include "reeb/reeb.hpp"

namespace fixtures {

using namespace reeb;

inline LabeledGraph graph(int m, std::vector<std::pair<std::string, Rational>> vertices,
                          std::vector<std::tuple<std::string, std::string, PreimageLabel>> edges)
{
    LabeledGraph g;
    g.dimension = m;
    for (auto& [id, h] : vertices)
        g.vertices.push_back({id, h});
    int k = 0;
    for (auto& [a, b, l] : edges)
        g.edges.push_back({"e" + std::to_string(k++), {a, b}, l});
    return g;
}

inline PreimageLabel S() { return PreimageLabel::sphere(); }

inline LabeledGraph single_edge(int m) { return graph(m, {{"a", 0}, {"b", 1}}, {{"a", "b", S()}}); }

inline LabeledGraph path4(int m, PreimageLabel middle)
{
    return graph(m, {{"v0", 0}, {"v1", 1}, {"v2", 2}, {"v3", 3}},
                 {{"v0", "v1", S()}, {"v1", "v2", std::move(middle)}, {"v2", "v3", S()}});
}

/// Pendant below, double edge between two cycle vertices, pendant above.
inline LabeledGraph torus_shape()
{
    return graph(2, {{"p", 0}, {"x", 1}, {"y", 2}, {"q", 3}},
                 {{"p", "x", S()}, {"x", "y", S()}, {"x", "y", S()}, {"y", "q", S()}});
}

/// One minimum, a fork, two maxima.
inline LabeledGraph y_tree()
{
    return graph(2, {{"r", 0}, {"f", 1}, {"l", 2}, {"t", 3}}, {{"r", "f", S()}, {"f", "l", S()}, {"f", "t", S()}});
}

inline std::string data_file(const std::string& name) { return std::string(REEB_DATA_DIR) + "/" + name; }

}  // namespace fixtures
