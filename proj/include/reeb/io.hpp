#pragma once

// JSON and DOT serialization of graphs, plans, meshes, Reeb graphs and
// reports. Rationals are written as JSON integers when integral and within
// 64 bits, and as "p/q" strings otherwise.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reeb/error.hpp"
#include "reeb/graph.hpp"
#include "reeb/handle_calc.hpp"
#include "reeb/label.hpp"
#include "reeb/morse_plan.hpp"
#include "reeb/numeric.hpp"
#include "reeb/pl_surface.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/zalgebra.hpp"

namespace reeb {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

namespace io {

inline Json number(const Integer& i)
{
    if (fits_int64(i))
        return static_cast<std::int64_t>(i);
    return i.str();
}

inline Json number(const Rational& r)
{
    if (is_integral(r) && fits_int64(numerator(r)))
        return static_cast<std::int64_t>(numerator(r));
    return to_string(r);
}

inline Rational rational_of(const Json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw StructuralError(what + ": expected an integer or a \"p/q\" string");
}

inline Integer integer_of(const Json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string())
        return parse_integer(j.get<std::string>());
    throw StructuralError(what + ": expected an integer");
}

inline const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw StructuralError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline int int_field(const Json& j, const char* key, const std::string& where)
{
    const auto& v = field(j, key, where);
    if (!v.is_number_integer())
        throw StructuralError(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

inline bool bool_field(const Json& j, const char* key, const std::string& where)
{
    const auto& v = field(j, key, where);
    if (!v.is_boolean())
        throw StructuralError(where + ": field '" + key + "' must be a boolean");
    return v.get<bool>();
}

inline std::string string_field(const Json& j, const char* key, const std::string& where)
{
    const auto& v = field(j, key, where);
    if (!v.is_string())
        throw StructuralError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline Json strings(const std::vector<std::string>& v)
{
    Json out = Json::array();
    for (const auto& s : v)
        out.push_back(s);
    return out;
}

}  // namespace io

// ---- matrices and labels ----

inline Json to_json(const IntMatrix& m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(io::number(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

inline IntMatrix matrix_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array())
        throw StructuralError(where + ": matrix must be an array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    if (rows) {
        if (!j[0].is_array())
            throw StructuralError(where + ": matrix rows must be arrays");
        cols = j[0].size();
    }
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw StructuralError(where + ": matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = io::integer_of(j[i][c], where);
    }
    return m;
}

inline Json to_json(const PreimageLabel& l)
{
    Json out;
    if (l.is_sphere_kind()) {
        out["kind"] = "sphere";
    } else if (auto* s = l.surface()) {
        out["kind"] = "surface";
        out["orientable"] = s->orientable;
        out["genus"] = s->genus;
        out["crosscaps"] = s->crosscaps;
    } else {
        out["kind"] = "surgery";
        out["matrix"] = to_json(l.surgery()->linking);
    }
    return out;
}

inline PreimageLabel label_from_json(const Json& j, const std::string& where)
{
    auto kind = io::string_field(j, "kind", where);
    if (kind == "sphere")
        return PreimageLabel::sphere();
    if (kind == "surface") {
        bool orientable = j.contains("orientable") ? io::bool_field(j, "orientable", where) : true;
        int genus = j.contains("genus") ? io::int_field(j, "genus", where) : 0;
        int crosscaps = j.contains("crosscaps") ? io::int_field(j, "crosscaps", where) : 0;
        if (genus < 0 || crosscaps < 0)
            throw StructuralError(where + ": genus and crosscaps must be non-negative");
        return SurfaceLabel{genus, orientable, crosscaps};
    }
    if (kind == "surgery")
        return PreimageLabel::surgery(matrix_from_json(io::field(j, "matrix", where), where));
    throw StructuralError(where + ": unknown label kind '" + kind + "'");
}

// ---- graphs ----

inline Json to_json(const LabeledGraph& g)
{
    Json out;
    out["dimension"] = g.dimension;
    out["vertices"] = Json::array();
    for (const auto& v : g.vertices) {
        Json jv;
        jv["id"] = v.id;
        if (v.height)
            jv["height"] = io::number(*v.height);
        out["vertices"].push_back(std::move(jv));
    }
    out["edges"] = Json::array();
    for (const auto& e : g.edges)
        out["edges"].push_back({{"id", e.id}, {"ends", {e.ends[0], e.ends[1]}}, {"label", to_json(e.label)}});
    return out;
}

/// Parses the graph schema. Only the JSON shape is checked here; id and
/// hypothesis checks belong to validation.
inline LabeledGraph graph_from_json(const Json& j)
{
    LabeledGraph g;
    g.dimension = io::int_field(j, "dimension", "graph");
    const auto& vs = io::field(j, "vertices", "graph");
    const auto& es = io::field(j, "edges", "graph");
    if (!vs.is_array() || !es.is_array())
        throw StructuralError("graph: 'vertices' and 'edges' must be arrays");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string where = "vertex " + std::to_string(i);
        GraphVertex v;
        v.id = io::string_field(vs[i], "id", where);
        if (vs[i].contains("height") && !vs[i]["height"].is_null())
            v.height = io::rational_of(vs[i]["height"], where + " height");
        g.vertices.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string where = "edge " + std::to_string(i);
        GraphEdge e;
        e.id = io::string_field(es[i], "id", where);
        const auto& ends = io::field(es[i], "ends", where);
        if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
            throw StructuralError(where + ": 'ends' must be two vertex ids");
        e.ends = {ends[0].get<std::string>(), ends[1].get<std::string>()};
        e.label = es[i].contains("label") ? label_from_json(es[i]["label"], where + " label") : PreimageLabel::sphere();
        g.edges.push_back(std::move(e));
    }
    return g;
}

// ---- handle plans ----

inline Json to_json(const Handle& h)
{
    Json out;
    out["index"] = h.index;
    out["component"] = h.component;
    out["orientation_preserving"] = h.orientation_preserving;
    out["framing"] = h.framing ? io::number(*h.framing) : Json(nullptr);
    if (h.bridge_to)
        out["bridge_to"] = *h.bridge_to;
    if (!h.linking.empty()) {
        out["linking"] = Json::array();
        for (const auto& x : h.linking)
            out["linking"].push_back(io::number(x));
    }
    return out;
}

inline Json to_json(const HandlebodyPlan& p)
{
    Json out;
    out["dimension"] = p.dimension;
    out["most_fundamental"] = p.most_fundamental;
    out["handles"] = Json::array();
    for (const auto& h : p.handles)
        out["handles"].push_back(to_json(h));
    return out;
}

inline HandlebodyPlan handle_plan_from_json(const Json& j)
{
    HandlebodyPlan p;
    p.dimension = io::int_field(j, "dimension", "plan");
    p.most_fundamental = j.contains("most_fundamental") ? io::bool_field(j, "most_fundamental", "plan") : true;
    const auto& hs = io::field(j, "handles", "plan");
    if (!hs.is_array())
        throw StructuralError("plan: 'handles' must be an array");
    for (std::size_t i = 0; i < hs.size(); ++i) {
        std::string where = "handle " + std::to_string(i);
        Handle h;
        h.index = io::int_field(hs[i], "index", where);
        h.component = io::int_field(hs[i], "component", where);
        h.orientation_preserving = hs[i].contains("orientation_preserving")
                                       ? io::bool_field(hs[i], "orientation_preserving", where)
                                       : true;
        if (hs[i].contains("framing") && !hs[i]["framing"].is_null())
            h.framing = io::integer_of(hs[i]["framing"], where + " framing");
        if (hs[i].contains("bridge_to") && !hs[i]["bridge_to"].is_null())
            h.bridge_to = io::int_field(hs[i], "bridge_to", where);
        if (hs[i].contains("linking"))
            for (const auto& x : hs[i]["linking"])
                h.linking.push_back(io::integer_of(x, where + " linking"));
        p.handles.push_back(std::move(h));
    }
    return p;
}

inline Json to_json(const AbelianInvariants& a)
{
    Json out;
    out["free_rank"] = a.free_rank;
    out["torsion"] = Json::array();
    for (const auto& t : a.torsion)
        out["torsion"].push_back(io::number(t));
    out["text"] = to_string(a);
    return out;
}

inline Json to_json(const BoundaryInvariants& b)
{
    Json out;
    out["dimension"] = b.dimension;
    out["handlebody_euler"] = io::number(b.handlebody_euler);
    out["components"] = Json::array();
    for (const auto& c : b.components) {
        Json jc;
        jc["euler"] = io::number(c.euler);
        jc["orientable"] = c.orientable;
        if (b.dimension == 3)
            jc[c.orientable ? "genus" : "crosscaps"] = c.orientable ? c.genus : c.crosscaps;
        jc["h1"] = c.h1 ? to_json(*c.h1) : Json(nullptr);
        out["components"].push_back(std::move(jc));
    }
    return out;
}

// ---- Morse plans ----

inline Json to_json(const MorsePlan& plan)
{
    Json out;
    out["schema_version"] = schema_version;
    out["dimension"] = plan.dimension;
    out["blocks"] = Json::array();
    for (const auto& b : plan.blocks) {
        Json jb;
        jb["vertex"] = b.vertex;
        jb["kind"] = to_string(b.kind);
        jb["value"] = io::number(b.value);
        jb["interval"] = {io::number(b.level_low), io::number(b.level_high)};
        jb["indices"] = b.indices;
        if (b.kind == BlockKind::Internal) {
            jb["down_edges"] = io::strings(b.down_edges);
            jb["up_edges"] = io::strings(b.up_edges);
            jb["lower_labels"] = Json::array();
            for (const auto& l : b.lower_labels)
                jb["lower_labels"].push_back(to_json(l));
            jb["upper_labels"] = Json::array();
            for (const auto& l : b.upper_labels)
                jb["upper_labels"].push_back(to_json(l));
            jb["upper_plan"] = to_json(*b.upper_plan);
            jb["lower_plan"] = to_json(*b.lower_plan);
            jb["connected_singular_level"] = b.connected_singular_level;
        }
        out["blocks"].push_back(std::move(jb));
    }
    out["tubes"] = Json::array();
    for (const auto& t : plan.tubes)
        out["tubes"].push_back({{"edge", t.edge},
                                {"label", to_json(t.label)},
                                {"interval", {io::number(t.low), io::number(t.high)}},
                                {"lower", t.lower_vertex},
                                {"upper", t.upper_vertex},
                                {"lower_slot", t.lower_slot},
                                {"upper_slot", t.upper_slot}});
    out["critical_values"] = Json::array();
    for (const auto& c : plan.critical_values)
        out["critical_values"].push_back(io::number(c));
    out["morse_counts"] = plan.morse_counts;
    out["euler"] = io::number(euler_char_of_plan(plan).value);
    out["slices"] = Json::array();
    for (const auto& s : plan.slices) {
        Json js;
        js["interval"] = {io::number(s.low), io::number(s.high)};
        js["edges"] = io::strings(s.edges);
        js["labels"] = Json::array();
        for (const auto& l : s.labels)
            js["labels"].push_back(to_json(l));
        out["slices"].push_back(std::move(js));
    }
    out["orientable"] = to_string(plan.orientable);
    return out;
}

// ---- meshes ----

inline Json to_json(const TriangulatedSurface& mesh)
{
    Json out;
    out["vertices"] = Json::array();
    for (const auto& v : mesh.vertices)
        out["vertices"].push_back({{"id", v.id}, {"height", v.height}});
    out["triangles"] = Json::array();
    for (const auto& t : mesh.triangles)
        out["triangles"].push_back({t[0], t[1], t[2]});
    return out;
}

inline TriangulatedSurface mesh_from_json(const Json& j)
{
    TriangulatedSurface mesh;
    const auto& vs = io::field(j, "vertices", "mesh");
    const auto& ts = io::field(j, "triangles", "mesh");
    if (!vs.is_array() || !ts.is_array())
        throw StructuralError("mesh: 'vertices' and 'triangles' must be arrays");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string where = "mesh vertex " + std::to_string(i);
        const auto& id = io::field(vs[i], "id", where);
        const auto& h = io::field(vs[i], "height", where);
        if (!id.is_number_integer() || !h.is_number_integer())
            throw StructuralError(where + ": id and height must be integers");
        mesh.vertices.push_back({id.get<std::int64_t>(), h.get<std::int64_t>()});
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto& t = ts[i];
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
            !t[2].is_number_integer())
            throw StructuralError("triangle " + std::to_string(i) + ": expected three integer vertex ids");
        mesh.triangles.push_back({t[0].get<std::int64_t>(), t[1].get<std::int64_t>(), t[2].get<std::int64_t>()});
    }
    return mesh;
}

// ---- Reeb graphs ----

/// Same layout as the graph schema, plus per-arc level Euler characteristics.
inline Json to_json(const ReebGraph& r)
{
    Json out = to_json(to_labeled_graph(r));
    for (std::size_t a = 0; a < r.arcs.size(); ++a)
        out["edges"][a]["level_euler"] = r.arcs[a].level_euler;
    for (std::size_t n = 0; n < r.nodes.size(); ++n)
        out["vertices"][n]["plateau"] = r.nodes[n].plateau;
    return out;
}

// ---- reports ----

inline Json to_json(const HypothesisReport& r)
{
    Json out;
    out["feasible"] = r.feasible();
    out["violations"] = Json::array();
    for (const auto& v : r.violations)
        out["violations"].push_back({{"rule", v.rule},
                                     {"vertices", io::strings(v.vertices)},
                                     {"edges", io::strings(v.edges)},
                                     {"message", v.message}});
    return out;
}

// ---- DOT ----

namespace io {

inline std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace io

inline std::string to_dot(const LabeledGraph& g, const std::string& name = "K")
{
    std::ostringstream os;
    os << "graph " << io::dot_quote(name) << " {\n";
    for (const auto& v : g.vertices) {
        os << "  " << io::dot_quote(v.id);
        if (v.height)
            os << " [height=" << io::dot_quote(to_string(*v.height)) << "]";
        os << ";\n";
    }
    for (const auto& e : g.edges)
        os << "  " << io::dot_quote(e.ends[0]) << " -- " << io::dot_quote(e.ends[1])
           << " [id=" << io::dot_quote(e.id) << ", label=" << io::dot_quote(e.label.describe()) << "];\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const MorsePlan& plan) { return to_dot(reeb_of_plan(plan), "plan"); }

inline std::string to_dot(const ReebGraph& r) { return to_dot(to_labeled_graph(r), "reeb"); }

// ---- files ----

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw StructuralError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw StructuralError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace reeb
