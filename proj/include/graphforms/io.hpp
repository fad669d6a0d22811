#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphforms/braiding.hpp"
#include "graphforms/complex_structure.hpp"
#include "graphforms/first_order.hpp"
#include "graphforms/graph.hpp"

namespace graphforms {

using Json = nlohmann::ordered_json;

// --- canonical scalar rendering ---------------------------------------------

/// Canonical report rendering: rationals as "p" / "p/q" strings, Gaussian
/// rationals as {re, im} objects. No floating point anywhere.
inline Json render_scalar(const GaussianRational& z) {
    return Json{{"re", z.re().to_string()}, {"im", z.im().to_string()}};
}

inline GaussianRational parse_scalar(const Json& j) {
    if (j.is_string()) return GaussianRational(Rational::parse(j.get<std::string>()));
    if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
    if (j.is_object() && j.contains("re") && j.contains("im"))
        return GaussianRational(Rational::parse(j.at("re").get<std::string>()),
                                Rational::parse(j.at("im").get<std::string>()));
    raise("ParseError", "scalar must be \"p/q\", an integer, or {re, im}");
}

inline Json render_vec(const Vec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(render_scalar(x));
    return out;
}

inline Json render_matrix(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(render_scalar(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

// --- input files -------------------------------------------------------------

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise("ParseError", path + ": cannot open");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        raise("ParseError", path + ": " + e.what());
    }
    return j;
}

/// {"vertices": ["1", ...], "edges": [["1","2"], ...]}
inline BidiGraph parse_graph(const Json& j, const std::string& where = "graph") {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        raise("ParseError", where + ": expected {vertices, edges}");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_string()) raise("ParseError", where + ": vertex labels must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            raise("ParseError", where + ": each edge must be a [source, target] pair");
        edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    return BidiGraph::validate(std::move(vertices), edges);
}

inline Json render_graph(const BidiGraph& g) {
    Json vertices = Json::array();
    for (const auto& v : g.vertices()) vertices.push_back(v);
    Json edges = Json::array();
    for (const auto& [s, t] : g.edges()) edges.push_back(Json::array({g.label(s), g.label(t)}));
    return Json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

/// {"x|z": {"y": "w", ...}, ...}: one block per ordered vertex pair with
/// 2-paths, mapping each midpoint to its image. Missing pair keys are
/// rejected downstream by SigmaOperator::build.
inline SigmaSpec parse_sigma_spec(const Json& j, const BidiGraph& g,
                                  const std::string& where = "sigma") {
    if (!j.is_object()) raise("ParseError", where + ": expected an object of blocks");
    SigmaSpec spec;
    for (const auto& [key, block] : j.items()) {
        auto sep = key.find('|');
        if (sep == std::string::npos)
            raise("ParseError", where + ": block key '" + key + "' must be \"x|z\"");
        int x = g.vertex(key.substr(0, sep));
        int z = g.vertex(key.substr(sep + 1));
        if (!block.is_object())
            raise("ParseError", where + ": block '" + key + "' must map midpoints to midpoints");
        for (const auto& [y, w] : block.items())
            spec.blocks[{x, z}][g.vertex(y)] = g.vertex(w.get<std::string>());
    }
    return spec;
}

inline Json render_sigma_spec(const SigmaSpec& spec, const BidiGraph& g) {
    Json out = Json::object();
    for (const auto& [key, block] : spec.blocks) {
        Json b = Json::object();
        for (const auto& [y, w] : block) b[g.label(y)] = g.label(w);
        out[g.label(key.first) + "|" + g.label(key.second)] = std::move(b);
    }
    return out;
}

/// {"holomorphic_edges": [["1","2"], ...]}
inline JSpec parse_j_spec(const Json& j, const std::string& where = "j") {
    if (!j.is_object() || !j.contains("holomorphic_edges"))
        raise("ParseError", where + ": expected {holomorphic_edges}");
    JSpec spec;
    for (const auto& e : j.at("holomorphic_edges")) {
        if (!e.is_array() || e.size() != 2)
            raise("ParseError", where + ": each holomorphic edge must be a pair");
        spec.holomorphic_edges.emplace_back(e.at(0).get<std::string>(),
                                            e.at(1).get<std::string>());
    }
    return spec;
}

inline Json render_j_spec(const JSpec& spec) {
    Json edges = Json::array();
    for (const auto& [s, t] : spec.holomorphic_edges) edges.push_back(Json::array({s, t}));
    return Json{{"holomorphic_edges", std::move(edges)}};
}

/// Vertex-label -> scalar map.
inline AlgebraElement parse_algebra_element(const Json& j, const BidiGraph& g,
                                            const std::string& where = "function") {
    if (!j.is_object()) raise("ParseError", where + ": expected a vertex->scalar object");
    AlgebraElement f = AlgebraElement::zero(g);
    for (const auto& [label, value] : j.items()) f.values[g.vertex(label)] = parse_scalar(value);
    return f;
}

// --- digests ------------------------------------------------------------------

inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise("ParseError", path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64_hex(ss.str());
}

}  // namespace graphforms
