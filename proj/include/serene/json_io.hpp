#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "serene/complex.hpp"
#include "serene/freecomplete.hpp"
#include "serene/latincomplete.hpp"
#include "serene/ncgraph.hpp"
#include "serene/quasigroup.hpp"
#include "serene/topology.hpp"

namespace serene {

using nlohmann::json;

/// Raised for unreadable files and malformed or schema-violating JSON.
class json_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw json_error("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw json_error("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

// ---- operation tables -----------------------------------------------------

inline json table_to_json(const OperationTable& t) {
    json j = {{"arity", t.arity}, {"order", t.order}, {"values", t.values}};
    if (!t.labels.empty()) j["labels"] = t.labels;
    return j;
}

inline OperationTable table_from_json(const json& j) {
    try {
        OperationTable t;
        t.arity = j.at("arity").get<int>();
        t.order = j.at("order").get<int>();
        t.values = j.at("values").get<std::vector<int>>();
        if (j.contains("labels")) t.labels = j.at("labels").get<std::vector<std::string>>();
        check_table(t);
        return t;
    } catch (const json::exception& e) {
        throw json_error(std::string("bad table JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw json_error(std::string("bad table JSON: ") + e.what());
    }
}

// ---- complexes and meshes ---------------------------------------------------

inline json complex_to_json(const SimpComplex& c) {
    json verts = json::array();
    for (const auto& v : c.vertices)
        verts.push_back({{"tag", v.tag == VertexTag::Input ? "in" : "out"}, {"label", v.label}});
    return {{"dim", c.dim}, {"vertices", verts}, {"facets", c.facets}};
}

inline SimpComplex complex_from_json(const json& j) {
    try {
        SimpComplex c;
        c.dim = j.at("dim").get<int>();
        int idx = 0;
        for (const auto& v : j.at("vertices")) {
            Vertex vert;
            std::string tag = v.value("tag", "in");
            if (tag != "in" && tag != "out") throw json_error("vertex tag must be 'in' or 'out'");
            vert.tag = tag == "in" ? VertexTag::Input : VertexTag::Output;
            vert.element = idx;
            vert.label = v.value("label", std::to_string(idx));
            c.vertices.push_back(std::move(vert));
            ++idx;
        }
        c.facets = j.at("facets").get<std::vector<std::vector<int>>>();
        c.normalize();
        check_complex(c);
        return c;
    } catch (const json::exception& e) {
        throw json_error(std::string("bad complex JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw json_error(std::string("bad complex JSON: ") + e.what());
    }
}

inline json mesh_to_json(const OrientedComplex& oc) {
    json j = complex_to_json(oc.base);
    j["orientation"] = oc.orientation;
    return j;
}

/// A mesh is a complex plus a per-facet orientation array; when the array
/// is missing, a coherent orientation is computed (and rejected when none
/// exists).
inline OrientedComplex mesh_from_json(const json& j) {
    auto base = complex_from_json(j);
    OrientedComplex oc;
    if (j.contains("orientation")) {
        try {
            oc.orientation = j.at("orientation").get<std::vector<int>>();
        } catch (const json::exception& e) {
            throw json_error(std::string("bad orientation array: ") + e.what());
        }
        oc.base = std::move(base);
        if (oc.orientation.size() != oc.base.facets.size())
            throw json_error("orientation array length must match the facet count");
    } else {
        auto r = orient(base);
        if (!r.orientable) throw std::domain_error("mesh is not orientable; no orientation exists");
        oc = std::move(r.oriented);
    }
    return oc;
}

// ---- partial cubes ----------------------------------------------------------

inline json partial_to_json(const PartialCube& p) {
    return {{"arity", p.arity}, {"order", p.order}, {"entries", p.entries}};
}

inline PartialCube partial_from_json(const json& j) {
    try {
        PartialCube p;
        p.arity = j.at("arity").get<int>();
        p.order = j.at("order").get<int>();
        if (j.contains("entries")) p.entries = j.at("entries").get<std::vector<std::vector<int>>>();
        return p;
    } catch (const json::exception& e) {
        throw json_error(std::string("bad partial cube JSON: ") + e.what());
    }
}

// ---- reports ----------------------------------------------------------------

inline json cert_to_json(const QuasigroupCert& c) {
    return {{"arity", c.table.arity},
            {"order", c.table.order},
            {"latin", c.latin},
            {"alternating", c.alternating},
            {"permutomorphism_group_size", c.permutomorphism_group_size},
            {"permutomorphism_group_exact", c.perm_group_exact}};
}

inline json component_report_to_json(const ComponentReport& rep) {
    json comps = json::array();
    for (const auto& info : rep.component_infos) {
        json links = json::array();
        for (const auto& [v, flag] : info.link_flags)
            links.push_back(
                {{"vertex", v}, {"flag", flag == LinkFlag::SphereLike ? "sphere_like" : "non_sphere_like"}});
        comps.push_back({{"facets", info.facet_indices},
                         {"face_counts", info.face_counts},
                         {"euler_characteristic", info.euler_characteristic},
                         {"z2_betti", info.betti},
                         {"orientable", info.orientable},
                         {"pseudomanifold", info.pseudomanifold},
                         {"link_flags", links}});
    }
    return {{"dim", rep.dim}, {"components", comps}};
}

inline json graph_to_json(const Graph& g) {
    json rep;
    rep["vertices"] = g.vertex_labels;
    rep["edges"] = json::array();
    for (auto [a, b] : g.edges) rep["edges"].push_back({a, b});
    rep["adjacency"] = g.adjacency;
    return rep;
}

inline json graph_report_to_json(const GraphReport& r) {
    json j;
    j["components"] = static_cast<int>(r.component_vertices.size());
    j["degrees"] = r.degrees;
    j["regular"] = r.regular;
    if (r.regular) j["degree"] = r.degree;
    j["bipartite"] = r.bipartite;
    j["girth"] = r.girth;
    j["hypercube_dims"] = json::array();
    for (const auto& d : r.hypercube_dims)
        j["hypercube_dims"].push_back(d ? json(*d) : json(nullptr));
    return j;
}

inline json serene_check_to_json(const SereneCheck& s) {
    return {{"facets_match", s.facets_match},
            {"first_divergence", s.first_divergence},
            {"gamma_prime_facets", s.gamma_prime_facets},
            {"gamma_prime_vertices", s.gamma_prime_vertices},
            {"component_count", s.component_count},
            {"chi_gamma_prime", s.chi_gamma_prime},
            {"chi_gamma", s.chi_gamma},
            {"z2_betti_gamma_prime", s.betti_gamma_prime},
            {"z2_betti_gamma", s.betti_gamma},
            {"orientable_gamma_prime", s.orientable_gamma_prime},
            {"orientable_gamma", s.orientable_gamma},
            {"invariants_match", s.invariants_match}};
}

inline json search_stats_to_json(const SearchStats& s) {
    json orders = json::array();
    for (auto [order, nodes] : s.nodes_per_order) orders.push_back({{"order", order}, {"nodes", nodes}});
    return {{"nodes_per_order", orders},
            {"total_nodes", s.total_nodes()},
            {"budget_exhausted", s.budget_exhausted},
            {"seed_conflict", s.seed_conflict}};
}

}  // namespace serene
