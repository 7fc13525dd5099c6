#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "serene/complex.hpp"
#include "serene/quasigroup.hpp"

#include <boost/rational.hpp>

namespace serene {

/// Simple undirected graph with labeled vertices.
struct Graph {
    std::vector<std::string> vertex_labels;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
    std::vector<std::vector<int>> adjacency;

    int size() const { return static_cast<int>(vertex_labels.size()); }

    void finish() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        adjacency.assign(vertex_labels.size(), {});
        for (auto [a, b] : edges) {
            adjacency[a].push_back(b);
            adjacency[b].push_back(a);
        }
        for (auto& row : adjacency) std::sort(row.begin(), row.end());
    }
};

namespace detail {

inline std::string tuple_label(const OperationTable& t, const std::vector<int>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += t.label_of(a[i]);
    }
    return s + ")";
}

}  // namespace detail

/// The NC graph: vertices are canonical alt_n-orbit representatives of the
/// noncommuting tuples, joined when they share all inputs (rule 1) or share
/// n-1 inputs and their outputs agree (rule 2).
inline Graph nc_graph(const OperationTable& t) {
    if (!is_latin(t) || !is_alternating(t))
        throw std::invalid_argument("nc_graph requires an alternating quasigroup");
    auto reps = nct_orbits(t);
    Graph g;
    g.vertex_labels.reserve(reps.size());
    std::vector<std::set<int>> entry_sets;
    std::vector<int> values;
    for (const auto& a : reps) {
        g.vertex_labels.push_back(detail::tuple_label(t, a));
        entry_sets.push_back({a.begin(), a.end()});
        values.push_back(t.apply(a));
    }
    const int n = t.arity;
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j) {
            bool rule1 = entry_sets[i] == entry_sets[j];
            bool rule2 = false;
            if (!rule1 && values[i] == values[j]) {
                std::vector<int> common;
                std::set_intersection(entry_sets[i].begin(), entry_sets[i].end(), entry_sets[j].begin(),
                                      entry_sets[j].end(), std::back_inserter(common));
                rule2 = static_cast<int>(common.size()) == n - 1;
            }
            if (rule1 || rule2) g.edges.push_back({i, j});
        }
    g.finish();
    return g;
}

/// Johnson-style subset assignment: every NC vertex maps to the vertex set
/// of its facet inside the simplicization, i.e. an (n+1)-subset of the
/// s = |inp|+|out| complex vertices. Adjacency must then coincide with
/// "intersection has exactly n elements"; verified across all pairs.
inline std::vector<std::vector<int>> johnson_embedding(const OperationTable& t) {
    auto reps = nct_orbits(t);
    auto c = simplicize(t);
    std::map<Vertex, int> vidx;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) vidx[c.vertices[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> subsets;
    subsets.reserve(reps.size());
    for (const auto& a : reps) {
        std::vector<int> s;
        for (int e : a) s.push_back(vidx.at({VertexTag::Input, e, ""}));
        s.push_back(vidx.at({VertexTag::Output, t.apply(a), ""}));
        std::sort(s.begin(), s.end());
        subsets.push_back(std::move(s));
    }

    std::set<std::vector<int>> distinct(subsets.begin(), subsets.end());
    if (distinct.size() != subsets.size())
        throw std::logic_error("johnson_embedding: subset images are not pairwise distinct");

    auto g = nc_graph(t);
    std::set<std::pair<int, int>> edge_set(g.edges.begin(), g.edges.end());
    const int n = t.arity;
    for (int i = 0; i < static_cast<int>(subsets.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(subsets.size()); ++j) {
            std::vector<int> common;
            std::set_intersection(subsets[i].begin(), subsets[i].end(), subsets[j].begin(),
                                  subsets[j].end(), std::back_inserter(common));
            bool adjacent = edge_set.count({i, j}) > 0;
            if (adjacent != (static_cast<int>(common.size()) == n))
                throw std::logic_error("johnson_embedding: adjacency mismatch at pair (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return subsets;
}

struct GraphReport {
    std::vector<std::vector<int>> component_vertices;
    std::vector<int> degrees;
    bool regular = false;
    int degree = -1;  // when regular
    bool bipartite = false;
    int girth = -1;  // -1 when acyclic
    std::vector<std::optional<int>> hypercube_dims;  // per component
};

namespace detail {

inline std::vector<std::vector<int>> graph_components(const Graph& g) {
    std::vector<int> comp(g.size(), -1);
    std::vector<std::vector<int>> out;
    for (int root = 0; root < g.size(); ++root) {
        if (comp[root] != -1) continue;
        int id = static_cast<int>(out.size());
        out.push_back({});
        std::vector<int> stack = {root};
        comp[root] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (int w : g.adjacency[v])
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

/// Hypercube recognition on one component: size 2^d and d-regular gates,
/// then a greedy bitmask coordinatization from an arbitrary root (valid
/// because the cube's automorphisms act transitively on ordered neighbor
/// bases), verified edge by edge.
inline std::optional<int> hypercube_dim(const Graph& g, const std::vector<int>& comp) {
    const std::size_t sz = comp.size();
    if (sz == 0) return std::nullopt;
    if (sz == 1) return 0;
    int d = 0;
    while ((std::size_t{1} << d) < sz) ++d;
    if ((std::size_t{1} << d) != sz) return std::nullopt;
    std::set<int> inside(comp.begin(), comp.end());
    for (int v : comp)
        if (static_cast<int>(g.adjacency[v].size()) != d) return std::nullopt;

    std::map<int, unsigned> label;
    int root = comp[0];
    label[root] = 0;
    for (int i = 0; i < d; ++i) label[g.adjacency[root][i]] = 1u << i;
    // BFS by levels: a vertex's label is the OR of its already-labeled neighbors
    std::vector<int> frontier(g.adjacency[root].begin(), g.adjacency[root].end());
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier)
            for (int w : g.adjacency[v]) {
                if (label.count(w)) continue;
                unsigned acc = 0;
                int known = 0;
                for (int x : g.adjacency[w])
                    if (label.count(x)) {
                        acc |= label[x];
                        ++known;
                    }
                if (known < 2) continue;  // not determined yet
                label[w] = acc;
                next.push_back(w);
            }
        frontier = std::move(next);
    }
    if (label.size() != sz) return std::nullopt;
    std::set<unsigned> used;
    for (auto [v, l] : label)
        if (!used.insert(l).second) return std::nullopt;
    for (int v : comp)
        for (int w : g.adjacency[v]) {
            unsigned diff = label[v] ^ label[w];
            if (__builtin_popcount(diff) != 1) return std::nullopt;
        }
    return d;
}

}  // namespace detail

/// Exact small-graph invariants: components, degree spectrum, bipartiteness,
/// girth, and hypercube recognition for components up to 64 vertices.
inline GraphReport graph_report(const Graph& g) {
    GraphReport rep;
    rep.component_vertices = detail::graph_components(g);
    rep.degrees.resize(g.size());
    for (int v = 0; v < g.size(); ++v) rep.degrees[v] = static_cast<int>(g.adjacency[v].size());
    rep.regular = true;
    for (int v = 0; v < g.size(); ++v)
        if (rep.degrees[v] != rep.degrees[0]) rep.regular = false;
    if (rep.regular && g.size() > 0) rep.degree = rep.degrees[0];

    // bipartite via 2-coloring
    rep.bipartite = true;
    std::vector<int> color(g.size(), -1);
    for (int root = 0; root < g.size() && rep.bipartite; ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        std::vector<int> stack = {root};
        while (!stack.empty() && rep.bipartite) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.adjacency[v]) {
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    stack.push_back(w);
                } else if (color[w] == color[v]) {
                    rep.bipartite = false;
                }
            }
        }
    }

    // girth: shortest cycle through any edge (remove edge, BFS distance)
    int best = -1;
    for (auto [a, b] : g.edges) {
        std::vector<int> dist(g.size(), -1);
        dist[a] = 0;
        std::vector<int> queue = {a};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int w : g.adjacency[v]) {
                if ((v == a && w == b) || (v == b && w == a)) continue;
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if (dist[b] != -1) {
            int cyc = dist[b] + 1;
            if (best == -1 || cyc < best) best = cyc;
        }
    }
    rep.girth = best;

    for (const auto& comp : rep.component_vertices)
        rep.hypercube_dims.push_back(comp.size() <= 64 ? detail::hypercube_dim(g, comp) : std::nullopt);
    return rep;
}

using Rational = boost::rational<long long>;

/// Barycentric data realizing the graph inside the open serenation: a
/// vertex sits at the barycenter of its facet (weight 1/(n+1) each); an
/// edge midpoint carries weight 1/n on the n vertices the two facets share.
struct RetractEmbedding {
    std::vector<std::map<Vertex, Rational>> vertex_points;
    std::vector<std::map<Vertex, Rational>> edge_points;  // parallel to graph edges
    Graph graph;
};

inline RetractEmbedding retract_embedding(const OperationTable& t) {
    auto reps = nct_orbits(t);
    if (reps.empty()) throw std::invalid_argument("retract_embedding requires a nonempty nct");
    RetractEmbedding emb;
    emb.graph = nc_graph(t);
    const int n = t.arity;

    auto facet_verts = [&](const std::vector<int>& a) {
        std::set<Vertex> s;
        for (int e : a) s.insert({VertexTag::Input, e, t.label_of(e)});
        s.insert({VertexTag::Output, t.apply(a), t.label_of(t.apply(a))});
        return s;
    };

    for (const auto& a : reps) {
        std::map<Vertex, Rational> pt;
        for (const auto& v : facet_verts(a)) pt[v] = Rational(1, n + 1);
        emb.vertex_points.push_back(std::move(pt));
    }
    for (auto [i, j] : emb.graph.edges) {
        auto fi = facet_verts(reps[i]);
        auto fj = facet_verts(reps[j]);
        std::vector<Vertex> shared;
        std::set_intersection(fi.begin(), fi.end(), fj.begin(), fj.end(), std::back_inserter(shared));
        if (static_cast<int>(shared.size()) != n)
            throw std::logic_error("retract_embedding: incident facets share " +
                                   std::to_string(shared.size()) + " vertices, expected " +
                                   std::to_string(n));
        std::map<Vertex, Rational> pt;
        for (const auto& v : shared) pt[v] = Rational(1, n);
        emb.edge_points.push_back(std::move(pt));
    }
    return emb;
}

/// DOT rendering with orbit-representative labels.
inline std::string to_dot(const Graph& g, const std::string& name = "ncgraph") {
    std::string s = "graph " + name + " {\n";
    for (int v = 0; v < g.size(); ++v)
        s += "  v" + std::to_string(v) + " [label=\"" + g.vertex_labels[v] + "\"];\n";
    for (auto [a, b] : g.edges)
        s += "  v" + std::to_string(a) + " -- v" + std::to_string(b) + ";\n";
    s += "}\n";
    return s;
}

}  // namespace serene
