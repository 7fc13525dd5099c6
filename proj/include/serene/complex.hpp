#pragma once

#include <algorithm>
#include <compare>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "serene/quasigroup.hpp"

namespace serene {

enum class VertexTag { Input, Output };

struct Vertex {
    VertexTag tag = VertexTag::Input;
    int element = 0;
    std::string label;

    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.tag == b.tag && a.element == b.element;
    }
    friend auto operator<=>(const Vertex& a, const Vertex& b) {
        if (auto c = a.tag <=> b.tag; c != 0) return c;
        return a.element <=> b.element;
    }
};

/// A pure n-dimensional complex stored by its facets. Faces below the
/// facets are implicit and regenerated on demand. Facets hold sorted
/// vertex indices and the facet list itself is kept sorted.
struct SimpComplex {
    int dim = 0;
    std::vector<Vertex> vertices;
    std::vector<std::vector<int>> facets;

    void normalize() {
        for (auto& f : facets) std::sort(f.begin(), f.end());
        std::sort(facets.begin(), facets.end());
        facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    }

    bool empty() const { return facets.empty(); }
};

/// Structural checks for a complex built or loaded externally.
inline void check_complex(const SimpComplex& c) {
    std::vector<bool> used(c.vertices.size(), false);
    for (const auto& f : c.facets) {
        if (static_cast<int>(f.size()) != c.dim + 1)
            throw std::invalid_argument("facet size must be dim+1");
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] < 0 || f[i] >= static_cast<int>(c.vertices.size()))
                throw std::invalid_argument("facet vertex index out of range");
            if (i > 0 && f[i] <= f[i - 1]) throw std::invalid_argument("facet vertices must be distinct");
            used[f[i]] = true;
        }
    }
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v])
            throw std::invalid_argument("vertex " + std::to_string(v) + " lies in no facet");
}

/// The simplicization of an alternating quasigroup: one facet
/// {a_1,...,a_n (inputs), f(a) (output)} per alt_n-orbit of noncommuting
/// tuples, on the disjoint union of input and output elements.
inline SimpComplex simplicize(const OperationTable& t) {
    if (!is_latin(t) || !is_alternating(t))
        throw std::invalid_argument("simplicize requires an alternating quasigroup");

    SimpComplex c;
    c.dim = t.arity;
    auto ins = inp(t);
    auto outs = out(t);
    std::map<int, int> in_idx, out_idx;
    for (int e : ins) {
        in_idx[e] = static_cast<int>(c.vertices.size());
        c.vertices.push_back({VertexTag::Input, e, t.label_of(e)});
    }
    for (int e : outs) {
        out_idx[e] = static_cast<int>(c.vertices.size());
        c.vertices.push_back({VertexTag::Output, e, t.label_of(e)});
    }
    for (const auto& a : nct_orbits(t)) {
        std::vector<int> facet;
        facet.reserve(t.arity + 1);
        for (int e : a) facet.push_back(in_idx.at(e));
        facet.push_back(out_idx.at(t.apply(a)));
        std::sort(facet.begin(), facet.end());
        c.facets.push_back(std::move(facet));
    }
    c.normalize();
    return c;
}

/// Vertex map induced on simplicizations by an NC homomorphism; verified
/// facet-to-facet, reporting the first violating facet otherwise.
inline std::vector<int> simplicize_map(const OperationTable& src, const OperationTable& dst,
                                       const std::vector<int>& hom) {
    auto h = check_homomorphism(src, dst, hom);
    if (!h.hom || !h.nc_hom)
        throw std::invalid_argument("simplicize_map requires a verified NC homomorphism");
    auto cs = simplicize(src);
    auto cd = simplicize(dst);
    std::map<Vertex, int> dst_index;
    for (std::size_t i = 0; i < cd.vertices.size(); ++i) {
        Vertex key = cd.vertices[i];
        key.label.clear();
        dst_index[key] = static_cast<int>(i);
    }
    std::vector<int> vmap(cs.vertices.size());
    for (std::size_t i = 0; i < cs.vertices.size(); ++i) {
        Vertex key{cs.vertices[i].tag, hom[cs.vertices[i].element], ""};
        auto it = dst_index.find(key);
        if (it == dst_index.end())
            throw std::logic_error("simplicize_map: image vertex missing from target complex");
        vmap[i] = it->second;
    }
    std::set<std::vector<int>> dst_facets(cd.facets.begin(), cd.facets.end());
    for (const auto& f : cs.facets) {
        std::vector<int> img;
        for (int v : f) img.push_back(vmap[v]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (!dst_facets.count(img)) {
            std::string msg = "simplicize_map: facet {";
            for (int v : f) msg += std::to_string(v) + ",";
            msg += "} is not carried to a facet";
            throw std::logic_error(msg);
        }
    }
    return vmap;
}

struct PseudoCheck {
    bool ok = false;
    std::vector<std::vector<int>> violations;  // ridges in != 2 facets
};

namespace detail {

inline std::map<std::vector<int>, std::vector<int>> ridge_to_facets(const SimpComplex& c) {
    std::map<std::vector<int>, std::vector<int>> r2f;
    for (std::size_t fi = 0; fi < c.facets.size(); ++fi) {
        const auto& f = c.facets[fi];
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::vector<int> ridge;
            ridge.reserve(f.size() - 1);
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != drop) ridge.push_back(f[i]);
            r2f[ridge].push_back(static_cast<int>(fi));
        }
    }
    return r2f;
}

}  // namespace detail

inline PseudoCheck check_pseudomanifold(const SimpComplex& c) {
    PseudoCheck res;
    res.ok = true;
    for (const auto& [ridge, fs] : detail::ridge_to_facets(c)) {
        if (fs.size() != 2) {
            res.ok = false;
            res.violations.push_back(ridge);
        }
    }
    if (c.facets.empty()) res.ok = true;
    return res;
}

struct OrientedComplex {
    SimpComplex base;
    std::vector<int> orientation;  // +1/-1 per facet, relative to sorted order
};

struct OrientResult {
    bool orientable = false;
    OrientedComplex oriented;
    std::vector<int> witness_cycle;  // facet indices of an incoherent cycle
    int component_count = 0;
};

/// Breadth-first propagation of facet signs across shared ridges. Two
/// facets meeting at a ridge must induce opposite orientations there; with
/// facets stored sorted this pins the relative sign to -(-1)^(i+j) where
/// i, j are the removal positions of the off-ridge vertices.
inline OrientResult orient(const SimpComplex& c) {
    auto pc = check_pseudomanifold(c);
    if (!pc.ok) throw std::invalid_argument("orient requires a pseudomanifold");

    OrientResult res;
    const auto r2f = detail::ridge_to_facets(c);
    // facet adjacency with relative signs
    std::vector<std::vector<std::pair<int, int>>> adj(c.facets.size());
    for (const auto& [ridge, fs] : r2f) {
        if (fs.size() != 2) continue;
        int a = fs[0], b = fs[1];
        auto removal_index = [&](int fi) {
            const auto& f = c.facets[fi];
            for (std::size_t i = 0; i < f.size(); ++i)
                if (!std::binary_search(ridge.begin(), ridge.end(), f[i])) return static_cast<int>(i);
            return -1;
        };
        int i = removal_index(a), j = removal_index(b);
        int rel = -(((i + j) % 2 == 0) ? 1 : -1);
        adj[a].push_back({b, rel});
        adj[b].push_back({a, rel});
    }

    std::vector<int> sign(c.facets.size(), 0);
    std::vector<int> parent(c.facets.size(), -1);
    for (std::size_t root = 0; root < c.facets.size(); ++root) {
        if (sign[root] != 0) continue;
        ++res.component_count;
        sign[root] = 1;
        std::deque<int> queue = {static_cast<int>(root)};
        while (!queue.empty()) {
            int f = queue.front();
            queue.pop_front();
            for (auto [g, rel] : adj[f]) {
                int want = sign[f] * rel;
                if (sign[g] == 0) {
                    sign[g] = want;
                    parent[g] = f;
                    queue.push_back(g);
                } else if (sign[g] != want) {
                    // reconstruct the odd cycle through the BFS tree
                    auto path_to_root = [&](int x) {
                        std::vector<int> p;
                        for (; x != -1; x = parent[x]) p.push_back(x);
                        return p;
                    };
                    auto pa = path_to_root(f), pb = path_to_root(g);
                    std::set<int> in_pa(pa.begin(), pa.end());
                    int meet = -1;
                    for (int x : pb)
                        if (in_pa.count(x)) {
                            meet = x;
                            break;
                        }
                    std::vector<int> cycle;
                    for (int x : pa) {
                        cycle.push_back(x);
                        if (x == meet) break;
                    }
                    std::vector<int> half;
                    for (int x : pb) {
                        if (x == meet) break;
                        half.push_back(x);
                    }
                    std::reverse(half.begin(), half.end());
                    cycle.insert(cycle.end(), half.begin(), half.end());
                    res.orientable = false;
                    res.witness_cycle = std::move(cycle);
                    return res;
                }
            }
        }
    }
    res.orientable = true;
    res.oriented.base = c;
    res.oriented.orientation = std::move(sign);
    return res;
}

/// All k-faces, deduplicated and sorted.
inline std::vector<std::vector<int>> faces(const SimpComplex& c, int k) {
    if (k < 0 || k > c.dim) throw std::invalid_argument("faces: dimension out of range");
    std::set<std::vector<int>> out;
    const int fsize = c.dim + 1;
    std::vector<int> pick(k + 1);
    for (const auto& f : c.facets) {
        // enumerate (k+1)-subsets of the facet
        std::vector<int> idx(k + 1);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            for (int i = 0; i <= k; ++i) pick[i] = f[idx[i]];
            out.insert(pick);
            int i = k;
            while (i >= 0 && idx[i] == fsize - (k + 1) + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j <= k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {out.begin(), out.end()};
}

struct LinkResult {
    SimpComplex complex;
    bool pure = true;  // no returned face contained in another
};

/// The link of a face: {gamma \ face : face subset of gamma in facets},
/// re-indexed over the vertices it touches.
inline LinkResult link(const SimpComplex& c, const std::vector<int>& face) {
    std::vector<int> key = face;
    std::sort(key.begin(), key.end());
    std::vector<std::vector<int>> raw;
    for (const auto& f : c.facets) {
        if (std::includes(f.begin(), f.end(), key.begin(), key.end())) {
            std::vector<int> rest;
            std::set_difference(f.begin(), f.end(), key.begin(), key.end(), std::back_inserter(rest));
            raw.push_back(std::move(rest));
        }
    }
    if (raw.empty()) throw std::invalid_argument("link: face not in complex");

    LinkResult res;
    std::set<int> touched;
    for (const auto& f : raw)
        for (int v : f) touched.insert(v);
    std::map<int, int> remap;
    for (int v : touched) {
        remap[v] = static_cast<int>(res.complex.vertices.size());
        res.complex.vertices.push_back(c.vertices[v]);
    }
    for (auto& f : raw) {
        for (auto& v : f) v = remap[v];
        std::sort(f.begin(), f.end());
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (std::size_t i = 0; i < raw.size() && res.pure; ++i)
        for (std::size_t j = 0; j < raw.size(); ++j)
            if (i != j && std::includes(raw[j].begin(), raw[j].end(), raw[i].begin(), raw[i].end())) {
                res.pure = false;
                break;
            }
    res.complex.dim = c.dim - static_cast<int>(key.size());
    res.complex.facets = std::move(raw);
    return res;
}

/// The star of a face: the subcomplex of facets containing it.
inline SimpComplex star(const SimpComplex& c, const std::vector<int>& face) {
    std::vector<int> key = face;
    std::sort(key.begin(), key.end());
    SimpComplex res;
    res.dim = c.dim;
    std::set<int> touched;
    std::vector<std::vector<int>> kept;
    for (const auto& f : c.facets)
        if (std::includes(f.begin(), f.end(), key.begin(), key.end())) {
            kept.push_back(f);
            for (int v : f) touched.insert(v);
        }
    if (kept.empty()) throw std::invalid_argument("star: face not in complex");
    std::map<int, int> remap;
    for (int v : touched) {
        remap[v] = static_cast<int>(res.vertices.size());
        res.vertices.push_back(c.vertices[v]);
    }
    for (auto& f : kept)
        for (auto& v : f) v = remap[v];
    res.facets = std::move(kept);
    res.normalize();
    return res;
}

}  // namespace serene
