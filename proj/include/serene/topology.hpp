#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "serene/complex.hpp"

namespace serene {

/// Connected components of the facet-adjacency-through-ridges graph,
/// as a partition of facet indices.
inline std::vector<std::vector<int>> components(const SimpComplex& c) {
    const auto r2f = detail::ridge_to_facets(c);
    std::vector<std::vector<int>> adj(c.facets.size());
    for (const auto& [ridge, fs] : r2f)
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j) {
                adj[fs[i]].push_back(fs[j]);
                adj[fs[j]].push_back(fs[i]);
            }
    std::vector<int> comp(c.facets.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t root = 0; root < c.facets.size(); ++root) {
        if (comp[root] != -1) continue;
        int id = static_cast<int>(out.size());
        out.push_back({});
        std::vector<int> stack = {static_cast<int>(root)};
        comp[root] = id;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            out[id].push_back(f);
            for (int g : adj[f])
                if (comp[g] == -1) {
                    comp[g] = id;
                    stack.push_back(g);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

/// Closure of a set of facets as a standalone complex (all faces implied).
inline SimpComplex component_closure(const SimpComplex& c, const std::vector<int>& facet_idxs) {
    SimpComplex res;
    res.dim = c.dim;
    std::set<int> touched;
    for (int fi : facet_idxs)
        for (int v : c.facets[fi]) touched.insert(v);
    std::map<int, int> remap;
    for (int v : touched) {
        remap[v] = static_cast<int>(res.vertices.size());
        res.vertices.push_back(c.vertices[v]);
    }
    for (int fi : facet_idxs) {
        std::vector<int> f = c.facets[fi];
        for (auto& v : f) v = remap[v];
        std::sort(f.begin(), f.end());
        res.facets.push_back(std::move(f));
    }
    res.normalize();
    return res;
}

namespace detail {

/// Rank of a 0/1 matrix over the two-element field; rows are bit-packed.
class Z2Matrix {
  public:
    Z2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    void set(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }

    std::size_t rank() {
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            const std::size_t w = col / 64;
            const std::uint64_t mask = std::uint64_t{1} << (col % 64);
            std::size_t pivot = rows_;
            for (std::size_t r = rank; r < rows_; ++r)
                if (data_[r * words_ + w] & mask) {
                    pivot = r;
                    break;
                }
            if (pivot == rows_) continue;
            if (pivot != rank)
                for (std::size_t k = 0; k < words_; ++k)
                    std::swap(data_[pivot * words_ + k], data_[rank * words_ + k]);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rank) continue;
                if (data_[r * words_ + w] & mask)
                    for (std::size_t k = 0; k < words_; ++k) data_[r * words_ + k] ^= data_[rank * words_ + k];
            }
            ++rank;
        }
        return rank;
    }

  private:
    std::size_t rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
};

}  // namespace detail

/// Betti numbers over the two-element field, one entry per dimension
/// 0..dim: betti_k = dim C_k - rank d_k - rank d_(k+1), with d_0 = 0.
inline std::vector<int> z2_betti(const SimpComplex& c) {
    const int n = c.dim;
    std::vector<std::vector<std::vector<int>>> byDim(n + 1);
    std::vector<std::map<std::vector<int>, int>> index(n + 1);
    for (int k = 0; k <= n; ++k) {
        byDim[k] = faces(c, k);
        for (std::size_t i = 0; i < byDim[k].size(); ++i) index[k][byDim[k][i]] = static_cast<int>(i);
    }
    std::vector<std::size_t> ranks(n + 2, 0);  // ranks[k] = rank of d_k
    for (int k = 1; k <= n; ++k) {
        detail::Z2Matrix m(byDim[k].size(), byDim[k - 1].size());
        for (std::size_t r = 0; r < byDim[k].size(); ++r) {
            const auto& f = byDim[k][r];
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                std::vector<int> sub;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (i != drop) sub.push_back(f[i]);
                m.set(r, index[k - 1].at(sub));
            }
        }
        ranks[k] = m.rank();
    }
    std::vector<int> betti(n + 1);
    for (int k = 0; k <= n; ++k)
        betti[k] = static_cast<int>(byDim[k].size() - ranks[k] - ranks[k + 1]);
    return betti;
}

enum class LinkFlag { SphereLike, NonSphereLike };

struct ComponentInfo {
    std::vector<int> facet_indices;           // into the parent complex
    std::vector<long long> face_counts;       // by dimension 0..n
    long long euler_characteristic = 0;
    std::vector<int> betti;                   // z2 betti numbers of the closure
    bool orientable = false;
    bool pseudomanifold = false;
    std::vector<std::pair<int, LinkFlag>> link_flags;  // parent vertex -> flag
};

struct ComponentReport {
    int dim = 0;
    std::vector<ComponentInfo> component_infos;
};

namespace detail {

inline std::vector<int> sphere_betti(int dim) {
    if (dim == 0) return {2};
    std::vector<int> b(dim + 1, 0);
    b[0] = 1;
    b[dim] = 1;
    return b;
}

}  // namespace detail

/// Per-component invariants plus the combinatorial shadow of the Euclidean
/// completion test: a vertex is sphere_like when its link inside the
/// component closure is a pseudomanifold with the z2 betti numbers of the
/// (n-1)-sphere. Runs on any pure complex; components that fail the
/// pseudomanifold or orientation checks are reported, not rejected.
inline ComponentReport serenation_report(const SimpComplex& c) {
    ComponentReport rep;
    rep.dim = c.dim;
    for (const auto& part : components(c)) {
        ComponentInfo info;
        info.facet_indices = part;
        auto closure = component_closure(c, part);
        for (int k = 0; k <= c.dim; ++k)
            info.face_counts.push_back(static_cast<long long>(faces(closure, k).size()));
        info.euler_characteristic = 0;
        for (int k = 0; k <= c.dim; ++k)
            info.euler_characteristic += (k % 2 == 0 ? 1 : -1) * info.face_counts[k];
        info.betti = z2_betti(closure);
        auto pc = check_pseudomanifold(closure);
        info.pseudomanifold = pc.ok;
        if (pc.ok) {
            auto orc = orient(closure);
            info.orientable = orc.orientable;
        } else {
            info.orientable = false;
        }
        const auto want = detail::sphere_betti(c.dim - 1);
        // map closure vertices back to parent indices
        std::map<Vertex, int> parent_idx;
        for (std::size_t i = 0; i < c.vertices.size(); ++i) parent_idx[c.vertices[i]] = static_cast<int>(i);
        for (std::size_t v = 0; v < closure.vertices.size(); ++v) {
            auto lk = link(closure, {static_cast<int>(v)});
            bool sphere = check_pseudomanifold(lk.complex).ok && z2_betti(lk.complex) == want;
            info.link_flags.push_back({parent_idx.at(closure.vertices[v]),
                                       sphere ? LinkFlag::SphereLike : LinkFlag::NonSphereLike});
        }
        rep.component_infos.push_back(std::move(info));
    }
    return rep;
}

/// Genus of an orientable closed surface component: (2 - chi) / 2.
inline int surface_genus(const ComponentInfo& info) {
    if (!info.orientable) throw std::domain_error("surface_genus requires an orientable component");
    long long chi = info.euler_characteristic;
    if ((2 - chi) % 2 != 0) throw std::domain_error("surface_genus: odd euler characteristic");
    return static_cast<int>((2 - chi) / 2);
}

}  // namespace serene
