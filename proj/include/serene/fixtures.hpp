#pragma once

#include <string>
#include <vector>

#include "serene/complex.hpp"

namespace serene {

namespace detail {

inline SimpComplex plain_complex(int dim, int nverts, std::vector<std::vector<int>> facets) {
    SimpComplex c;
    c.dim = dim;
    for (int v = 0; v < nverts; ++v) c.vertices.push_back({VertexTag::Input, v, std::to_string(v)});
    c.facets = std::move(facets);
    c.normalize();
    check_complex(c);
    return c;
}

}  // namespace detail

/// Boundary of the k-simplex: k+1 vertices, all k-subsets as facets.
inline SimpComplex simplex_boundary(int k) {
    if (k < 2) throw std::invalid_argument("simplex boundary needs k >= 2");
    std::vector<std::vector<int>> facets;
    for (int drop = 0; drop <= k; ++drop) {
        std::vector<int> f;
        for (int v = 0; v <= k; ++v)
            if (v != drop) f.push_back(v);
        facets.push_back(std::move(f));
    }
    return detail::plain_complex(k - 1, k + 1, std::move(facets));
}

/// 7-vertex, 14-triangle torus: cyclic facets {i, i+1, i+3} and
/// {i, i+2, i+3} mod 7.
inline SimpComplex torus7() {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 7; ++i) {
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return detail::plain_complex(2, 7, std::move(facets));
}

/// 9-vertex, 18-triangle torus from the 3x3 grid with diagonals.
inline SimpComplex torus9() {
    auto vid = [](int i, int j) { return 3 * ((i % 3 + 3) % 3) + ((j % 3 + 3) % 3); };
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            facets.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            facets.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    return detail::plain_complex(2, 9, std::move(facets));
}

/// 8-vertex, 16-triangle closed non-orientable surface (chi = 0, so a
/// Klein bottle). Every edge lies in two triangles and every vertex link
/// is a single cycle.
inline SimpComplex klein_bottle() {
    std::vector<std::vector<int>> facets = {
        {0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 4}, {1, 2, 5}, {1, 3, 6},
        {1, 4, 5}, {1, 4, 6}, {2, 4, 6}, {2, 3, 5}, {2, 3, 7}, {2, 6, 7},
        {3, 4, 7}, {3, 5, 6}, {4, 5, 7}, {5, 6, 7},
    };
    return detail::plain_complex(2, 8, std::move(facets));
}

/// Cone over the 9-vertex torus: apex vertex 9 joined to each of the 18
/// triangles. Not a pseudomanifold (the torus triangles are boundary
/// ridges); used to exercise the non-Euclidean sentinel at the apex.
inline SimpComplex cone_over_torus() {
    auto t = torus9();
    std::vector<std::vector<int>> facets;
    for (const auto& f : t.facets) {
        std::vector<int> tet = f;
        tet.push_back(9);
        facets.push_back(std::move(tet));
    }
    return detail::plain_complex(3, 10, std::move(facets));
}

inline int cone_apex_vertex() { return 9; }

inline std::vector<std::string> fixture_names() {
    return {"torus", "torus9", "klein", "cone-torus", "ddelta2", "ddelta3", "ddelta4", "ddelta5", "ddelta6"};
}

inline SimpComplex fixture(const std::string& name) {
    if (name == "torus") return torus7();
    if (name == "torus9") return torus9();
    if (name == "klein") return klein_bottle();
    if (name == "cone-torus") return cone_over_torus();
    if (name.rfind("ddelta", 0) == 0) {
        int k = std::stoi(name.substr(6));
        return simplex_boundary(k);
    }
    std::string msg = "unknown fixture '" + name + "'; available:";
    for (const auto& s : fixture_names()) msg += " " + s;
    throw std::invalid_argument(msg);
}

}  // namespace serene
