#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace serene {

/// A permutation of {0..n-1}, stored as an arrangement selector:
/// applying p to a tuple t yields (t[p[0]], t[p[1]], ..., t[p[n-1]]).
using Perm = std::vector<int>;

inline int perm_parity(const Perm& p) {
    int n = static_cast<int>(p.size());
    std::vector<bool> seen(n, false);
    int sign = 1;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

inline std::vector<Perm> symmetric_group(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::vector<Perm> alternating_group(int n) {
    std::vector<Perm> out;
    for (auto& p : symmetric_group(n))
        if (perm_parity(p) == 1) out.push_back(std::move(p));
    return out;
}

/// Generators of alt_n: the 3-cycles (0 1 k) for k = 2..n-1. Empty for n < 3.
inline std::vector<Perm> alternating_generators(int n) {
    std::vector<Perm> gens;
    for (int k = 2; k < n; ++k) {
        Perm p(n);
        std::iota(p.begin(), p.end(), 0);
        p[0] = 1;
        p[1] = k;
        p[k] = 0;
        gens.push_back(std::move(p));
    }
    return gens;
}

/// Cached group tables for the small arities this library works at.
inline const std::vector<Perm>& alt_group_cached(int n) {
    static const auto cache = [] {
        std::vector<std::vector<Perm>> c(9);
        for (int i = 0; i < 9; ++i) c[i] = alternating_group(i);
        return c;
    }();
    if (n < 0 || n > 8) throw std::invalid_argument("arity out of cached range");
    return cache[n];
}

inline const std::vector<Perm>& sym_group_cached(int n) {
    static const auto cache = [] {
        std::vector<std::vector<Perm>> c(9);
        for (int i = 0; i < 9; ++i) c[i] = symmetric_group(i);
        return c;
    }();
    if (n < 0 || n > 8) throw std::invalid_argument("arity out of cached range");
    return cache[n];
}

template <typename T>
std::vector<T> apply_perm(const Perm& p, const std::vector<T>& t) {
    std::vector<T> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[p[i]];
    return out;
}

/// All distinct images of t under the even permutations of its positions.
template <typename T>
std::vector<std::vector<T>> alt_orbit(const std::vector<T>& t) {
    std::vector<std::vector<T>> orbit;
    for (const auto& p : alt_group_cached(static_cast<int>(t.size()))) {
        auto img = apply_perm(p, t);
        if (std::find(orbit.begin(), orbit.end(), img) == orbit.end())
            orbit.push_back(std::move(img));
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

/// Lexicographically least image of t under even permutations.
template <typename T>
std::vector<T> alt_canonical(const std::vector<T>& t) {
    std::vector<T> best = t;
    for (const auto& p : alt_group_cached(static_cast<int>(t.size()))) {
        auto img = apply_perm(p, t);
        if (img < best) best = std::move(img);
    }
    return best;
}

}  // namespace serene
