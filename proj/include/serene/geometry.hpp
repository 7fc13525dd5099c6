#pragma once

#include <cmath>
#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "serene/complex.hpp"
#include "serene/quasigroup.hpp"

namespace serene {

using Rat = boost::rational<long long>;

/// Coefficient vector of a realization point, keyed by tagged vertices;
/// zero coefficients are omitted, so the key set is the support.
template <class T>
using CoeffMap = std::map<Vertex, T>;

/// Mirror image across the sum-one hyperplane, written integer-safe:
/// v_i = (2 + (n-2) u_i - 2 sum_{j != i} u_j) / n.
template <class T>
std::vector<T> reflect_closed_form(const std::vector<T>& u) {
    const int n = static_cast<int>(u.size());
    T total = T(0);
    for (const auto& x : u) total += x;
    std::vector<T> v(n);
    for (int i = 0; i < n; ++i) {
        T others = total - u[i];
        v[i] = (T(2) + T(n - 2) * u[i] - T(2) * others) / T(n);
    }
    return v;
}

/// Independent route to the same point: solve the n x n system
/// w_i - w_n = u_i - u_n (i < n), sum w = 1 by elimination, then v = 2w - u.
inline std::vector<double> reflect_linear_solve(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n - 1; ++i) {
        m[i][i] = 1.0;
        m[i][n - 1] = -1.0;
        m[i][n] = u[i] - u[n - 1];
    }
    for (int j = 0; j < n; ++j) m[n - 1][j] = 1.0;
    m[n - 1][n] = 1.0;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0.0) continue;
            double f = m[r][col] / m[col][col];
            for (int j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        double w = m[i][n] / m[i][i];
        v[i] = 2.0 * w - u[i];
    }
    return v;
}

/// Membership in the open bipyramid: below the sum-one hyperplane the open
/// simplex test applies directly, above it the mirrored point must pass it.
template <class T>
bool in_bipyramid(const std::vector<T>& u) {
    T total = T(0);
    for (const auto& x : u) total += x;
    if (total <= T(1)) {
        for (const auto& x : u)
            if (x <= T(0)) return false;
        return true;
    }
    for (const auto& x : reflect_closed_form(u))
        if (x <= T(0)) return false;
    return true;
}

namespace detail {

inline bool is_noncommuting(const OperationTable& t, const std::vector<int>& a) {
    int y = t.apply(a);
    for (const auto& p : sym_group_cached(t.arity))
        if (t.apply(apply_perm(p, a)) != y) return true;
    return false;
}

template <class T>
CoeffMap<T> bipyr_chart(const std::vector<Vertex>& slots, const Vertex& low, const Vertex& high,
                        const std::vector<T>& u) {
    if (!in_bipyramid(u)) throw std::domain_error("chart: point lies outside the open bipyramid");
    T total = T(0);
    for (const auto& x : u) total += x;
    CoeffMap<T> coeff;
    if (total < T(1)) {
        for (std::size_t i = 0; i < slots.size(); ++i) coeff[slots[i]] += u[i];
        coeff[low] += T(1) - total;
    } else if (total == T(1)) {
        for (std::size_t i = 0; i < slots.size(); ++i) coeff[slots[i]] += u[i];
    } else {
        auto v = reflect_closed_form(u);
        for (std::size_t i = 0; i < slots.size(); ++i) coeff[slots[i]] += v[i];
        coeff[high] += total - T(1);
    }
    for (auto it = coeff.begin(); it != coeff.end();)
        it = it->second == T(0) ? coeff.erase(it) : std::next(it);
    return coeff;
}

}  // namespace detail

/// Chart of input type for a noncommuting tuple a: below the crease the
/// point mixes the inputs with f(a); above it, with f(a') where a' swaps
/// the last two entries of a.
template <class T>
CoeffMap<T> chart_input(const OperationTable& t, const std::vector<int>& a, const std::vector<T>& u) {
    const int n = t.arity;
    if (static_cast<int>(a.size()) != n || static_cast<int>(u.size()) != n)
        throw std::invalid_argument("chart_input: tuple and point must have length n");
    if (!detail::is_noncommuting(t, a))
        throw std::invalid_argument("chart_input: tuple commutes, no chart exists");

    std::vector<int> a2 = a;
    std::swap(a2[n - 2], a2[n - 1]);
    std::vector<Vertex> slots;
    for (int e : a) slots.push_back({VertexTag::Input, e, t.label_of(e)});
    Vertex low{VertexTag::Output, t.apply(a), t.label_of(t.apply(a))};
    Vertex high{VertexTag::Output, t.apply(a2), t.label_of(t.apply(a2))};
    return detail::bipyr_chart(slots, low, high, u);
}

/// The companion element for the chart of output type: the unique solution
/// x of f(a_1,...,a_{n-2}, x, a_{n-1}) = f(a). For n = 2 this degenerates
/// to solving f(x, a_1) = f(a).
inline int output_chart_companion(const OperationTable& t, const std::vector<int>& a) {
    const int n = t.arity;
    std::vector<int> others;
    for (int i = 0; i + 2 < n; ++i) others.push_back(a[i]);
    others.push_back(a[n - 2]);
    return divide(t, n - 2, others, t.apply(a));
}

/// Chart of output type: the slot vertices are a_1..a_{n-1} and f(a); the
/// two cone points are a_n below the crease and the companion a_{n+1} above.
template <class T>
CoeffMap<T> chart_output(const OperationTable& t, const std::vector<int>& a, const std::vector<T>& u) {
    const int n = t.arity;
    if (static_cast<int>(a.size()) != n || static_cast<int>(u.size()) != n)
        throw std::invalid_argument("chart_output: tuple and point must have length n");
    if (!detail::is_noncommuting(t, a))
        throw std::invalid_argument("chart_output: tuple commutes, no chart exists");
    if (!is_latin(t)) throw std::invalid_argument("chart_output requires a latin table");

    int companion = output_chart_companion(t, a);
    std::vector<Vertex> slots;
    for (int i = 0; i < n - 1; ++i) slots.push_back({VertexTag::Input, a[i], t.label_of(a[i])});
    slots.push_back({VertexTag::Output, t.apply(a), t.label_of(t.apply(a))});
    Vertex low{VertexTag::Input, a[n - 1], t.label_of(a[n - 1])};
    Vertex high{VertexTag::Input, companion, t.label_of(companion)};
    return detail::bipyr_chart(slots, low, high, u);
}

/// The constant chart metric: J_n + I_n.
inline std::vector<std::vector<Rat>> metric_matrix(int n) {
    if (n < 1) throw std::invalid_argument("metric_matrix needs n >= 1");
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(1)));
    for (int i = 0; i < n; ++i) m[i][i] = Rat(2);
    return m;
}

/// Exact determinant by fraction-free-ish elimination on rationals.
inline Rat rational_det(std::vector<std::vector<Rat>> m) {
    const int n = static_cast<int>(m.size());
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != Rat(0)) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == Rat(0)) continue;
            Rat f = m[r][col] / m[col][col];
            for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

/// Gram value of an edge vector between two inputs: g(e,e) = 2 exactly,
/// so every edge of the realization has length sqrt(2).
inline Rat edge_gram(int n) {
    auto g = metric_matrix(n);
    if (n == 1) return g[0][0];
    // e = (a_1 - f) - (a_2 - f): g(e,e) = g11 + g22 - 2 g12
    return g[0][0] + g[1][1] - Rat(2) * g[0][1];
}

inline double edge_length(int n) { return std::sqrt(boost::rational_cast<double>(edge_gram(n))); }

}  // namespace serene
