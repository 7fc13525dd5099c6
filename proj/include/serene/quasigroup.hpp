#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "serene/perms.hpp"

namespace serene {

/// A total n-ary operation on {0..order-1}. Values are stored flat in
/// mixed-radix order with x_1 as the most significant digit, so the cell
/// for (x_1,...,x_n) sits at index ((x_1*m + x_2)*m + ...) + x_n.
struct OperationTable {
    int arity = 0;
    int order = 0;
    std::vector<int> values;
    std::vector<std::string> labels;  // optional, size == order when present

    std::size_t cell_count() const {
        std::size_t c = 1;
        for (int i = 0; i < arity; ++i) c *= static_cast<std::size_t>(order);
        return c;
    }

    std::size_t index(const std::vector<int>& x) const {
        std::size_t idx = 0;
        for (int v : x) idx = idx * static_cast<std::size_t>(order) + static_cast<std::size_t>(v);
        return idx;
    }

    std::vector<int> tuple_at(std::size_t idx) const {
        std::vector<int> x(arity);
        for (int i = arity - 1; i >= 0; --i) {
            x[i] = static_cast<int>(idx % order);
            idx /= order;
        }
        return x;
    }

    int apply(const std::vector<int>& x) const { return values[index(x)]; }

    std::string label_of(int e) const {
        if (!labels.empty()) return labels[e];
        return std::to_string(e);
    }
};

/// Structural well-formedness; throws std::invalid_argument naming the
/// offending index on failure.
inline void check_table(const OperationTable& t) {
    if (t.arity < 1) throw std::invalid_argument("table arity must be positive");
    if (t.order < 1) throw std::invalid_argument("table order must be positive");
    if (t.values.size() != t.cell_count())
        throw std::invalid_argument("table has " + std::to_string(t.values.size()) +
                                    " values, expected " + std::to_string(t.cell_count()));
    for (std::size_t i = 0; i < t.values.size(); ++i)
        if (t.values[i] < 0 || t.values[i] >= t.order)
            throw std::invalid_argument("value out of range at index " + std::to_string(i));
    if (!t.labels.empty()) {
        if (static_cast<int>(t.labels.size()) != t.order)
            throw std::invalid_argument("labels must have one entry per element");
        std::set<std::string> uniq(t.labels.begin(), t.labels.end());
        if (static_cast<int>(uniq.size()) != t.order)
            throw std::invalid_argument("labels must be distinct");
    }
}

struct QuasigroupCert {
    OperationTable table;
    bool latin = false;
    bool alternating = false;
    long long permutomorphism_group_size = 0;
    bool perm_group_exact = true;  // false when only a generator-based lower bound
};

namespace detail {

/// Latin test in coordinate role i: every line in direction i must hit each
/// symbol exactly once.
inline bool latin_in_role(const OperationTable& t, int i) {
    const int m = t.order;
    std::vector<int> x(t.arity, 0);
    // iterate over all fixings of the coordinates other than i
    std::vector<bool> hit(m);
    while (true) {
        std::fill(hit.begin(), hit.end(), false);
        for (int v = 0; v < m; ++v) {
            x[i] = v;
            int y = t.apply(x);
            if (hit[y]) return false;
            hit[y] = true;
        }
        // advance the other coordinates
        int j = t.arity - 1;
        for (; j >= 0; --j) {
            if (j == i) continue;
            if (++x[j] < m) break;
            x[j] = 0;
        }
        if (j < 0) break;
    }
    return true;
}

inline bool invariant_under(const OperationTable& t, const Perm& p) {
    const std::size_t cells = t.cell_count();
    for (std::size_t idx = 0; idx < cells; ++idx) {
        auto x = t.tuple_at(idx);
        if (t.values[idx] != t.apply(apply_perm(p, x))) return false;
    }
    return true;
}

}  // namespace detail

inline bool is_latin(const OperationTable& t) {
    for (int i = 0; i < t.arity; ++i)
        if (!detail::latin_in_role(t, i)) return false;
    return true;
}

inline bool is_alternating(const OperationTable& t) {
    for (const auto& g : alternating_generators(t.arity))
        if (!detail::invariant_under(t, g)) return false;
    return true;  // arity < 3 has trivial alt_n
}

/// Full validation: latin flag by the unique-solution test in every role,
/// alternating flag by checking a generating set of alt_n, and the
/// permutomorphism group computed exactly for arity <= 7.
inline QuasigroupCert validate(const OperationTable& t) {
    check_table(t);
    QuasigroupCert cert;
    cert.table = t;
    cert.latin = is_latin(t);
    cert.alternating = is_alternating(t);
    if (t.arity <= 7) {
        long long count = 0;
        for (const auto& p : sym_group_cached(t.arity))
            if (detail::invariant_under(t, p)) ++count;
        cert.permutomorphism_group_size = count;
        cert.perm_group_exact = true;
    } else if (cert.alternating) {
        // alt_n is maximal in perm_n, so one odd permutation decides the group
        Perm swap01(t.arity);
        std::iota(swap01.begin(), swap01.end(), 0);
        std::swap(swap01[0], swap01[1]);
        long long half = 1;
        for (int k = 3; k <= t.arity; ++k) half *= k;  // n!/2
        cert.permutomorphism_group_size = detail::invariant_under(t, swap01) ? 2 * half : half;
        cert.perm_group_exact = true;
    } else {
        cert.permutomorphism_group_size = 1;
        cert.perm_group_exact = false;  // identity-only lower bound
    }
    return cert;
}

/// The division g_i: returns the unique x_i with f(..., x_i, ...) = y, where
/// others lists the remaining arguments in coordinate order. The table must
/// be latin; coordinate i is 0-based.
inline int divide(const OperationTable& t, int i, const std::vector<int>& others, int y) {
    if (i < 0 || i >= t.arity) throw std::invalid_argument("divide: coordinate out of range");
    if (static_cast<int>(others.size()) != t.arity - 1)
        throw std::invalid_argument("divide: expected " + std::to_string(t.arity - 1) + " fixed arguments");
    std::vector<int> x(t.arity);
    for (int j = 0, k = 0; j < t.arity; ++j)
        if (j != i) x[j] = others[k++];
    std::optional<int> found;
    for (int v = 0; v < t.order; ++v) {
        x[i] = v;
        if (t.apply(x) == y) {
            if (found) throw std::domain_error("divide: table is not latin in coordinate " + std::to_string(i));
            found = v;
        }
    }
    if (!found) throw std::domain_error("divide: no solution; table is not latin");
    return *found;
}

/// Noncommuting tuples: argument tuples whose value moves under some
/// permutation of the arguments. Tuples are returned in lexicographic order.
inline std::vector<std::vector<int>> nct(const OperationTable& t) {
    std::vector<std::vector<int>> out;
    const auto& sym = sym_group_cached(t.arity);
    const std::size_t cells = t.cell_count();
    for (std::size_t idx = 0; idx < cells; ++idx) {
        auto x = t.tuple_at(idx);
        int y = t.values[idx];
        for (const auto& p : sym) {
            if (t.apply(apply_perm(p, x)) != y) {
                out.push_back(std::move(x));
                break;
            }
        }
    }
    return out;
}

inline std::vector<int> inp(const OperationTable& t) {
    std::set<int> s;
    for (const auto& a : nct(t))
        for (int v : a) s.insert(v);
    return {s.begin(), s.end()};
}

inline std::vector<int> out(const OperationTable& t) {
    std::set<int> s;
    for (const auto& a : nct(t)) s.insert(t.apply(a));
    return {s.begin(), s.end()};
}

/// Canonical alt_n-orbit representatives of nct(t), sorted.
inline std::vector<std::vector<int>> nct_orbits(const OperationTable& t) {
    std::set<std::vector<int>> reps;
    for (const auto& a : nct(t)) reps.insert(alt_canonical(a));
    return {reps.begin(), reps.end()};
}

inline bool is_commutative(const OperationTable& t) {
    // perm_n is generated by the transposition (0 1) and the full cycle
    if (t.arity < 2) return true;
    Perm swap01(t.arity), cycle(t.arity);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (int i = 0; i < t.arity; ++i) cycle[i] = (i + 1) % t.arity;
    return detail::invariant_under(t, swap01) && detail::invariant_under(t, cycle);
}

struct AssocResult {
    bool associative = false;
    bool exhaustive = true;  // false when the scan was sampled
};

/// n-ary associativity: f(f(a_1..a_n), a_{n+1}, ..., a_{2n-1}) must be
/// invariant under sliding the inner f-block across all n positions.
/// Exhaustive when order^(2n-1) <= 10^7, sampled otherwise.
inline AssocResult is_nary_associative(const OperationTable& t, std::size_t sample_cap = 100000,
                                       std::uint64_t seed = 12345) {
    const int n = t.arity;
    const int m = t.order;
    const int width = 2 * n - 1;
    double full = 1;
    for (int i = 0; i < width; ++i) full *= m;
    AssocResult res;
    res.exhaustive = full <= 1e7;

    auto check_one = [&](const std::vector<int>& a) {
        // value with the inner block at position 0
        std::vector<int> inner(a.begin(), a.begin() + n);
        std::vector<int> outer(n);
        outer[0] = t.apply(inner);
        for (int i = 1; i < n; ++i) outer[i] = a[n - 1 + i];
        int ref = t.apply(outer);
        for (int pos = 1; pos < n; ++pos) {
            for (int i = 0; i < n; ++i) inner[i] = a[pos + i];
            for (int i = 0, k = 0; i < n; ++i) {
                if (i == pos) {
                    outer[i] = t.apply(inner);
                } else {
                    outer[i] = a[k < pos ? k : k + n];
                    ++k;
                }
            }
            if (t.apply(outer) != ref) return false;
        }
        return true;
    };

    if (res.exhaustive) {
        std::vector<int> a(width, 0);
        while (true) {
            if (!check_one(a)) {
                res.associative = false;
                return res;
            }
            int j = width - 1;
            for (; j >= 0; --j) {
                if (++a[j] < m) break;
                a[j] = 0;
            }
            if (j < 0) break;
        }
        res.associative = true;
    } else {
        std::uint64_t state = seed;
        auto next = [&state]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        std::vector<int> a(width);
        for (std::size_t s = 0; s < sample_cap; ++s) {
            for (int i = 0; i < width; ++i) a[i] = static_cast<int>(next() % m);
            if (!check_one(a)) {
                res.associative = false;
                return res;
            }
        }
        res.associative = true;
    }
    return res;
}

struct HomCheck {
    bool hom = false;
    bool nc_hom = false;
};

/// Checks f-compatibility of map at every tuple, then whether every
/// noncommuting tuple lands on a noncommuting tuple.
inline HomCheck check_homomorphism(const OperationTable& src, const OperationTable& dst,
                                   const std::vector<int>& map) {
    if (src.arity != dst.arity) throw std::invalid_argument("check_homomorphism: arity mismatch");
    if (static_cast<int>(map.size()) != src.order)
        throw std::invalid_argument("check_homomorphism: map must be total on the source");
    for (int v : map)
        if (v < 0 || v >= dst.order) throw std::invalid_argument("check_homomorphism: map value out of range");

    HomCheck res;
    const std::size_t cells = src.cell_count();
    std::vector<int> img(src.arity);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        auto x = src.tuple_at(idx);
        for (int i = 0; i < src.arity; ++i) img[i] = map[x[i]];
        if (map[src.values[idx]] != dst.apply(img)) return res;  // hom = false
    }
    res.hom = true;

    std::set<std::vector<int>> dst_nct;
    for (auto& a : nct(dst)) dst_nct.insert(std::move(a));
    for (const auto& a : nct(src)) {
        for (int i = 0; i < src.arity; ++i) img[i] = map[a[i]];
        if (!dst_nct.count(img)) return res;  // nc_hom = false
    }
    res.nc_hom = true;
    return res;
}

}  // namespace serene
