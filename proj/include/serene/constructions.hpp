#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "serene/quasigroup.hpp"

namespace serene {

/// An alternating map alpha: U^n -> V stored like an operation table over
/// the domain order, with codomain values.
struct AltMapTable {
    int arity = 0;
    int domain_order = 0;
    int codomain_order = 0;
    std::vector<int> values;  // size domain_order^arity

    std::size_t index(const std::vector<int>& x) const {
        std::size_t idx = 0;
        for (int v : x) idx = idx * static_cast<std::size_t>(domain_order) + static_cast<std::size_t>(v);
        return idx;
    }
    int apply(const std::vector<int>& x) const { return values[index(x)]; }
};

inline bool is_alternating_map(const AltMapTable& a) {
    std::size_t cells = 1;
    for (int i = 0; i < a.arity; ++i) cells *= static_cast<std::size_t>(a.domain_order);
    if (a.values.size() != cells) return false;
    std::vector<int> x(a.arity, 0);
    const auto gens = alternating_generators(a.arity);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        std::size_t r = idx;
        for (int i = a.arity - 1; i >= 0; --i) {
            x[i] = static_cast<int>(r % a.domain_order);
            r /= a.domain_order;
        }
        if (a.values[idx] < 0 || a.values[idx] >= a.codomain_order) return false;
        for (const auto& g : gens)
            if (a.apply(apply_perm(g, x)) != a.values[idx]) return false;
    }
    return true;
}

/// The order-5 ternary alternating quasigroup, rebuilt from its seven
/// orbit-representative rows. The shift/rotation symmetry
/// f(x+k, y+k, z+k) = f(x,y,z)+k pins 95 of the 125 cells; the last two
/// orbit values are forced by the latin property, so closure alternates
/// with unit propagation on lines until the table is total.
inline OperationTable construct_order5() {
    constexpr int m = 5;
    static const std::array<std::array<int, 4>, 7> reps = {{
        {0, 0, 0, 0},
        {0, 1, 1, 0},
        {0, 2, 2, 0},
        {0, 1, 2, 3},
        {0, 2, 1, 4},
        {0, 1, 3, 4},
        {0, 3, 1, 2},
    }};

    OperationTable t;
    t.arity = 3;
    t.order = m;
    t.values.assign(125, -1);
    auto at = [&](int x, int y, int z) -> int& { return t.values[(x * m + y) * m + z]; };

    auto assign = [&](int x, int y, int z, int v) {
        int& cell = at(x, y, z);
        if (cell != -1 && cell != v)
            throw std::logic_error("order-5 builder: inconsistent assignment");
        bool fresh = cell == -1;
        cell = v;
        return fresh;
    };

    // close a defined cell under rotations and the diagonal shift
    auto close_cell = [&](int x, int y, int z) {
        int v = at(x, y, z);
        for (int k = 0; k < m; ++k) {
            int a = (x + k) % m, b = (y + k) % m, c = (z + k) % m, w = (v + k) % m;
            assign(a, b, c, w);
            assign(b, c, a, w);
            assign(c, a, b, w);
        }
    };

    for (const auto& r : reps) assign(r[0], r[1], r[2], r[3]);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                for (int z = 0; z < m; ++z)
                    if (at(x, y, z) != -1) close_cell(x, y, z);

        // unit propagation: a line with one hole forces its missing symbol
        auto coords = [](int dir, int v, int a, int b) {
            switch (dir) {
                case 0: return std::array<int, 3>{v, a, b};
                case 1: return std::array<int, 3>{a, v, b};
                default: return std::array<int, 3>{a, b, v};
            }
        };
        for (int dir = 0; dir < 3 && !changed; ++dir) {
            for (int a = 0; a < m && !changed; ++a) {
                for (int b = 0; b < m && !changed; ++b) {
                    int hole = -1, holes = 0;
                    bool used[5] = {false, false, false, false, false};
                    for (int v = 0; v < m; ++v) {
                        auto c = coords(dir, v, a, b);
                        int cell = at(c[0], c[1], c[2]);
                        if (cell == -1) {
                            hole = v;
                            ++holes;
                        } else {
                            used[cell] = true;
                        }
                    }
                    if (holes == 1) {
                        int missing = -1, count = 0;
                        for (int v = 0; v < m; ++v)
                            if (!used[v]) {
                                missing = v;
                                ++count;
                            }
                        if (count != 1) throw std::logic_error("order-5 builder: line with no legal value");
                        auto c = coords(dir, hole, a, b);
                        assign(c[0], c[1], c[2], missing);
                        changed = true;
                    }
                }
            }
        }
    }

    for (int v : t.values)
        if (v == -1) throw std::logic_error("order-5 builder: table not total after propagation");
    for (const auto& r : reps)
        if (at(r[0], r[1], r[2]) != r[3]) throw std::logic_error("order-5 builder: representative row changed");
    auto cert = validate(t);
    if (!cert.latin || !cert.alternating)
        throw std::logic_error("order-5 builder: result is not an alternating quasigroup");
    return t;
}

/// Alternating product of a commutative n-quasigroup U and a commutative
/// (n+1)-quasigroup V along an alternating map alpha: U^n -> V. Elements
/// are pairs (u,v) encoded as u*|V|+v with labels "u|v".
inline OperationTable alternating_product(const OperationTable& U, const OperationTable& V,
                                          const AltMapTable& alpha) {
    if (V.arity != U.arity + 1)
        throw std::invalid_argument("alternating_product: V must have arity one above U");
    if (!is_latin(U) || !is_commutative(U))
        throw std::invalid_argument("alternating_product: U must be a commutative quasigroup");
    if (!is_latin(V) || !is_commutative(V))
        throw std::invalid_argument("alternating_product: V must be a commutative quasigroup");
    if (alpha.arity != U.arity || alpha.domain_order != U.order || alpha.codomain_order != V.order ||
        !is_alternating_map(alpha))
        throw std::invalid_argument("alternating_product: alpha must be an alternating map U^n -> V");

    const int n = U.arity;
    const int mu = U.order, mv = V.order;
    OperationTable t;
    t.arity = n;
    t.order = mu * mv;
    double projected = 1;
    for (int i = 0; i < n; ++i) projected *= t.order;
    if (projected > 1e8)
        throw std::invalid_argument("alternating_product: result table would have " +
                                    std::to_string(projected) + " cells");
    t.values.assign(t.cell_count(), 0);
    t.labels.reserve(t.order);
    for (int u = 0; u < mu; ++u)
        for (int v = 0; v < mv; ++v) t.labels.push_back(U.label_of(u) + "|" + V.label_of(v));

    std::vector<int> x(n), us(n), vs(n + 1);
    const std::size_t cells = t.cell_count();
    for (std::size_t idx = 0; idx < cells; ++idx) {
        std::size_t r = idx;
        for (int i = n - 1; i >= 0; --i) {
            x[i] = static_cast<int>(r % t.order);
            r /= t.order;
        }
        for (int i = 0; i < n; ++i) {
            us[i] = x[i] / mv;
            vs[i + 1] = x[i] % mv;
        }
        vs[0] = alpha.apply(us);
        t.values[idx] = U.apply(us) * mv + V.apply(vs);
    }
    return t;
}

/// Arithmetic in F_q for odd prime powers q <= 9. F_9 is realized as
/// F_3[t]/(t^2+1) with element a*t+b encoded as 3a+b.
struct FiniteField {
    int q;

    explicit FiniteField(int q_) : q(q_) {
        if (q != 3 && q != 5 && q != 7 && q != 9)
            throw std::invalid_argument("field order must be an odd prime power <= 9");
    }

    int add(int a, int b) const {
        if (q == 9) return 3 * ((a / 3 + b / 3) % 3) + (a % 3 + b % 3) % 3;
        return (a + b) % q;
    }
    int neg(int a) const {
        if (q == 9) return 3 * ((3 - a / 3) % 3) + (3 - a % 3) % 3;
        return (q - a) % q;
    }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const {
        if (q == 9) {
            int h1 = a / 3, l1 = a % 3, h2 = b / 3, l2 = b % 3;
            int h = (h1 * l2 + h2 * l1) % 3;
            int l = ((l1 * l2 - h1 * h2) % 3 + 3) % 3;
            return 3 * h + l;
        }
        return (a * b) % q;
    }
};

namespace detail {

/// Determinant of an n x n matrix over F_q by cofactor expansion (n <= 3).
inline int field_det(const FiniteField& F, const std::vector<std::vector<int>>& m) {
    const int n = static_cast<int>(m.size());
    if (n == 1) return m[0][0];
    if (n == 2) return F.sub(F.mul(m[0][0], m[1][1]), F.mul(m[0][1], m[1][0]));
    if (n == 3) {
        int d = 0;
        d = F.add(d, F.mul(m[0][0], F.sub(F.mul(m[1][1], m[2][2]), F.mul(m[1][2], m[2][1]))));
        d = F.sub(d, F.mul(m[0][1], F.sub(F.mul(m[1][0], m[2][2]), F.mul(m[1][2], m[2][0]))));
        d = F.add(d, F.mul(m[0][2], F.sub(F.mul(m[1][0], m[2][1]), F.mul(m[1][1], m[2][0]))));
        return d;
    }
    throw std::invalid_argument("field determinant supports n <= 3");
}

/// Rank of a matrix over F_q by row elimination; independent of field_det.
inline int field_rank(const FiniteField& F, std::vector<std::vector<int>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    // multiplicative inverse by scan (q <= 9); identity encodes as 1
    auto inv = [&](int a) {
        for (int b = 0; b < F.q; ++b)
            if (F.mul(a, b) == 1) return b;
        throw std::logic_error("field inverse of zero");
    };
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        int scale = inv(m[rank][c]);
        for (int j = 0; j < cols; ++j) m[rank][j] = F.mul(m[rank][j], scale);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            int factor = m[r][c];
            for (int j = 0; j < cols; ++j) m[r][j] = F.sub(m[r][j], F.mul(factor, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// The field quasigroup: U = (F_q^n, componentwise sum of n vectors),
/// V = (F_q, sum of n+1), alpha = det. Order q^(n+1).
inline OperationTable field_quasigroup(int q, int n) {
    FiniteField F(q);
    if (n < 1 || n > 3) throw std::invalid_argument("field quasigroup supports arity 1..3");
    int qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    double projected = 1;
    for (int i = 0; i < n; ++i) projected *= static_cast<double>(qn) * q;
    if (projected > 1e8)
        throw std::invalid_argument("field quasigroup of order " + std::to_string(qn * q) +
                                    " would be too large to tabulate");

    auto vec_of = [&](int e) {
        std::vector<int> v(n);
        for (int i = n - 1; i >= 0; --i) {
            v[i] = e % q;
            e /= q;
        }
        return v;
    };

    // U: vector sum on F_q^n
    OperationTable U;
    U.arity = n;
    U.order = qn;
    U.values.assign(U.cell_count(), 0);
    {
        std::vector<int> x(n);
        for (std::size_t idx = 0; idx < U.values.size(); ++idx) {
            std::size_t r = idx;
            for (int i = n - 1; i >= 0; --i) {
                x[i] = static_cast<int>(r % qn);
                r /= qn;
            }
            std::vector<int> sum(n, 0);
            for (int i = 0; i < n; ++i) {
                auto v = vec_of(x[i]);
                for (int j = 0; j < n; ++j) sum[j] = F.add(sum[j], v[j]);
            }
            int enc = 0;
            for (int j = 0; j < n; ++j) enc = enc * q + sum[j];
            U.values[idx] = enc;
        }
    }

    // V: scalar sum of n+1 field elements
    OperationTable V;
    V.arity = n + 1;
    V.order = q;
    V.values.assign(V.cell_count(), 0);
    {
        std::vector<int> x(n + 1);
        for (std::size_t idx = 0; idx < V.values.size(); ++idx) {
            std::size_t r = idx;
            for (int i = n; i >= 0; --i) {
                x[i] = static_cast<int>(r % q);
                r /= q;
            }
            int s = 0;
            for (int v : x) s = F.add(s, v);
            V.values[idx] = s;
        }
    }

    AltMapTable alpha;
    alpha.arity = n;
    alpha.domain_order = qn;
    alpha.codomain_order = q;
    alpha.values.assign(U.cell_count(), 0);
    {
        std::vector<int> x(n);
        std::vector<std::vector<int>> mat(n);
        for (std::size_t idx = 0; idx < alpha.values.size(); ++idx) {
            std::size_t r = idx;
            for (int i = n - 1; i >= 0; --i) {
                x[i] = static_cast<int>(r % qn);
                r /= qn;
            }
            for (int i = 0; i < n; ++i) mat[i] = vec_of(x[i]);
            alpha.values[idx] = detail::field_det(F, mat);
        }
    }

    return alternating_product(U, V, alpha);
}

struct FieldCensus {
    long long nct_bruteforce = 0;       // tuples scanned against the nct definition
    long long gl_by_rank = 0;           // invertible matrices counted by rank test
    long long vertices_bruteforce = 0;  // alt_n-orbit count of nct
    long long vertices_formula_k1 = 0;  // (2 q^n / n!) * prod_{k=1..n-1}(q^n - q^k)
    long long vertices_formula_k0 = 0;  // (2 q^n / n!) * prod_{k=0..n-1}(q^n - q^k)
};

/// Census used to compare the brute-force vertex count of ncgr(F_q^(n))
/// against the two readings of the displayed product formula.
inline FieldCensus field_census(int q, int n) {
    FiniteField F(q);
    FieldCensus c;
    auto table = field_quasigroup(q, n);
    c.nct_bruteforce = static_cast<long long>(nct(table).size());
    c.vertices_bruteforce = static_cast<long long>(nct_orbits(table).size());

    int qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    long long mats = 1;
    for (int i = 0; i < n * n; ++i) mats *= q;
    for (long long e = 0; e < mats; ++e) {
        long long r = e;
        std::vector<std::vector<int>> m(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m[i][j] = static_cast<int>(r % q);
                r /= q;
            }
        if (detail::field_rank(F, m) == n) ++c.gl_by_rank;
    }

    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    long long base = 2LL * qn / fact;
    long long p1 = 1, p0 = 1;
    for (int k = 1; k <= n - 1; ++k) {
        long long qk = 1;
        for (int i = 0; i < k; ++i) qk *= q;
        p1 *= (qn - qk);
    }
    for (int k = 0; k <= n - 1; ++k) {
        long long qk = 1;
        for (int i = 0; i < k; ++i) qk *= q;
        p0 *= (qn - qk);
    }
    c.vertices_formula_k1 = base * p1;
    c.vertices_formula_k0 = base * p0;
    return c;
}

namespace detail {

inline OperationTable quaternion_table() {
    // elements: 1,-1,i,-i,j,-j,k,-k encoded as 2*basis + (negative ? 1 : 0)
    static const char* names[] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    // basis products with sign: basis 0=1,1=i,2=j,3=k
    static const int bprod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int bsign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    OperationTable t;
    t.arity = 2;
    t.order = 8;
    t.values.assign(64, 0);
    t.labels.assign(names, names + 8);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ba = a / 2, bb = b / 2;
            int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * bsign[ba][bb];
            t.values[a * 8 + b] = 2 * bprod[ba][bb] + (sign < 0 ? 1 : 0);
        }
    return t;
}

inline OperationTable cyclic_table(int m) {
    OperationTable t;
    t.arity = 2;
    t.order = m;
    t.values.assign(static_cast<std::size_t>(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t.values[a * m + b] = (a + b) % m;
    return t;
}

inline OperationTable dihedral_table(int m) {
    // rotations r^a -> a, reflections s r^a -> m + a
    OperationTable t;
    t.arity = 2;
    t.order = 2 * m;
    t.values.assign(static_cast<std::size_t>(2 * m) * (2 * m), 0);
    t.labels.reserve(2 * m);
    for (int a = 0; a < m; ++a) t.labels.push_back("r" + std::to_string(a));
    for (int a = 0; a < m; ++a) t.labels.push_back("sr" + std::to_string(a));
    auto prod = [&](int x, int y) {
        bool fx = x >= m, fy = y >= m;
        int a = x % m, b = y % m;
        if (!fx && !fy) return (a + b) % m;
        if (!fx && fy) return m + ((b - a + m) % m);
        if (fx && !fy) return m + ((a + b) % m);
        return (b - a + m) % m;
    };
    for (int x = 0; x < 2 * m; ++x)
        for (int y = 0; y < 2 * m; ++y) t.values[x * 2 * m + y] = prod(x, y);
    return t;
}

inline OperationTable order6_product() {
    OperationTable U;  // sum of three in Z/3
    U.arity = 3;
    U.order = 3;
    U.values.assign(27, 0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) U.values[(a * 3 + b) * 3 + c] = (a + b + c) % 3;

    OperationTable V;  // sum of four in Z/2
    V.arity = 4;
    V.order = 2;
    V.values.assign(16, 0);
    for (int i = 0; i < 16; ++i) V.values[i] = __builtin_popcount(static_cast<unsigned>(i)) & 1;

    AltMapTable alpha;
    alpha.arity = 3;
    alpha.domain_order = 3;
    alpha.codomain_order = 2;
    alpha.values.assign(27, 0);
    for (const auto& x : alt_orbit(std::vector<int>{0, 2, 1}))
        alpha.values[(x[0] * 3 + x[1]) * 3 + x[2]] = 1;

    return alternating_product(U, V, alpha);
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
    return {"trivial", "q8", "a5", "a6", "cyclic:<m>", "dihedral:<m>", "field:<q>,<n>"};
}

/// Named example tables. Unknown names raise an error listing the registry.
inline OperationTable builtin(const std::string& name) {
    if (name == "trivial") {
        OperationTable t;
        t.arity = 2;
        t.order = 1;
        t.values = {0};
        t.labels = {"e"};
        return t;
    }
    if (name == "q8") return detail::quaternion_table();
    if (name == "a5" || name == "order5") return construct_order5();
    if (name == "a6" || name == "order6") return detail::order6_product();
    auto colon = name.find(':');
    if (colon != std::string::npos) {
        std::string kind = name.substr(0, colon);
        std::string rest = name.substr(colon + 1);
        try {
            if (kind == "cyclic") return detail::cyclic_table(std::stoi(rest));
            if (kind == "dihedral") return detail::dihedral_table(std::stoi(rest));
            if (kind == "field") {
                auto comma = rest.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("field needs q,n");
                return field_quasigroup(std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1)));
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad parameters in builtin name '" + name + "'");
        }
    }
    std::string msg = "unknown builtin '" + name + "'; available:";
    for (const auto& s : builtin_names()) msg += " " + s;
    throw std::invalid_argument(msg);
}

}  // namespace serene
