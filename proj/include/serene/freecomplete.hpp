#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "serene/complex.hpp"
#include "serene/topology.hpp"

namespace serene {

/// Arena of symbolic elements for the level-wise free completion. Elements
/// are interned: structurally equal nodes share an id, so id equality is
/// element equality. Kinds order as Base < Fct < Prod < Div; ties break by
/// payload, recursively through components. That total order fixes the
/// canonical (lex-least) representative of every orbit.
class FreeAlgebra {
  public:
    enum class Kind : std::uint8_t { Base = 0, Fct = 1, Prod = 2, Div = 3 };
    enum class DivKind : std::uint8_t { Alt = 0, Left = 1, Right = 2 };

    struct Node {
        Kind kind;
        int level;
        int aux;                         // Base: vertex id; Fct: facet id; Div: DivKind
        std::vector<std::uint32_t> args; // Prod: canonical n-tuple; Div: canonical (n-1)-tuple
        std::uint32_t target = 0;        // Div only
    };

    explicit FreeAlgebra(int arity) : arity_(arity) {}

    int arity() const { return arity_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(nodes_.size()); }
    const Node& node(std::uint32_t id) const { return nodes_[id]; }

    std::uint32_t make_base(int vertex) { return intern({Kind::Base, 0, vertex, {}, 0}); }
    std::uint32_t make_fct(int facet) { return intern({Kind::Fct, 0, facet, {}, 0}); }

    std::uint32_t make_prod(std::vector<std::uint32_t> canonical_args, int level) {
        return intern({Kind::Prod, level, 0, std::move(canonical_args), 0});
    }
    std::uint32_t make_div(DivKind dk, std::vector<std::uint32_t> canonical_args, std::uint32_t target,
                           int level) {
        return intern({Kind::Div, level, static_cast<int>(dk), std::move(canonical_args), target});
    }

    /// Structural comparison; equal ids are the only equal elements.
    int cmp(std::uint32_t a, std::uint32_t b) const {
        if (a == b) return 0;
        const Node& na = nodes_[a];
        const Node& nb = nodes_[b];
        if (na.kind != nb.kind) return na.kind < nb.kind ? -1 : 1;
        switch (na.kind) {
            case Kind::Base:
            case Kind::Fct:
                return na.aux < nb.aux ? -1 : 1;
            case Kind::Prod:
                return cmp_vec(na.args, nb.args);
            case Kind::Div: {
                if (na.aux != nb.aux) return na.aux < nb.aux ? -1 : 1;
                if (int c = cmp_vec(na.args, nb.args)) return c;
                return cmp(na.target, nb.target);
            }
        }
        return 0;
    }

    bool tuple_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        return cmp_vec(a, b) < 0;
    }

    /// Lexicographically least image of t under even permutations of its
    /// positions, with respect to the structural element order.
    std::vector<std::uint32_t> alt_canon(const std::vector<std::uint32_t>& t) const {
        auto best = t;
        for (const auto& p : alt_group_cached(static_cast<int>(t.size()))) {
            auto img = apply_perm(p, t);
            if (cmp_vec(img, best) < 0) best = std::move(img);
        }
        return best;
    }

  private:
    int cmp_vec(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (int c = cmp(a[i], b[i])) return c;
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        return 0;
    }

    std::uint32_t intern(Node n) {
        auto key = std::make_tuple(static_cast<int>(n.kind), n.aux, n.args, n.target);
        auto it = intern_.find(key);
        if (it != intern_.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(std::move(n));
        intern_[std::move(key)] = id;
        return id;
    }

    int arity_;
    std::vector<Node> nodes_;
    std::map<std::tuple<int, int, std::vector<std::uint32_t>, std::uint32_t>, std::uint32_t> intern_;
};

struct OpEntry {
    std::uint32_t value;
    int level;  // birth level of this definition
};

/// One level of the completion tower: the arena, the partial operation
/// keyed by canonical orbit representatives, and bookkeeping counts.
struct CompletionState {
    FreeAlgebra alg;
    int level = 0;
    std::map<std::vector<std::uint32_t>, OpEntry> op;
    std::vector<long long> elements_per_level;  // cumulative |A_j|
    int base_vertices = 0;
    int base_facets = 0;

    explicit CompletionState(int arity) : alg(arity) {}
    long long element_count() const { return elements_per_level.back(); }
    long long defined_orbits() const { return static_cast<long long>(op.size()); }
    long long defined_tuples() const;
};

inline long long CompletionState::defined_tuples() const {
    long long total = 0;
    for (const auto& [key, entry] : op) total += static_cast<long long>(alt_orbit(key).size());
    return total;
}

struct LevelCensus {
    long long elements = 0;        // |A_i|
    long long defined_orbits = 0;  // orbit keys in dom(f_i)
    long long products_new = 0;    // |A_i x|
    long long divisions_new = 0;   // |A_i ÷|
    long long next_elements = 0;   // |A_{i+1}|
};

class CapExceeded : public std::runtime_error {
  public:
    CapExceeded(const std::string& what, LevelCensus c) : std::runtime_error(what), census(c) {}
    LevelCensus census;
};

namespace detail {

/// Number of alt_k-orbits of n-tuples over an N-element set, by Burnside.
inline long long alt_orbit_count(long long N, int k) {
    const auto& group = alt_group_cached(k);
    long long total = 0;
    for (const auto& p : group) {
        // count cycles of p
        std::vector<bool> seen(k, false);
        int cycles = 0;
        for (int i = 0; i < k; ++i) {
            if (seen[i]) continue;
            ++cycles;
            for (int j = i; !seen[j]; j = p[j]) seen[j] = true;
        }
        long long pw = 1;
        for (int c = 0; c < cycles; ++c) pw *= N;
        total += pw;
    }
    return total / static_cast<long long>(group.size());
}

/// Canonical division key: the lex-least arrangement of the non-x entries
/// reachable by an even permutation that keeps x in front, i.e. the
/// alt_(n-1)-minimum. For n = 2 the args are a single element.
inline std::vector<std::uint32_t> div_canon(const FreeAlgebra& alg, std::vector<std::uint32_t> args) {
    if (args.size() < 3) return args;  // alt_1, alt_2 are trivial
    auto best = args;
    for (const auto& p : alt_group_cached(static_cast<int>(args.size()))) {
        auto img = apply_perm(p, args);
        if (alg.tuple_less(img, best)) best = std::move(img);
    }
    return best;
}

}  // namespace detail

/// Seed the tower: A_0 = vertices + facets, f_0 defined on the n-prefixes
/// of every even (resp. odd, per the facet sign) arrangement of each facet.
/// A key landing in two facets witnesses an incoherent orientation at their
/// shared ridge; that uniqueness is exactly why the orientation must be
/// coherent.
inline CompletionState seed(const OrientedComplex& gamma) {
    const SimpComplex& g = gamma.base;
    const int n = g.dim;
    if (n < 2) throw std::invalid_argument("seed: triangulation dimension must be at least 2");
    if (g.facets.empty()) throw std::invalid_argument("seed: empty triangulation");
    if (gamma.orientation.size() != g.facets.size())
        throw std::invalid_argument("seed: orientation must assign a sign to every facet");
    for (int s : gamma.orientation)
        if (s != 1 && s != -1) throw std::invalid_argument("seed: orientation entries must be +1 or -1");
    auto pc = check_pseudomanifold(g);
    if (!pc.ok) throw std::invalid_argument("seed: triangulation is not a pseudomanifold");
    if (components(g).size() != 1) throw std::invalid_argument("seed: triangulation must be connected");

    CompletionState st(n);
    st.base_vertices = static_cast<int>(g.vertices.size());
    st.base_facets = static_cast<int>(g.facets.size());
    std::vector<std::uint32_t> base_ids(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) base_ids[v] = st.alg.make_base(static_cast<int>(v));
    std::vector<std::uint32_t> fct_ids(g.facets.size());
    for (std::size_t f = 0; f < g.facets.size(); ++f) fct_ids[f] = st.alg.make_fct(static_cast<int>(f));

    const auto& all_perms = sym_group_cached(n + 1);
    for (std::size_t fi = 0; fi < g.facets.size(); ++fi) {
        const auto& facet = g.facets[fi];
        const int want_parity = gamma.orientation[fi];
        for (const auto& p : all_perms) {
            if (perm_parity(p) != want_parity) continue;
            std::vector<std::uint32_t> prefix(n);
            for (int i = 0; i < n; ++i) prefix[i] = base_ids[facet[p[i]]];
            auto key = st.alg.alt_canon(prefix);
            auto it = st.op.find(key);
            if (it == st.op.end()) {
                st.op[std::move(key)] = {fct_ids[fi], 0};
            } else if (it->second.value != fct_ids[fi]) {
                std::string ridge = "{";
                for (int i = 0; i < n; ++i)
                    ridge += (i ? "," : "") + std::to_string(facet[p[i]]);
                ridge += "}";
                throw std::invalid_argument("seed: incoherent orientation at ridge " + ridge +
                                            ": facets " +
                                            std::to_string(st.alg.node(it->second.value).aux) + " and " +
                                            std::to_string(fi) + " define the same product");
            }
        }
    }
    st.elements_per_level = {static_cast<long long>(st.alg.size())};
    return st;
}

/// Counts for the next level without materializing it.
inline LevelCensus census(const CompletionState& st) {
    const int n = st.alg.arity();
    const long long N = st.element_count();
    LevelCensus c;
    c.elements = N;
    c.defined_orbits = st.defined_orbits();
    c.products_new = detail::alt_orbit_count(N, n) - c.defined_orbits;

    // solved equation patterns, exactly, from the defined entries
    std::set<std::pair<std::vector<std::uint32_t>, std::uint32_t>> solved_alt;
    std::set<std::pair<std::pair<std::uint32_t, std::uint32_t>, bool>> solved_lr;  // ((a,y), is_left)
    for (const auto& [key, entry] : st.op) {
        if (n == 2) {
            solved_lr.insert({{key[1], entry.value}, true});   // f(x, a) = y
            solved_lr.insert({{key[0], entry.value}, false});  // f(a, x) = y
        } else {
            for (const auto& t : alt_orbit(key)) {
                std::vector<std::uint32_t> rest(t.begin() + 1, t.end());
                solved_alt.insert({detail::div_canon(st.alg, rest), entry.value});
            }
        }
    }
    if (n == 2) {
        c.divisions_new = 2 * N * N - static_cast<long long>(solved_lr.size());
    } else {
        c.divisions_new = detail::alt_orbit_count(N, n - 1) * N - static_cast<long long>(solved_alt.size());
    }
    c.next_elements = N + c.products_new + c.divisions_new;
    return c;
}

struct StepLimits {
    long long element_cap = 1'000'000;
    bool verify = true;  // run the latin/alternating re-verification
};

/// Detailed invariant verification of a state: canonical keys, the partial
/// latin property (at most one solution per slot pattern and target), and
/// level bookkeeping. Returns an explanation on failure.
inline std::optional<std::string> verify_state(const CompletionState& st) {
    const int n = st.alg.arity();
    for (const auto& [key, entry] : st.op) {
        if (st.alg.alt_canon(key) != key) return "op key is not a canonical orbit representative";
        if (entry.level > st.level) return "op entry born above the state level";
    }
    // partial latin scan over hole patterns
    std::map<std::tuple<int, std::vector<std::uint32_t>, std::uint32_t>, std::uint32_t> pattern;
    for (const auto& [key, entry] : st.op) {
        for (const auto& t : alt_orbit(key)) {
            for (int hole = 0; hole < n; ++hole) {
                std::vector<std::uint32_t> rest;
                rest.reserve(n - 1);
                for (int i = 0; i < n; ++i)
                    if (i != hole) rest.push_back(t[i]);
                auto pkey = std::make_tuple(hole, std::move(rest), entry.value);
                auto [it, fresh] = pattern.try_emplace(std::move(pkey), t[hole]);
                if (!fresh && it->second != t[hole])
                    return "partial latin violation: two solutions share a slot pattern and target";
            }
        }
    }
    return std::nullopt;
}

/// One completion step: adjoin a product element for every undefined orbit
/// and a division element for every unsolved one-unknown equation, then
/// extend the operation by the three defining clauses.
inline CompletionState step(const CompletionState& prev, const StepLimits& limits = {}) {
    const int n = prev.alg.arity();
    const long long N = prev.element_count();
    auto c = census(prev);
    if (c.next_elements > limits.element_cap)
        throw CapExceeded("step: level " + std::to_string(prev.level + 1) + " needs " +
                              std::to_string(c.next_elements) + " elements, cap is " +
                              std::to_string(limits.element_cap),
                          c);

    CompletionState st = prev;
    st.level = prev.level + 1;
    const int lvl = st.level;
    const std::uint32_t old_size = st.alg.size();

    // products: one fresh element per undefined orbit of A_i^n
    {
        std::vector<std::uint32_t> t(n, 0);
        while (true) {
            bool canonical = true;
            std::vector<std::uint32_t> key(t);
            if (n >= 3) {
                key = st.alg.alt_canon(t);
                canonical = key == t;
            }
            if (canonical && !prev.op.count(key)) {
                std::uint32_t prod = st.alg.make_prod(key, lvl);
                st.op[key] = {prod, lvl};
            }
            int i = n - 1;
            for (; i >= 0; --i) {
                if (++t[i] < static_cast<std::uint32_t>(N)) break;
                t[i] = 0;
            }
            if (i < 0) break;
        }
    }

    // divisions: one fresh element per unsolved equation pattern
    auto define_div = [&](FreeAlgebra::DivKind dk, const std::vector<std::uint32_t>& args,
                          std::uint32_t target) {
        std::uint32_t d = st.alg.make_div(dk, args, target, lvl);
        std::vector<std::uint32_t> tuple;
        if (dk == FreeAlgebra::DivKind::Right) {
            tuple = {args[0], d};
        } else {
            tuple.push_back(d);
            tuple.insert(tuple.end(), args.begin(), args.end());
        }
        auto key = st.alg.alt_canon(tuple);
        auto [it, fresh] = st.op.try_emplace(key, OpEntry{target, lvl});
        if (!fresh) throw std::logic_error("step: division entry collided with an existing product");
    };

    if (n == 2) {
        std::set<std::pair<std::uint32_t, std::uint32_t>> solved_left, solved_right;
        for (const auto& [key, entry] : prev.op) {
            solved_left.insert({key[1], entry.value});
            solved_right.insert({key[0], entry.value});
        }
        for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(N); ++a)
            for (std::uint32_t y = 0; y < static_cast<std::uint32_t>(N); ++y) {
                if (!solved_left.count({a, y})) define_div(FreeAlgebra::DivKind::Left, {a}, y);
                if (!solved_right.count({a, y})) define_div(FreeAlgebra::DivKind::Right, {a}, y);
            }
    } else {
        std::set<std::pair<std::vector<std::uint32_t>, std::uint32_t>> solved;
        for (const auto& [key, entry] : prev.op)
            for (const auto& t : alt_orbit(key)) {
                std::vector<std::uint32_t> rest(t.begin() + 1, t.end());
                solved.insert({detail::div_canon(st.alg, rest), entry.value});
            }
        std::vector<std::uint32_t> args(n - 1, 0);
        while (true) {
            if (detail::div_canon(st.alg, args) == args) {
                for (std::uint32_t y = 0; y < static_cast<std::uint32_t>(N); ++y)
                    if (!solved.count({args, y})) define_div(FreeAlgebra::DivKind::Alt, args, y);
            }
            int i = n - 2;
            for (; i >= 0; --i) {
                if (++args[i] < static_cast<std::uint32_t>(N)) break;
                args[i] = 0;
            }
            if (i < 0) break;
        }
    }

    long long created = static_cast<long long>(st.alg.size()) - old_size;
    if (created != c.products_new + c.divisions_new)
        throw std::logic_error("step: created " + std::to_string(created) + " elements, census said " +
                               std::to_string(c.products_new + c.divisions_new));
    st.elements_per_level.push_back(static_cast<long long>(st.alg.size()));

    // the extension clause: old entries must be untouched
    for (const auto& [key, entry] : prev.op) {
        auto it = st.op.find(key);
        if (it == st.op.end() || it->second.value != entry.value || it->second.level != entry.level)
            throw std::logic_error("step: an existing entry changed across the level");
    }
    if (limits.verify) {
        if (auto err = verify_state(st)) throw std::logic_error("step: " + *err);
    }
    return st;
}

struct SpotCheckReport {
    long long equations_sampled = 0;
    long long with_solution = 0;
    bool unique_solutions = true;
};

/// Sampled uniqueness check for equations over the current elements: each
/// f(x, a_2..a_n) = y must have at most one solution among defined entries
/// (the next level then adds exactly one for the unsolved ones). For binary
/// states the unknown is sampled in both slots.
inline SpotCheckReport spot_check_equations(const CompletionState& st, int samples, std::uint64_t sd) {
    const int n = st.alg.arity();
    const long long N = st.element_count();
    std::mt19937_64 rng(sd);
    SpotCheckReport rep;
    for (int s = 0; s < samples; ++s) {
        std::vector<std::uint32_t> args(n - 1);
        for (auto& a : args) a = static_cast<std::uint32_t>(rng() % N);
        std::uint32_t y = static_cast<std::uint32_t>(rng() % N);
        int hole = (n == 2 && (rng() & 1)) ? 1 : 0;
        int solutions = 0;
        std::vector<std::uint32_t> t(n);
        for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(N); ++x) {
            for (int i = 0, k = 0; i < n; ++i) t[i] = i == hole ? x : args[k++];
            auto it = st.op.find(st.alg.alt_canon(t));
            if (it != st.op.end() && it->second.value == y) ++solutions;
        }
        ++rep.equations_sampled;
        if (solutions > 0) ++rep.with_solution;
        if (solutions > 1) rep.unique_solutions = false;
    }
    return rep;
}

struct SereneCheck {
    bool facets_match = false;          // level-0 products equal the explicit subdivision
    std::string first_divergence;       // facet description when they differ
    int gamma_prime_facets = 0;
    int gamma_prime_vertices = 0;
    int component_count = 0;
    long long chi_gamma_prime = 0;
    long long chi_gamma = 0;
    std::vector<int> betti_gamma_prime;
    std::vector<int> betti_gamma;
    bool orientable_gamma_prime = false;
    bool orientable_gamma = false;
    bool invariants_match = false;
};

/// Compare the facets carved out by the level-0 products against the
/// explicit one-vertex-per-facet subdivision of the source triangulation,
/// then compare topological invariants of the two spaces.
inline SereneCheck verify_serene(const OrientedComplex& gamma, const CompletionState& st) {
    const SimpComplex& g = gamma.base;
    const int n = g.dim;
    const int V = static_cast<int>(g.vertices.size());

    // complex from the level-0 entries: inputs are base vertices, outputs
    // are facet elements shifted past the vertex block
    SimpComplex from_state;
    from_state.dim = n;
    for (int v = 0; v < V; ++v)
        from_state.vertices.push_back({VertexTag::Input, v, g.vertices[v].label});
    for (std::size_t f = 0; f < g.facets.size(); ++f)
        from_state.vertices.push_back({VertexTag::Output, static_cast<int>(f), "F" + std::to_string(f)});
    for (const auto& [key, entry] : st.op) {
        if (entry.level != 0) continue;
        std::vector<int> facet;
        for (auto id : key) {
            const auto& node = st.alg.node(id);
            if (node.kind != FreeAlgebra::Kind::Base)
                throw std::logic_error("verify_serene: level-0 key contains a non-vertex element");
            facet.push_back(node.aux);
        }
        facet.push_back(V + st.alg.node(entry.value).aux);
        std::sort(facet.begin(), facet.end());
        from_state.facets.push_back(std::move(facet));
    }
    from_state.normalize();

    // the explicit subdivision
    SimpComplex subdiv = from_state;  // same vertex list
    subdiv.facets.clear();
    for (std::size_t fi = 0; fi < g.facets.size(); ++fi)
        for (int drop : g.facets[fi]) {
            std::vector<int> facet;
            for (int v : g.facets[fi])
                if (v != drop) facet.push_back(v);
            facet.push_back(V + static_cast<int>(fi));
            std::sort(facet.begin(), facet.end());
            subdiv.facets.push_back(std::move(facet));
        }
    subdiv.normalize();

    SereneCheck res;
    res.facets_match = from_state.facets == subdiv.facets;
    if (!res.facets_match) {
        std::set<std::vector<int>> a(from_state.facets.begin(), from_state.facets.end());
        std::set<std::vector<int>> b(subdiv.facets.begin(), subdiv.facets.end());
        std::vector<std::vector<int>> diff;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
        if (!diff.empty()) {
            res.first_divergence = "{";
            for (int v : diff.front()) res.first_divergence += std::to_string(v) + ",";
            res.first_divergence += "}";
        }
    }
    res.gamma_prime_facets = static_cast<int>(from_state.facets.size());
    res.gamma_prime_vertices = static_cast<int>(from_state.vertices.size());
    res.component_count = static_cast<int>(components(from_state).size());

    auto chi_of = [](const SimpComplex& c) {
        long long chi = 0;
        for (int k = 0; k <= c.dim; ++k)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(faces(c, k).size());
        return chi;
    };
    res.chi_gamma_prime = chi_of(from_state);
    res.chi_gamma = chi_of(g);
    res.betti_gamma_prime = z2_betti(from_state);
    res.betti_gamma = z2_betti(g);
    res.orientable_gamma_prime = orient(from_state).orientable;
    res.orientable_gamma = orient(g).orientable;
    res.invariants_match = res.facets_match && res.component_count == 1 &&
                           res.chi_gamma_prime == res.chi_gamma &&
                           res.betti_gamma_prime == res.betti_gamma &&
                           res.orientable_gamma_prime == res.orientable_gamma;
    return res;
}

}  // namespace serene
