#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "serene/freecomplete.hpp"
#include "serene/quasigroup.hpp"

namespace serene {

/// A partial alternating Latin cube: a set of (n+1)-tuples read as
/// f(a_1..a_n) = a_{n+1} wherever defined.
struct PartialCube {
    int arity = 0;
    int order = 0;
    std::vector<std::vector<int>> entries;
};

struct PartialCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks the two partial-cube clauses over the entry set: at most one
/// completing value per role and fixing, and equal outputs across even
/// permutations of the inputs.
inline PartialCheck check_partial(const PartialCube& p) {
    const int n = p.arity;
    if (n < 1) throw std::invalid_argument("check_partial: arity must be positive");
    for (const auto& e : p.entries) {
        if (static_cast<int>(e.size()) != n + 1)
            throw std::invalid_argument("check_partial: entries must be (n+1)-tuples");
        for (int v : e)
            if (v < 0 || v >= p.order) throw std::invalid_argument("check_partial: entry value out of range");
    }

    PartialCheck res;
    std::set<std::vector<int>> entries(p.entries.begin(), p.entries.end());

    auto describe = [](const std::vector<int>& e) {
        std::string s = "(";
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
        return s + ")";
    };

    // partial latin: hole patterns over all n+1 roles
    std::map<std::pair<int, std::vector<int>>, std::vector<int>> pattern;  // (role, rest) -> values seen
    for (const auto& e : entries) {
        for (int role = 0; role <= n; ++role) {
            std::vector<int> rest;
            for (int i = 0; i <= n; ++i)
                if (i != role) rest.push_back(e[i]);
            auto& seen = pattern[{role, std::move(rest)}];
            seen.push_back(e[role]);
            if (seen.size() > 1) {
                res.ok = false;
                res.violations.push_back("latin clash in role " + std::to_string(role) + " at " +
                                         describe(e));
            }
        }
    }

    // alternating consistency: orbits of the first n coordinates
    std::map<std::vector<int>, std::pair<int, std::vector<int>>> orbit_out;  // canon -> (output, witness)
    for (const auto& e : entries) {
        std::vector<int> ins(e.begin(), e.begin() + n);
        auto canon = alt_canonical(ins);
        auto it = orbit_out.find(canon);
        if (it == orbit_out.end()) {
            orbit_out[std::move(canon)] = {e[n], e};
        } else if (it->second.first != e[n]) {
            res.ok = false;
            res.violations.push_back("alternating clash between " + describe(it->second.second) +
                                     " and " + describe(e));
        }
    }
    return res;
}

enum class Branching { MRV, Lex };

struct SearchOptions {
    int max_order = 0;  // 0: same as the input order
    long long budget = 10'000'000;
    std::uint64_t seed = 0;  // reserved; the search itself is deterministic
    Branching branching = Branching::MRV;
    bool symmetry_reduction = true;
};

struct SearchStats {
    std::vector<std::pair<int, long long>> nodes_per_order;
    bool budget_exhausted = false;
    bool seed_conflict = false;

    long long total_nodes() const {
        long long t = 0;
        for (auto [order, nodes] : nodes_per_order) t += nodes;
        return t;
    }
};

struct CompletionResult {
    std::optional<OperationTable> table;
    SearchStats stats;
};

namespace detail {

/// Backtracking completion at one fixed carrier size. Cells are alt-orbits
/// of argument tuples (or raw tuples with on-assign orbit propagation when
/// symmetry reduction is off); forward checking runs through per-line used-
/// value bitmasks.
class CubeSearch {
  public:
    CubeSearch(int n, int M, Branching branching, bool reduce)
        : n_(n), M_(M), branching_(branching), reduce_(reduce) {
        if (M > 63) throw std::invalid_argument("completion search supports order <= 63");
        lines_per_dir_ = 1;
        for (int i = 0; i < n_ - 1; ++i) lines_per_dir_ *= M_;
        line_mask_.assign(static_cast<std::size_t>(n_) * lines_per_dir_, 0);

        // enumerate cells
        std::vector<int> t(n_, 0);
        while (true) {
            bool keep = reduce_ ? alt_canonical(t) == t : true;
            if (keep) {
                cell_of_[t] = static_cast<int>(cells_.size());
                cells_.push_back(t);
            }
            int i = n_ - 1;
            for (; i >= 0; --i) {
                if (++t[i] < M_) break;
                t[i] = 0;
            }
            if (i < 0) break;
        }
        cell_lines_.resize(cells_.size());
        cell_group_.resize(cells_.size());
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            auto members = reduce_ ? alt_orbit(cells_[c]) : std::vector<std::vector<int>>{cells_[c]};
            for (const auto& m : members)
                for (int d = 0; d < n_; ++d) cell_lines_[c].push_back(line_id(m, d));
            if (!reduce_)
                for (const auto& m : alt_orbit(cells_[c])) cell_group_[c].push_back(cell_of_.at(m));
        }
        value_.assign(cells_.size(), -1);
    }

    /// Returns false on an unsatisfiable seed (conflicts never heal by
    /// escalating the order).
    bool seed_entries(const std::vector<std::vector<int>>& entries) {
        for (const auto& e : entries) {
            std::vector<int> ins(e.begin(), e.begin() + n_);
            int c = cell_of_.at(reduce_ ? alt_canonical(ins) : ins);
            int v = e[n_];
            if (value_[c] == v) continue;
            if (value_[c] != -1) return false;
            if (!assign(c, v)) return false;
            seeded_.push_back(c);
            if (!reduce_) {
                for (int g : cell_group_[c]) {
                    if (g == c) continue;
                    if (value_[g] == v) continue;
                    if (value_[g] != -1) return false;
                    if (!assign(g, v)) return false;
                    seeded_.push_back(g);
                }
            }
        }
        return true;
    }

    /// Exhaustive DFS under the node budget. Returns true when a complete
    /// assignment was found; budget_out tells how many nodes were spent.
    bool solve(long long budget, long long& nodes_used, bool& exhausted_budget) {
        nodes_ = 0;
        budget_ = budget;
        budget_hit_ = false;
        bool found = dfs();
        nodes_used = nodes_;
        exhausted_budget = budget_hit_;
        return found;
    }

    OperationTable extract() const {
        OperationTable t;
        t.arity = n_;
        t.order = M_;
        t.values.assign(t.cell_count(), -1);
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            if (value_[c] < 0) throw std::logic_error("extract: incomplete assignment");
            if (reduce_) {
                for (const auto& m : alt_orbit(cells_[c])) t.values[t.index(m)] = value_[c];
            } else {
                t.values[t.index(cells_[c])] = value_[c];
            }
        }
        return t;
    }

  private:
    int line_id(const std::vector<int>& tuple, int d) const {
        int enc = 0;
        for (int i = 0; i < n_; ++i)
            if (i != d) enc = enc * M_ + tuple[i];
        return d * lines_per_dir_ + enc;
    }

    bool assign(int c, int v) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        for (int lid : cell_lines_[c])
            if (line_mask_[lid] & bit) return false;
        for (int lid : cell_lines_[c]) line_mask_[lid] |= bit;
        value_[c] = v;
        return true;
    }

    void unassign(int c) {
        const std::uint64_t bit = std::uint64_t{1} << value_[c];
        for (int lid : cell_lines_[c]) line_mask_[lid] &= ~bit;
        value_[c] = -1;
    }

    std::uint64_t domain_mask(int c) const {
        std::uint64_t used = 0;
        for (int lid : cell_lines_[c]) used |= line_mask_[lid];
        return ~used & ((std::uint64_t{1} << M_) - 1);
    }

    int pick_cell() const {
        int best = -1, best_count = M_ + 1;
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            if (value_[c] != -1) continue;
            if (branching_ == Branching::Lex) return static_cast<int>(c);
            int count = __builtin_popcountll(domain_mask(static_cast<int>(c)));
            if (count < best_count) {
                best_count = count;
                best = static_cast<int>(c);
                if (count == 0) break;
            }
        }
        return best;
    }

    bool dfs() {
        int c = pick_cell();
        if (c == -1) return true;  // complete
        if (++nodes_ > budget_) {
            budget_hit_ = true;
            return false;
        }
        std::uint64_t dom = domain_mask(c);
        while (dom) {
            int v = __builtin_ctzll(dom);
            dom &= dom - 1;
            std::vector<int> extra;
            bool ok = assign(c, v);
            if (ok && !reduce_) {
                for (int g : cell_group_[c]) {
                    if (g == c || value_[g] == v) continue;
                    if (value_[g] != -1 || !assign(g, v)) {
                        ok = false;
                        break;
                    }
                    extra.push_back(g);
                }
            }
            if (ok && dfs()) return true;
            if (budget_hit_) {
                for (int g : extra) unassign(g);
                if (value_[c] == v) unassign(c);
                return false;
            }
            for (int g : extra) unassign(g);
            if (value_[c] == v) unassign(c);
        }
        return false;
    }

    int n_, M_;
    Branching branching_;
    bool reduce_;
    int lines_per_dir_;
    std::vector<std::vector<int>> cells_;
    std::map<std::vector<int>, int> cell_of_;
    std::vector<std::vector<int>> cell_lines_;
    std::vector<std::vector<int>> cell_group_;  // orbit mates (reduction off)
    std::vector<int> value_;
    std::vector<std::uint64_t> line_mask_;
    std::vector<int> seeded_;
    long long nodes_ = 0, budget_ = 0;
    bool budget_hit_ = false;
};

}  // namespace detail

/// Completion search over escalating carrier sizes. On success the result
/// table contains every input entry and validates as an alternating
/// quasigroup; otherwise the per-order node counts disclose how much of the
/// space was explored.
inline CompletionResult complete(const PartialCube& p, SearchOptions opts = {}) {
    auto pc = check_partial(p);
    if (!pc.ok)
        throw std::domain_error("complete: input is not a partial alternating latin cube: " +
                                pc.violations.front());
    const int max_order = opts.max_order == 0 ? p.order : opts.max_order;
    if (max_order < p.order) throw std::invalid_argument("complete: max_order below the input order");

    CompletionResult res;
    long long remaining = opts.budget;
    for (int M = p.order; M <= max_order; ++M) {
        detail::CubeSearch search(p.arity, M, opts.branching, opts.symmetry_reduction);
        if (!search.seed_entries(p.entries)) {
            res.stats.seed_conflict = true;
            res.stats.nodes_per_order.push_back({M, 0});
            return res;  // the orbit closure of the entries clashes; no order helps
        }
        long long used = 0;
        bool budget_hit = false;
        bool found = search.solve(remaining, used, budget_hit);
        res.stats.nodes_per_order.push_back({M, used});
        remaining -= used;
        if (found) {
            auto table = search.extract();
            auto cert = validate(table);
            if (!cert.latin || !cert.alternating)
                throw std::logic_error("complete: search produced an invalid table");
            for (const auto& e : p.entries) {
                std::vector<int> ins(e.begin(), e.begin() + p.arity);
                if (table.apply(ins) != e[p.arity])
                    throw std::logic_error("complete: search result does not contain the input");
            }
            res.table = std::move(table);
            return res;
        }
        if (budget_hit) {
            res.stats.budget_exhausted = true;
            return res;
        }
    }
    return res;
}

/// Encode the defined tuples of a completion level as a partial cube over
/// the element ids 0..|A_i|-1.
inline PartialCube partial_from_state(const CompletionState& st) {
    PartialCube p;
    p.arity = st.alg.arity();
    p.order = static_cast<int>(st.element_count());
    for (const auto& [key, entry] : st.op) {
        for (const auto& t : alt_orbit(key)) {
            std::vector<int> e(t.begin(), t.end());
            e.push_back(static_cast<int>(entry.value));
            p.entries.push_back(std::move(e));
        }
    }
    return p;
}

struct ProbeResult {
    CompletionResult completion;
    SereneCheck target;  // the invariants a matching component must carry
    bool matched = false;
    int matched_component = -1;
    std::optional<ComponentReport> report;
};

/// Seed the target triangulation, encode the level-0 operation as a partial
/// cube, search for a finite alternating quasigroup containing it, and look
/// for a serenation component carrying the subdivision's invariants.
inline ProbeResult quasifinite_probe(const OrientedComplex& gamma, SearchOptions opts = {}) {
    auto st = seed(gamma);
    ProbeResult res;
    res.target = verify_serene(gamma, st);

    auto p = partial_from_state(st);
    if (opts.max_order == 0) opts.max_order = p.order + 4;
    res.completion = complete(p, opts);
    if (!res.completion.table) return res;

    auto complexRep = serenation_report(simplicize(*res.completion.table));
    res.report = complexRep;
    for (std::size_t ci = 0; ci < complexRep.component_infos.size(); ++ci) {
        const auto& info = complexRep.component_infos[ci];
        if (!info.pseudomanifold) continue;
        if (info.orientable != res.target.orientable_gamma) continue;
        if (info.euler_characteristic != res.target.chi_gamma) continue;
        bool all_sphere = true;
        for (const auto& [v, flag] : info.link_flags)
            if (flag != LinkFlag::SphereLike) all_sphere = false;
        if (!all_sphere) continue;
        res.matched = true;
        res.matched_component = static_cast<int>(ci);
        break;
    }
    return res;
}

}  // namespace serene
