#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "serene/constructions.hpp"
#include "serene/quasigroup.hpp"

using namespace serene;

namespace {

// Unique-solution latin test straight from the definition, used as an
// independent oracle against the line-based implementation.
bool latin_oracle(const OperationTable& t) {
    const int n = t.arity, m = t.order;
    for (int i = 0; i < n; ++i) {
        std::vector<int> x(n, 0);
        while (true) {
            for (int y = 0; y < m; ++y) {
                int solutions = 0;
                for (int v = 0; v < m; ++v) {
                    x[i] = v;
                    if (t.apply(x) == y) ++solutions;
                }
                if (solutions != 1) return false;
            }
            int j = n - 1;
            for (; j >= 0; --j) {
                if (j == i) continue;
                if (++x[j] < m) break;
                x[j] = 0;
            }
            if (j < 0) break;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("q8 validates as a latin alternating binary table") {
    auto q8 = builtin("q8");
    auto cert = validate(q8);
    CHECK(cert.latin);
    CHECK(cert.alternating);  // alt_2 is trivial
    CHECK(cert.perm_group_exact);
    CHECK(cert.permutomorphism_group_size == 1);  // q8 is noncommutative
}

TEST_CASE("order-5 ternary table validates with permutomorphism group alt_3") {
    auto a5 = construct_order5();
    auto cert = validate(a5);
    CHECK(cert.latin);
    CHECK(cert.alternating);
    CHECK(cert.permutomorphism_group_size == 3);
    CHECK(cert.perm_group_exact);
}

TEST_CASE("constant binary table is not latin") {
    OperationTable t;
    t.arity = 2;
    t.order = 2;
    t.values = {0, 0, 0, 0};
    auto cert = validate(t);
    CHECK_FALSE(cert.latin);
}

TEST_CASE("malformed tables are rejected with the offending index") {
    OperationTable t;
    t.arity = 2;
    t.order = 2;
    t.values = {0, 1, 1};  // short
    CHECK_THROWS_AS(validate(t), std::invalid_argument);
    t.values = {0, 1, 1, 5};  // out of range at index 3
    CHECK_THROWS_WITH(validate(t), Catch::Matchers::ContainsSubstring("index 3"));
}

TEST_CASE("divide returns the unique solution and round-trips") {
    auto q8 = builtin("q8");
    const int i = 2, j = 4, k = 6;
    REQUIRE(q8.apply({i, j}) == k);
    CHECK(divide(q8, 0, {j}, k) == i);
    CHECK(divide(q8, 1, {i}, k) == j);

    // round trip at every cell and coordinate
    for (const auto& t : {builtin("q8"), construct_order5()}) {
        for (std::size_t idx = 0; idx < t.cell_count(); ++idx) {
            auto x = t.tuple_at(idx);
            int y = t.values[idx];
            for (int c = 0; c < t.arity; ++c) {
                std::vector<int> others;
                for (int p = 0; p < t.arity; ++p)
                    if (p != c) others.push_back(x[p]);
                CHECK(divide(t, c, others, y) == x[c]);
            }
        }
    }
}

TEST_CASE("divide on the order-5 table matches a direct scan") {
    auto a5 = construct_order5();
    int expected = -1;
    for (int b = 0; b < 5; ++b)
        if (a5.apply({0, b, 2}) == 3) expected = b;
    REQUIRE(expected != -1);
    CHECK(divide(a5, 1, {0, 2}, 3) == expected);
}

TEST_CASE("divide refuses non-latin tables") {
    OperationTable t;
    t.arity = 2;
    t.order = 2;
    t.values = {0, 0, 0, 0};
    CHECK_THROWS_AS(divide(t, 0, {0}, 1), std::domain_error);
}

TEST_CASE("q8 noncommuting tuples and their input/output elements") {
    auto q8 = builtin("q8");
    auto tuples = nct(q8);
    CHECK(tuples.size() == 24);
    std::vector<int> expected = {2, 3, 4, 5, 6, 7};  // +-i, +-j, +-k
    CHECK(inp(q8) == expected);
    CHECK(out(q8) == expected);
}

TEST_CASE("commutative tables have empty nct") {
    auto z5 = builtin("cyclic:5");
    CHECK(nct(z5).empty());
    CHECK(inp(z5).empty());
    CHECK(out(z5).empty());
    CHECK(is_commutative(z5));
}

TEST_CASE("order-6 product has two output elements") {
    auto a6 = builtin("a6");
    std::vector<int> expected = {0, 1};  // pairs (0,0) and (0,1)
    CHECK(out(a6) == expected);
}

TEST_CASE("nct is closed under all argument permutations") {
    for (const auto& name : {"q8", "a5", "a6"}) {
        auto t = builtin(name);
        std::set<std::vector<int>> s;
        for (auto& a : nct(t)) s.insert(std::move(a));
        for (const auto& a : s)
            for (const auto& p : sym_group_cached(t.arity))
                CHECK(s.count(apply_perm(p, a)) == 1);
    }
}

TEST_CASE("empty nct iff commutative") {
    for (const auto& name : {"q8", "a5", "a6", "cyclic:4", "dihedral:3", "trivial"}) {
        auto t = builtin(name);
        CHECK(is_commutative(t) == nct(t).empty());
    }
}

TEST_CASE("alternating tables are invariant under the full even group") {
    for (const auto& name : {"a5", "a6"}) {
        auto t = builtin(name);
        REQUIRE(is_alternating(t));
        for (std::size_t idx = 0; idx < t.cell_count(); ++idx) {
            auto x = t.tuple_at(idx);
            for (const auto& p : alt_group_cached(t.arity))
                REQUIRE(t.apply(apply_perm(p, x)) == t.values[idx]);
        }
    }
}

TEST_CASE("latin check agrees with the unique-solution oracle on random tables") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        OperationTable t;
        t.arity = 2;
        t.order = 4;
        t.values.resize(16);
        for (auto& v : t.values) v = static_cast<int>(rng() % 4);
        CHECK(is_latin(t) == latin_oracle(t));
    }
    // and on genuinely latin tables
    for (int m : {3, 5, 8}) {
        auto t = builtin("cyclic:" + std::to_string(m));
        CHECK(is_latin(t));
        CHECK(latin_oracle(t));
    }
    CHECK(is_latin(construct_order5()));
    CHECK(latin_oracle(construct_order5()));
}

TEST_CASE("associativity and commutativity flags") {
    auto q8 = builtin("q8");
    auto r = is_nary_associative(q8);
    CHECK(r.associative);
    CHECK(r.exhaustive);
    CHECK_FALSE(is_commutative(q8));

    auto a5 = construct_order5();
    CHECK_FALSE(is_commutative(a5));
    auto r5 = is_nary_associative(a5);
    CHECK_FALSE(r5.associative);  // alternating + associative would force commutative

    auto triv = builtin("trivial");
    CHECK(is_commutative(triv));
    CHECK(is_nary_associative(triv).associative);
}

TEST_CASE("homomorphism checks") {
    auto q8 = builtin("q8");
    std::vector<int> ident(8);
    std::iota(ident.begin(), ident.end(), 0);
    auto r = check_homomorphism(q8, q8, ident);
    CHECK(r.hom);
    CHECK(r.nc_hom);

    auto triv = builtin("trivial");
    std::vector<int> constant(8, 0);
    auto rc = check_homomorphism(q8, triv, constant);
    CHECK(rc.hom);
    CHECK_FALSE(rc.nc_hom);  // target nct is empty

    std::vector<int> negation = {1, 0, 3, 2, 5, 4, 7, 6};  // x -> -x
    auto rn = check_homomorphism(q8, q8, negation);
    CHECK_FALSE(rn.hom);

    std::vector<int> tooShort(7, 0);
    CHECK_THROWS_AS(check_homomorphism(q8, q8, tooShort), std::invalid_argument);
}
