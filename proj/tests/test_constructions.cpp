#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "serene/complex.hpp"
#include "serene/constructions.hpp"

using namespace serene;

TEST_CASE("order-5 builder reproduces the seven seed rows verbatim") {
    auto t = construct_order5();
    CHECK(t.apply({0, 0, 0}) == 0);
    CHECK(t.apply({0, 1, 1}) == 0);
    CHECK(t.apply({0, 2, 2}) == 0);
    CHECK(t.apply({0, 1, 2}) == 3);
    CHECK(t.apply({0, 2, 1}) == 4);
    CHECK(t.apply({0, 1, 3}) == 4);
    CHECK(t.apply({0, 3, 1}) == 2);
    // shifted instance used by the facet tables
    CHECK(t.apply({1, 2, 3}) == 4);
}

TEST_CASE("order-5 table is invariant under the shift action") {
    auto t = construct_order5();
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            for (int z = 0; z < 5; ++z)
                for (int k = 0; k < 5; ++k)
                    REQUIRE(t.apply({(x + k) % 5, (y + k) % 5, (z + k) % 5}) ==
                            (t.apply({x, y, z}) + k) % 5);
}

namespace {

OperationTable sum_table(int arity, int order) {
    OperationTable t;
    t.arity = arity;
    t.order = order;
    t.values.assign(t.cell_count(), 0);
    for (std::size_t idx = 0; idx < t.values.size(); ++idx) {
        auto x = t.tuple_at(idx);
        int s = 0;
        for (int v : x) s = (s + v) % order;
        t.values[idx] = s;
    }
    return t;
}

AltMapTable random_alt_map(int arity, int dom, int cod, std::mt19937& rng) {
    AltMapTable a;
    a.arity = arity;
    a.domain_order = dom;
    a.codomain_order = cod;
    std::size_t cells = 1;
    for (int i = 0; i < arity; ++i) cells *= dom;
    a.values.assign(cells, -1);
    // assign orbit representatives, then close under even permutations
    std::vector<int> x(arity, 0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        std::size_t r = idx;
        for (int i = arity - 1; i >= 0; --i) {
            x[i] = static_cast<int>(r % dom);
            r /= dom;
        }
        if (a.values[idx] != -1) continue;
        int v = static_cast<int>(rng() % cod);
        for (const auto& img : alt_orbit(x)) a.values[a.index(img)] = v;
    }
    return a;
}

}  // namespace

TEST_CASE("order-6 product validates and has 48 noncommuting tuples") {
    auto a6 = builtin("a6");
    CHECK(a6.order == 6);
    CHECK(a6.arity == 3);
    auto cert = validate(a6);
    CHECK(cert.latin);
    CHECK(cert.alternating);
    auto tuples = nct(a6);
    CHECK(tuples.size() == 48);  // 3! orderings of {0,1,2} times 2^3 signs
    CHECK(nct_orbits(a6).size() == 16);
    // noncommuting exactly when the u-parts are all distinct
    for (const auto& a : tuples) {
        std::set<int> us = {a[0] / 2, a[1] / 2, a[2] / 2};
        CHECK(us.size() == 3);
    }
}

TEST_CASE("alternating product with a trivial factor is commutative") {
    auto U = sum_table(3, 1);
    auto V = sum_table(4, 2);
    AltMapTable alpha;
    alpha.arity = 3;
    alpha.domain_order = 1;
    alpha.codomain_order = 2;
    alpha.values = {1};
    auto prod = alternating_product(U, V, alpha);
    CHECK(is_commutative(prod));
}

TEST_CASE("alternating product with zero map is the plain direct product") {
    auto U = sum_table(3, 3);
    auto V = sum_table(4, 2);
    AltMapTable alpha;
    alpha.arity = 3;
    alpha.domain_order = 3;
    alpha.codomain_order = 2;
    alpha.values.assign(27, 0);
    auto prod = alternating_product(U, V, alpha);
    CHECK(is_commutative(prod));
    auto cert = validate(prod);
    CHECK(cert.latin);
}

TEST_CASE("alternating product rejects bad inputs") {
    auto U = builtin("q8");  // noncommutative
    auto V = sum_table(3, 2);
    AltMapTable alpha;
    alpha.arity = 2;
    alpha.domain_order = 8;
    alpha.codomain_order = 2;
    alpha.values.assign(64, 0);
    CHECK_THROWS_AS(alternating_product(U, V, alpha), std::invalid_argument);
}

TEST_CASE("random alternating products validate as alternating quasigroups") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);  // arity 2 or 3
        int mu = 2 + static_cast<int>(rng() % 2);
        int mv = 2 + static_cast<int>(rng() % 2);
        auto U = sum_table(n, mu);
        auto V = sum_table(n + 1, mv);
        auto alpha = random_alt_map(n, mu, mv, rng);
        auto prod = alternating_product(U, V, alpha);
        auto cert = validate(prod);
        CHECK(cert.latin);
        CHECK(cert.alternating);

        // projection onto U is a homomorphism
        std::vector<int> proj(prod.order);
        for (int e = 0; e < prod.order; ++e) proj[e] = e / mv;
        auto h = check_homomorphism(prod, U, proj);
        CHECK(h.hom);

        // nonempty facet complexes are orientable pseudomanifolds
        if (!nct(prod).empty()) {
            auto c = simplicize(prod);
            REQUIRE(check_pseudomanifold(c).ok);
            CHECK(orient(c).orientable);
        }
    }
}

TEST_CASE("field quasigroup census at q=3, n=2") {
    auto t = field_quasigroup(3, 2);
    CHECK(t.order == 27);
    auto cert = validate(t);
    CHECK(cert.latin);
    CHECK(cert.alternating);

    auto census = field_census(3, 2);
    CHECK(census.nct_bruteforce == 432);
    CHECK(census.gl_by_rank == 48);
    CHECK(census.nct_bruteforce == census.gl_by_rank * 9);
    CHECK(census.vertices_bruteforce == 432);  // alt_2 is trivial
    CHECK(census.vertices_formula_k0 == 432);
    CHECK(census.vertices_formula_k1 == 54);  // as-printed product omits k=0

    // nct membership agrees with nonzero determinant, full scan
    FiniteField F(3);
    std::set<std::vector<int>> noncomm;
    for (auto& a : nct(t)) noncomm.insert(std::move(a));
    for (int a = 0; a < 27; ++a)
        for (int b = 0; b < 27; ++b) {
            int u1 = a / 3, u2 = b / 3;
            std::vector<std::vector<int>> m = {{u1 / 3, u1 % 3}, {u2 / 3, u2 % 3}};
            bool invertible = detail::field_det(F, m) != 0;
            CHECK(noncomm.count({a, b}) == (invertible ? 1u : 0u));
        }
}

TEST_CASE("field quasigroup census at q=3, n=3") {
    auto census = field_census(3, 3);
    CHECK(census.gl_by_rank == 11232);
    CHECK(census.nct_bruteforce == 11232LL * 27);
    CHECK(census.vertices_bruteforce == census.nct_bruteforce / 3);
}

TEST_CASE("field quasigroup at q=5, n=2") {
    auto census = field_census(5, 2);
    CHECK(census.gl_by_rank == 480);
    CHECK(census.nct_bruteforce == 480 * 25);
}

TEST_CASE("field quasigroup over F9") {
    auto census = field_census(9, 2);
    CHECK(census.gl_by_rank == 80 * 72);  // (81-1)(81-9)
    CHECK(census.nct_bruteforce == 5760LL * 81);
    CHECK(census.vertices_bruteforce == census.nct_bruteforce);  // alt_2 trivial
}

TEST_CASE("oversized products are refused up front") {
    // an order-9^4 arity-3 table would need ~5e11 cells
    CHECK_THROWS_AS(field_quasigroup(9, 3), std::invalid_argument);
}

TEST_CASE("F9 arithmetic satisfies the field axioms") {
    FiniteField F(9);
    for (int a = 0; a < 9; ++a) {
        CHECK(F.add(a, 0) == a);
        CHECK(F.mul(a, 1) == a);
        CHECK(F.add(a, F.neg(a)) == 0);
        if (a != 0) {
            int found = 0;
            for (int b = 0; b < 9; ++b)
                if (F.mul(a, b) == 1) ++found;
            CHECK(found == 1);
        }
        for (int b = 0; b < 9; ++b) {
            CHECK(F.add(a, b) == F.add(b, a));
            CHECK(F.mul(a, b) == F.mul(b, a));
            for (int c = 0; c < 9; ++c) {
                CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
                CHECK(F.add(a, F.add(b, c)) == F.add(F.add(a, b), c));
            }
        }
    }
}

TEST_CASE("field quasigroup rejects bad field orders") {
    CHECK_THROWS_AS(field_quasigroup(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(field_quasigroup(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(field_quasigroup(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(field_quasigroup(11, 2), std::invalid_argument);
}

TEST_CASE("builtin registry") {
    auto q8 = builtin("q8");
    REQUIRE(q8.labels.size() == 8);
    int i = 2, j = 4, k = 6;
    CHECK(q8.labels[i] == "i");
    CHECK(q8.labels[j] == "j");
    CHECK(q8.labels[k] == "k");
    CHECK(q8.apply({i, j}) == k);

    auto a5 = builtin("a5");
    CHECK(a5.values == construct_order5().values);

    auto triv = builtin("trivial");
    CHECK(triv.order == 1);

    auto d4 = builtin("dihedral:4");
    CHECK(validate(d4).latin);
    CHECK_FALSE(is_commutative(d4));

    CHECK_THROWS_WITH(builtin("nope"), Catch::Matchers::ContainsSubstring("available"));
}
