#include <catch2/catch_amalgamated.hpp>

#include "serene/constructions.hpp"
#include "serene/fixtures.hpp"
#include "serene/topology.hpp"

using namespace serene;

namespace {

long long chi_from_faces(const SimpComplex& c) {
    long long chi = 0;
    for (int k = 0; k <= c.dim; ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(faces(c, k).size());
    return chi;
}

long long chi_from_betti(const std::vector<int>& betti) {
    long long chi = 0;
    for (std::size_t k = 0; k < betti.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * betti[k];
    return chi;
}

}  // namespace

TEST_CASE("component partitions") {
    auto cq = components(simplicize(builtin("q8")));
    REQUIRE(cq.size() == 3);
    for (const auto& part : cq) CHECK(part.size() == 8);

    auto c5 = components(simplicize(construct_order5()));
    REQUIRE(c5.size() == 1);
    CHECK(c5[0].size() == 20);

    // disjoint union of two tetrahedron boundaries
    SimpComplex two;
    two.dim = 2;
    for (int v = 0; v < 8; ++v) two.vertices.push_back({VertexTag::Input, v, std::to_string(v)});
    for (int base : {0, 4})
        for (int drop = 0; drop < 4; ++drop) {
            std::vector<int> f;
            for (int v = 0; v < 4; ++v)
                if (v != drop) f.push_back(base + v);
            two.facets.push_back(std::move(f));
        }
    two.normalize();
    CHECK(components(two).size() == 2);
}

TEST_CASE("facets sharing a ridge always land in one component") {
    auto c = simplicize(builtin("a6"));
    auto parts = components(c);
    std::vector<int> comp_of(c.facets.size());
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (int f : parts[p]) comp_of[f] = static_cast<int>(p);
    for (const auto& [ridge, fs] : detail::ridge_to_facets(c))
        for (std::size_t i = 1; i < fs.size(); ++i) CHECK(comp_of[fs[i]] == comp_of[fs[0]]);
}

TEST_CASE("z2 homology of the bundled spaces") {
    // single triangle with all faces: contractible
    SimpComplex tri;
    tri.dim = 2;
    for (int v = 0; v < 3; ++v) tri.vertices.push_back({VertexTag::Input, v, std::to_string(v)});
    tri.facets = {{0, 1, 2}};
    CHECK(z2_betti(tri) == std::vector<int>{1, 0, 0});

    CHECK(z2_betti(simplex_boundary(3)) == std::vector<int>{1, 0, 1});
    CHECK(z2_betti(simplex_boundary(4)) == std::vector<int>{1, 0, 0, 1});
    CHECK(z2_betti(torus7()) == std::vector<int>{1, 2, 1});
    CHECK(z2_betti(torus9()) == std::vector<int>{1, 2, 1});
    CHECK(z2_betti(klein_bottle()) == std::vector<int>{1, 2, 1});  // mod-2 coefficients

    auto c5 = simplicize(construct_order5());
    CHECK(z2_betti(c5) == std::vector<int>{1, 0, 0, 1});

    // one component of the q8 complex is a 2-sphere
    auto cq = simplicize(builtin("q8"));
    auto part = components(cq)[0];
    auto closure = component_closure(cq, part);
    CHECK(z2_betti(closure) == std::vector<int>{1, 0, 1});
}

TEST_CASE("euler characteristic agrees between face counts and betti numbers") {
    std::vector<SimpComplex> spaces = {simplex_boundary(3), simplex_boundary(4), simplex_boundary(5),
                                       torus7(),            torus9(),            klein_bottle(),
                                       simplicize(builtin("q8")), simplicize(builtin("a6")),
                                       simplicize(construct_order5()), cone_over_torus()};
    for (const auto& c : spaces) CHECK(chi_from_faces(c) == chi_from_betti(z2_betti(c)));
}

TEST_CASE("serenation report for the order-6 product") {
    auto rep = serenation_report(simplicize(builtin("a6")));
    REQUIRE(rep.component_infos.size() == 1);
    const auto& info = rep.component_infos[0];
    CHECK(info.euler_characteristic == 0);
    CHECK(info.betti == std::vector<int>{1, 0, 0, 1});
    CHECK(info.orientable);
    CHECK(info.pseudomanifold);
    for (const auto& [v, flag] : info.link_flags) CHECK(flag == LinkFlag::SphereLike);
}

TEST_CASE("serenation report for q8: three 2-spheres") {
    auto rep = serenation_report(simplicize(builtin("q8")));
    REQUIRE(rep.component_infos.size() == 3);
    for (const auto& info : rep.component_infos) {
        CHECK(info.euler_characteristic == 2);
        CHECK(info.betti == std::vector<int>{1, 0, 1});
        CHECK(info.orientable);
        for (const auto& [v, flag] : info.link_flags) CHECK(flag == LinkFlag::SphereLike);
        CHECK(surface_genus(info) == 0);
    }
}

TEST_CASE("cone over the torus flags its apex as non-euclidean") {
    auto cone = cone_over_torus();
    auto rep = serenation_report(cone);
    REQUIRE(rep.component_infos.size() == 1);
    const auto& info = rep.component_infos[0];
    CHECK_FALSE(info.pseudomanifold);  // the torus boundary is exposed

    bool apex_checked = false;
    for (const auto& [v, flag] : info.link_flags) {
        if (v == cone_apex_vertex()) {
            CHECK(flag == LinkFlag::NonSphereLike);
            apex_checked = true;
            auto lk = link(cone, {v});
            CHECK(z2_betti(lk.complex) == std::vector<int>{1, 2, 1});
        }
    }
    CHECK(apex_checked);
}

TEST_CASE("closed-manifold triangulations have all links sphere_like") {
    for (const auto& c : {simplex_boundary(4), torus7(), simplicize(construct_order5()),
                          simplicize(builtin("a6"))}) {
        auto rep = serenation_report(c);
        for (const auto& info : rep.component_infos)
            for (const auto& [v, flag] : info.link_flags) CHECK(flag == LinkFlag::SphereLike);
    }
}

TEST_CASE("surface genus") {
    auto rep = serenation_report(torus7());
    REQUIRE(rep.component_infos.size() == 1);
    CHECK(rep.component_infos[0].euler_characteristic == 0);
    CHECK(surface_genus(rep.component_infos[0]) == 1);

    ComponentInfo genus2;
    genus2.orientable = true;
    genus2.euler_characteristic = -2;
    CHECK(surface_genus(genus2) == 2);

    ComponentInfo bad;
    bad.orientable = false;
    bad.euler_characteristic = 0;
    CHECK_THROWS_AS(surface_genus(bad), std::domain_error);

    ComponentInfo odd;
    odd.orientable = true;
    odd.euler_characteristic = 1;
    CHECK_THROWS_AS(surface_genus(odd), std::domain_error);
}

TEST_CASE("simplicizations of alternating quasigroups orient coherently") {
    for (const auto& name : {"q8", "a5", "a6"}) {
        auto rep = serenation_report(simplicize(builtin(name)));
        for (const auto& info : rep.component_infos) {
            CHECK(info.pseudomanifold);
            CHECK(info.orientable);
        }
    }
}
