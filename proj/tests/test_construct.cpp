#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "mixcert/construct.hpp"

using namespace mixcert;

namespace {

std::string golden(const std::string& name) {
    std::ifstream in(std::string(MIXCERT_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string edge_text(const std::vector<Edge>& e) {
    std::ostringstream os;
    for (auto [u, v] : e)
        os << u << ' ' << v << '\n';
    return os.str();
}

}

TEST_SUITE("construct") {

TEST_CASE("random regular basics") {
    const auto k4 = random_regular(4, 3, 9);
    CHECK(k4.edge_count() == 6);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 10 + seed, d = 2 + seed % 6;
        if (n * d % 2)
            continue;
        const auto g = random_regular(n, d, seed);
        CHECK(g.order() == n);
        CHECK(g.degree() == d);
        CHECK(g.edge_count() == n * d / 2);
        CHECK(random_regular(n, d, seed).edges() == g.edges());
    }
    CHECK(random_regular(12, 3, 1).edges() != random_regular(12, 3, 2).edges());
}

TEST_CASE("random regular golden output") {
    std::ostringstream os;
    write_edge_list(os, random_regular(12, 3, 1));
    CHECK(os.str() == golden("random_regular_n12_d3_seed1.el"));
    CHECK(edge_text(bipartite_regular(8, 8, 4, 1)) == golden("bipartite_8_8_4_seed1.txt"));
}

TEST_CASE("random regular argument errors") {
    try {
        random_regular(5, 3, 0);
        FAIL("expected InvalidArgument");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("n * d must be even") != std::string::npos);
    }
    CHECK_THROWS_AS(random_regular(6, 6, 0), InvalidArgument);
    CHECK_THROWS_AS(random_regular(6, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(random_regular(1, 1, 0), InvalidArgument);
}

TEST_CASE("dense degrees go through the complement") {
    const auto g = random_regular(20, 17, 4);
    CHECK(g.degree() == 17);
    CHECK(g.edge_count() == 170);
    CHECK(random_regular(10, 9, 1).edge_count() == 45);
}

TEST_CASE("bipartite regular") {
    const auto k33 = bipartite_regular(3, 3, 3, 5);
    CHECK(k33.size() == 9);
    CHECK(bipartite_regular(5, 5, 0, 1).empty());
    CHECK_THROWS_AS(bipartite_regular(4, 5, 2, 1), InvalidArgument);
    CHECK_THROWS_AS(bipartite_regular(4, 4, 5, 1), InvalidArgument);
    for (std::size_t deg = 1; deg <= 9; ++deg) {
        const auto e = bipartite_regular(10, 10, deg, deg);
        CHECK(e.size() == 10 * deg);
        std::vector<int> left(10), right(10);
        std::set<Edge> seen(e.begin(), e.end());
        CHECK(seen.size() == e.size());
        for (auto [i, j] : e) {
            ++left[i];
            ++right[j];
        }
        for (int i = 0; i < 10; ++i) {
            CHECK(left[i] == int(deg));
            CHECK(right[i] == int(deg));
        }
    }
}

TEST_CASE("planted expander layout") {
    const auto inst = planted_expander(48, 4, 1);
    CHECK(inst.s.size() == 8);
    CHECK(inst.t.size() == 8);
    CHECK(inst.s.disjoint(inst.t));
    CHECK(ordered_edge_count(inst.graph, inst.s, inst.t) == 16);
    const auto r = inst.s.united(inst.t).complement();
    CHECK(r.size() == 32);
    for (Vertex v : r.members())
        CHECK(ordered_edge_count(inst.graph, fixtures::set(48, {v}), r) == 3);
    for (Vertex v : inst.s.united(inst.t).members())
        CHECK(ordered_edge_count(inst.graph, fixtures::set(48, {v}), r) == 2);
    CHECK_FALSE(planted_structure_violation(inst.graph, inst.s, inst.t));
    CHECK(is_connected(inst.graph));
    // |E(S,T)| = 16 against 4*64/48 + sqrt(64) = 13.33
    CHECK(density_surplus(inst.graph, inst.s, inst.t) == doctest::Approx((16.0 - 4.0 * 64 / 48) / 8));
}

TEST_CASE("planted argument errors") {
    CHECK_THROWS_AS(planted_expander(50, 4, 1), Divisibility);
    CHECK_THROWS_AS(planted_expander(50, 5, 1), OddDegree);
    CHECK_THROWS_AS(planted_expander(12, 2, 1), InvalidArgument);
    CHECK_THROWS_AS(planted_ssve(48, 6, 1), InvalidArgument);
    CHECK_THROWS_AS(planted_expander(12, 10, 1), InvalidArgument);
}

TEST_CASE("structure violations are described") {
    const auto inst = planted_expander(48, 4, 1);
    CHECK_FALSE(planted_structure_violation(inst.graph, inst.t, inst.s));
    auto s = inst.s;
    s.toggle(s.members()[0]);
    CHECK(planted_structure_violation(inst.graph, s, inst.t));
    CHECK(planted_structure_violation(inst.graph, inst.s, inst.s));
    const auto g = random_regular(48, 4, 1);
    CHECK(planted_structure_violation(g, inst.s, inst.t));
}

TEST_CASE("planted ssve density claim is exact") {
    const auto inst = planted_ssve(60, 8, 3);
    CHECK(inst.family == PlantedFamily::SmallSetVertexExpander);
    const auto r = verify_claims(inst);
    CHECK(r.density.applicable);
    CHECK(r.density.holds);
    CHECK(r.density.grade == Grade::Exact);
    CHECK_FALSE(r.conductance.applicable);
    CHECK(r.vertex_expansion.applicable);
    CHECK(r.vertex_expansion.probes > 0);
}

TEST_CASE("planted expander claims") {
    const auto small = planted_expander(24, 4, 2);
    const auto a = verify_claims(small);
    CHECK(a.density.holds);
    CHECK(a.conductance.grade == Grade::Exact);
    CHECK(a.conductance.holds);
    CHECK(a.conductance.measured >= 0.125);

    const auto big = planted_expander(480, 6, 2);
    ClaimEffort effort;
    effort.seed = 5;
    const auto b = verify_claims(big, effort);
    CHECK(b.density.holds);
    CHECK(b.conductance.grade != Grade::Exact);
    CHECK(b.conductance.probes >= 10000);
    CHECK(b.conductance.spectral_bound);
    CHECK(b.conductance.holds);
}

TEST_CASE("planted inner certificate") {
    const auto inst = planted_expander(240, 8, 1);
    CHECK(inst.inner.cheeger_lower == doctest::Approx((1.0 - inst.inner.lambda2) / 2.0));
    CHECK(inst.inner.expansion_cap == 240 * 8 / (10 * 7));
    CHECK(inst.inner.lambda < 1.0);
}

TEST_CASE("planted determinism") {
    const auto a = planted_expander(96, 6, 7);
    const auto b = planted_expander(96, 6, 7);
    CHECK(a.graph.edges() == b.graph.edges());
    CHECK(a.s == b.s);
    CHECK(planted_expander(96, 6, 8).graph.edges() != a.graph.edges());
    const auto c = adopt_planted(a.graph, a.s, a.t, PlantedFamily::Expander, 7);
    CHECK(c.inner.lambda2 == a.inner.lambda2);
    CHECK_THROWS_AS(adopt_planted(random_regular(96, 6, 1), a.s, a.t, PlantedFamily::Expander, 7),
                    InvalidArgument);
}

TEST_CASE("exact density threshold") {
    // 16 >= 4*64/48 + 1*8 = 13.33
    CHECK(density_at_least(16, 8, 8, 48, 4, 1, 1));
    CHECK_FALSE(density_at_least(13, 8, 8, 48, 4, 1, 1));
    // equality: 2 = 3*1*1/4 + (5/4)*1
    CHECK(density_at_least(2, 1, 1, 4, 3, 5, 4));
    CHECK_FALSE(density_at_least(1, 1, 1, 4, 3, 5, 4));
}

TEST_CASE("names") {
    CHECK(to_string(PlantedFamily::Expander) == "planted-expander");
    CHECK(to_string(PlantedFamily::SmallSetVertexExpander) == "planted-ssve");
    CHECK(planted_family_from_string("planted-ssve") == PlantedFamily::SmallSetVertexExpander);
    CHECK_THROWS_AS(planted_family_from_string("other"), InvalidArgument);
    CHECK(to_string(Grade::Sampled) == "sampled");
}

}
