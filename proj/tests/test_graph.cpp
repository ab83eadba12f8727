#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "mixcert/construct.hpp"
#include "mixcert/rng.hpp"

using namespace mixcert;
using fixtures::set;

TEST_SUITE("graph") {

TEST_CASE("build complete graph and cycle") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    CHECK(k4.order() == 4);
    CHECK(k4.degree() == 3);
    CHECK(k4.edge_count() == 6);
    const auto c6 = fixtures::make(6, fixtures::c6());
    CHECK(c6.degree() == 2);
    CHECK(c6.neighbors(0)[0] == 1);
    CHECK(c6.neighbors(0)[1] == 5);
    CHECK(c6.adjacent(5, 0));
    CHECK_FALSE(c6.adjacent(0, 3));
}

TEST_CASE("irregular input is rejected") {
    const std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
    try {
        RegularGraph::from_edges(4, e);
        FAIL("expected NonRegular");
    } catch (const NonRegular& err) {
        CHECK(err.vertex() == 1);
        CHECK(err.degree() == 2);
    }
}

TEST_CASE("self-loops and duplicates are rejected") {
    CHECK_THROWS_AS(RegularGraph::from_edges(2, std::vector<Edge>{{0, 0}, {1, 1}}), SelfLoop);
    CHECK_THROWS_AS(RegularGraph::from_edges(2, std::vector<Edge>{{0, 1}, {1, 0}}), DuplicateEdge);
    CHECK_THROWS_AS(RegularGraph::from_edges(1, std::vector<Edge>{}), InvalidArgument);
    CHECK_THROWS_AS(RegularGraph::from_edges(3, std::vector<Edge>{{0, 5}}), InvalidArgument);
}

TEST_CASE("ordered edge count") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    CHECK(ordered_edge_count(k4, set(4, {0, 1}), set(4, {2, 3})) == 4);
    CHECK(ordered_edge_count(k4, set(4, {0, 1}), set(4, {0, 1})) == 2);
    CHECK(ordered_edge_count(k4, VertexSet(4), set(4, {0, 1, 2})) == 0);
}

TEST_CASE("density surplus") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    CHECK(density_surplus(k4, set(4, {0, 1}), set(4, {2, 3})) == doctest::Approx(0.5).epsilon(1e-15));
    const auto pet = fixtures::make(10, fixtures::petersen());
    CHECK(density_surplus(pet, VertexSet::full(10), VertexSet::full(10)) == 0.0);
    CHECK_THROWS_AS(density_surplus(k4, VertexSet(4), set(4, {1})), EmptySet);
}

TEST_CASE("boundaries") {
    const auto c6 = fixtures::make(6, fixtures::c6());
    const auto arc = set(6, {0, 1, 2});
    CHECK(edge_boundary(c6, arc) == 2);
    CHECK(vertex_boundary(c6, arc) == 2);
    CHECK(neighbor_set(c6, arc) == set(6, {0, 1, 2, 3, 5}));
    const auto k4 = fixtures::make(4, fixtures::k4());
    CHECK(edge_boundary(k4, set(4, {0})) == 3);
    CHECK(vertex_boundary(k4, set(4, {0})) == 3);
    CHECK(edge_boundary(k4, VertexSet::full(4)) == 0);
    CHECK(vertex_boundary(k4, VertexSet::full(4)) == 0);
}

TEST_CASE("conductance of a cut") {
    const auto c6 = fixtures::make(6, fixtures::c6());
    CHECK(conductance_of_cut(c6, set(6, {0, 1, 2})) == doctest::Approx(1.0 / 3.0));
    const auto k4 = fixtures::make(4, fixtures::k4());
    CHECK(conductance_of_cut(k4, set(4, {0, 1})) == doctest::Approx(2.0 / 3.0));
    const auto pet = fixtures::make(10, fixtures::petersen());
    CHECK(conductance_of_cut(pet, set(10, {7})) == 1.0);
    CHECK_THROWS_AS(conductance_of_cut(k4, set(4, {0, 1, 2})), SizeOutOfRange);
    CHECK_THROWS_AS(conductance_of_cut(k4, VertexSet(4)), SizeOutOfRange);
}

TEST_CASE("counting identities on random graphs") {
    Rng rng(7);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 10 + 2 * (seed % 5);
        const std::size_t d = 3 + seed % 4;
        if (n * d % 2)
            continue;
        const auto g = random_regular(n, d, seed);
        const auto a = oracle::adjacency(static_cast<int>(n), fixtures::from_graph(g));
        const auto full = VertexSet::full(n);
        CHECK(ordered_edge_count(g, full, full) == static_cast<std::int64_t>(n * d));
        for (int trial = 0; trial < 50; ++trial) {
            const std::uint32_t ms = static_cast<std::uint32_t>(rng.below(1u << n));
            const std::uint32_t mt = static_cast<std::uint32_t>(rng.below(1u << n));
            const std::uint32_t split = static_cast<std::uint32_t>(rng.below(1u << n));
            const auto s = VertexSet::from_mask(n, ms);
            const auto t = VertexSet::from_mask(n, mt);
            const auto t1 = VertexSet::from_mask(n, mt & split);
            const auto t2 = VertexSet::from_mask(n, mt & ~split);
            const auto e = ordered_edge_count(g, s, t);
            CHECK(e == oracle::edge_count(a, ms, mt));
            CHECK(e == ordered_edge_count(g, t, s));
            CHECK(e == ordered_edge_count(g, s, t1) + ordered_edge_count(g, s, t2));
            CHECK(ordered_edge_count(g, s, s) + edge_boundary(g, s) ==
                  static_cast<std::int64_t>(d * s.size()));
            CHECK(edge_boundary(g, s) >= vertex_boundary(g, s));
            CHECK(edge_boundary(g, s) <= static_cast<std::int64_t>(d) * vertex_boundary(g, s));
        }
        for (Vertex v = 0; v < n; ++v)
            CHECK(ordered_edge_count(g, set(n, {v}), full) == static_cast<std::int64_t>(d));
    }
}

TEST_CASE("surplus keys compare exactly") {
    // (e n - d a b) / sqrt(ab): 6/sqrt(4) = 3 and 3/sqrt(1) = 3 tie.
    const auto x = SurplusKey{6, 4};
    const auto y = SurplusKey{3, 1};
    CHECK(compare(x, y) == 0);
    CHECK(compare(SurplusKey{-3, 1}, SurplusKey{-6, 4}) == 0);
    CHECK(compare(SurplusKey{-1, 1}, SurplusKey{0, 9}) < 0);
    CHECK(compare(SurplusKey{5, 4}, SurplusKey{3, 1}) < 0);
}

TEST_CASE("connectivity and bipartiteness") {
    CHECK(is_connected(fixtures::make(10, fixtures::petersen())));
    CHECK_FALSE(is_connected(fixtures::make(8, fixtures::two_k4())));
    CHECK(is_bipartite(fixtures::make(6, fixtures::c6())));
    CHECK_FALSE(is_bipartite(fixtures::make(4, fixtures::k4())));
}

TEST_CASE("edge list round trip") {
    const auto g = random_regular(30, 4, 3);
    std::stringstream ss;
    write_edge_list(ss, g);
    const auto h = read_edge_list(ss);
    CHECK(h.edges() == g.edges());
    CHECK(h.degree() == 4);
}

TEST_CASE("edge list parsing") {
    std::istringstream ok("# K4\n4 3\n0 1\n0 2 # spoke\n0 3\n1 2\n1 3\n\n2 3\n");
    CHECK(read_edge_list(ok).edge_count() == 6);
    std::istringstream bad("4 3\n0 1\n0 x\n");
    try {
        read_edge_list(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream wrong_degree("4 2\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    CHECK_THROWS_AS(read_edge_list(wrong_degree), NonRegular);
    std::istringstream no_header("");
    CHECK_THROWS_AS(read_edge_list(no_header), ParseError);
}

TEST_CASE("vertex set operations") {
    auto s = set(70, {0, 3, 64, 69});
    CHECK(s.size() == 4);
    CHECK(s.members() == std::vector<Vertex>{0, 3, 64, 69});
    s.toggle(3);
    CHECK_FALSE(s.contains(3));
    CHECK(s.complement().size() == 67);
    CHECK(s.disjoint(set(70, {1, 2})));
    CHECK(s.united(set(70, {1})).size() == 4);
    CHECK(s.intersected(set(70, {0, 1})).size() == 1);
    CHECK(VertexSet::lex_less(set(5, {0, 4}), set(5, {1})));
    CHECK(VertexSet::lex_less(set(5, {0}), set(5, {0, 1})));
    CHECK(VertexSet::from_mask(6, 0b101) == set(6, {0, 2}));
}

}
