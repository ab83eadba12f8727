#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "mixcert/construct.hpp"
#include "mixcert/rng.hpp"
#include "mixcert/spectral.hpp"

using namespace mixcert;
using fixtures::set;

namespace {

const SpectralMethod kBoth[] = {SpectralMethod::ExactDense, SpectralMethod::Iterative};

}

TEST_SUITE("spectral") {

TEST_CASE("complete graph") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    for (auto m : kBoth) {
        const auto s = spectrum(k4, m);
        CHECK(s.lambda2 == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
        CHECK(s.lambda_n == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
        CHECK(s.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(s.residual <= 1e-8);
        CHECK(s.method == m);
    }
}

TEST_CASE("cycle") {
    const auto c6 = fixtures::make(6, fixtures::c6());
    for (auto m : kBoth) {
        const auto s = spectrum(c6, m);
        CHECK(s.lambda2 == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(s.lambda_n == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(s.lambda == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("Petersen graph") {
    const auto pet = fixtures::make(10, fixtures::petersen());
    for (auto m : kBoth) {
        const auto s = spectrum(pet, m);
        CHECK(s.lambda2 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(s.lambda_n == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
        CHECK(s.lambda == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    }
}

TEST_CASE("disconnected graph reports lambda2 = 1") {
    const auto g = fixtures::make(8, fixtures::two_k4());
    const auto s = spectrum(g, SpectralMethod::ExactDense);
    CHECK(s.lambda2 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("full spectrum agrees with Jacobi rotations") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 20 + 4 * seed, d = 3 + seed % 5;
        if (n * d % 2)
            continue;
        const auto g = random_regular(n, d, seed);
        const auto e = fixtures::from_graph(g);
        const auto ref = oracle::jacobi_eigenvalues(oracle::walk_matrix(int(n), int(d), e));
        const auto got = full_spectrum(g);
        REQUIRE(got.size() == n);
        double trace = 0.0, squares = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-9).scale(1.0));
            trace += got[i];
            squares += got[i] * got[i];
        }
        CHECK(std::abs(trace) < 1e-8);
        CHECK(std::abs(squares - double(n) / double(d)) < 1e-6 * double(n));
        const auto s = spectrum(g, SpectralMethod::ExactDense);
        CHECK(s.lambda2 == doctest::Approx(ref[1]).epsilon(1e-9));
        CHECK(s.lambda_n == doctest::Approx(ref[n - 1]).epsilon(1e-9));
    }
}

TEST_CASE("iterative solver matches the dense solver") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto g = random_regular(300, 4 + 2 * seed, seed);
        const auto dense = spectrum(g, SpectralMethod::ExactDense);
        SpectralOptions o;
        o.seed = seed;
        const auto it = spectrum(g, SpectralMethod::Iterative, o);
        CHECK(it.lambda2 == doctest::Approx(dense.lambda2).epsilon(1e-7));
        CHECK(it.lambda_n == doctest::Approx(dense.lambda_n).epsilon(1e-7));
        CHECK(it.residual <= 1e-8);
        // Same seed, same answer.
        CHECK(spectrum(g, SpectralMethod::Iterative, o).lambda2 == it.lambda2);
    }
}

TEST_CASE("eigenpairs are orthogonal to the constant vector") {
    const auto g = random_regular(60, 5, 9);
    const auto p = extreme_eigenpairs(g, SpectralMethod::ExactDense);
    double sum = 0.0, norm = 0.0;
    std::vector<double> y(60);
    apply_walk_matrix(g, p.second, y);
    double res = 0.0;
    for (std::size_t i = 0; i < 60; ++i) {
        sum += p.second[i];
        norm += p.second[i] * p.second[i];
        res = std::max(res, std::abs(y[i] - p.summary.lambda2 * p.second[i]));
    }
    CHECK(std::abs(sum) < 1e-9);
    CHECK(norm == doctest::Approx(1.0));
    CHECK(res < 1e-8);
}

TEST_CASE("dense size cap") {
    const auto g = random_regular(40, 3 + 1, 1);
    SpectralOptions o;
    o.dense_cap = 20;
    CHECK_THROWS_AS(spectrum(g, SpectralMethod::ExactDense, o), SizeCap);
}

TEST_CASE("bipartite iff lambda_n = -1") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto g = seed % 2 ? random_regular(12, 3, seed)
                                : RegularGraph::from_edges(12, [&] {
                                      std::vector<Edge> e;
                                      for (auto [i, j] : bipartite_regular(6, 6, 3, seed))
                                          e.emplace_back(i, 6 + j);
                                      return e;
                                  }());
        const auto s = spectrum(g, SpectralMethod::ExactDense);
        const bool bip = oracle::two_colorable(12, fixtures::from_graph(g));
        CHECK((std::abs(s.lambda_n + 1.0) < 1e-9) == bip);
    }
}

TEST_CASE("expander mixing lemma examples") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    const auto s = spectrum(k4, SpectralMethod::ExactDense);
    const std::vector<SetPair> pairs{SetPair::make(k4, set(4, {0, 1}), set(4, {2, 3})),
                                     SetPair::make(k4, VertexSet::full(4), VertexSet::full(4))};
    const auto r = eml_check(k4, s, pairs);
    CHECK(r.entries[0].lhs == doctest::Approx(1.0));
    CHECK(r.entries[0].rhs == doctest::Approx(2.0));
    CHECK(r.entries[0].margin == doctest::Approx(1.0));
    CHECK(r.entries[1].lhs == doctest::Approx(0.0));
    CHECK(r.entries[1].margin == doctest::Approx(s.lambda * 3 * 4));
    CHECK(r.violations == 0);
    // An understated lambda is caught.
    CHECK(eml_check(k4, 0.1, pairs).violations == 1);
}

TEST_CASE("expander mixing lemma on random Petersen pairs") {
    const auto pet = fixtures::make(10, fixtures::petersen());
    const auto s = spectrum(pet, SpectralMethod::ExactDense);
    Rng rng(11);
    std::vector<SetPair> pairs;
    for (int i = 0; i < 10000; ++i)
        pairs.push_back(SetPair::make(pet, VertexSet::from_mask(10, 1 + rng.below(1023)),
                                      VertexSet::from_mask(10, 1 + rng.below(1023))));
    const auto r = eml_check(pet, s, pairs);
    CHECK(r.violations == 0);
    CHECK(r.min_margin >= -1e-6 * 3 * 10);
}

TEST_CASE("Cheeger examples") {
    const auto c6 = fixtures::make(6, fixtures::c6());
    const auto r1 = cheeger_check(spectrum(c6, SpectralMethod::ExactDense), 1.0 / 3.0, PhiKind::Exact);
    CHECK(r1.lower == doctest::Approx(0.25));
    CHECK(r1.upper == doctest::Approx(1.0));
    CHECK(r1.holds());
    const auto k4 = fixtures::make(4, fixtures::k4());
    const auto r2 = cheeger_check(spectrum(k4, SpectralMethod::ExactDense), 2.0 / 3.0, PhiKind::Exact);
    CHECK(r2.lower == doctest::Approx(2.0 / 3.0));
    CHECK(r2.upper == doctest::Approx(std::sqrt(8.0 / 3.0)));
    CHECK(r2.holds());
    const auto two = fixtures::make(8, fixtures::two_k4());
    const auto r3 = cheeger_check(spectrum(two, SpectralMethod::ExactDense), 0.0, PhiKind::Exact);
    CHECK(r3.lower == doctest::Approx(0.0).scale(1.0));
    CHECK(r3.holds());
    // With only an upper bound on phi, the right-hand side is not judged.
    const auto r4 = cheeger_check(spectrum(k4, SpectralMethod::ExactDense), 5.0, PhiKind::UpperBound);
    CHECK_FALSE(r4.upper_checked);
    CHECK(r4.holds());
    CHECK_FALSE(cheeger_check(spectrum(k4, SpectralMethod::ExactDense), 0.5, PhiKind::Exact).holds());
}

TEST_CASE("Tanner bound") {
    CHECK(tanner_bound(1.0, 3, 10) == doctest::Approx(0.0).scale(1.0));
    CHECK(tanner_bound(0.5, 10, 10) == doctest::Approx(0.0).scale(1.0));
    CHECK(tanner_bound(2.0 / 3.0, 2, 10) == doctest::Approx(0.8));
    CHECK_THROWS_AS(tanner_bound(0.5, 0, 10), SizeOutOfRange);
    CHECK_THROWS_AS(tanner_bound(0.5, 11, 10), SizeOutOfRange);

    const auto e = fixtures::petersen();
    const auto pet = fixtures::make(10, e);
    const auto s = spectrum(pet, SpectralMethod::ExactDense);
    for (std::uint32_t mask = 1; mask < 1024; ++mask) {
        const int size = std::popcount(mask);
        const double psi = oracle::vertex_expansion(10, e, mask);
        CHECK(psi == doctest::Approx(vertex_expansion(pet, VertexSet::from_mask(10, mask))));
        CHECK(tanner_bound(s, size, 10) <= psi + 1e-9);
        if (size == 2)
            CHECK(psi >= 0.8 - 1e-12);
    }
}

TEST_CASE("Tanner bound on small random graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_regular(12, 3 + seed % 3 * 2, seed);
        const auto e = fixtures::from_graph(g);
        const auto s = spectrum(g, SpectralMethod::ExactDense);
        for (std::uint32_t mask = 1; mask < (1u << 12); ++mask)
            REQUIRE(tanner_bound(s, std::popcount(mask), 12) <=
                    oracle::vertex_expansion(12, e, mask) + 1e-9);
    }
}

TEST_CASE("Alon-Boppana reference") {
    CHECK(alon_boppana_ref(2) == doctest::Approx(1.0));
    CHECK(alon_boppana_ref(3) == doctest::Approx(2.0 * std::numbers::sqrt2 / 3.0));
    CHECK(alon_boppana_ref(10) == doctest::Approx(0.6));
    CHECK_THROWS_AS(alon_boppana_ref(1), InvalidArgument);
    const auto pet = fixtures::make(10, fixtures::petersen());
    CHECK(is_ramanujan(spectrum(pet, SpectralMethod::ExactDense), 3));
}

TEST_CASE("method names") {
    CHECK(to_string(SpectralMethod::ExactDense) == "exact-dense");
    CHECK(to_string(SpectralMethod::Iterative) == "iterative");
}

}
