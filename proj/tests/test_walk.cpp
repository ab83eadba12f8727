#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "mixcert/construct.hpp"
#include "mixcert/spectral.hpp"
#include "mixcert/walk.hpp"

using namespace mixcert;
using fixtures::set;

TEST_SUITE("walk") {

TEST_CASE("single steps") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    const auto p = step(k4, Distribution::point_mass(4, 0));
    CHECK(p[0] == 0.0);
    for (int i = 1; i < 4; ++i)
        CHECK(p[i] == doctest::Approx(1.0 / 3.0));

    const auto c6 = fixtures::make(6, fixtures::c6());
    const auto q = step(c6, step(c6, Distribution::point_mass(6, 0)));
    const double want[] = {0.5, 0.0, 0.25, 0.0, 0.25, 0.0};
    for (int i = 0; i < 6; ++i)
        CHECK(q[i] == doctest::Approx(want[i]).scale(1.0));

    const auto pet = fixtures::make(10, fixtures::petersen());
    const auto u = step(pet, Distribution::uniform(10));
    for (int i = 0; i < 10; ++i)
        CHECK(std::abs(u[i] - 0.1) < 1e-12);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), InvalidArgument);
    CHECK_THROWS_AS(Distribution({1.5, -0.5}), InvalidArgument);
    CHECK_NOTHROW(Distribution({0.25, 0.75}));
    const auto us = Distribution::uniform_on(set(5, {1, 3}));
    CHECK(us[1] == 0.5);
    CHECK(us[0] == 0.0);
    CHECK_THROWS_AS(Distribution::uniform_on(VertexSet(5)), EmptySet);
}

TEST_CASE("variation distance") {
    const auto p = Distribution::point_mass(4, 0);
    CHECK(variation_distance(p, p) == 0.0);
    CHECK(variation_distance(p, Distribution::uniform(4)) == doctest::Approx(0.75));
    const auto k4 = fixtures::make(4, fixtures::k4());
    CHECK(distance_to_uniform(step(k4, p).probs()) == doctest::Approx(0.25));
    CHECK(l2_squared(Distribution::uniform(4).probs()) == doctest::Approx(0.25));
}

TEST_CASE("traces on small graphs") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    const auto tr = trace_walk(k4, Starts::all(), 3);
    REQUIRE(tr.steps.size() == 4);
    CHECK(tr.exact());
    CHECK(tr.steps[1].d_tv == doctest::Approx(0.25));
    CHECK(tr.steps[2].d_tv == doctest::Approx(1.0 / 12.0));

    const auto c6 = fixtures::make(6, fixtures::c6());
    for (const auto& s : trace_walk(c6, Starts::all(), 40).steps)
        CHECK(s.d_tv >= 0.5 - 1e-12);

    const auto pet = fixtures::make(10, fixtures::petersen());
    const auto st = trace_walk(pet, Starts::given({Distribution::uniform(10)}), 5);
    for (const auto& s : st.steps) {
        CHECK(s.d_tv < 1e-12);
        CHECK(s.l2sq == doctest::Approx(0.1));
    }
    CHECK_THROWS_AS(trace_walk(k4, Starts::all(), 0), BudgetZero);
}

TEST_CASE("trace matches dense matrix powers") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t n = 16 + 2 * seed, d = 3 + seed % 3;
        if (n * d % 2)
            continue;
        const auto g = random_regular(n, d, seed);
        const auto ref = oracle::tv_curve(int(n), int(d), fixtures::from_graph(g), 20);
        const auto tr = trace_walk(g, Starts::all(), 20);
        for (std::size_t t = 0; t <= 20; ++t)
            CHECK(tr.steps[t].d_tv == doctest::Approx(ref[t]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("trace invariants") {
    const auto g = random_regular(120, 5, 8);
    const auto s = spectrum(g, SpectralMethod::ExactDense);
    WalkOptions o;
    o.keep_per_start = true;
    const auto tr = trace_walk(g, Starts::all(), 40, o);
    CHECK(tr.max_l2_increase <= 1e-12);
    for (std::size_t t = 0; t < tr.steps.size(); ++t) {
        CHECK(tr.steps[t].l2sq >= 1.0 / 120.0 - 1e-15);
        if (t > 0)
            CHECK(tr.steps[t].d_tv <= tr.steps[t - 1].d_tv + 1e-12);
        const double env = std::pow(s.lambda, double(t)) * std::sqrt(120.0);
        for (double x : tr.per_start_d_tv[t])
            CHECK(x <= env + 1e-9);
    }
}

TEST_CASE("thread count does not change traces") {
    const auto g = random_regular(90, 4, 3);
    WalkOptions one, three;
    three.threads = 3;
    const auto a = trace_walk(g, Starts::all(), 25, one);
    const auto b = trace_walk(g, Starts::all(), 25, three);
    for (std::size_t t = 0; t < a.steps.size(); ++t) {
        CHECK(a.steps[t].d_tv == b.steps[t].d_tv);
        CHECK(a.steps[t].l2sq == b.steps[t].l2sq);
    }
}

TEST_CASE("sampled starts give a lower bound") {
    const auto g = random_regular(200, 4, 1);
    const auto all = trace_walk(g, Starts::all(), 15);
    const auto some = trace_walk(g, Starts::sampled(20, 3), 15);
    CHECK_FALSE(some.exact());
    CHECK(some.start_count == 20);
    for (std::size_t t = 0; t <= 15; ++t)
        CHECK(some.steps[t].d_tv <= all.steps[t].d_tv + 1e-15);
    const auto est = mixing_time(g, 0.01, Starts::sampled(20, 3), 100);
    CHECK_FALSE(est.exact);
    CHECK(est.value() <= mixing_time(g, 0.01, Starts::all(), 100).value());
}

TEST_CASE("mixing times") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    const auto a = mixing_time(k4, 1.0 / 3.0, Starts::all(), 10);
    CHECK(a.reached());
    CHECK(a.value() == 1);
    const auto c6 = fixtures::make(6, fixtures::c6());
    const auto b = mixing_time(c6, 1.0 / 3.0, Starts::all(), 200);
    CHECK_FALSE(b.reached());
    CHECK(b.last_d_tv >= 0.5 - 1e-12);
    CHECK_THROWS_AS(b.value(), NotReached);
    CHECK(mixing_time(c6, 1.0, Starts::all(), 5).value() == 0);
    CHECK_THROWS_AS(mixing_time(c6, 0.0, Starts::all(), 5), InvalidArgument);
}

TEST_CASE("default budget") {
    CHECK(default_step_budget(256) == 80);
    CHECK(default_step_budget(480) == 90);
    CHECK(default_step_budget(2) == 10);
}

TEST_CASE("trace csv") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    std::ostringstream os;
    write_trace_csv(os, trace_walk(k4, Starts::all(), 2));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,d_tv,l2sq");
    std::getline(in, line);
    CHECK(line == "0,0.75,1");
    double t = 0, tv = 0, l2 = 0;
    char comma = 0;
    in >> t >> comma >> tv >> comma >> l2;
    CHECK(t == 1);
    CHECK(tv == doctest::Approx(0.25));
    CHECK(l2 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("l2 decrease audit") {
    const auto g = random_regular(256, 8, 1);
    const auto u = l2_decrease_audit(g, Distribution::uniform(256), 0.5, 4.0, 0.375);
    CHECK(u.excess_ratio <= 0.0);
    CHECK(u.c_delta == doctest::Approx(1.125));
    const auto one = l2_decrease_audit(g, Distribution::uniform(256), 1.0, 4.0, 0.375);
    CHECK(one.c_delta == 1.0);
    CHECK(one.floor == doctest::Approx(1.0 / 256.0));
    const auto pm = l2_decrease_audit(g, Distribution::point_mass(256, 0), 1.0, 4.0, 0.375);
    CHECK(pm.lhs == doctest::Approx(1.0 / 8.0));
    CHECK(pm.excess_ratio == doctest::Approx(1.0 / 8.0 - 1.0 / 256.0));
    CHECK(pm.scale == doctest::Approx(std::sqrt(0.5 * std::log(8.0) / 0.375)));
    CHECK(pm.warnings.size() == 1);
    CHECK_FALSE(pm.regime_density);
    const auto tiny = l2_decrease_audit(g, Distribution::point_mass(256, 0), 0.01, 4.0, 0.9);
    CHECK_FALSE(tiny.regime_delta);
}

TEST_CASE("sub-multiplicativity audit") {
    const auto k4 = fixtures::make(4, fixtures::k4());
    const auto tr = trace_walk(k4, Starts::all(), 6);
    const auto r = submultiplicativity_audit(tr, 2, 1);
    CHECK(r.lhs == doctest::Approx(1.0 / 12.0));
    CHECK(r.rhs == doctest::Approx(0.25));
    CHECK(r.holds());
    CHECK(submultiplicativity_audit(tr, 1, 3).holds());
    CHECK_THROWS_AS(submultiplicativity_audit(tr, 4, 2), IndexOutOfTrace);
    CHECK_THROWS_AS(submultiplicativity_audit(tr, 0, 2), InvalidArgument);
    const auto c6 = fixtures::make(6, fixtures::c6());
    const auto tc = trace_walk(c6, Starts::all(), 12);
    for (std::size_t t = 1; t <= 4; ++t)
        CHECK(submultiplicativity_audit(tc, 3, t).rhs >= 1.0);
    const auto sampled = trace_walk(c6, Starts::sampled(2, 1), 4);
    CHECK_THROWS_AS(submultiplicativity_audit(sampled, 2, 1), InvalidArgument);
}

TEST_CASE("variation lower bound audit") {
    for (auto [n, d] : {std::pair<std::size_t, std::size_t>{48, 4}, {96, 6}}) {
        const auto inst = planted_expander(n, d, 2);
        const auto pair = SetPair::make(inst.graph, inst.s, inst.t);
        const auto r = lower_bound_audit(inst.graph, pair, double(d) / 4.0, 50);
        CHECK(r.holds);
        REQUIRE(r.steps.size() == 51);
        CHECK(r.steps[0].bound == doctest::Approx(0.5 - double(n / (d + 2)) / (2.0 * n)));
        CHECK(r.steps[0].measured >= r.steps[0].bound);
        CHECK(r.start_side_size == n / (d + 2));
        REQUIRE(r.mixing_floor);
        CHECK(r.tau.reached());
        CHECK(*r.floor_ratio >= 1.0);
    }
    const auto k4 = fixtures::make(4, fixtures::k4());
    const auto pair = SetPair::make(k4, set(4, {0, 1}), set(4, {2, 3}));
    CHECK_THROWS_AS(lower_bound_audit(k4, pair, 1.0, 5), NotAWitness);
}

TEST_CASE("start kind names") {
    CHECK(to_string(StartKind::AllPointMasses) == "all-point-masses");
    CHECK(to_string(StartKind::SampledPointMasses) == "sampled-point-masses");
    CHECK(to_string(StartKind::Explicit) == "explicit");
}

}
