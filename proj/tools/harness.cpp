#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mixcert/density.hpp"
#include "mixcert/rng.hpp"
#include "mixcert/walk.hpp"

namespace mixcert::cli {

Json check_json(const CheckSummary& c) {
    Json j;
    j["name"] = c.name;
    j["inequality"] = c.inequality;
    j["probes"] = c.probes;
    j["violations"] = c.violations;
    j["min_margin"] = c.probes ? Json(c.min_margin) : Json(nullptr);
    j["grade"] = c.grade;
    j["gating"] = c.gating;
    j["passed"] = !c.failed();
    if (!c.note.empty())
        j["note"] = c.note;
    return j;
}

namespace {

void record(CheckSummary& c, double margin, double tol) {
    if (c.probes == 0 || margin < c.min_margin)
        c.min_margin = margin;
    ++c.probes;
    if (margin < -tol)
        ++c.violations;
}

// Random vertex sets of size in [lo, hi]: uniform subsets, breadth-first balls
// and one-sided spectral sweeps, cycling through the three shapes.
class SetSampler {
public:
    SetSampler(const RegularGraph& g, std::uint64_t seed, const std::vector<double>* order_key = nullptr)
        : g_(g), rng_(seed), all_(g.order()) {
        std::iota(all_.begin(), all_.end(), Vertex{0});
        if (order_key && !order_key->empty()) {
            sweep_ = all_;
            std::stable_sort(sweep_.begin(), sweep_.end(),
                             [&](Vertex a, Vertex b) { return (*order_key)[a] > (*order_key)[b]; });
        }
    }

    VertexSet next(std::size_t lo, std::size_t hi) {
        const std::size_t n = g_.order();
        const std::size_t size = lo + rng_.below(hi - lo + 1);
        VertexSet s(n);
        switch (round_++ % 3) {
        case 0: {
            // Partial Fisher-Yates.
            for (std::size_t i = 0; i < size; ++i) {
                const std::size_t j = i + rng_.below(n - i);
                std::swap(all_[i], all_[j]);
                s.insert(all_[i]);
            }
            break;
        }
        case 1: {
            std::vector<Vertex> queue{static_cast<Vertex>(rng_.below(n))};
            s.insert(queue[0]);
            for (std::size_t i = 0; i < queue.size() && s.size() < size; ++i)
                for (Vertex u : g_.neighbors(queue[i]))
                    if (s.size() < size && !s.contains(u)) {
                        s.insert(u);
                        queue.push_back(u);
                    }
            // Disconnected remainder: pad uniformly.
            while (s.size() < size)
                s.insert(static_cast<Vertex>(rng_.below(n)));
            break;
        }
        default: {
            if (sweep_.empty())
                return next(lo, hi);
            const bool from_top = rng_.below(2) == 0;
            for (std::size_t i = 0; i < size; ++i)
                s.insert(from_top ? sweep_[i] : sweep_[n - 1 - i]);
            break;
        }
        }
        return s;
    }

private:
    const RegularGraph& g_;
    Rng rng_;
    std::vector<Vertex> all_;
    std::vector<Vertex> sweep_;
    std::size_t round_ = 0;
};

SpectralMethod method_for(std::size_t n) {
    return n <= 1024 ? SpectralMethod::ExactDense : SpectralMethod::Iterative;
}

} // namespace

CheckSummary eml_probes(const RegularGraph& g, const SpectralSummary& s, std::size_t count,
                        std::uint64_t seed, double tol) {
    CheckSummary c;
    c.name = "expander-mixing-lemma";
    c.inequality = "| |E(S,T)| - d|S||T|/n | <= lambda d sqrt(|S||T|)";
    c.grade = "sampled";
    SetSampler sampler(g, seed);
    const std::size_t n = g.order();
    constexpr std::size_t kChunk = 512;
    std::vector<SetPair> pairs;
    while (c.probes < count) {
        pairs.clear();
        for (std::size_t i = 0; i < std::min(kChunk, count - c.probes); ++i) {
            auto a = sampler.next(1, n);
            auto b = sampler.next(1, n);
            pairs.push_back(SetPair::make(g, std::move(a), std::move(b)));
        }
        const auto rep = eml_check(g, s, pairs, tol);
        for (const auto& e : rep.entries)
            record(c, e.margin, tol);
    }
    return c;
}

CheckSummary cheeger_probes(const RegularGraph& g, const SpectralSummary& s,
                            const std::vector<double>& fiedler, std::size_t count,
                            std::uint64_t seed, double tol) {
    CheckSummary c;
    c.name = "cheeger";
    c.inequality = "(1 - lambda2)/2 <= phi(G) <= sqrt(2(1 - lambda2))";
    const std::size_t n = g.order();
    const double lower = (1.0 - s.lambda2) / 2.0;
    const double upper = std::sqrt(2.0 * std::max(0.0, 1.0 - s.lambda2));

    if (n <= kConductanceExactCap) {
        const auto exact = min_conductance_exact(g);
        const auto rep = cheeger_check(s, exact.conductance, PhiKind::Exact, tol);
        record(c, rep.phi - rep.lower, tol);
        record(c, rep.upper - rep.phi, tol);
        c.note = "exact conductance " + std::to_string(exact.conductance);
    }

    // Every cut's conductance bounds phi(G) from above, hence from the spectral lower bound.
    SetSampler sampler(g, seed, &fiedler);
    double best = std::numeric_limits<double>::infinity();
    while (c.probes < count) {
        const auto cut = sampler.next(1, n / 2);
        const double phi = conductance_of_cut(g, cut);
        best = std::min(best, phi);
        record(c, phi - lower, tol);
    }
    // The best sweep cut of the second eigenvector meets the upper bound.
    if (!fiedler.empty()) {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), Vertex{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Vertex a, Vertex b) { return fiedler[a] > fiedler[b]; });
        std::vector<std::uint8_t> in(n, 0);
        std::int64_t boundary = 0;
        double sweep_best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const Vertex v = order[k];
            std::int64_t inside = 0;
            for (Vertex u : g.neighbors(v))
                inside += in[u];
            boundary += static_cast<std::int64_t>(g.degree()) - 2 * inside;
            in[v] = 1;
            const double small = static_cast<double>(std::min(k + 1, n - k - 1));
            sweep_best = std::min(sweep_best, static_cast<double>(boundary) /
                                                  (static_cast<double>(g.degree()) * small));
        }
        record(c, upper - sweep_best, tol);
        best = std::min(best, sweep_best);
    }
    if (n > kConductanceExactCap) {
        c.grade = "sampled";
        c.note = "best sampled cut " + std::to_string(best);
    }
    return c;
}

CheckSummary tanner_probes(const RegularGraph& g, const SpectralSummary& s, std::size_t count,
                           std::uint64_t seed, double tol) {
    CheckSummary c;
    c.name = "tanner";
    c.inequality = "psi(S) >= 1/((|S|/n)(1 - lambda^2) + lambda^2) - 1";
    c.grade = "sampled";
    SetSampler sampler(g, seed);
    const std::size_t n = g.order();
    while (c.probes < count) {
        const auto w = sampler.next(1, n);
        record(c, vertex_expansion(g, w) - tanner_bound(s, w.size(), n), tol);
    }
    return c;
}

WalkChecks walk_probes(const WalkTrace& trace, const SpectralSummary& s, std::size_t n, double tol) {
    WalkChecks w;
    w.submultiplicativity.name = "sub-multiplicativity";
    w.submultiplicativity.inequality = "d_TV(kt) <= (2 d_TV(t))^k";
    w.l2_monotone.name = "l2-monotonicity";
    w.l2_monotone.inequality = "||P^{t+1} p||^2 <= ||P^t p||^2";
    w.envelope.name = "spectral-envelope";
    w.envelope.inequality = "d_TV(P^t p, pi) <= lambda^t ||p||_2 sqrt(n)";

    const std::size_t t_max = trace.t_max();
    const std::size_t starts = trace.start_count;

    if (trace.exact()) {
        for (std::size_t t = 1; t <= t_max; ++t)
            for (std::size_t k = 1; k * t <= t_max; ++k) {
                const auto rep = submultiplicativity_audit(trace, k, t);
                // Each start's distance is bounded by the worst-case distance.
                for (std::size_t x = 0; x < trace.per_start_d_tv[k * t].size(); ++x)
                    record(w.submultiplicativity, rep.rhs - trace.per_start_d_tv[k * t][x], tol);
            }
    } else {
        w.submultiplicativity.gating = false;
        w.submultiplicativity.note = "needs all point-mass starts";
    }

    w.l2_monotone.probes = starts * t_max;
    w.l2_monotone.min_margin = -trace.max_l2_increase;
    w.l2_monotone.violations = trace.max_l2_increase > tol ? 1 : 0;
    w.l2_monotone.note = "margin is the largest per-start increase, negated";

    // Point masses have ||p||_2 = 1.
    const double root_n = std::sqrt(static_cast<double>(n));
    if (trace.starts != StartKind::Explicit) {
        for (std::size_t t = 0; t < trace.per_start_d_tv.size(); ++t) {
            const double bound = std::pow(s.lambda, static_cast<double>(t)) * root_n;
            for (double dtv : trace.per_start_d_tv[t])
                record(w.envelope, bound - dtv, tol);
        }
    }
    return w;
}

namespace {

Json summary_json(const SpectralSummary& s, std::size_t d) {
    Json j;
    j["lambda2"] = s.lambda2;
    j["lambda_n"] = s.lambda_n;
    j["lambda"] = s.lambda;
    j["method"] = std::string(to_string(s.method));
    j["residual"] = s.residual;
    j["grade"] = "spectral";
    j["alon_boppana"] = d >= 2 ? Json(alon_boppana_ref(d)) : Json(nullptr);
    j["is_ramanujan"] = d >= 2 && is_ramanujan(s, d);
    return j;
}

Json pair_json(const SetPair& p) {
    Json j;
    j["S"] = p.s.members();
    j["T"] = p.t.members();
    j["edges"] = p.est;
    j["surplus"] = p.surplus;
    return j;
}

Json opt(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }
Json opt(const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); }

std::optional<std::size_t> first_below(const WalkTrace& trace, double eps) {
    for (const auto& s : trace.steps)
        if (s.d_tv <= eps)
            return s.t;
    return std::nullopt;
}

} // namespace

VerifyOutcome run_verify(const RegularGraph& g, const std::optional<Sidecar>& sidecar,
                         const VerifyConfig& cfg) {
    const std::size_t n = g.order(), d = g.degree();
    const double nd = static_cast<double>(n), dd = static_cast<double>(d);
    Json report;
    std::vector<CheckSummary> checks;
    Json warnings = Json::array();

    // Spectral summary.
    SpectralOptions sopts;
    sopts.seed = cfg.seed;
    const auto pairs = extreme_eigenpairs(g, method_for(n), sopts);
    const auto& spec = pairs.summary;
    report["spectrum"] = summary_json(spec, d);

    const double alpha = cfg.alpha.value_or(sidecar ? dd / 4.0 : spec.lambda * dd);
    const double delta = cfg.delta.value_or(sidecar ? 1.0 / (dd + 2.0) : 1.0);
    if (!(alpha > 0.0))
        throw InvalidArgument("alpha must be positive");
    if (!(delta > 0.0) || delta > 1.0)
        throw InvalidArgument("delta must lie in (0, 1]");
    if (alpha <= std::sqrt(dd))
        warnings.push_back("alpha <= sqrt(d): even random graphs violate the density condition here");
    if (alpha >= dd)
        warnings.push_back("alpha >= d: the condition holds trivially and the theorem formulas degenerate");

    {
        Json c;
        c["alpha"] = alpha;
        c["alpha_source"] = cfg.alpha ? "config" : (sidecar ? "planted d/4" : "spectral lambda d");
        c["delta"] = delta;
        c["tolerance"] = cfg.tolerance;
        report["parameters"] = c;
    }

    // Spectral cross-checks.
    checks.push_back(eml_probes(g, spec, cfg.probes, derive_seed(cfg.seed, 101), cfg.tolerance));
    checks.push_back(cheeger_probes(g, spec, pairs.second, cfg.probes, derive_seed(cfg.seed, 102),
                                    cfg.tolerance));
    checks.push_back(tanner_probes(g, spec, cfg.probes, derive_seed(cfg.seed, 103), cfg.tolerance));

    // Walk trace.
    const std::size_t t_max = cfg.t_max.value_or(default_step_budget(n));
    const Starts starts = n <= kExactWalkCap
                              ? Starts::all()
                              : Starts::sampled(cfg.sampled_starts, derive_seed(cfg.seed, 104));
    WalkOptions wopts;
    wopts.threads = cfg.threads;
    wopts.keep_per_start = true;
    const auto trace = trace_walk(g, starts, t_max, wopts);
    const auto wc = walk_probes(trace, spec, n, cfg.tolerance);
    checks.push_back(wc.submultiplicativity);
    checks.push_back(wc.l2_monotone);
    checks.push_back(wc.envelope);
    const auto tau_n = first_below(trace, 1.0 / nd);
    const auto tau_3 = first_below(trace, 1.0 / 3.0);
    {
        Json w;
        w["starts"] = std::string(to_string(trace.starts));
        w["start_count"] = trace.start_count;
        w["t_max"] = t_max;
        w["grade"] = trace.exact() ? "exact" : "sampled";
        w["tau_1_over_n"] = opt(tau_n);
        w["tau_1_over_3"] = opt(tau_3);
        w["final_d_tv"] = trace.steps.back().d_tv;
        Json rows = Json::array();
        for (const auto& s : trace.steps)
            rows.push_back(Json::array({s.t, s.d_tv, s.l2sq}));
        w["trace"] = rows;
        report["walk"] = w;
    }

    // Density certificate.
    DensityOptions dopts;
    dopts.exact_cap = cfg.exact_cap;
    dopts.threads = cfg.threads;
    const bool exact = n <= std::min(cfg.exact_cap, kExactHardCeiling);
    const auto cert = exact ? certify_exact(g, alpha, delta, dopts)
                            : search_witness(g, alpha, delta, SearchBudget{cfg.restarts, 0},
                                             derive_seed(cfg.seed, 105), dopts);
    {
        Json c;
        c["mode"] = std::string(to_string(cert.search.mode));
        c["grade"] = exact ? "exact" : "heuristic";
        c["verdict"] = std::string(to_string(cert.verdict));
        c["size_cap"] = cert.size_cap;
        c["vacuous"] = cert.vacuous;
        c["max_surplus_found"] = opt(cert.max_surplus_found);
        c["best_pair"] = cert.best_pair ? pair_json(*cert.best_pair) : Json(nullptr);
        if (!exact) {
            c["restarts"] = cert.search.restarts;
            c["steps"] = cert.search.steps;
        }
        report["density"] = c;
    }

    if (cert.witness) {
        const auto mw = minimize_witness(g, *cert.witness, alpha);
        const auto fl = check_degree_floors(mw, alpha, d);
        CheckSummary c;
        c.name = "minimal-witness-floors";
        c.inequality = "floor_S >= (alpha/2) sqrt(|T|/|S|), floor_T >= (alpha/2) sqrt(|S|/|T|), "
                       "d_min >= alpha^2/(4d)";
        record(c, static_cast<double>(mw.degree_floor_s) - fl.bound_s, 0.0);
        record(c, static_cast<double>(mw.degree_floor_t) - fl.bound_t, 0.0);
        record(c, static_cast<double>(mw.d_min) - fl.bound_dmin, 0.0);
        checks.push_back(c);
        Json m = pair_json(mw.pair);
        m["degree_floor_s"] = mw.degree_floor_s;
        m["degree_floor_t"] = mw.degree_floor_t;
        m["d_min"] = mw.d_min;
        report["minimal_witness"] = m;
    }

    // Lower-bound audit on a dense pair: the planted one if known, else the witness.
    std::optional<SetPair> dense;
    std::string dense_source;
    if (sidecar) {
        dense = SetPair::make(g, sidecar->s, sidecar->t);
        dense_source = "sidecar";
    } else if (cert.witness) {
        dense = *cert.witness;
        dense_source = "witness";
    }
    std::optional<std::size_t> tau_floor_check;
    if (dense && reaches(dense->surplus, alpha)) {
        WalkOptions lopts;
        lopts.threads = cfg.threads;
        const auto lb = lower_bound_audit(g, *dense, alpha, cfg.lemma_steps, lopts);
        CheckSummary c;
        c.name = "variation-lower-bound";
        c.inequality = "d_TV(P^t U, pi) >= (1/2)(alpha/2d)^{2t} - min(|S|,|T|)/(2n)";
        for (const auto& row : lb.steps)
            record(c, row.margin, kLowerBoundTolerance);
        checks.push_back(c);
        Json j;
        j["pair_source"] = dense_source;
        j["pair"] = pair_json(*dense);
        j["start_side_size"] = lb.start_side_size;
        j["steps"] = lb.steps.size() - 1;
        j["min_margin"] = c.min_margin;
        j["holds"] = lb.holds;
        j["delta"] = lb.delta;
        j["mixing_floor"] = opt(lb.mixing_floor);
        j["tau_1_over_n"] = opt(lb.tau.tau);
        j["tau_grade"] = lb.tau.exact ? "exact" : "sampled";
        j["floor_ratio"] = opt(lb.floor_ratio);
        report["lower_bound_audit"] = j;
    } else if (dense) {
        Json j;
        j["pair_source"] = dense_source;
        j["pair"] = pair_json(*dense);
        j["skipped"] = "pair surplus is below alpha";
        report["lower_bound_audit"] = j;
    }

    // One-step l2 decrease audit from a point mass (constant reported, not asserted).
    if (d >= 2 && n >= 3) {
        const double xi = std::log(dd) / std::log(nd);
        const auto a = l2_decrease_audit(g, Distribution::point_mass(n, 0), delta, alpha, xi);
        Json j;
        j["start"] = "point mass at 0";
        j["xi"] = xi;
        j["lhs"] = a.lhs;
        j["floor"] = a.floor;
        j["excess_ratio"] = a.excess_ratio;
        j["scale"] = a.scale;
        j["normalized"] = a.scale > 0.0 ? Json(std::max(0.0, a.excess_ratio) / a.scale) : Json(nullptr);
        j["grade"] = "exact";
        j["warnings"] = a.warnings;
        report["l2_decrease_audit"] = j;
    }

    // Theorem comparison: formulas without their hidden constants.
    {
        Json t;
        const bool defined = alpha < dd;
        const double log_ratio = defined ? std::log(dd / alpha) : 0.0;
        auto ratio = [&](const std::optional<std::size_t>& tau, double f) {
            return tau && defined && f > 0.0 ? Json(static_cast<double>(*tau) / f) : Json(nullptr);
        };
        const double f_strong = defined ? std::pow(std::log(nd) / log_ratio, 2.0) : 0.0;
        const double f_weak = defined ? std::log(nd) / log_ratio : 0.0;
        const double f_lower = defined && delta < 1.0 ? std::log(1.0 / delta) / log_ratio : 0.0;
        t["tau_1_over_n"] = opt(tau_n);
        t["tau_1_over_3"] = opt(tau_3);
        t["strong_upper"] = {{"formula", "(log n / log(d/alpha))^2"},
                             {"value", defined ? Json(f_strong) : Json(nullptr)},
                             {"ratio", ratio(tau_n, f_strong)}};
        t["weak_upper"] = {{"formula", "log n / log(d/alpha)"},
                           {"value", defined ? Json(f_weak) : Json(nullptr)},
                           {"ratio", ratio(tau_3, f_weak)}};
        t["lower"] = {{"formula", "log(1/delta) / log(d/alpha)"},
                      {"value", defined && delta < 1.0 ? Json(f_lower) : Json(nullptr)},
                      {"ratio", ratio(tau_n, f_lower)}};
        t["note"] = "constants are hidden; ratios are reported, not asserted";
        report["theorems"] = t;
    }

    // Planted claims.
    if (sidecar) {
        auto inst = adopt_planted(g, sidecar->s, sidecar->t, sidecar->family, sidecar->seed);
        ClaimEffort effort;
        effort.seed = derive_seed(cfg.seed, 106);
        effort.cut_samples = cfg.probes;
        effort.set_samples = cfg.probes;
        const auto claims = verify_claims(inst, effort);
        report["planted"] = {{"family", std::string(to_string(inst.family))},
                             {"inner", inner_json(inst.inner)},
                             {"claims", claims_json(claims)}};
        CheckSummary c;
        c.name = "planted-density-claim";
        c.inequality = "|E(S,T)| >= d|S||T|/n + (d/4) sqrt(|S||T|)";
        record(c, claims.density.holds ? 0.0 : -1.0, 0.0);
        c.min_margin = claims.density.measured - claims.density.threshold;
        checks.push_back(c);
    }

    Json cj = Json::array();
    bool failed = false;
    for (const auto& c : checks) {
        cj.push_back(check_json(c));
        failed = failed || c.failed();
    }
    report["checks"] = cj;
    report["cross_checks_passed"] = !failed;
    report["warnings"] = warnings;
    return {report, failed};
}

} // namespace mixcert::cli
