#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mixcert/construct.hpp"
#include "mixcert/density.hpp"
#include "mixcert/rng.hpp"
#include "mixcert/spectral.hpp"

namespace mixcert {

namespace {

constexpr double kClaimTolerance = 1e-12;

// Grows a vertex set one vertex at a time, tracking the edge boundary and the
// vertex boundary incrementally.
class GrowingSet {
public:
    explicit GrowingSet(const RegularGraph& g)
        : g_(&g), in_(g.order(), 0), hits_(g.order(), 0), members_() {}

    void add(Vertex v) {
        if (in_[v])
            return;
        internal_ += hits_[v];
        if (hits_[v] > 0)
            --vertex_boundary_;
        in_[v] = 1;
        members_.push_back(v);
        for (Vertex u : g_->neighbors(v)) {
            if (!in_[u] && hits_[u] == 0)
                ++vertex_boundary_;
            ++hits_[u];
        }
    }
    void remove_last() {
        const Vertex v = members_.back();
        members_.pop_back();
        in_[v] = 0;
        for (Vertex u : g_->neighbors(v)) {
            --hits_[u];
            if (!in_[u] && hits_[u] == 0)
                --vertex_boundary_;
        }
        if (hits_[v] > 0)
            ++vertex_boundary_;
        internal_ -= hits_[v];
    }
    void clear() {
        while (!members_.empty())
            remove_last();
    }

    bool contains(Vertex v) const { return in_[v] != 0; }
    std::size_t size() const { return members_.size(); }
    std::int64_t hits(Vertex v) const { return hits_[v]; }
    const std::vector<Vertex>& members() const { return members_; }
    std::int64_t edge_boundary() const {
        return static_cast<std::int64_t>(g_->degree() * members_.size()) - 2 * internal_;
    }
    std::int64_t vertex_boundary() const { return vertex_boundary_; }

private:
    const RegularGraph* g_;
    std::vector<std::uint8_t> in_;
    std::vector<std::int64_t> hits_;
    std::vector<Vertex> members_;
    std::int64_t internal_ = 0;
    std::int64_t vertex_boundary_ = 0;
};

// Tracks the minimum of a ratio over probed sets.
struct Probe {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    void record(double value) {
        worst = std::min(worst, value);
        ++count;
    }
};

// Candidate sets of size 1..cap. Each generator appends ratios to `probe`
// through `visit`, which is called after every growth step.
template <typename Visit>
void sample_sets(const RegularGraph& g, const PlantedInstance& inst, std::size_t cap,
                 std::size_t budget, std::uint64_t seed, const std::vector<Vertex>& fiedler_order,
                 Visit&& visit, Probe& probe) {
    const std::size_t n = g.order();
    GrowingSet w(g);
    Rng rng(seed);
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});

    auto grow_prefix = [&](std::span<const Vertex> order) {
        w.clear();
        for (std::size_t i = 0; i < std::min(cap, order.size()) && probe.count < budget; ++i) {
            w.add(order[i]);
            visit(w);
        }
    };
    auto grow_greedy = [&](Vertex start, bool with_noise) {
        w.clear();
        w.add(start);
        visit(w);
        std::vector<Vertex> frontier;
        while (w.size() < cap && probe.count < budget) {
            frontier.clear();
            std::int64_t best_hits = -1;
            for (Vertex v : w.members())
                for (Vertex u : g.neighbors(v)) {
                    if (w.contains(u))
                        continue;
                    if (w.hits(u) > best_hits) {
                        best_hits = w.hits(u);
                        frontier.assign(1, u);
                    } else if (w.hits(u) == best_hits &&
                               std::find(frontier.begin(), frontier.end(), u) == frontier.end()) {
                        frontier.push_back(u);
                    }
                }
            if (frontier.empty())
                break;
            Vertex pick = frontier[rng.below(frontier.size())];
            if (with_noise && rng.below(4) == 0) {
                const Vertex v = w.members()[rng.below(w.size())];
                const Vertex u = g.neighbors(v)[rng.below(g.degree())];
                if (!w.contains(u))
                    pick = u;
            }
            w.add(pick);
            visit(w);
        }
    };

    // Structured sets around the planted pair.
    const auto s_members = inst.s.members();
    const auto t_members = inst.t.members();
    std::vector<Vertex> st_members;
    for (std::size_t i = 0; i < s_members.size(); ++i) {
        st_members.push_back(s_members[i]);
        st_members.push_back(t_members[i]);
    }
    grow_prefix(s_members);
    grow_prefix(t_members);
    grow_prefix(st_members);
    // Spectral sweeps from both ends.
    if (!fiedler_order.empty()) {
        grow_prefix(fiedler_order);
        std::vector<Vertex> rev(fiedler_order.rbegin(), fiedler_order.rend());
        grow_prefix(rev);
    }

    std::size_t round = 0;
    while (probe.count < budget) {
        switch (round++ % 4) {
        case 0: {
            rng.shuffle(std::span<Vertex>(all));
            grow_prefix(all);
            break;
        }
        case 1: {
            // Breadth-first ball around a random vertex.
            std::vector<Vertex> order{static_cast<Vertex>(rng.below(n))};
            std::vector<std::uint8_t> seen(n, 0);
            seen[order[0]] = 1;
            for (std::size_t i = 0; i < order.size() && order.size() < cap; ++i)
                for (Vertex u : g.neighbors(order[i]))
                    if (!seen[u]) {
                        seen[u] = 1;
                        order.push_back(u);
                    }
            grow_prefix(order);
            break;
        }
        case 2:
            grow_greedy(static_cast<Vertex>(rng.below(n)), false);
            break;
        default: {
            // Greedy growth seeded inside the planted structure.
            const Vertex start = st_members.empty()
                                     ? static_cast<Vertex>(rng.below(n))
                                     : st_members[rng.below(st_members.size())];
            grow_greedy(start, true);
            break;
        }
        }
    }
}

std::vector<Vertex> fiedler_order(const RegularGraph& g, std::uint64_t seed) {
    const std::size_t n = g.order();
    if (n < 3)
        return {};
    SpectralOptions opts;
    opts.seed = seed;
    try {
        const auto pairs = extreme_eigenpairs(
            g, n <= 1024 ? SpectralMethod::ExactDense : SpectralMethod::Iterative, opts);
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), Vertex{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Vertex a, Vertex b) { return pairs.second[a] > pairs.second[b]; });
        return order;
    } catch (const ConvergenceFailure&) {
        return {};
    }
}

ClaimResult check_density(const PlantedInstance& inst) {
    const auto& g = inst.graph;
    ClaimResult r;
    r.applicable = true;
    r.grade = Grade::Exact;
    const std::int64_t e = ordered_edge_count(g, inst.s, inst.t);
    const std::size_t a = inst.s.size(), b = inst.t.size();
    r.measured = surplus_value(e, a, b, g.order(), g.degree());
    r.threshold = static_cast<double>(g.degree()) / 4.0;
    r.holds = density_at_least(e, a, b, g.order(), g.degree(),
                               static_cast<std::int64_t>(g.degree()), 4);
    r.probes = 1;
    r.note = "|E(S,T)| = " + std::to_string(e);
    return r;
}

ClaimResult check_conductance(const PlantedInstance& inst, const ClaimEffort& effort,
                              const std::vector<Vertex>& order) {
    const auto& g = inst.graph;
    const std::size_t n = g.order();
    ClaimResult r;
    r.applicable = true;
    r.threshold = 1.0 / 8.0;
    if (n <= effort.exact_conductance_cap) {
        const auto exact = min_conductance_exact(g, effort.exact_conductance_cap);
        r.grade = Grade::Exact;
        r.measured = exact.conductance;
        r.holds = exact.conductance >= r.threshold - kClaimTolerance;
        r.probes = (std::size_t{1} << (n - 1)) - 1;
        r.note = "all cuts enumerated";
        return r;
    }

    SpectralOptions opts;
    opts.seed = effort.seed;
    const auto sum =
        spectrum(g, n <= 1024 ? SpectralMethod::ExactDense : SpectralMethod::Iterative, opts);
    r.spectral_bound = (1.0 - sum.lambda2) / 2.0;

    Probe probe;
    const double d = static_cast<double>(g.degree());
    sample_sets(g, inst, n / 2, effort.cut_samples, derive_seed(effort.seed, 11), order,
                [&](const GrowingSet& w) {
                    probe.record(static_cast<double>(w.edge_boundary()) /
                                 (d * static_cast<double>(w.size())));
                },
                probe);
    r.measured = probe.worst;
    r.probes = probe.count;
    const bool sampled_ok = probe.worst >= r.threshold - kClaimTolerance;
    if (*r.spectral_bound >= r.threshold - kClaimTolerance) {
        r.grade = Grade::Spectral;
        r.holds = sampled_ok;
        r.note = "Cheeger lower bound certifies the claim";
    } else {
        r.grade = Grade::Sampled;
        r.holds = sampled_ok;
        r.note = "Cheeger lower bound below 1/8; evidence from sampled cuts";
    }
    return r;
}

// Sum of C(n, k) for k = 1..cap, saturating at limit + 1.
std::size_t subsets_up_to(std::size_t n, std::size_t cap, std::size_t limit) {
    long double total = 0, term = 1;
    for (std::size_t k = 1; k <= cap; ++k) {
        term = term * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
        total += term;
        if (total > static_cast<long double>(limit))
            return limit + 1;
    }
    return static_cast<std::size_t>(std::llround(total));
}

ClaimResult check_vertex_expansion(const PlantedInstance& inst, const ClaimEffort& effort,
                                   const std::vector<Vertex>& order) {
    const auto& g = inst.graph;
    const std::size_t n = g.order(), d = g.degree();
    const std::size_t cap = n / d;
    ClaimResult r;
    r.applicable = true;
    r.threshold = static_cast<double>(d) / 8.0;
    if (cap == 0) {
        r.holds = true;
        r.grade = Grade::Exact;
        r.note = "no sets of size <= n/d";
        return r;
    }
    Probe probe;
    auto visit = [&](const GrowingSet& w) {
        probe.record(static_cast<double>(w.vertex_boundary()) / static_cast<double>(w.size()));
    };
    const std::size_t subsets = subsets_up_to(n, cap, effort.exact_expansion_budget);
    if (subsets <= effort.exact_expansion_budget) {
        GrowingSet w(g);
        // Depth-first enumeration of all subsets of size <= cap in increasing order.
        auto rec = [&](auto&& self, Vertex next) -> void {
            for (Vertex v = next; v < n; ++v) {
                w.add(v);
                visit(w);
                if (w.size() < cap)
                    self(self, v + 1);
                w.remove_last();
            }
        };
        rec(rec, 0);
        r.grade = Grade::Exact;
        r.note = "all sets of size <= n/d enumerated";
    } else {
        sample_sets(g, inst, cap, effort.set_samples, derive_seed(effort.seed, 12), order, visit,
                    probe);
        r.grade = Grade::Sampled;
        r.note = "sampled sets of size <= n/d";
        const double tb = tanner_bound(spectrum(g, n <= 1024 ? SpectralMethod::ExactDense
                                                             : SpectralMethod::Iterative,
                                                [&] {
                                                    SpectralOptions o;
                                                    o.seed = effort.seed;
                                                    return o;
                                                }()),
                                       cap, n);
        r.spectral_bound = tb;
        if (*r.spectral_bound >= r.threshold - kClaimTolerance) {
            r.grade = Grade::Spectral;
            r.note = "Tanner bound certifies the claim";
        }
    }
    r.measured = probe.worst;
    r.probes = probe.count;
    r.holds = probe.worst >= r.threshold - kClaimTolerance;
    return r;
}

} // namespace

ClaimsReport verify_claims(const PlantedInstance& inst, const ClaimEffort& effort) {
    ClaimsReport report;
    report.density = check_density(inst);
    const std::size_t n = inst.graph.order();
    const bool need_order = (inst.family == PlantedFamily::Expander && n > effort.exact_conductance_cap) ||
                            inst.family == PlantedFamily::SmallSetVertexExpander;
    const auto order = need_order ? fiedler_order(inst.graph, effort.seed) : std::vector<Vertex>{};
    if (inst.family == PlantedFamily::Expander)
        report.conductance = check_conductance(inst, effort, order);
    else
        report.vertex_expansion = check_vertex_expansion(inst, effort, order);
    return report;
}

} // namespace mixcert
