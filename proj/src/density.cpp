#include "mixcert/density.hpp"

#include <bit>
#include <limits>
#include <vector>

#include "density_internal.hpp"
#include "mixcert/parallel.hpp"

namespace mixcert {

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Violated:
        return "violated";
    case Verdict::HoldsUpToSearch:
        return "holds-up-to-search";
    }
    return "unknown";
}

std::string_view to_string(SearchMode m) { return m == SearchMode::Exact ? "exact" : "heuristic"; }

namespace {

std::size_t size_cap_of(double delta, std::size_t n) {
    if (!(delta > 0.0) || delta > 1.0)
        throw InvalidArgument("delta must lie in (0, 1]");
    // delta n is often an exact integer computed through a fraction such as 1/(d+2).
    return static_cast<std::size_t>(std::floor(delta * static_cast<double>(n) * (1.0 + 1e-12)));
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("alpha must be a positive finite number");
}

std::vector<std::uint64_t> adjacency_masks(const RegularGraph& g) {
    std::vector<std::uint64_t> masks(g.order(), 0);
    for (Vertex v = 0; v < g.order(); ++v)
        for (Vertex u : g.neighbors(v))
            masks[v] |= std::uint64_t{1} << u;
    return masks;
}

struct MaskCandidate {
    SurplusKey key;
    std::uint64_t s = 0;
    std::uint64_t t = 0;
    bool valid = false;
};

bool better(const MaskCandidate& x, const MaskCandidate& y) {
    if (!y.valid)
        return x.valid;
    if (!x.valid)
        return false;
    const int c = compare(x.key, y.key);
    if (c != 0)
        return c > 0;
    if (x.s != y.s)
        return detail::mask_lex_less(x.s, y.s);
    return detail::mask_lex_less(x.t, y.t);
}

} // namespace

DensityCertificate certify_exact(const RegularGraph& g, double alpha, double delta,
                                 const DensityOptions& options) {
    check_alpha(alpha);
    const std::size_t n = g.order();
    const std::size_t cap = std::min(options.exact_cap, kExactHardCeiling);
    if (n > cap)
        throw SizeCap(n, cap);

    DensityCertificate cert;
    cert.alpha = alpha;
    cert.delta = delta;
    cert.size_cap = size_cap_of(delta, n);
    cert.search.mode = SearchMode::Exact;
    if (cert.size_cap == 0) {
        cert.vacuous = true;
        cert.verdict = Verdict::Holds;
        return cert;
    }

    const std::size_t d = g.degree();
    const auto adj = adjacency_masks(g);
    const std::uint64_t full = std::uint64_t{1} << n;
    const std::size_t size_cap = cert.size_cap;

    // S masks ordered by popcount, then value.
    std::vector<std::uint64_t> sources;
    for (std::size_t a = 1; a <= size_cap; ++a)
        for (std::uint64_t s = 1; s < full; ++s)
            if (static_cast<std::size_t>(std::popcount(s)) == a)
                sources.push_back(s);

    const unsigned workers = std::max(1u, options.threads);
    std::vector<MaskCandidate> best_per_worker(workers);
    parallel_for(workers, workers, [&](std::size_t w) {
        std::vector<std::uint16_t> count(full, 0);
        std::vector<int> best_e(n + 1);
        std::vector<std::uint64_t> best_t(n + 1);
        std::vector<std::uint16_t> row(n);
        MaskCandidate local;
        const std::size_t lo = sources.size() * w / workers;
        const std::size_t hi = sources.size() * (w + 1) / workers;
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const std::uint64_t s = sources[idx];
            const std::size_t a = static_cast<std::size_t>(std::popcount(s));
            for (std::size_t v = 0; v < n; ++v)
                row[v] = static_cast<std::uint16_t>(std::popcount(adj[v] & s));
            // |E(S,T)| for every T, adding one vertex at a time.
            for (std::uint64_t t = 1; t < full; ++t)
                count[t] = static_cast<std::uint16_t>(count[t & (t - 1)] +
                                                      row[std::countr_zero(t)]);
            std::fill(best_e.begin(), best_e.end(), -1);
            // (S,T) and (T,S) share a surplus, so only T >= S is scanned.
            for (std::uint64_t t = s; t < full; ++t) {
                const std::size_t b = static_cast<std::size_t>(std::popcount(t));
                if (b > size_cap)
                    continue;
                const int e = count[t];
                if (e > best_e[b] || (e == best_e[b] && detail::mask_lex_less(t, best_t[b]))) {
                    best_e[b] = e;
                    best_t[b] = t;
                }
            }
            for (std::size_t b = 1; b <= size_cap; ++b) {
                if (best_e[b] < 0)
                    continue;
                MaskCandidate c{SurplusKey::make(best_e[b], a, b, n, d), s, best_t[b], true};
                if (better(c, local))
                    local = c;
            }
        }
        best_per_worker[w] = local;
    });

    MaskCandidate best;
    for (const auto& c : best_per_worker)
        if (better(c, best))
            best = c;

    auto pair = SetPair::make(g, VertexSet::from_mask(n, best.s), VertexSet::from_mask(n, best.t));
    cert.max_surplus_found = pair.surplus;
    cert.best_pair = pair;
    if (exceeds(pair.surplus, alpha)) {
        cert.verdict = Verdict::Violated;
        cert.witness = std::move(pair);
    } else {
        cert.verdict = Verdict::Holds;
    }
    return cert;
}

// ---------------------------------------------------------------- minimal witnesses

namespace {

struct PairState {
    VertexSet s, t;
    std::vector<std::int64_t> in_s; // |N(v) & S|
    std::vector<std::int64_t> in_t; // |N(v) & T|
    std::int64_t e = 0;

    PairState(const RegularGraph& g, const SetPair& p)
        : s(p.s), t(p.t), in_s(g.order(), 0), in_t(g.order(), 0) {
        s.for_each([&](Vertex v) {
            for (Vertex u : g.neighbors(v))
                ++in_s[u];
        });
        t.for_each([&](Vertex v) {
            for (Vertex u : g.neighbors(v))
                ++in_t[u];
        });
        s.for_each([&](Vertex v) { e += in_t[v]; });
    }
};

} // namespace

MinimalWitness minimize_witness(const RegularGraph& g, const SetPair& pair, double alpha) {
    check_alpha(alpha);
    const std::size_t n = g.order(), d = g.degree();
    const double start = density_surplus(g, pair.s, pair.t);
    if (!reaches(start, alpha))
        throw NotAWitness(start, alpha);

    PairState st(g, pair);
    for (;;) {
        // Best single removal that keeps surplus >= alpha: highest surplus,
        // then lowest vertex id, then S before T.
        bool found = false;
        bool from_s = true;
        Vertex pick = 0;
        SurplusKey pick_key;
        auto consider = [&](bool side_s, Vertex v, std::int64_t e, std::size_t a, std::size_t b) {
            const auto key = SurplusKey::make(e, a, b, n, d);
            if (!reaches(key.value(n), alpha))
                return;
            if (found) {
                const int c = compare(key, pick_key);
                if (c < 0)
                    return;
                if (c == 0 && (v > pick || (v == pick && !side_s)))
                    return;
            }
            found = true;
            from_s = side_s;
            pick = v;
            pick_key = key;
        };
        const std::size_t a = st.s.size(), b = st.t.size();
        if (a > 1)
            st.s.for_each([&](Vertex v) { consider(true, v, st.e - st.in_t[v], a - 1, b); });
        if (b > 1)
            st.t.for_each([&](Vertex v) { consider(false, v, st.e - st.in_s[v], a, b - 1); });
        if (!found)
            break;
        if (from_s) {
            st.e -= st.in_t[pick];
            st.s.erase(pick);
            for (Vertex u : g.neighbors(pick))
                --st.in_s[u];
        } else {
            st.e -= st.in_s[pick];
            st.t.erase(pick);
            for (Vertex u : g.neighbors(pick))
                --st.in_t[u];
        }
    }

    MinimalWitness w;
    w.degree_floor_s = std::numeric_limits<std::int64_t>::max();
    w.degree_floor_t = std::numeric_limits<std::int64_t>::max();
    st.s.for_each([&](Vertex v) { w.degree_floor_s = std::min(w.degree_floor_s, st.in_t[v]); });
    st.t.for_each([&](Vertex u) { w.degree_floor_t = std::min(w.degree_floor_t, st.in_s[u]); });
    w.d_min = std::min(w.degree_floor_s, w.degree_floor_t);
    w.pair = SetPair::make(g, std::move(st.s), std::move(st.t));
    return w;
}

bool is_minimal(const RegularGraph& g, const SetPair& pair, double alpha) {
    PairState st(g, pair);
    const std::size_t n = g.order(), d = g.degree();
    const std::size_t a = st.s.size(), b = st.t.size();
    bool minimal = true;
    if (a > 1)
        st.s.for_each([&](Vertex v) {
            if (reaches(surplus_value(st.e - st.in_t[v], a - 1, b, n, d), alpha))
                minimal = false;
        });
    if (b > 1)
        st.t.for_each([&](Vertex v) {
            if (reaches(surplus_value(st.e - st.in_s[v], a, b - 1, n, d), alpha))
                minimal = false;
        });
    return minimal;
}

DegreeFloorCheck check_degree_floors(const MinimalWitness& w, double alpha, std::size_t d) {
    const double a = static_cast<double>(w.pair.s.size());
    const double b = static_cast<double>(w.pair.t.size());
    DegreeFloorCheck c;
    c.bound_s = alpha / 2.0 * std::sqrt(b / a);
    c.bound_t = alpha / 2.0 * std::sqrt(a / b);
    c.bound_dmin = alpha * alpha / (4.0 * static_cast<double>(d));
    auto at_least = [](double value, double bound) {
        return value >= bound - kSurplusTolerance * std::max(1.0, bound);
    };
    c.floor_s_holds = at_least(static_cast<double>(w.degree_floor_s), c.bound_s);
    c.floor_t_holds = at_least(static_cast<double>(w.degree_floor_t), c.bound_t);
    c.dmin_holds = at_least(static_cast<double>(w.d_min), c.bound_dmin);
    return c;
}

// ---------------------------------------------------------------- conductance

ConductanceResult min_conductance_exact(const RegularGraph& g, std::size_t cap) {
    const std::size_t n = g.order();
    const std::size_t limit = std::min<std::size_t>(cap, 30);
    if (n > limit)
        throw SizeCap(n, limit);
    const auto adj = adjacency_masks(g);
    const std::int64_t d = static_cast<std::int64_t>(g.degree());

    // Walk all subsets in reflected Gray-code order, updating |delta(S)| in O(1).
    std::uint64_t s = 0;
    std::int64_t boundary = 0;
    std::int64_t best_b = 1, best_size = 0; // best ratio best_b / (d best_size); none yet
    std::uint64_t best_s = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int v = std::countr_zero(i);
        const std::uint64_t bit = std::uint64_t{1} << v;
        const std::int64_t inside = std::popcount(adj[v] & s & ~bit);
        if (s & bit) {
            s &= ~bit;
            boundary -= d - 2 * inside;
        } else {
            s |= bit;
            boundary += d - 2 * inside;
        }
        const std::int64_t size = std::popcount(s);
        if (2 * size > static_cast<std::int64_t>(n))
            continue;
        if (best_size == 0 || boundary * best_size < best_b * size ||
            (boundary * best_size == best_b * size && detail::mask_lex_less(s, best_s))) {
            best_b = boundary;
            best_size = size;
            best_s = s;
        }
    }
    ConductanceResult r;
    r.cut = VertexSet::from_mask(n, best_s);
    r.conductance = static_cast<double>(best_b) / static_cast<double>(d * best_size);
    return r;
}

} // namespace mixcert
