#include <algorithm>
#include <numeric>
#include <vector>

#include "mixcert/density.hpp"
#include "mixcert/parallel.hpp"
#include "mixcert/rng.hpp"
#include "mixcert/spectral.hpp"

namespace mixcert {

namespace {

// Mutable (S,T) with per-vertex neighbour counts into each side.
class SearchState {
public:
    SearchState(const RegularGraph& g)
        : g_(&g), s_(g.order()), t_(g.order()), in_s_(g.order(), 0), in_t_(g.order(), 0) {}

    const VertexSet& s() const { return s_; }
    const VertexSet& t() const { return t_; }
    std::int64_t edges() const { return e_; }
    std::int64_t in_s(Vertex v) const { return in_s_[v]; }
    std::int64_t in_t(Vertex v) const { return in_t_[v]; }

    SurplusKey key() const { return key_of(e_, s_.size(), t_.size()); }
    SurplusKey key_of(std::int64_t e, std::size_t a, std::size_t b) const {
        return SurplusKey::make(e, a, b, g_->order(), g_->degree());
    }
    bool valid() const { return !s_.empty() && !t_.empty(); }

    void toggle_s(Vertex v) {
        const bool removing = s_.contains(v);
        e_ += removing ? -in_t_[v] : in_t_[v];
        s_.toggle(v);
        for (Vertex u : g_->neighbors(v))
            in_s_[u] += removing ? -1 : 1;
    }
    void toggle_t(Vertex v) {
        const bool removing = t_.contains(v);
        e_ += removing ? -in_s_[v] : in_s_[v];
        t_.toggle(v);
        for (Vertex u : g_->neighbors(v))
            in_t_[u] += removing ? -1 : 1;
    }
    void clear() {
        s_.for_each([&](Vertex v) { toggle_s(v); });
        t_.for_each([&](Vertex v) { toggle_t(v); });
    }

private:
    const RegularGraph* g_;
    VertexSet s_, t_;
    std::vector<std::int64_t> in_s_, in_t_;
    std::int64_t e_ = 0;
};

struct Found {
    SurplusKey key;
    VertexSet s, t;
    bool valid = false;
};

bool better(const Found& x, const Found& y) {
    if (!y.valid)
        return x.valid;
    if (!x.valid)
        return false;
    const int c = compare(x.key, y.key);
    if (c != 0)
        return c > 0;
    if (x.s != y.s)
        return VertexSet::lex_less(x.s, y.s);
    return VertexSet::lex_less(x.t, y.t);
}

void offer(Found& best, const SearchState& st) {
    if (!st.valid())
        return;
    Found f{st.key(), st.s(), st.t(), true};
    if (better(f, best))
        best = std::move(f);
}

// Prefix sweeps over eigenvector orderings; returns the best pair of each sweep family.
std::vector<Found> spectral_seeds(const RegularGraph& g, std::size_t cap, std::uint64_t seed) {
    const std::size_t n = g.order();
    std::vector<Found> seeds;
    if (n < 3)
        return seeds;
    ExtremeEigenpairs pairs;
    try {
        SpectralOptions opts;
        opts.seed = seed;
        pairs = extreme_eigenpairs(g, n <= 512 ? SpectralMethod::ExactDense : SpectralMethod::Iterative,
                                   opts);
    } catch (const ConvergenceFailure&) {
        return seeds;
    }

    auto order_by = [&](const std::vector<double>& x, bool descending) {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), Vertex{0});
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return descending ? x[a] > x[b] : x[a] < x[b];
        });
        return order;
    };
    const auto second_hi = order_by(pairs.second, true);
    const auto second_lo = order_by(pairs.second, false);
    const auto small_hi = order_by(pairs.smallest, true);
    const auto small_lo = order_by(pairs.smallest, false);

    // A dense S = T cluster shows up at one end of the lambda2 vector; a dense
    // bipartite S, T pair shows up at opposite ends of the lambda_n vector.
    const std::vector<std::pair<const std::vector<Vertex>*, const std::vector<Vertex>*>> families{
        {&second_hi, &second_hi}, {&second_lo, &second_lo}, {&small_hi, &small_lo},
        {&second_hi, &second_lo}};
    const std::size_t k_max = std::min(cap, n);
    for (const auto& [s_order, t_order] : families) {
        SearchState st(g);
        Found best;
        for (std::size_t k = 0; k < k_max; ++k) {
            st.toggle_s((*s_order)[k]);
            st.toggle_t((*t_order)[k]);
            offer(best, st);
        }
        if (best.valid)
            seeds.push_back(std::move(best));
    }
    return seeds;
}

// Best T for the current S (or the reverse): sort vertices by their count
// into the fixed side and take the best prefix. Returns true on improvement.
bool best_response(SearchState& st, bool replace_t, std::size_t cap) {
    const std::size_t n = st.s().universe();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    auto weight = [&](Vertex v) { return replace_t ? st.in_s(v) : st.in_t(v); };
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return weight(a) > weight(b); });
    const std::size_t fixed = replace_t ? st.s().size() : st.t().size();
    std::int64_t prefix = 0;
    std::size_t best_k = 0;
    SurplusKey best_key = st.key();
    for (std::size_t k = 1; k <= std::min(cap, n); ++k) {
        prefix += weight(order[k - 1]);
        const auto key = replace_t ? st.key_of(prefix, fixed, k) : st.key_of(prefix, k, fixed);
        if (compare(key, best_key) > 0) {
            best_key = key;
            best_k = k;
        }
    }
    if (best_k == 0)
        return false;
    VertexSet target(n);
    for (std::size_t k = 0; k < best_k; ++k)
        target.insert(order[k]);
    const VertexSet current = replace_t ? st.t() : st.s();
    for (Vertex v = 0; v < n; ++v) {
        if (current.contains(v) != target.contains(v)) {
            if (replace_t)
                st.toggle_t(v);
            else
                st.toggle_s(v);
        }
    }
    return true;
}

// Steepest-ascent over single-vertex toggles, with best-response moves when stuck.
void local_search(SearchState& st, std::size_t cap, std::size_t steps, Found& best) {
    const std::size_t n = st.s().universe();
    for (std::size_t step = 0; step < steps; ++step) {
        const std::size_t a = st.s().size(), b = st.t().size();
        bool found = false;
        bool on_s = true;
        Vertex pick = 0;
        SurplusKey pick_key;
        auto consider = [&](bool side_s, Vertex v, const SurplusKey& key) {
            if (found && compare(key, pick_key) <= 0)
                return;
            found = true;
            on_s = side_s;
            pick = v;
            pick_key = key;
        };
        for (Vertex v = 0; v < n; ++v) {
            if (st.s().contains(v)) {
                if (a > 1)
                    consider(true, v, st.key_of(st.edges() - st.in_t(v), a - 1, b));
            } else if (a < cap) {
                consider(true, v, st.key_of(st.edges() + st.in_t(v), a + 1, b));
            }
            if (st.t().contains(v)) {
                if (b > 1)
                    consider(false, v, st.key_of(st.edges() - st.in_s(v), a, b - 1));
            } else if (b < cap) {
                consider(false, v, st.key_of(st.edges() + st.in_s(v), a, b + 1));
            }
        }
        if (found && compare(pick_key, st.key()) > 0) {
            if (on_s)
                st.toggle_s(pick);
            else
                st.toggle_t(pick);
        } else if (!best_response(st, true, cap) && !best_response(st, false, cap)) {
            break;
        }
        offer(best, st);
    }
    offer(best, st);
}

} // namespace

DensityCertificate search_witness(const RegularGraph& g, double alpha, double delta,
                                  const SearchBudget& budget, std::uint64_t seed,
                                  const DensityOptions& options) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("alpha must be a positive finite number");
    if (!(delta > 0.0) || delta > 1.0)
        throw InvalidArgument("delta must lie in (0, 1]");
    const std::size_t n = g.order();

    DensityCertificate cert;
    cert.alpha = alpha;
    cert.delta = delta;
    cert.size_cap = static_cast<std::size_t>(
        std::floor(delta * static_cast<double>(n) * (1.0 + 1e-12)));
    cert.verdict = Verdict::HoldsUpToSearch;
    cert.search.mode = SearchMode::Heuristic;
    cert.search.restarts = budget.restarts;
    cert.search.steps = budget.steps ? budget.steps : 10 * n;
    cert.search.seed = seed;
    if (cert.size_cap == 0) {
        cert.vacuous = true;
        return cert;
    }
    const std::size_t cap = cert.size_cap;

    auto seeds = spectral_seeds(g, cap, seed);
    Found best;
    for (const auto& s : seeds)
        if (better(s, best))
            best = s;

    std::vector<Found> results(budget.restarts);
    parallel_for(budget.restarts, options.threads, [&](std::size_t r) {
        SearchState st(g);
        if (r < seeds.size()) {
            seeds[r].s.for_each([&](Vertex v) { st.toggle_s(v); });
            seeds[r].t.for_each([&](Vertex v) { st.toggle_t(v); });
        } else {
            Rng rng(derive_seed(seed, r));
            const Vertex v = static_cast<Vertex>(rng.below(n));
            st.toggle_s(v);
            std::vector<Vertex> nb(g.neighbors(v).begin(), g.neighbors(v).end());
            rng.shuffle(std::span<Vertex>(nb));
            for (std::size_t i = 0; i < std::min(cap, nb.size()); ++i)
                st.toggle_t(nb[i]);
        }
        Found local;
        offer(local, st);
        local_search(st, cap, cert.search.steps, local);
        results[r] = std::move(local);
    });
    for (const auto& f : results)
        if (better(f, best))
            best = f;

    if (best.valid) {
        auto pair = SetPair::make(g, best.s, best.t);
        cert.max_surplus_found = pair.surplus;
        cert.best_pair = pair;
        if (exceeds(pair.surplus, alpha)) {
            cert.verdict = Verdict::Violated;
            cert.witness = std::move(pair);
        }
    }
    return cert;
}

} // namespace mixcert
