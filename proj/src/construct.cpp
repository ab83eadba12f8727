#include "mixcert/construct.hpp"

#include <algorithm>
#include <numeric>

#include "mixcert/rng.hpp"
#include "mixcert/spectral.hpp"

namespace mixcert {

std::string_view to_string(PlantedFamily f) {
    return f == PlantedFamily::Expander ? "planted-expander" : "planted-ssve";
}

std::string_view to_string(Grade g) {
    switch (g) {
    case Grade::Exact:
        return "exact";
    case Grade::Spectral:
        return "spectral";
    case Grade::Sampled:
        return "sampled";
    case Grade::Heuristic:
        return "heuristic";
    case Grade::Unverified:
        return "unverified";
    }
    return "unknown";
}

PlantedFamily planted_family_from_string(std::string_view s) {
    if (s == "planted-expander")
        return PlantedFamily::Expander;
    if (s == "planted-ssve")
        return PlantedFamily::SmallSetVertexExpander;
    throw InvalidArgument("unknown planted family '" + std::string(s) + "'");
}

namespace {

// Points of the pairing model: `owner[i]` is the vertex of point i.
// Draws pairs of points uniformly until every point is matched; a pair is
// accepted only if it keeps the graph simple. When random draws keep failing
// the remaining admissible pairs are listed and one is drawn among them; with
// none left the attempt is abandoned.
template <typename Admissible, typename Accept>
bool pair_points(std::vector<Vertex>& left, std::vector<Vertex>& right, bool same_side, Rng& rng,
                 Admissible&& admissible, Accept&& accept) {
    constexpr int kBlindTries = 64;
    while (!left.empty()) {
        bool placed = false;
        for (int attempt = 0; attempt < kBlindTries && !placed; ++attempt) {
            const std::size_t i = rng.below(left.size());
            std::size_t j = rng.below(right.size());
            if (same_side && i == j)
                continue;
            if (!admissible(left[i], right[j]))
                continue;
            accept(left[i], right[j]);
            // Remove the larger index first so the smaller stays valid.
            if (same_side) {
                const std::size_t hi = std::max(i, j), lo = std::min(i, j);
                left[hi] = left.back();
                left.pop_back();
                left[lo] = left.back();
                left.pop_back();
            } else {
                left[i] = left.back();
                left.pop_back();
                right[j] = right.back();
                right.pop_back();
            }
            placed = true;
        }
        if (placed)
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = same_side ? i + 1 : 0; j < right.size(); ++j)
                if (admissible(left[i], right[j]))
                    options.emplace_back(i, j);
        if (options.empty())
            return false;
        const auto [i, j] = options[rng.below(options.size())];
        accept(left[i], right[j]);
        if (same_side) {
            left[j] = left.back();
            left.pop_back();
            left[i] = left.back();
            left.pop_back();
        } else {
            left[i] = left.back();
            left.pop_back();
            right[j] = right.back();
            right.pop_back();
        }
    }
    return true;
}

bool has(const std::vector<std::vector<Vertex>>& adj, Vertex u, Vertex v) {
    const auto& a = adj[u];
    return std::find(a.begin(), a.end(), v) != a.end();
}

std::vector<Edge> random_regular_edges(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (d == 0)
        return {};
    if (2 * d > n - 1) {
        // Complement of a random (n-1-d)-regular graph.
        const auto sparse = random_regular_edges(n, n - 1 - d, seed);
        std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
        for (const auto& [u, v] : sparse)
            present[u][v] = present[v][u] = true;
        std::vector<Edge> out;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (!present[u][v])
                    out.emplace_back(u, v);
        return out;
    }
    Rng rng(seed);
    for (std::size_t attempt = 0; attempt < kGenerationRetries; ++attempt) {
        std::vector<std::vector<Vertex>> adj(n);
        std::vector<Vertex> points;
        points.reserve(n * d);
        for (Vertex v = 0; v < n; ++v)
            points.insert(points.end(), d, v);
        std::vector<Edge> edges;
        const bool ok = pair_points(
            points, points, true, rng,
            [&](Vertex u, Vertex v) { return u != v && !has(adj, u, v); },
            [&](Vertex u, Vertex v) {
                adj[u].push_back(v);
                adj[v].push_back(u);
                edges.emplace_back(std::min(u, v), std::max(u, v));
            });
        if (ok) {
            std::sort(edges.begin(), edges.end());
            return edges;
        }
    }
    throw GenerationFailure(kGenerationRetries);
}

} // namespace

RegularGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n < 2 || d < 1 || d >= n)
        throw InvalidArgument("random_regular needs n >= 2 and 1 <= d < n");
    if ((n * d) % 2 != 0)
        throw InvalidArgument("n * d must be even (n = " + std::to_string(n) +
                              ", d = " + std::to_string(d) + ")");
    const auto edges = random_regular_edges(n, d, seed);
    return RegularGraph::from_edges(n, edges);
}

std::vector<Edge> bipartite_regular(std::size_t size_s, std::size_t size_t, std::size_t degree,
                                    std::uint64_t seed) {
    if (size_s != size_t)
        throw InvalidArgument("bipartite_regular needs equal sides");
    if (degree > size_s)
        throw InvalidArgument("bipartite degree exceeds the side size");
    const std::size_t m = size_s;
    std::vector<Edge> out;
    if (degree == 0)
        return out;
    if (2 * degree > m) {
        const auto sparse = bipartite_regular(m, m, m - degree, seed);
        std::vector<std::vector<bool>> present(m, std::vector<bool>(m, false));
        for (const auto& [i, j] : sparse)
            present[i][j] = true;
        for (Vertex i = 0; i < m; ++i)
            for (Vertex j = 0; j < m; ++j)
                if (!present[i][j])
                    out.emplace_back(i, j);
        return out;
    }
    Rng rng(seed);
    for (std::size_t attempt = 0; attempt < kGenerationRetries; ++attempt) {
        std::vector<std::vector<Vertex>> adj(m);
        std::vector<Vertex> left, right;
        for (Vertex v = 0; v < m; ++v) {
            left.insert(left.end(), degree, v);
            right.insert(right.end(), degree, v);
        }
        out.clear();
        const bool ok = pair_points(
            left, right, false, rng, [&](Vertex i, Vertex j) { return !has(adj, i, j); },
            [&](Vertex i, Vertex j) {
                adj[i].push_back(j);
                out.emplace_back(i, j);
            });
        if (ok) {
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    throw GenerationFailure(kGenerationRetries);
}

// ---------------------------------------------------------------- planted instances

std::optional<std::string> planted_structure_violation(const RegularGraph& g, const VertexSet& s,
                                                       const VertexSet& t) {
    const std::size_t n = g.order(), d = g.degree();
    if (d % 2 != 0)
        return "degree is odd";
    if (s.size() != t.size() || s.size() * (d + 2) != n)
        return "|S| and |T| must both equal n/(d+2)";
    if (!s.disjoint(t))
        return "S and T intersect";
    const VertexSet st = s.united(t);
    std::vector<int> hits(n, 0);
    std::optional<std::string> problem;
    st.for_each([&](Vertex v) {
        const VertexSet& other = s.contains(v) ? t : s;
        std::size_t cross = 0, outside = 0;
        for (Vertex u : g.neighbors(v)) {
            if (other.contains(u))
                ++cross;
            else if (!st.contains(u)) {
                ++outside;
                ++hits[u];
            }
        }
        if (!problem && (cross != d / 2 || outside != d / 2))
            problem = "vertex " + std::to_string(v) + " has " + std::to_string(cross) +
                      " cross edges and " + std::to_string(outside) + " edges into R";
    });
    if (problem)
        return problem;
    for (Vertex v = 0; v < n; ++v) {
        if (st.contains(v))
            continue;
        if (hits[v] != 1)
            return "R vertex " + std::to_string(v) + " receives " + std::to_string(hits[v]) +
                   " edges from S u T";
        std::size_t inner = 0;
        for (Vertex u : g.neighbors(v))
            inner += !st.contains(u);
        if (inner != d - 1)
            return "R vertex " + std::to_string(v) + " has inner degree " + std::to_string(inner);
    }
    return std::nullopt;
}

namespace {

InnerCertificate certify_inner(const RegularGraph& g, const VertexSet& s, const VertexSet& t,
                               PlantedFamily family, std::uint64_t seed) {
    const std::size_t n = g.order(), d = g.degree();
    const VertexSet st = s.united(t);
    std::vector<Vertex> local(n, 0);
    std::vector<Vertex> ids;
    for (Vertex v = 0; v < n; ++v)
        if (!st.contains(v)) {
            local[v] = static_cast<Vertex>(ids.size());
            ids.push_back(v);
        }
    std::vector<Edge> edges;
    for (Vertex v : ids)
        for (Vertex u : g.neighbors(v))
            if (!st.contains(u) && v < u)
                edges.emplace_back(local[v], local[u]);
    const auto inner = RegularGraph::from_edges(ids.size(), edges);

    SpectralOptions opts;
    opts.seed = seed;
    const auto sum = spectrum(inner, inner.order() <= 1024 ? SpectralMethod::ExactDense
                                                           : SpectralMethod::Iterative,
                              opts);
    InnerCertificate c;
    c.lambda2 = sum.lambda2;
    c.lambda = sum.lambda;
    c.cheeger_lower = (1.0 - sum.lambda2) / 2.0;
    c.expansion_cap = d * n / ((d + 2) * (d - 1));
    if (c.expansion_cap >= 1)
        c.tanner_at_cap = tanner_bound(sum.lambda, std::min(c.expansion_cap, inner.order()),
                                       inner.order());
    c.certified = family == PlantedFamily::Expander
                      ? c.cheeger_lower >= 0.5
                      : c.tanner_at_cap >= static_cast<double>(d) / 2.0;
    return c;
}

PlantedInstance build_planted(std::size_t n, std::size_t d, std::uint64_t seed,
                              PlantedFamily family) {
    if (d % 2 != 0)
        throw OddDegree(d);
    const std::size_t min_degree = family == PlantedFamily::Expander ? 4 : 8;
    if (d < min_degree)
        throw InvalidArgument(std::string(to_string(family)) + " needs d >= " +
                              std::to_string(min_degree));
    if (n % (d + 2) != 0)
        throw Divisibility(n, d + 2);
    const std::size_t k = n / (d + 2);
    if (k < d / 2)
        throw InvalidArgument("n/(d+2) = " + std::to_string(k) +
                              " is too small to carry d/2 cross edges per vertex");
    const std::size_t r = n - 2 * k;

    std::vector<Edge> edges;
    edges.reserve(n * d / 2);
    for (const auto& [i, j] : bipartite_regular(k, k, d / 2, derive_seed(seed, 1)))
        edges.emplace_back(i, static_cast<Vertex>(k + j));
    for (const auto& [u, v] : random_regular(r, d - 1, derive_seed(seed, 2)).edges())
        edges.emplace_back(static_cast<Vertex>(2 * k + u), static_cast<Vertex>(2 * k + v));

    // Each S u T vertex owns d/2 slots; a random bijection maps slots onto R.
    std::vector<Vertex> targets(r);
    std::iota(targets.begin(), targets.end(), static_cast<Vertex>(2 * k));
    Rng rng(derive_seed(seed, 3));
    rng.shuffle(std::span<Vertex>(targets));
    std::size_t slot = 0;
    for (Vertex v = 0; v < 2 * k; ++v)
        for (std::size_t j = 0; j < d / 2; ++j)
            edges.emplace_back(v, targets[slot++]);

    auto g = RegularGraph::from_edges(n, edges);
    VertexSet s(n), t(n);
    for (Vertex v = 0; v < k; ++v) {
        s.insert(v);
        t.insert(static_cast<Vertex>(k + v));
    }
    if (auto problem = planted_structure_violation(g, s, t))
        throw Error("planted construction broke an invariant: " + *problem);
    const auto inner = certify_inner(g, s, t, family, seed);
    return PlantedInstance{std::move(g), std::move(s), std::move(t), n, d, seed, family, inner,
                           std::nullopt};
}

} // namespace

PlantedInstance planted_expander(std::size_t n, std::size_t d, std::uint64_t seed) {
    return build_planted(n, d, seed, PlantedFamily::Expander);
}

PlantedInstance planted_ssve(std::size_t n, std::size_t d, std::uint64_t seed) {
    return build_planted(n, d, seed, PlantedFamily::SmallSetVertexExpander);
}

PlantedInstance adopt_planted(RegularGraph g, VertexSet s, VertexSet t, PlantedFamily family,
                              std::uint64_t seed) {
    if (s.universe() != g.order() || t.universe() != g.order())
        throw InvalidArgument("planted sets do not match the graph size");
    if (auto problem = planted_structure_violation(g, s, t))
        throw InvalidArgument("not a planted instance: " + *problem);
    const std::size_t n = g.order(), d = g.degree();
    const auto inner = certify_inner(g, s, t, family, seed);
    return PlantedInstance{std::move(g), std::move(s), std::move(t), n, d, seed, family, inner,
                           std::nullopt};
}

bool density_at_least(std::int64_t e, std::size_t a, std::size_t b, std::size_t n, std::size_t d,
                      std::int64_t c_num, std::int64_t c_den) {
    using i128 = __int128;
    const i128 lhs = static_cast<i128>(c_den) *
                     (static_cast<i128>(e) * static_cast<i128>(n) -
                      static_cast<i128>(d) * static_cast<i128>(a) * static_cast<i128>(b));
    if (lhs < 0)
        return c_num <= 0 && lhs * lhs <= static_cast<i128>(c_num) * c_num * static_cast<i128>(n) *
                                                static_cast<i128>(n) * static_cast<i128>(a) *
                                                static_cast<i128>(b);
    if (c_num <= 0)
        return true;
    return lhs * lhs >= static_cast<i128>(c_num) * c_num * static_cast<i128>(n) *
                            static_cast<i128>(n) * static_cast<i128>(a) * static_cast<i128>(b);
}

} // namespace mixcert
