#include "mixcert/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>

namespace mixcert {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe), size_(0), words_((universe + 63) / 64, 0) {}

VertexSet VertexSet::full(std::size_t universe) {
    VertexSet s(universe);
    for (std::size_t w = 0; w < s.words_.size(); ++w) {
        const std::size_t lo = w * 64;
        const std::size_t bits = std::min<std::size_t>(64, universe - lo);
        s.words_[w] = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    }
    s.size_ = universe;
    return s;
}

VertexSet VertexSet::from_ids(std::size_t universe, std::span<const Vertex> ids) {
    VertexSet s(universe);
    for (Vertex v : ids) {
        if (v >= universe)
            throw InvalidArgument("vertex id " + std::to_string(v) + " out of range");
        s.insert(v);
    }
    return s;
}

VertexSet VertexSet::from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe > 64)
        throw InvalidArgument("from_mask supports at most 64 vertices");
    VertexSet s(universe);
    if (universe < 64)
        mask &= (std::uint64_t{1} << universe) - 1;
    if (!s.words_.empty())
        s.words_[0] = mask;
    s.size_ = static_cast<std::size_t>(std::popcount(mask));
    return s;
}

void VertexSet::insert(Vertex v) {
    std::uint64_t& w = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (!(w & bit)) {
        w |= bit;
        ++size_;
    }
}

void VertexSet::erase(Vertex v) {
    std::uint64_t& w = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (w & bit) {
        w &= ~bit;
        --size_;
    }
}

void VertexSet::toggle(Vertex v) {
    if (contains(v))
        erase(v);
    else
        insert(v);
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(size_);
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

VertexSet VertexSet::complement() const {
    VertexSet full_set = full(universe_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        full_set.words_[w] &= ~words_[w];
    full_set.size_ = universe_ - size_;
    return full_set;
}

VertexSet VertexSet::united(const VertexSet& other) const {
    VertexSet out(universe_);
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        out.words_[w] = words_[w] | other.words_[w];
        count += static_cast<std::size_t>(std::popcount(out.words_[w]));
    }
    out.size_ = count;
    return out;
}

VertexSet VertexSet::intersected(const VertexSet& other) const {
    VertexSet out(universe_);
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        out.words_[w] = words_[w] & other.words_[w];
        count += static_cast<std::size_t>(std::popcount(out.words_[w]));
    }
    out.size_ = count;
    return out;
}

bool VertexSet::disjoint(const VertexSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & other.words_[w])
            return false;
    return true;
}

bool VertexSet::lex_less(const VertexSet& a, const VertexSet& b) {
    const auto ma = a.members();
    const auto mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

// ---------------------------------------------------------------- RegularGraph

RegularGraph RegularGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
    if (n < 2)
        throw InvalidArgument("a graph needs at least 2 vertices");
    std::vector<std::vector<Vertex>> lists(n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw InvalidArgument("edge endpoint out of range: " + std::to_string(u) + " " +
                                  std::to_string(v));
        if (u == v)
            throw SelfLoop(u);
        lists[u].push_back(v);
        lists[v].push_back(u);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto& list = lists[v];
        std::sort(list.begin(), list.end());
        auto dup = std::adjacent_find(list.begin(), list.end());
        if (dup != list.end())
            throw DuplicateEdge(std::min(v, *dup), std::max(v, *dup));
    }
    const std::size_t d = lists[0].size();
    for (Vertex v = 0; v < n; ++v)
        if (lists[v].size() != d)
            throw NonRegular(v, lists[v].size(), d);
    if (d == 0)
        throw InvalidArgument("degree must be at least 1");

    std::vector<Vertex> flat;
    flat.reserve(n * d);
    for (const auto& list : lists)
        flat.insert(flat.end(), list.begin(), list.end());
    return RegularGraph(n, d, std::move(flat));
}

bool RegularGraph::adjacent(Vertex u, Vertex v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> RegularGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

// ---------------------------------------------------------------- counting

std::int64_t ordered_edge_count(const RegularGraph& g, const VertexSet& s, const VertexSet& t) {
    // Symmetric in (S,T); walk the smaller side.
    const VertexSet& small = s.size() <= t.size() ? s : t;
    const VertexSet& large = s.size() <= t.size() ? t : s;
    std::int64_t count = 0;
    small.for_each([&](Vertex u) {
        for (Vertex v : g.neighbors(u))
            count += large.contains(v);
    });
    return count;
}

double surplus_value(std::int64_t e, std::size_t a, std::size_t b, std::size_t n, std::size_t d) {
    const auto key = SurplusKey::make(e, a, b, n, d);
    return key.value(n);
}

SurplusKey SurplusKey::make(std::int64_t e, std::size_t a, std::size_t b, std::size_t n,
                            std::size_t d) {
    SurplusKey k;
    k.numerator = e * static_cast<std::int64_t>(n) -
                  static_cast<std::int64_t>(d) * static_cast<std::int64_t>(a) *
                      static_cast<std::int64_t>(b);
    k.size_product = static_cast<std::int64_t>(a) * static_cast<std::int64_t>(b);
    return k;
}

double SurplusKey::value(std::size_t n) const {
    return static_cast<double>(numerator) /
           (static_cast<double>(n) * std::sqrt(static_cast<double>(size_product)));
}

int compare(const SurplusKey& x, const SurplusKey& y) {
    const int sx = (x.numerator > 0) - (x.numerator < 0);
    const int sy = (y.numerator > 0) - (y.numerator < 0);
    if (sx != sy)
        return sx < sy ? -1 : 1;
    if (sx == 0)
        return 0;
    // Same sign: compare numerator^2 / size_product, flipped for negatives.
    int magnitude;
    const std::uint64_t ax = static_cast<std::uint64_t>(std::llabs(x.numerator));
    const std::uint64_t ay = static_cast<std::uint64_t>(std::llabs(y.numerator));
    constexpr std::uint64_t limit = std::uint64_t{1} << 40;
    if (ax < limit && ay < limit && static_cast<std::uint64_t>(x.size_product) < limit &&
        static_cast<std::uint64_t>(y.size_product) < limit) {
        using u128 = unsigned __int128;
        const u128 lhs = static_cast<u128>(ax) * ax * static_cast<std::uint64_t>(y.size_product);
        const u128 rhs = static_cast<u128>(ay) * ay * static_cast<std::uint64_t>(x.size_product);
        magnitude = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    } else {
        const long double lhs = static_cast<long double>(ax) / std::sqrt(static_cast<long double>(x.size_product));
        const long double rhs = static_cast<long double>(ay) / std::sqrt(static_cast<long double>(y.size_product));
        magnitude = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    return sx > 0 ? magnitude : -magnitude;
}

double density_surplus(const RegularGraph& g, const VertexSet& s, const VertexSet& t) {
    if (s.empty() || t.empty())
        throw EmptySet();
    return surplus_value(ordered_edge_count(g, s, t), s.size(), t.size(), g.order(), g.degree());
}

SetPair SetPair::make(const RegularGraph& g, VertexSet s, VertexSet t) {
    if (s.empty() || t.empty())
        throw EmptySet();
    SetPair p;
    p.est = ordered_edge_count(g, s, t);
    p.surplus = surplus_value(p.est, s.size(), t.size(), g.order(), g.degree());
    p.s = std::move(s);
    p.t = std::move(t);
    return p;
}

std::int64_t edge_boundary(const RegularGraph& g, const VertexSet& s) {
    std::int64_t count = 0;
    s.for_each([&](Vertex u) {
        for (Vertex v : g.neighbors(u))
            count += !s.contains(v);
    });
    return count;
}

VertexSet neighbor_set(const RegularGraph& g, const VertexSet& s) {
    VertexSet out(g.order());
    s.for_each([&](Vertex u) {
        for (Vertex v : g.neighbors(u))
            out.insert(v);
    });
    return out;
}

std::int64_t vertex_boundary(const RegularGraph& g, const VertexSet& s) {
    VertexSet outside(g.order());
    s.for_each([&](Vertex u) {
        for (Vertex v : g.neighbors(u))
            if (!s.contains(v))
                outside.insert(v);
    });
    return static_cast<std::int64_t>(outside.size());
}

double vertex_expansion(const RegularGraph& g, const VertexSet& s) {
    if (s.empty())
        throw EmptySet();
    return static_cast<double>(vertex_boundary(g, s)) / static_cast<double>(s.size());
}

double conductance_of_cut(const RegularGraph& g, const VertexSet& s) {
    if (s.empty() || 2 * s.size() > g.order())
        throw SizeOutOfRange("cut size " + std::to_string(s.size()) + " outside [1, n/2]");
    return static_cast<double>(edge_boundary(g, s)) /
           static_cast<double>(g.degree() * s.size());
}

// ---------------------------------------------------------------- structure

namespace {

// BFS 2-colouring of every component; returns the number of components
// and whether all of them are bipartite.
std::pair<std::size_t, bool> colour_components(const RegularGraph& g) {
    const std::size_t n = g.order();
    std::vector<int> colour(n, -1);
    std::size_t components = 0;
    bool bipartite = true;
    std::queue<Vertex> frontier;
    for (Vertex root = 0; root < n; ++root) {
        if (colour[root] != -1)
            continue;
        ++components;
        colour[root] = 0;
        frontier.push(root);
        while (!frontier.empty()) {
            const Vertex u = frontier.front();
            frontier.pop();
            for (Vertex v : g.neighbors(u)) {
                if (colour[v] == -1) {
                    colour[v] = 1 - colour[u];
                    frontier.push(v);
                } else if (colour[v] == colour[u]) {
                    bipartite = false;
                }
            }
        }
    }
    return {components, bipartite};
}

} // namespace

bool is_connected(const RegularGraph& g) { return colour_components(g).first == 1; }

bool is_bipartite(const RegularGraph& g) { return colour_components(g).second; }

} // namespace mixcert
