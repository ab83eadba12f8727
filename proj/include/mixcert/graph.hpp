#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mixcert/errors.hpp"

namespace mixcert {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Subset of the dense vertex range [0, n), stored as a bitset.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe);

    static VertexSet full(std::size_t universe);
    static VertexSet from_ids(std::size_t universe, std::span<const Vertex> ids);
    // Low `universe` bits of `mask` (universe <= 64).
    static VertexSet from_mask(std::size_t universe, std::uint64_t mask);

    std::size_t universe() const { return universe_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
    void insert(Vertex v);
    void erase(Vertex v);
    void toggle(Vertex v);

    // Ascending member list.
    std::vector<Vertex> members() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(b)));
                bits &= bits - 1;
            }
        }
    }

    VertexSet complement() const;
    VertexSet united(const VertexSet& other) const;
    VertexSet intersected(const VertexSet& other) const;
    bool disjoint(const VertexSet& other) const;

    bool operator==(const VertexSet& other) const = default;

    // Lexicographic order of the ascending member lists; used for deterministic tie-breaks.
    static bool lex_less(const VertexSet& a, const VertexSet& b);

private:
    std::size_t universe_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Immutable simple d-regular undirected graph on vertices 0..n-1.
class RegularGraph {
public:
    // Validates regularity, symmetry and simplicity; the degree is inferred from vertex 0.
    static RegularGraph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t order() const { return n_; }
    std::size_t degree() const { return d_; }
    std::size_t edge_count() const { return n_ * d_ / 2; }

    // Sorted ascending, exactly degree() entries.
    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + static_cast<std::size_t>(v) * d_, d_};
    }
    bool adjacent(Vertex u, Vertex v) const;

    // Every edge once as (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;

private:
    RegularGraph(std::size_t n, std::size_t d, std::vector<Vertex> adjacency)
        : n_(n), d_(d), adjacency_(std::move(adjacency)) {}

    std::size_t n_;
    std::size_t d_;
    std::vector<Vertex> adjacency_;
};

inline RegularGraph build_graph(std::size_t n, std::span<const Edge> edges) {
    return RegularGraph::from_edges(n, edges);
}

// Ordered count |E(S,T)|: an edge with both ends in S and T contributes twice.
std::int64_t ordered_edge_count(const RegularGraph& g, const VertexSet& s, const VertexSet& t);

// (|E(S,T)| - d|S||T|/n) / sqrt(|S||T|). Throws EmptySet.
double density_surplus(const RegularGraph& g, const VertexSet& s, const VertexSet& t);

// Surplus from integer ingredients: edge count e, sizes a and b.
double surplus_value(std::int64_t e, std::size_t a, std::size_t b, std::size_t n, std::size_t d);

// Exactly comparable surplus (e*n - d*a*b) / (n * sqrt(a*b)).
struct SurplusKey {
    std::int64_t numerator = 0;
    std::int64_t size_product = 1;

    static SurplusKey make(std::int64_t e, std::size_t a, std::size_t b, std::size_t n,
                           std::size_t d);
    double value(std::size_t n) const;
    // Three-way exact comparison (n is common to both keys).
    friend int compare(const SurplusKey& x, const SurplusKey& y);
};

// Two vertex sets plus their cached ordered edge count and surplus.
struct SetPair {
    VertexSet s;
    VertexSet t;
    std::int64_t est = 0;
    double surplus = 0.0;

    // Recounts through ordered_edge_count. Throws EmptySet.
    static SetPair make(const RegularGraph& g, VertexSet s, VertexSet t);
};

std::int64_t edge_boundary(const RegularGraph& g, const VertexSet& s);
VertexSet neighbor_set(const RegularGraph& g, const VertexSet& s);
// |N(S) \ S|
std::int64_t vertex_boundary(const RegularGraph& g, const VertexSet& s);
// vertex_boundary / |S|. Throws EmptySet.
double vertex_expansion(const RegularGraph& g, const VertexSet& s);
// |delta(S)| / (d|S|), requires 1 <= |S| <= n/2.
double conductance_of_cut(const RegularGraph& g, const VertexSet& s);

bool is_connected(const RegularGraph& g);
bool is_bipartite(const RegularGraph& g);

// Edge-list text format: "n d" header, then "u v" lines; '#' starts a comment.
RegularGraph read_edge_list(std::istream& in);
RegularGraph load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const RegularGraph& g);
void save_edge_list(const std::string& path, const RegularGraph& g);

} // namespace mixcert
