#pragma once

#include <vector>

#include "mixcert/graph.hpp"
#include "oracles.hpp"

namespace fixtures {

inline oracle::Edges k4() { return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}; }
inline oracle::Edges c6() { return {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}; }
inline oracle::Edges petersen() {
    return {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7},
            {3, 8}, {4, 9}, {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}};
}
inline oracle::Edges two_k4() {
    auto e = k4();
    for (auto [u, v] : k4())
        e.emplace_back(u + 4, v + 4);
    return e;
}

inline std::vector<mixcert::Edge> to_edges(const oracle::Edges& e) {
    std::vector<mixcert::Edge> out;
    for (auto [u, v] : e)
        out.emplace_back(static_cast<mixcert::Vertex>(u), static_cast<mixcert::Vertex>(v));
    return out;
}

inline oracle::Edges from_graph(const mixcert::RegularGraph& g) {
    oracle::Edges out;
    for (auto [u, v] : g.edges())
        out.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return out;
}

inline mixcert::RegularGraph make(int n, const oracle::Edges& e) {
    return mixcert::RegularGraph::from_edges(static_cast<std::size_t>(n), to_edges(e));
}

inline mixcert::VertexSet set(std::size_t n, std::initializer_list<mixcert::Vertex> ids) {
    std::vector<mixcert::Vertex> v(ids);
    return mixcert::VertexSet::from_ids(n, v);
}

} // namespace fixtures
