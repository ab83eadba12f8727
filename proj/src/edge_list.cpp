#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mixcert/graph.hpp"

namespace mixcert {

namespace {

// Strips a trailing '#' comment; returns false for lines with no content.
bool content_of(std::string& line) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
    return line.find_first_not_of(" \t\r") != std::string::npos;
}

} // namespace

RegularGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    long long n = -1, d = -1;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++line_no;
        if (!content_of(line))
            continue;
        std::istringstream fields(line);
        long long a, b;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra))
            throw ParseError(line_no, "expected two integers");
        if (n < 0) {
            if (a < 2 || b < 1)
                throw ParseError(line_no, "header must be 'n d' with n >= 2 and d >= 1");
            n = a;
            d = b;
            edges.reserve(static_cast<std::size_t>(n * d / 2));
            continue;
        }
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw ParseError(line_no, "vertex id out of range");
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    if (n < 0)
        throw ParseError(line_no, "missing 'n d' header");

    auto g = RegularGraph::from_edges(static_cast<std::size_t>(n), edges);
    if (g.degree() != static_cast<std::size_t>(d))
        throw NonRegular(0, g.degree(), static_cast<std::size_t>(d));
    return g;
}

RegularGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const RegularGraph& g) {
    out << g.order() << ' ' << g.degree() << '\n';
    for (const auto& [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

void save_edge_list(const std::string& path, const RegularGraph& g) {
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write " + path);
    write_edge_list(out, g);
}

} // namespace mixcert
