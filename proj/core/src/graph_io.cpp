#include "dgc/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dgc {

namespace {

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Graph read_edge_list(std::istream& in, NodeId n_hint) {
    std::vector<WeightedEdge> edges;
    NodeId max_node = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(strip_comment(line));
        long long u, v;
        double w;
        if (!(ss >> u)) continue;  // blank or comment-only line
        if (!(ss >> v >> w)) {
            throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                     ": expected 'u v w'");
        }
        if (u < 0 || v < 0) {
            throw std::runtime_error("edge list line " + std::to_string(lineno) +
                                     ": negative node index");
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
        max_node = std::max({max_node, static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    NodeId n = edges.empty() ? n_hint : std::max<NodeId>(max_node + 1, n_hint);
    return Graph(n, std::move(edges));
}

Graph read_edge_list_file(const std::string& path, NodeId n_hint) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return read_edge_list(in, n_hint);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# n=" << g.node_count() << " m=" << g.edge_count() << "\n";
    char buf[96];
    for (const auto& e : g.edges()) {
        std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", e.u, e.v, e.w);
        out << buf;
    }
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    write_edge_list(out, g);
}

}  // namespace dgc
