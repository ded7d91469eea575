#include "oscnet/netgraph/graph.hpp"

#include <stdexcept>
#include <utility>

namespace oscnet {

NetworkGraph::NetworkGraph(std::size_t node_count, std::vector<GraphEdge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    if (node_count_ == 0) throw std::invalid_argument("NetworkGraph: node_count must be > 0");
    for (auto& e : edges_) {
        if (e.i == e.j) throw std::invalid_argument("NetworkGraph: self-loop");
        if (e.i >= node_count_ || e.j >= node_count_)
            throw std::invalid_argument("NetworkGraph: node index out of range");
        if (e.weight < 0.0) throw std::invalid_argument("NetworkGraph: negative weight");
        if (e.i > e.j) std::swap(e.i, e.j);
    }
}

NetworkGraph NetworkGraph::complete(std::size_t n, double weight) {
    std::vector<GraphEdge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, weight});
    return NetworkGraph(n, std::move(edges));
}

Matrix incidence(const NetworkGraph& g) {
    const auto& edges = g.edges();
    Matrix e(g.node_count(), edges.size());
    for (std::size_t c = 0; c < edges.size(); ++c) {
        e(edges[c].i, c) = 1.0;
        e(edges[c].j, c) = -1.0;
    }
    return e;
}

Matrix laplacian(const NetworkGraph& g) {
    Matrix l(g.node_count(), g.node_count());
    for (const auto& e : g.edges()) {
        l(e.i, e.i) += e.weight;
        l(e.j, e.j) += e.weight;
        l(e.i, e.j) -= e.weight;
        l(e.j, e.i) -= e.weight;
    }
    return l;
}

double algebraic_connectivity(const Matrix& lap) {
    if (!lap.is_symmetric(1e-9 * std::max(1.0, lap.max_abs())))
        throw std::invalid_argument("algebraic_connectivity: matrix must be symmetric");
    if (lap.rows() < 2) return 0.0;
    auto ev = symmetric_eigenvalues(lap);
    return ev[1];
}

}  // namespace oscnet
