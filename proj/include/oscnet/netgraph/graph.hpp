#pragma once

#include <cstddef>
#include <vector>

#include "oscnet/netgraph/matrix.hpp"

namespace oscnet {

/// Weighted undirected graph. Edges carry the coupling weights used by every
/// model in the suite; the incidence orientation is fixed (lower index gets
/// +1) so outputs are reproducible.
struct GraphEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 1.0;
};

class NetworkGraph {
  public:
    NetworkGraph(std::size_t node_count, std::vector<GraphEdge> edges);

    std::size_t node_count() const { return node_count_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    /// Complete graph on n nodes with a common weight.
    static NetworkGraph complete(std::size_t n, double weight = 1.0);

  private:
    std::size_t node_count_ = 0;
    std::vector<GraphEdge> edges_;
};

/// Oriented incidence matrix: node_count x edge_count, one +1/-1 pair per
/// column. Orientation: the lower-index endpoint gets +1.
Matrix incidence(const NetworkGraph& g);

/// Weighted graph Laplacian L = E K E^T with K = diag(edge weights).
Matrix laplacian(const NetworkGraph& g);

/// Second-smallest eigenvalue of a symmetric PSD Laplacian. Rejects
/// non-symmetric input. Positive iff the graph is connected.
double algebraic_connectivity(const Matrix& lap);

}  // namespace oscnet
