#include "qgnn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qgnn {

Graph build_graph(const std::vector<std::pair<int, int>>& edge_list, int n) {
  require(n > 0, "build_graph: empty graph (n = 0)");

  std::set<std::pair<int, int>> uniq;
  for (const auto& [u, v] : edge_list) {
    require(u >= 0 && u < n && v >= 0 && v < n,
            "build_graph: node id out of range [0, n): (" + std::to_string(u) + ", " +
                std::to_string(v) + ")");
    if (u == v) continue;  // self-loops are structural, not part of E
    uniq.emplace(std::min(u, v), std::max(u, v));
  }

  Graph g;
  g.n = n;
  g.edges.assign(uniq.begin(), uniq.end());

  g.deg = Vector::Ones(n);  // the self-loop from A^ = I + A
  for (const auto& [u, v] : g.edges) {
    g.deg(u) += 1.0;
    g.deg(v) += 1.0;
  }

  Vector inv_sqrt = g.deg.array().rsqrt();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n + 2 * g.edges.size());
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, inv_sqrt(i) * inv_sqrt(i));
  for (const auto& [u, v] : g.edges) {
    const double w = inv_sqrt(u) * inv_sqrt(v);
    trip.emplace_back(u, v, w);
    trip.emplace_back(v, u, w);
  }
  g.norm_adj.resize(n, n);
  g.norm_adj.setFromTriplets(trip.begin(), trip.end());
  g.norm_adj.makeCompressed();
  return g;
}

Matrix spmm(const Graph& g, const Matrix& h) {
  require(h.rows() == g.n, "spmm: h.rows() != graph node count");
  return g.norm_adj * h;
}

double laplacian_quadratic(const Graph& g, const Matrix& m) {
  require(m.rows() == g.n, "laplacian_quadratic: m.rows() != graph node count");
  // tr(M^T (I - A~) M) = <M, M - A~ M>
  Matrix lm = m - g.norm_adj * m;
  return m.cwiseProduct(lm).sum();
}

Matrix dense_norm_adj(const Graph& g) { return Matrix(g.norm_adj); }

}  // namespace qgnn
