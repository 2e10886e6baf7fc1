#pragma once

#include <utility>
#include <vector>

#include "qgnn/types.hpp"

namespace qgnn {

// Undirected graph with structural self-loops. norm_adj holds
// A~ = D^{-1/2} (I + A) D^{-1/2} in compressed row storage with
// ascending column order per row; deg holds d_i = sum_j (I + A)_ij.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // deduplicated, i < j, no self-loops
  Vector deg;
  SparseMatrix norm_adj;

  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }
};

// Builds the graph from a raw edge list. Duplicates, reversed orientations and
// self-loops in the input are tolerated; the result is symmetrized.
Graph build_graph(const std::vector<std::pair<int, int>>& edge_list, int n);

// A~ * h
Matrix spmm(const Graph& g, const Matrix& h);

// tr(M^T (I - A~) M), nonnegative up to rounding.
double laplacian_quadratic(const Graph& g, const Matrix& m);

// Dense copy of A~, for small-graph diagnostics and oracles.
Matrix dense_norm_adj(const Graph& g);

}  // namespace qgnn
