#pragma once

#include "walklap/common.hpp"

#include <cstdint>
#include <istream>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace walklap {

using Edge = std::pair<Index, Index>;

/// Simple undirected unweighted graph in compressed sparse row form.
///
/// The adjacency structure is symmetric, free of self-loops and duplicates, and
/// every neighbor list is sorted. Storage is shared and immutable, so copies
/// are cheap and safe to hand to concurrent readers.
class Graph {
 public:
  Graph();

  /// Builds a simplified graph from an arbitrary edge list: self-loops are
  /// dropped, duplicates collapsed and every edge symmetrized.
  static Graph from_edges(Index num_nodes, std::span<const Edge> edges);

  Index num_nodes() const noexcept { return n_; }
  Index num_edges() const noexcept { return static_cast<Index>(col_idx_->size()) / 2; }

  std::span<const Index> row_ptr() const noexcept { return *row_ptr_; }
  std::span<const Index> col_idx() const noexcept { return *col_idx_; }
  std::span<const Index> neighbors(Index i) const noexcept {
    const auto& rp = *row_ptr_;
    return {col_idx_->data() + rp[i], static_cast<std::size_t>(rp[i + 1] - rp[i])};
  }

  Index degree(Index i) const noexcept { return (*row_ptr_)[i + 1] - (*row_ptr_)[i]; }
  Index max_degree() const noexcept { return max_degree_; }

  /// Degree vector as doubles; the numeric kernels consume it directly.
  const Vector& degrees() const noexcept { return *degrees_; }

  bool has_edge(Index i, Index j) const;
  std::vector<Edge> edges() const;

  /// Dense 0/1 adjacency matrix. Subject to the dense limit.
  Matrix dense_adjacency() const;

 private:
  Index n_ = 0;
  Index max_degree_ = 0;
  std::shared_ptr<const std::vector<Index>> row_ptr_;
  std::shared_ptr<const std::vector<Index>> col_idx_;
  std::shared_ptr<const Vector> degrees_;
};

/// Integer degree per node; d[i] is the length of row i.
using DegreeVector = std::vector<Index>;
DegreeVector degree_vector(const Graph& g);

enum class GraphFormat { MatrixMarket, EdgeList };

/// Parses a graph and simplifies it. Matrix Market is 1-based, edge lists are
/// 0-based. Numeric values only signal edge presence.
Graph load_graph(std::istream& in, GraphFormat format);

/// Loads from disk; ".mtx" selects Matrix Market, anything else an edge list.
Graph load_graph_file(const std::string& path);

struct ComponentResult {
  Graph graph;
  /// old_to_new[i] is the new label of node i, or -1 if it was dropped.
  std::vector<Index> old_to_new;
  std::vector<Index> new_to_old;
};

/// Induced subgraph on the largest connected component. Ties go to the
/// component holding the smallest node index.
ComponentResult largest_component(const Graph& g);

/// Component label per node (labels ordered by smallest member).
std::vector<Index> component_labels(const Graph& g);
Index count_components(const Graph& g);

using Distance = std::size_t;
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

std::vector<Distance> bfs_distances(const Graph& g, Index source);

/// Uniform random labeled tree via a Prufer sequence.
Graph random_tree(Index n, std::uint64_t seed);

}  // namespace walklap
