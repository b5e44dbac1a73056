#pragma once

#include "walklap/graph.hpp"

#include <cstdint>
#include <vector>

namespace walklap {

/// Dense walk-count matrices q_0..q_K for one downweight parameter mu.
struct WalkCountSequence {
  double mu = 0.0;
  std::vector<Matrix> counts;

  int max_length() const { return static_cast<int>(counts.size()) - 1; }
};

/// counts[k] = A^k.
WalkCountSequence adjacency_power_counts(const Graph& g, int max_length);

/// Backtrack-downweighted counts: q_0 = I, q_1 = A, q_2 = A^2 - mu D and
/// q_{k+1} = A q_k + mu (mu I - D) q_{k-1}. mu = 1 gives nonbacktracking counts.
WalkCountSequence btdw_counts(const Graph& g, double mu, int max_length);

/// q_k v without forming q_k.
Vector btdw_walk_apply(const Graph& g, double mu, int k, const Vector& v);

inline constexpr std::uint64_t kDefaultWalkBudget = 10'000'000;

/// Exhaustive enumeration of every walk of length <= max_length, binned by
/// (length, start, end, number of backtracking positions). Any mu can then be
/// evaluated exactly from the same table.
class WalkEnumeration {
 public:
  WalkEnumeration(const Graph& g, int max_length, std::uint64_t budget = kDefaultWalkBudget);

  /// Restricts enumeration to walks starting at `source`.
  WalkEnumeration(const Graph& g, int max_length, Index source,
                  std::uint64_t budget = kDefaultWalkBudget);

  double weight(double mu, int k, Index i, Index j) const;
  Matrix weights(double mu, int k) const;
  std::uint64_t partial_walks() const noexcept { return visited_; }

 private:
  void enumerate(const Graph& g, Index source, std::uint64_t budget);
  std::size_t slot(int k, Index i, Index j, int b) const;

  Index n_;
  int max_length_;
  std::uint64_t visited_ = 0;
  std::vector<double> table_;
};

/// Sum over walks i -> j of length k of (1 - mu)^(#backtracks).
double brute_force_walk_weight(const Graph& g, double mu, int k, Index i, Index j,
                               std::uint64_t budget = kDefaultWalkBudget);

/// Companion operator Z = [[0, I], [mu (mu I - D), A]] acting on stacked
/// vectors of length 2n.
class ZOperator {
 public:
  ZOperator(Graph g, double mu);

  Index size() const noexcept { return 2 * graph_.num_nodes(); }
  double mu() const noexcept { return mu_; }
  const Graph& graph() const noexcept { return graph_; }

  void apply(const Vector& x, Vector& y) const;
  Vector operator()(const Vector& x) const;

  /// Dense 2n x 2n matrix, subject to the dense limit on n.
  Matrix dense() const;

 private:
  Graph graph_;
  double mu_;
};

Vector z_apply(const ZOperator& z, const Vector& v);

void require_mu(double mu);

}  // namespace walklap
