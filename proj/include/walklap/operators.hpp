#pragma once

#include "walklap/coefficients.hpp"
#include "walklap/krylov.hpp"
#include "walklap/spectral.hpp"

#include <memory>
#include <string>

namespace walklap {

enum class Family { Standard, KWalk, WalkTransformed, Btdw, KPath };

const char* to_string(Family f) noexcept;

struct OperatorOptions {
  KrylovOptions krylov{1e-13, 400};
  SolveOptions solve{1e-13, 20000};
  PowerOptions power{};
  /// Route mu = 0 through the companion-operator formulas instead of the
  /// adjacency ones. Only useful to test the general path.
  bool companion_at_mu_zero = false;
};

/// Edge weights of the k-path Laplacian: t_k = k^-beta or exp(-beta k).
struct KPathWeights {
  enum class Kind { PowerLaw, Exponential } kind = Kind::Exponential;
  double beta = 1.0;

  double operator()(Index k) const;
};

/// Deformed Laplacian I - alpha A + alpha^2 mu (D - mu I); mu = 1 gives
/// I - alpha A - alpha^2 (I - D).
SparseMatrix deformed_laplacian(const Graph& g, double alpha, double mu = 1.0);

/// sum_k t_k L_k where L_k couples nodes at distance exactly k. Pairs in
/// different components contribute nothing.
Matrix k_path_transformed_build(const Graph& g, const KPathWeights& weights);

/// Matrix-free symmetric Laplacian M = diag(t) - Phi, where Phi is the walk
/// matrix function of the family and t = Phi 1 its total communicability.
/// Immutable once built; apply is reentrant.
class LaplacianOperator {
 public:
  static LaplacianOperator standard(Graph g);
  /// diag(q_k 1) - q_k with BTDW counts q_k (mu = 0: adjacency powers).
  static LaplacianOperator k_walk(Graph g, int k, double mu = 0.0);
  static LaplacianOperator walk_transformed(Graph g, const CoefficientFunction& f,
                                            const OperatorOptions& opts = {});
  static LaplacianOperator btdw(Graph g, double mu, const CoefficientFunction& f,
                                const OperatorOptions& opts = {});
  static LaplacianOperator k_path(Graph g, const KPathWeights& weights);

  Family family() const noexcept;
  Index size() const noexcept;
  const Graph& graph() const noexcept;
  double mu() const noexcept;
  int k() const noexcept;
  /// The coefficient function with any automatic parameter resolved.
  const CoefficientFunction* function() const noexcept;
  /// Total communicability t = Phi 1, c_0 included.
  const Vector& shift() const noexcept;
  /// Spectral radius that governed parameter choice (rho(A) or rho(Z)); 0 if unused.
  double governing_radius() const noexcept;

  void apply(const Vector& v, Vector& out) const;
  Vector apply(const Vector& v) const;
  /// Phi v.
  Vector phi_apply(const Vector& v) const;

  /// Dense matrix by applying to basis vectors (columns in parallel).
  Matrix materialize() const;
  /// Same, single-threaded.
  Matrix materialize_serial() const;
  /// Exact diagonal t_i - Phi_ii.
  Vector diagonal() const;

  LinearOperator as_linear_operator() const;
  std::string describe() const;

  struct Impl;

 private:
  explicit LaplacianOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

LaplacianOperator standard_operator(const Graph& g);

/// Convenience forms of the individual applies.
Vector standard_apply(const Graph& g, const Vector& v);
Vector k_walk_apply(const Graph& g, int k, double mu, const Vector& v);
Vector walk_transformed_apply(const Graph& g, const CoefficientFunction& f, const Vector& v);
Vector btdw_transformed_apply(const Graph& g, double mu, const CoefficientFunction& f,
                              const Vector& v);

Vector laplacian_diagonal(const LaplacianOperator& op);
Matrix materialize(const LaplacianOperator& op);
SymmetricEigen dense_spectrum(const LaplacianOperator& op);

}  // namespace walklap
