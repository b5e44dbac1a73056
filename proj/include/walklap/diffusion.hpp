#pragma once

#include "walklap/operators.hpp"

#include <string>
#include <vector>

namespace walklap {

/// p0 exp(-t M) via Lanczos; M symmetric, so left and right actions agree.
Vector diffuse(const LaplacianOperator& op, const Vector& p0, double t,
               const KrylovOptions& opts = {1e-12, 300});

/// Choice of D in P = I - D^{-1} M.
///
/// TotalCommunicability uses D = diag(t), t = Phi 1; the chain then moves along
/// walks with probability Phi_ij / t_i and may stay put with Phi_ii / t_i.
/// LaplacianDiagonal uses D = diag(M) = diag(t) - diag(Phi), which forbids
/// staying put. The two coincide for the standard Laplacian.
enum class Normalization { TotalCommunicability, LaplacianDiagonal };

const char* to_string(Normalization n) noexcept;

struct MarkovChain {
  Matrix P;
  Vector d;          // the diagonal of D
  Vector stationary; // pi_i = d_i / sum_j d_j
  Normalization normalization = Normalization::TotalCommunicability;
  std::string provenance;
  /// ||pi_power - pi||_inf from power iteration on Pᵀ; NaN when skipped
  /// (periodic or very slowly mixing chain).
  double power_check = 0.0;
};

MarkovChain markov_chain(const LaplacianOperator& op,
                         Normalization norm = Normalization::TotalCommunicability);

Vector chain_step(const MarkovChain& chain, const Vector& p);

/// 1 minus the second-largest eigenvalue modulus of P, from the symmetric
/// form I - D^{-1/2} M D^{-1/2}.
double spectral_gap(const MarkovChain& chain);
/// Eigenvalues of P, descending.
Vector chain_eigenvalues(const MarkovChain& chain);

struct ExplorationSnapshot {
  int step = 0;
  std::vector<Index> visited;
};

inline constexpr double kDefaultSupportTol = 1e-3;

/// Evolves e_start; at each checkpoint lists the nodes whose probability ever
/// exceeded support_tol.
std::vector<ExplorationSnapshot> exploration_history(const MarkovChain& chain, Index start,
                                                     std::vector<int> checkpoints = {20, 40, 80},
                                                     double support_tol = kDefaultSupportTol);

}  // namespace walklap
