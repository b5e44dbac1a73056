#pragma once

#include "walklap/dense.hpp"
#include "walklap/walks.hpp"

#include <cstdint>
#include <functional>

namespace walklap {

struct SpectralEstimate {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

struct PowerOptions {
  double tol = 1e-10;
  int max_iter = 5000;
  std::uint64_t seed = 0x5eed;
  /// When false, running out of iterations returns the last estimate instead
  /// of throwing.
  bool require_convergence = true;
};

using ApplyFn = std::function<void(const Vector&, Vector&)>;

/// Power iteration on a (possibly nonsymmetric) operator. The estimate is
/// |Op x| for unit x; when the single-step estimate stalls between two values
/// (dominant pair +-rho) the two-step estimate sqrt(theta_k theta_{k-1}) is
/// used instead. A complex dominant pair makes both wander and is reported as
/// ErrorCode::Oscillation, carrying the last two estimates in the message.
SpectralEstimate power_radius(const ApplyFn& op, Index size, const PowerOptions& opts = {});

SpectralEstimate spectral_radius_adjacency(const Graph& g, const PowerOptions& opts = {});

/// rho(A): dense eigenvalues when n <= dense_check_limit, power iteration otherwise.
SpectralEstimate adjacency_radius(const Graph& g, const PowerOptions& opts = {},
                                  Index dense_check_limit = 256);

/// Power iteration only, no dense fallback.
SpectralEstimate power_radius_Z(const ZOperator& z, const PowerOptions& opts = {});

/// Largest eigenvalue modulus of the dense 2n x 2n companion matrix. Small
/// instances run in extended precision, since Z can have defective eigenvalues
/// on the spectral circle (cycles at mu = 1) that double precision resolves only
/// to about sqrt(eps).
double dense_spectral_radius_Z(const ZOperator& z);

inline constexpr Index kDefaultDenseCheckLimit = 256;

/// Dense eigenvalues when n <= dense_check_limit, power iteration otherwise.
SpectralEstimate spectral_radius_Z(const ZOperator& z, const PowerOptions& opts = {},
                                   Index dense_check_limit = kDefaultDenseCheckLimit);

/// Ascending eigenvalues and eigenvectors of a symmetric matrix, refusing
/// matrices above the dense limit or with relative asymmetry above `sym_tol`.
SymmetricEigen dense_spectrum(const Matrix& m, double sym_tol = 1e-10);

}  // namespace walklap
