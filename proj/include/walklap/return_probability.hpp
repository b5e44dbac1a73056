#pragma once

#include "walklap/operators.hpp"

#include <cstdint>

namespace walklap {

enum class CurveMethod { Exact, Stochastic, Hutchinson };

const char* to_string(CurveMethod m) noexcept;

/// (1/n) tr exp(-t M) sampled on a time grid.
struct ReturnProbabilityCurve {
  Vector times;
  Vector values;
  Vector errors;  // zero in exact mode
  CurveMethod method = CurveMethod::Exact;
  Index probes = 0;
  std::uint64_t seed = 0;
  int pole_count = 0;
  Index krylov_dim = 0;
};

struct TraceEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// `points` times on [0, tmax] (linear) or on [tmin, tmax] (logarithmic; tmin
/// defaults to tmax / 1000).
Vector time_grid(double tmax, int points = 30, bool logarithmic = false, double tmin = 0.0);

ReturnProbabilityCurve exact_return_probability(const LaplacianOperator& op, const Vector& times);
ReturnProbabilityCurve exact_return_probability(const Vector& eigenvalues, const Vector& times);

/// Trace estimate of the symmetric PSD matrix B with Y = B Omega, from the
/// leave-one-out Nyström approximations and a Hutchinson correction with the
/// held-out probe. Exact when rank(B) < M or when B is a multiple of I.
TraceEstimate xnystrace_core(const Matrix& y, const Matrix& omega);

/// n x M standard normal block.
Matrix gaussian_probes(Index n, Index m, std::uint64_t seed);

struct XnysOptions {
  Index probes = 4;
  std::uint64_t seed = 1;
  double inner_tol = 1e-8;
  AaaOptions aaa{};
  /// Finite poles in the rational Krylov space; 0 uses every AAA pole once.
  int num_poles = 0;
  int power_iterations = 50;
  double power_tol = 1e-4;
};

ReturnProbabilityCurve xnystrace_exp(const LinearOperator& op, const Vector& times,
                                     const XnysOptions& opts = {});
ReturnProbabilityCurve xnystrace_exp(const LaplacianOperator& op, const Vector& times,
                                     const XnysOptions& opts = {});

/// Baseline: Hutchinson averaging of per-probe Lanczos quadratures
/// ||w||^2 e_1ᵀ exp(-t T) e_1 over the same Gaussian probes.
ReturnProbabilityCurve hutchinson_lanczos(const LinearOperator& op, const Vector& times,
                                          Index probes, std::uint64_t seed, int lanczos_dim = 40);

}  // namespace walklap
