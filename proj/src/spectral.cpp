#include "walklap/spectral.hpp"

#include "walklap/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>

namespace walklap {

SpectralEstimate power_radius(const ApplyFn& op, Index size, const PowerOptions& opts) {
  if (size == 0) return {};
  if (opts.tol <= 0 || opts.max_iter < 1) throw Error(ErrorCode::InvalidParameter, "power iteration options");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Vector x(size);
  for (Index i = 0; i < size; ++i) x[i] = unif(rng);
  x.normalize();

  Vector y;
  double theta_prev = 0.0, two_prev = 0.0;
  double last_change = 0.0, last_two_change = 0.0;
  // Change history used to tell slow convergence from a wandering estimate.
  std::vector<double> changes;
  for (int it = 1; it <= opts.max_iter; ++it) {
    op(x, y);
    const double theta = y.norm();
    if (theta == 0.0) return {0.0, 0.0, it};  // nilpotent on the start vector
    const double two = it > 1 ? std::sqrt(theta * theta_prev) : theta;
    if (it > 2) {
      last_change = std::abs(theta - theta_prev) / theta;
      last_two_change = std::abs(two - two_prev) / two;
      if (last_change <= opts.tol) return {theta, last_change, it};
      if (last_two_change <= opts.tol && it > 3) return {two, last_two_change, it};
      changes.push_back(std::min(last_change, last_two_change));
    }
    theta_prev = theta;
    two_prev = two;
    x = y / theta;
  }

  if (!opts.require_convergence) return {theta_prev, std::min(last_change, last_two_change), opts.max_iter};

  const std::size_t w = std::min<std::size_t>(50, changes.size() / 2);
  bool stalled = false;
  if (w > 0) {
    double recent = 0.0, older = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      recent = std::max(recent, changes[changes.size() - 1 - i]);
      older = std::max(older, changes[changes.size() - 1 - w - i]);
    }
    stalled = recent > std::sqrt(opts.tol) && recent >= 0.5 * older;
  }
  std::ostringstream msg;
  msg.precision(10);
  msg << "power iteration after " << opts.max_iter << " steps: estimates " << theta_prev << " and "
      << two_prev << ", relative changes " << last_change << " / " << last_two_change;
  throw Error(stalled ? ErrorCode::Oscillation : ErrorCode::NotConverged, msg.str());
}

SpectralEstimate spectral_radius_adjacency(const Graph& g, const PowerOptions& opts) {
  return power_radius([&](const Vector& x, Vector& y) { kernels::spmv(g, x, y); }, g.num_nodes(),
                      opts);
}

SpectralEstimate adjacency_radius(const Graph& g, const PowerOptions& opts, Index dense_check_limit) {
  if (g.num_nodes() == 0 || g.num_edges() == 0) return {};
  if (g.num_nodes() <= std::min(dense_check_limit, dense_limit())) {
    const auto eig = symmetric_eigen(g.dense_adjacency(), false);
    return {std::max(std::abs(eig.values[0]), std::abs(eig.values[eig.values.size() - 1])), 0.0, 0};
  }
  return spectral_radius_adjacency(g, opts);
}

SpectralEstimate power_radius_Z(const ZOperator& z, const PowerOptions& opts) {
  return power_radius([&](const Vector& x, Vector& y) { z.apply(x, y); }, z.size(), opts);
}

namespace {

template <typename Scalar>
double dense_radius(const ZOperator& z) {
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const M zm = z.dense().template cast<Scalar>();
  Eigen::EigenSolver<M> solver(zm, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotConverged, "dense eigenvalues of the companion operator");
  }
  Scalar best = 0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    best = std::max<Scalar>(best, std::abs(solver.eigenvalues()[i]));
  }
  return static_cast<double>(best);
}

}  // namespace

double dense_spectral_radius_Z(const ZOperator& z) {
  const Index n = z.graph().num_nodes();
  if (n == 0) return 0.0;
  require_dense(n, "dense companion spectrum");
  if (z.size() <= 512) return dense_radius<long double>(z);
  return dense_radius<double>(z);
}

SpectralEstimate spectral_radius_Z(const ZOperator& z, const PowerOptions& opts,
                                   Index dense_check_limit) {
  if (z.graph().num_nodes() <= std::min(dense_check_limit, dense_limit())) {
    return {dense_spectral_radius_Z(z), 0.0, 0};
  }
  return power_radius_Z(z, opts);
}

SymmetricEigen dense_spectrum(const Matrix& m, double sym_tol) {
  require_dense(m.rows(), "dense spectrum");
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "dense spectrum needs a square matrix");
  const double asym = asymmetry(m);
  if (asym > sym_tol) {
    throw Error(ErrorCode::NotSymmetric, "relative asymmetry " + std::to_string(asym));
  }
  return symmetric_eigen(m);
}

}  // namespace walklap
