#include "walklap/return_probability.hpp"

#include <cmath>
#include <exception>
#include <random>

namespace walklap {

const char* to_string(CurveMethod m) noexcept {
  switch (m) {
    case CurveMethod::Exact: return "exact";
    case CurveMethod::Stochastic: return "stochastic";
    case CurveMethod::Hutchinson: return "hutchinson";
  }
  return "unknown";
}

Vector time_grid(double tmax, int points, bool logarithmic, double tmin) {
  if (points < 1) throw Error(ErrorCode::InvalidParameter, "time grid needs at least one point");
  if (!(tmax >= 0.0) || !std::isfinite(tmax)) throw Error(ErrorCode::InvalidParameter, "tmax must be >= 0");
  if (points == 1) return Vector::Constant(1, tmax);
  if (!logarithmic) return Vector::LinSpaced(points, 0.0, tmax);
  if (tmin <= 0.0) tmin = tmax / 1000.0;
  if (!(tmax > tmin) || !(tmin > 0.0)) throw Error(ErrorCode::InvalidParameter, "log grid needs 0 < tmin < tmax");
  Vector t(points);
  const double l0 = std::log(tmin), l1 = std::log(tmax);
  for (int i = 0; i < points; ++i) t[i] = std::exp(l0 + (l1 - l0) * i / (points - 1));
  return t;
}

namespace {

void check_times(const Vector& times) {
  for (Index i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw Error(ErrorCode::InvalidParameter, "times must be finite and >= 0");
    }
  }
}

}  // namespace

ReturnProbabilityCurve exact_return_probability(const Vector& eigenvalues, const Vector& times) {
  check_times(times);
  ReturnProbabilityCurve c;
  c.times = times;
  c.values.resize(times.size());
  c.errors = Vector::Zero(times.size());
  c.method = CurveMethod::Exact;
  for (Index k = 0; k < times.size(); ++k) {
    c.values[k] = (-times[k] * eigenvalues.array()).exp().mean();
  }
  return c;
}

ReturnProbabilityCurve exact_return_probability(const LaplacianOperator& op, const Vector& times) {
  return exact_return_probability(dense_spectrum(op).values, times);
}

namespace {

struct Pinv {
  Matrix m;
  Index rank = 0;
};

Pinv psd_pinv(const Matrix& a, const char* what) {
  const auto eig = symmetric_eigen(a);
  const double top = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  Pinv p;
  p.m = Matrix::Zero(a.rows(), a.cols());
  if (top == 0.0) return p;
  if (eig.values[0] < -1e-8 * top) {
    throw Error(ErrorCode::NotPositiveDefinite,
                std::string(what) + " has eigenvalue " + std::to_string(eig.values[0]) +
                    " (largest " + std::to_string(top) + ")");
  }
  Vector inv = Vector::Zero(eig.values.size());
  for (Index i = 0; i < inv.size(); ++i) {
    if (eig.values[i] > 1e-12 * top) {
      inv[i] = 1.0 / eig.values[i];
      ++p.rank;
    }
  }
  p.m = eig.vectors * inv.asDiagonal() * eig.vectors.transpose();
  return p;
}

Matrix drop(const Matrix& a, Index i) {
  const Index m = a.rows();
  Matrix out(m - 1, m - 1);
  for (Index r = 0, rr = 0; r < m; ++r) {
    if (r == i) continue;
    for (Index c = 0, cc = 0; c < m; ++c) {
      if (c == i) continue;
      out(rr, cc++) = a(r, c);
    }
    ++rr;
  }
  return out;
}

Vector drop(const Vector& v, Index i) {
  Vector out(v.size() - 1);
  for (Index r = 0, rr = 0; r < v.size(); ++r) {
    if (r != i) out[rr++] = v[r];
  }
  return out;
}

}  // namespace

TraceEstimate xnystrace_core(const Matrix& y, const Matrix& omega) {
  if (y.rows() != omega.rows() || y.cols() != omega.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Y and Omega must have the same shape");
  }
  const Index n = omega.rows();
  const Index m = omega.cols();
  if (m < 2) throw Error(ErrorCode::InvalidParameter, "trace estimation needs at least two probes");

  Matrix g = omega.transpose() * y;
  g = 0.5 * (g + g.transpose()).eval();
  const Matrix yy = y.transpose() * y;
  const Matrix w = omega.transpose() * omega;
  {
    const auto ew = symmetric_eigen(w, false);
    const Index full = std::min(n, m);
    Index rank = 0;
    for (Index i = 0; i < ew.values.size(); ++i) rank += ew.values[i] > 1e-12 * ew.values.maxCoeff();
    if (rank < full) throw Error(ErrorCode::RankDeficient, "probe block is rank deficient");
  }

  Vector est(m);
  for (Index i = 0; i < m; ++i) {
    const Pinv gp = psd_pinv(drop(g, i), "Nystrom core");
    const double nys_trace = (gp.m * drop(yy, i)).trace();
    const Vector gi = drop(Vector(g.col(i)), i);
    const double quad = g(i, i) - gi.dot(gp.m * gi);

    const Pinv wp = psd_pinv(drop(w, i), "probe Gram matrix");
    const Vector wi = drop(Vector(w.col(i)), i);
    const double resid = w(i, i) - wi.dot(wp.m * wi);
    const Index complement = n - wp.rank;
    double correction = 0.0;
    if (complement > 0 && resid > 1e-12 * w(i, i)) {
      correction = static_cast<double>(complement) / resid * quad;
    }
    est[i] = nys_trace + correction;
  }
  TraceEstimate out;
  out.value = est.mean();
  const double var = (est.array() - out.value).square().sum() / static_cast<double>(m - 1);
  out.error_estimate = std::sqrt(var / static_cast<double>(m));
  return out;
}

Matrix gaussian_probes(Index n, Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix omega(n, m);
  for (Index c = 0; c < m; ++c)
    for (Index r = 0; r < n; ++r) omega(r, c) = normal(rng);
  return omega;
}

ReturnProbabilityCurve xnystrace_exp(const LinearOperator& op, const Vector& times,
                                     const XnysOptions& opts) {
  check_times(times);
  const Index n = op.size;
  const Index m = opts.probes;
  if (m < 2) throw Error(ErrorCode::InvalidParameter, "XNysTrace needs at least two probes");
  if (m > n) throw Error(ErrorCode::InvalidParameter, "more probes than nodes");

  const Matrix omega = gaussian_probes(n, m, opts.seed);
  PowerOptions po;
  po.max_iter = opts.power_iterations;
  po.tol = opts.power_tol;
  po.seed = opts.seed;
  po.require_convergence = false;
  const double rho = power_radius(op.apply, n, po).value;
  const double tmax = times.size() ? times.maxCoeff() : 0.0;

  PoleSet poles;
  if (tmax * rho > 0.0) poles = aaa_exp_poles(0.0, tmax * rho, opts.aaa);
  RationalArnoldiOptions ro;
  ro.inner_tol = opts.inner_tol;
  ro.num_poles = opts.num_poles;
  ro.pole_scale = tmax > 0.0 ? tmax : 1.0;
  const auto pencil = block_rational_arnoldi(op, omega, poles, ro);
  const auto reduced = reduce_pencil(pencil);

  ReturnProbabilityCurve c;
  c.times = times;
  c.values.resize(times.size());
  c.errors.resize(times.size());
  c.method = CurveMethod::Stochastic;
  c.probes = m;
  c.seed = opts.seed;
  c.pole_count = static_cast<int>(pencil.poles_used.size());
  c.krylov_dim = pencil.reduced_dim;

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (Index k = 0; k < times.size(); ++k) {
    try {
      const Matrix y = reduced_pencil_expm(reduced, times[k], omega);
      const TraceEstimate e = xnystrace_core(y, omega);
      c.values[k] = e.value;
      c.errors[k] = e.error_estimate;
    } catch (...) {
#pragma omp critical(walklap_xnys)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return c;
}

ReturnProbabilityCurve xnystrace_exp(const LaplacianOperator& op, const Vector& times,
                                     const XnysOptions& opts) {
  return xnystrace_exp(op.as_linear_operator(), times, opts);
}

ReturnProbabilityCurve hutchinson_lanczos(const LinearOperator& op, const Vector& times,
                                          Index probes, std::uint64_t seed, int lanczos_dim) {
  check_times(times);
  const Index n = op.size;
  if (probes < 2) throw Error(ErrorCode::InvalidParameter, "Hutchinson needs at least two probes");
  const Matrix omega = gaussian_probes(n, probes, seed);
  Matrix samples(times.size(), probes);
  for (Index p = 0; p < probes; ++p) {
    const auto lz = lanczos_decomposition(op, omega.col(p), lanczos_dim);
    const auto eig = tridiagonal_eigen(lz.alpha, lz.beta);
    const Vector w0 = eig.vectors.row(0).transpose().cwiseAbs2();
    const double norm2 = lz.start_norm * lz.start_norm;
    for (Index k = 0; k < times.size(); ++k) {
      samples(k, p) = norm2 * w0.dot((-times[k] * eig.values.array()).exp().matrix()) / n;
    }
  }
  ReturnProbabilityCurve c;
  c.times = times;
  c.values = samples.rowwise().mean();
  c.errors.resize(times.size());
  for (Index k = 0; k < times.size(); ++k) {
    const double var = (samples.row(k).array() - c.values[k]).square().sum() / (probes - 1);
    c.errors[k] = std::sqrt(var / probes);
  }
  c.method = CurveMethod::Hutchinson;
  c.probes = probes;
  c.seed = seed;
  c.krylov_dim = lanczos_dim;
  return c;
}

}  // namespace walklap
