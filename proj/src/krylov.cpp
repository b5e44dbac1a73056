#include "walklap/krylov.hpp"

#include "walklap/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace walklap {

LinearOperator as_operator(const SparseMatrix& a) {
  return {a.n, [&a](const Vector& x, Vector& y) { kernels::csr_apply(a, x, y); }};
}

LinearOperator as_operator(const Matrix& a) {
  return {a.rows(), [&a](const Vector& x, Vector& y) { y.noalias() = a * x; }};
}

namespace {

// Classical Gram-Schmidt twice against the first `cols` columns of v.
// Returns the projection coefficients.
Matrix project_out(const Matrix& v, Index cols, Matrix& w) {
  Matrix coeff = Matrix::Zero(cols, w.cols());
  if (cols == 0) return coeff;
  for (int pass = 0; pass < 2; ++pass) {
    const Matrix p = v.leftCols(cols).transpose() * w;
    w.noalias() -= v.leftCols(cols) * p;
    coeff += p;
  }
  return coeff;
}

Vector project_out(const Matrix& v, Index cols, Vector& w) {
  Vector coeff = Vector::Zero(cols);
  if (cols == 0) return coeff;
  for (int pass = 0; pass < 2; ++pass) {
    const Vector p = v.leftCols(cols).transpose() * w;
    w.noalias() -= v.leftCols(cols) * p;
    coeff += p;
  }
  return coeff;
}

bool check_now(int dim, int max_dim) { return dim <= 40 || dim % 4 == 0 || dim == max_dim; }

void grow(Matrix& q, Index needed) {
  if (q.cols() >= needed) return;
  q.conservativeResize(Eigen::NoChange, std::max<Index>(needed, 2 * q.cols()));
}

}  // namespace

Matrix LanczosDecomposition::T() const {
  const Index k = alpha.size();
  Matrix t = Matrix::Zero(k, k);
  t.diagonal() = alpha;
  for (Index i = 0; i + 1 < k; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
  return t;
}

LanczosDecomposition lanczos_decomposition(const LinearOperator& op, const Vector& v, int k) {
  require_same_size(op.size, v.size(), "lanczos start vector");
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "lanczos needs k >= 1");
  LanczosDecomposition out;
  out.start_norm = v.norm();
  if (out.start_norm == 0.0) {
    out.breakdown = true;
    out.Q.resize(op.size, 0);
    return out;
  }
  const Index n = op.size;
  const Index kmax = std::min<Index>(k, n);
  Matrix q(n, kmax);
  std::vector<double> alpha, beta;
  Vector qj = v / out.start_norm;
  Vector w;
  double scale = 0.0;
  for (Index j = 0; j < kmax; ++j) {
    q.col(j) = qj;
    op.apply(qj, w);
    const double a = qj.dot(w);
    w -= a * qj;
    if (j > 0) w -= beta.back() * q.col(j - 1);
    project_out(q, j + 1, w);
    const double b = w.norm();
    alpha.push_back(a);
    scale = std::max(scale, std::abs(a) + b);
    if (b <= 1e-13 * scale || j + 1 == n) {
      out.breakdown = b <= 1e-13 * scale;
      out.beta_next = b;
      break;
    }
    if (j + 1 < kmax) {
      beta.push_back(b);
      qj = w / b;
    } else {
      out.beta_next = b;
    }
  }
  const Index dim = static_cast<Index>(alpha.size());
  out.Q = q.leftCols(dim);
  out.alpha = Eigen::Map<Vector>(alpha.data(), dim);
  out.beta = Eigen::Map<Vector>(beta.data(), static_cast<Index>(beta.size()));
  if (out.beta.size() > dim - 1) out.beta.conservativeResize(dim - 1);
  return out;
}

KrylovResult lanczos_fun_apply(const LinearOperator& op, const std::function<double(double)>& f,
                               const Vector& v, const KrylovOptions& opts) {
  require_same_size(op.size, v.size(), "lanczos_fun_apply");
  KrylovResult res;
  const double vnorm = v.norm();
  const Index n = op.size;
  if (vnorm == 0.0 || n == 0) {
    res.value = Vector::Zero(n);
    res.converged = true;
    return res;
  }
  const int max_dim = static_cast<int>(std::min<Index>(opts.max_dim, n));
  Matrix q(n, std::min(max_dim, 32));
  std::vector<double> alpha, beta;
  Vector qj = v / vnorm, w, y, y_prev;
  double scale = 0.0;

  for (int j = 0; j < max_dim; ++j) {
    grow(q, j + 1);
    q.col(j) = qj;
    op.apply(qj, w);
    const double a = qj.dot(w);
    w -= a * qj;
    if (j > 0) w -= beta.back() * q.col(j - 1);
    project_out(q, j + 1, w);
    const double b = w.norm();
    alpha.push_back(a);
    scale = std::max(scale, std::abs(a) + b);
    const bool breakdown = b <= 1e-13 * scale || j + 1 == n;
    const int dim = j + 1;

    if (breakdown || check_now(dim, max_dim)) {
      const Vector d = Eigen::Map<Vector>(alpha.data(), dim);
      const Vector e = Eigen::Map<Vector>(beta.data(), dim - 1);
      const auto eig = tridiagonal_eigen(d, e);
      Vector fl(dim);
      for (int i = 0; i < dim; ++i) fl[i] = f(eig.values[i]);
      y = eig.vectors * fl.cwiseProduct(eig.vectors.row(0).transpose());
      if (!y.allFinite()) throw Error(ErrorCode::InvalidParameter, "matrix function is not finite on the Ritz values");
      double change = std::numeric_limits<double>::infinity();
      if (y_prev.size() > 0) {
        Vector prev = Vector::Zero(dim);
        prev.head(y_prev.size()) = y_prev;
        const double ny = y.norm();
        change = ny > 0 ? (y - prev).norm() / ny : (y - prev).norm();
      }
      res.change = change;
      res.dimension = dim;
      if (breakdown || change <= opts.tol) {
        res.converged = true;
        break;
      }
      y_prev = y;
    }
    if (dim == max_dim) break;
    beta.push_back(b);
    qj = w / b;
  }
  res.value = vnorm * (q.leftCols(y.size()) * y);
  return res;
}

KrylovResult arnoldi_fun_apply(const LinearOperator& op,
                               const std::function<Vector(const Matrix&)>& dense_f,
                               const Vector& v, const KrylovOptions& opts) {
  require_same_size(op.size, v.size(), "arnoldi_fun_apply");
  KrylovResult res;
  const double vnorm = v.norm();
  const Index n = op.size;
  if (vnorm == 0.0 || n == 0) {
    res.value = Vector::Zero(n);
    res.converged = true;
    return res;
  }
  const int max_dim = static_cast<int>(std::min<Index>(opts.max_dim, n));
  Matrix q(n, std::min(max_dim, 32) + 1);
  Matrix h = Matrix::Zero(max_dim + 1, max_dim);
  q.col(0) = v / vnorm;
  Vector w, y, y_prev;
  double scale = 0.0;

  for (int j = 0; j < max_dim; ++j) {
    grow(q, j + 2);
    op.apply(q.col(j), w);
    const Vector coeff = project_out(q, j + 1, w);
    h.col(j).head(j + 1) = coeff;
    const double b = w.norm();
    h(j + 1, j) = b;
    scale = std::max(scale, coeff.cwiseAbs().maxCoeff() + b);
    const bool breakdown = b <= 1e-13 * scale || j + 1 == n;
    const int dim = j + 1;

    if (breakdown || check_now(dim, max_dim)) {
      y = dense_f(h.topLeftCorner(dim, dim));
      if (!y.allFinite()) throw Error(ErrorCode::InvalidParameter, "matrix function is not finite on the Hessenberg matrix");
      double change = std::numeric_limits<double>::infinity();
      if (y_prev.size() > 0) {
        Vector prev = Vector::Zero(dim);
        prev.head(y_prev.size()) = y_prev;
        const double ny = y.norm();
        change = ny > 0 ? (y - prev).norm() / ny : (y - prev).norm();
      }
      res.change = change;
      res.dimension = dim;
      if (breakdown || change <= opts.tol) {
        res.converged = true;
        break;
      }
      y_prev = y;
    }
    if (dim == max_dim) break;
    q.col(j + 1) = w / b;
  }
  res.value = vnorm * (q.leftCols(y.size()) * y);
  return res;
}

Matrix dense_expm(const Matrix& x) { return x.exp(); }

Vector phi1_first_column(const Matrix& h, double s) {
  const Index m = h.rows();
  Matrix aug = Matrix::Zero(m + 1, m + 1);
  aug.topLeftCorner(m, m) = s * h;
  aug(0, m) = 1.0;
  const Matrix e = aug.exp();
  return e.col(m).head(m);
}

Matrix dense_phi1(const Matrix& x) {
  const Index m = x.rows();
  Matrix aug = Matrix::Zero(2 * m, 2 * m);
  aug.topLeftCorner(m, m) = x;
  aug.topRightCorner(m, m).setIdentity();
  const Matrix e = aug.exp();
  return e.topRightCorner(m, m);
}

// ---------------------------------------------------------------------------

SolveResult pcg_solve(const LinearOperator& a, const Vector& b, const Vector* jacobi_diagonal,
                      const SolveOptions& opts) {
  require_same_size(a.size, b.size(), "pcg right-hand side");
  Vector inv_diag;
  if (jacobi_diagonal) {
    require_same_size(a.size, jacobi_diagonal->size(), "jacobi diagonal");
    if ((jacobi_diagonal->array() <= 0.0).any()) {
      throw Error(ErrorCode::NotPositiveDefinite, "jacobi preconditioner has a nonpositive diagonal entry");
    }
    inv_diag = jacobi_diagonal->cwiseInverse();
  }
  auto precondition = [&](const Vector& r) -> Vector {
    return jacobi_diagonal ? Vector(inv_diag.cwiseProduct(r)) : r;
  };

  SolveResult res;
  res.x = Vector::Zero(a.size);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return res;
  Vector r = b;
  Vector z = precondition(r);
  Vector p = z;
  Vector q;
  double rz = r.dot(z);
  for (int it = 1; it <= opts.max_iter; ++it) {
    a.apply(p, q);
    const double curvature = p.dot(q);
    if (!(curvature > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "conjugate gradients met nonpositive curvature at iteration " + std::to_string(it));
    }
    const double step = rz / curvature;
    res.x += step * p;
    r -= step * q;
    res.iterations = it;
    res.relative_residual = r.norm() / bnorm;
    if (res.relative_residual <= opts.tol) return res;
    z = precondition(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw Error(ErrorCode::NotConverged, "conjugate gradients reached " + std::to_string(opts.max_iter) +
                                           " iterations, relative residual " +
                                           std::to_string(res.relative_residual));
}

SolveResult pcg_solve(const SparseMatrix& a, const Vector& b, Preconditioner pre,
                      const SolveOptions& opts) {
  const Vector diag = a.diagonal();
  return pcg_solve(as_operator(a), b, pre == Preconditioner::Jacobi ? &diag : nullptr, opts);
}

namespace {

SolveResult minres(const std::function<void(const Vector&, Vector&)>& apply, const Vector& b,
                   const SolveOptions& opts) {
  SolveResult res;
  const Index n = b.size();
  res.x = Vector::Zero(n);
  const double beta1 = b.norm();
  if (beta1 == 0.0) return res;

  Vector r1 = b, r2 = b, y = b, v(n), w = Vector::Zero(n), w1(n), w2 = Vector::Zero(n);
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0, anorm = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int it = 1; it <= opts.max_iter; ++it) {
    v = y / beta;
    apply(v, y);
    if (it >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1.swap(r2);
    r2 = y;
    oldb = beta;
    beta = y.norm();
    anorm = std::max({anorm, std::abs(alfa), beta, oldb});

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::hypot(gbar, beta);
    if (gamma == 0.0) gamma = eps;
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1.swap(w2);
    w2.swap(w);
    w = (v - oldeps * w1 - delta * w2) / gamma;
    res.x += phi * w;
    res.iterations = it;
    res.relative_residual = phibar / beta1;
    if (res.relative_residual <= opts.tol) return res;
    if (beta <= 1e-14 * anorm) {
      throw Error(ErrorCode::Singular, "MINRES stagnated: the shifted system is singular and "
                                       "inconsistent (relative residual " +
                                           std::to_string(res.relative_residual) + ")");
    }
  }
  throw Error(ErrorCode::NotConverged, "MINRES reached " + std::to_string(opts.max_iter) +
                                           " iterations, relative residual " +
                                           std::to_string(res.relative_residual));
}

}  // namespace

SolveResult minres_shifted_solve(const LinearOperator& op, double shift, const Vector& b,
                                 const SolveOptions& opts) {
  require_same_size(op.size, b.size(), "minres right-hand side");
  return minres(
      [&](const Vector& x, Vector& y) {
        op.apply(x, y);
        if (shift != 0.0) y -= shift * x;
      },
      b, opts);
}

ComplexSolveResult minres_shifted_solve(const LinearOperator& op, std::complex<double> shift,
                                        const Vector& rhs_re, const Vector& rhs_im,
                                        const SolveOptions& opts) {
  require_same_size(op.size, rhs_re.size(), "minres right-hand side");
  require_same_size(op.size, rhs_im.size(), "minres right-hand side");
  const Index n = op.size;
  const double a = shift.real(), b = shift.imag();
  ComplexSolveResult out;
  if (b == 0.0) {
    const auto re = minres_shifted_solve(op, a, rhs_re, opts);
    const auto im = minres_shifted_solve(op, a, rhs_im, opts);
    out.re = re.x;
    out.im = im.x;
    out.iterations = re.iterations + im.iterations;
    out.relative_residual = std::max(re.relative_residual, im.relative_residual);
    return out;
  }
  Vector rhs(2 * n);
  rhs << rhs_re, -rhs_im;
  Vector tx, ty;
  const auto res = minres(
      [&](const Vector& z, Vector& y) {
        const Vector x1 = z.head(n), x2 = z.tail(n);
        op.apply(x1, tx);
        op.apply(x2, ty);
        y.resize(2 * n);
        y.head(n) = tx - a * x1 + b * x2;
        y.tail(n) = b * x1 - (ty - a * x2);
      },
      rhs, opts);
  out.re = res.x.head(n);
  out.im = res.x.tail(n);
  out.iterations = res.iterations;
  out.relative_residual = res.relative_residual;
  return out;
}

// ---------------------------------------------------------------------------

double PoleSet::evaluate(double x) const {
  double num = 0.0, den = 0.0;
  for (Index k = 0; k < support.size(); ++k) {
    const double d = x - support[k];
    if (d == 0.0) return values[k];
    num += weights[k] * values[k] / d;
    den += weights[k] / d;
  }
  return num / den;
}

std::vector<std::complex<double>> PoleSet::all_poles() const {
  std::vector<std::complex<double>> out;
  for (double p : real_poles) out.emplace_back(p, 0.0);
  for (const auto& p : complex_pairs) {
    out.push_back(p);
    out.push_back(std::conj(p));
  }
  return out;
}

PoleSet aaa_poles(const Vector& x, const Vector& g, const AaaOptions& opts) {
  require_same_size(x.size(), g.size(), "aaa samples");
  const Index N = x.size();
  if (N < 2 || x.maxCoeff() == x.minCoeff()) {
    throw Error(ErrorCode::InvalidParameter, "AAA needs at least two distinct sample points");
  }
  if (opts.max_degree < 0) throw Error(ErrorCode::InvalidParameter, "AAA max degree must be >= 0");
  const double fmax = g.cwiseAbs().maxCoeff();
  const double abstol = opts.tol * fmax;

  std::vector<bool> is_support(static_cast<std::size_t>(N), false);
  std::vector<Index> support_idx;
  Vector r = Vector::Constant(N, g.mean());
  Matrix cauchy(N, 0);
  Vector w;
  double err = (g - r).cwiseAbs().maxCoeff();

  for (int m = 0; m <= opts.max_degree && err > abstol; ++m) {
    Index j = -1;
    double worst = -1.0;
    for (Index i = 0; i < N; ++i) {
      if (is_support[i]) continue;
      const double e = std::abs(g[i] - r[i]);
      if (e > worst) {
        worst = e;
        j = i;
      }
    }
    if (j < 0) break;
    is_support[j] = true;
    support_idx.push_back(j);
    const Index ms = static_cast<Index>(support_idx.size());
    cauchy.conservativeResize(N, ms);
    for (Index i = 0; i < N; ++i) cauchy(i, ms - 1) = is_support[i] ? 0.0 : 1.0 / (x[i] - x[j]);

    std::vector<Index> rows;
    for (Index i = 0; i < N; ++i) {
      if (!is_support[i]) rows.push_back(i);
    }
    Vector fs(ms);
    for (Index k = 0; k < ms; ++k) fs[k] = g[support_idx[k]];
    Matrix loewner(static_cast<Index>(rows.size()), ms);
    for (Index r_i = 0; r_i < loewner.rows(); ++r_i) {
      const Index i = rows[r_i];
      for (Index k = 0; k < ms; ++k) loewner(r_i, k) = (g[i] - fs[k]) * cauchy(i, k);
    }
    Eigen::JacobiSVD<Matrix> svd(loewner, Eigen::ComputeFullV);
    w = svd.matrixV().col(ms - 1);

    for (Index i = 0; i < N; ++i) {
      if (is_support[i]) {
        r[i] = g[i];
        continue;
      }
      double num = 0.0, den = 0.0;
      for (Index k = 0; k < ms; ++k) {
        num += cauchy(i, k) * w[k] * fs[k];
        den += cauchy(i, k) * w[k];
      }
      r[i] = num / den;
    }
    err = (g - r).cwiseAbs().maxCoeff();
  }

  PoleSet out;
  out.max_error = err;
  const Index ms = static_cast<Index>(support_idx.size());
  if (ms == 0) {
    // Constant function: the mean is already within tolerance.
    out.support = Vector::Constant(1, x[0]);
    out.values = Vector::Constant(1, g.mean());
    out.weights = Vector::Ones(1);
    return out;
  }
  out.degree = static_cast<int>(ms - 1);
  out.support.resize(ms);
  out.values.resize(ms);
  for (Index k = 0; k < ms; ++k) {
    out.support[k] = x[support_idx[k]];
    out.values[k] = g[support_idx[k]];
  }
  out.weights = w;
  if (ms == 1) return out;

  Matrix e = Matrix::Zero(ms + 1, ms + 1);
  Matrix b = Matrix::Identity(ms + 1, ms + 1);
  b(0, 0) = 0.0;
  e.block(0, 1, 1, ms) = w.transpose();
  e.block(1, 0, ms, 1).setOnes();
  for (Index k = 0; k < ms; ++k) e(k + 1, k + 1) = out.support[k];
  Eigen::GeneralizedEigenSolver<Matrix> ges(e, b, false);
  if (ges.info() != Eigen::Success) {
    throw Error(ErrorCode::NotConverged, "AAA pole eigenproblem failed");
  }
  const double lo = x.minCoeff(), hi = x.maxCoeff();
  const double zscale = std::max({1.0, std::abs(lo), std::abs(hi)});
  for (Index k = 0; k < ges.alphas().size(); ++k) {
    const std::complex<double> alpha = ges.alphas()[k];
    const double beta = ges.betas()[k];
    if (std::abs(beta) <= 1e-13 * std::abs(alpha) || beta == 0.0) continue;
    const std::complex<double> pole = alpha / beta;
    if (!std::isfinite(pole.real()) || !std::isfinite(pole.imag())) continue;
    if (std::abs(pole.imag()) <= 1e-9 * std::max(zscale, std::abs(pole))) {
      // A real pole inside the sampled interval is a numerical artifact of
      // the barycentric form (near-cancelling with a zero); drop it.
      if (pole.real() >= lo && pole.real() <= hi) continue;
      out.real_poles.push_back(pole.real());
    } else if (pole.imag() > 0) {
      out.complex_pairs.push_back(pole);
    }
  }
  return out;
}

Vector exp_sample_points(double a, double b, int count) {
  if (!(b > 0.0) || count < 2) throw Error(ErrorCode::InvalidParameter, "exp sample interval needs b > 0");
  const double lo = std::max(1e-8, a);
  if (!(b > lo)) {
    Vector x(2);
    x << 0.0, b;
    return x;
  }
  Vector x(count + 1);
  x[0] = 0.0;
  const double l0 = std::log10(lo), l1 = std::log10(b);
  for (int i = 0; i < count; ++i) x[i + 1] = std::pow(10.0, l0 + (l1 - l0) * i / (count - 1));
  return x;
}

PoleSet aaa_exp_poles(double a, double b, const AaaOptions& opts) {
  const Vector x = exp_sample_points(a, b);
  const Vector g = (-x).array().exp();
  return aaa_poles(x, g, opts);
}

// ---------------------------------------------------------------------------

Matrix orthonormal_basis(const Matrix& block, double rank_tol) {
  const Index m = block.cols();
  if (m > block.rows()) throw Error(ErrorCode::RankDeficient, "block has more columns than rows");
  Eigen::HouseholderQR<Matrix> qr(block);
  const Matrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  const double rmax = r.diagonal().cwiseAbs().maxCoeff();
  for (Index i = 0; i < m; ++i) {
    if (!(std::abs(r(i, i)) > rank_tol * rmax)) {
      throw Error(ErrorCode::RankDeficient, "block is numerically rank deficient (column " +
                                                std::to_string(i) + ")");
    }
  }
  return qr.householderQ() * Matrix::Identity(block.rows(), m);
}

namespace {

struct QrBlock {
  Matrix q;
  Matrix r;
};

QrBlock thin_qr(const Matrix& w) {
  Eigen::HouseholderQR<Matrix> qr(w);
  const Index m = w.cols();
  return {qr.householderQ() * Matrix::Identity(w.rows(), m),
          qr.matrixQR().topRows(m).triangularView<Eigen::Upper>()};
}

// Solves (op - shift) X = B column by column, in parallel across columns.
Matrix shifted_block_solve(const LinearOperator& op, std::complex<double> shift, const Matrix& rhs,
                           const SolveOptions& so, Matrix* imag_part, int& iterations) {
  const Index m = rhs.cols();
  Matrix re(rhs.rows(), m), im(rhs.rows(), m);
  std::vector<int> its(static_cast<std::size_t>(m), 0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (Index c = 0; c < m; ++c) {
    try {
      if (shift.imag() == 0.0) {
        const auto s = minres_shifted_solve(op, shift.real(), Vector(rhs.col(c)), so);
        re.col(c) = s.x;
        its[c] = s.iterations;
      } else {
        const auto s = minres_shifted_solve(op, shift, Vector(rhs.col(c)),
                                            Vector::Zero(rhs.rows()), so);
        re.col(c) = s.re;
        im.col(c) = s.im;
        its[c] = s.iterations;
      }
    } catch (...) {
#pragma omp critical(walklap_block_solve)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (int v : its) iterations += v;
  if (imag_part) *imag_part = im;
  return re;
}

void append_columns(Matrix& target, Index rows, const Matrix& cols) {
  const Index old_cols = target.cols();
  Matrix grown = Matrix::Zero(rows, old_cols + cols.cols());
  grown.topLeftCorner(target.rows(), old_cols) = target;
  grown.block(0, old_cols, cols.rows(), cols.cols()) = cols;
  target.swap(grown);
}

}  // namespace

RationalKrylovPencil block_rational_arnoldi(const LinearOperator& op, const Matrix& omega,
                                            const PoleSet& poles,
                                            const RationalArnoldiOptions& opts) {
  const Index n = op.size;
  const Index m = omega.cols();
  require_same_size(n, omega.rows(), "probe block rows");
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "probe block needs at least one column");
  if (!(opts.pole_scale > 0.0)) throw Error(ErrorCode::InvalidParameter, "pole scale must be positive");

  RationalKrylovPencil p;
  p.block_size = m;
  p.V.resize(n, 0);
  append_columns(p.V, n, orthonormal_basis(omega));

  // One entry per step: a real pole or the upper member of a conjugate pair.
  std::vector<std::complex<double>> base;
  for (double r : poles.real_poles) base.emplace_back(r, 0.0);
  for (const auto& c : poles.complex_pairs) base.push_back(c);
  std::vector<std::complex<double>> steps;
  if (!base.empty()) {
    const int wanted = opts.num_poles > 0 ? opts.num_poles : poles.pole_count();
    int have = 0;
    for (std::size_t i = 0; have < wanted; ++i) {
      const auto& z = base[i % base.size()];
      steps.push_back(z / opts.pole_scale);
      have += z.imag() == 0.0 ? 1 : 2;
    }
  }

  const SolveOptions so{opts.inner_tol, opts.inner_max_iter};
  Index cols = m;
  for (const auto& xi : steps) {
    const bool pair = xi.imag() != 0.0;
    const Index need = pair ? 2 * m : m;
    if (cols + need > n) break;
    const Matrix vj = p.V.middleCols(cols - m, m);
    Matrix w;
    if (pair) {
      Matrix im;
      Matrix re = shifted_block_solve(op, xi, vj, so, &im, p.inner_iterations);
      w.resize(n, 2 * m);
      w << re, im;
    } else {
      w = shifted_block_solve(op, xi, vj, so, nullptr, p.inner_iterations);
    }
    const double wnorm = w.norm();
    const Matrix proj = project_out(p.V, cols, w);
    if (w.norm() <= 1e-12 * wnorm) break;  // the space is invariant
    const QrBlock qr = thin_qr(w);
    const double rmax = qr.r.diagonal().cwiseAbs().maxCoeff();
    if ((qr.r.diagonal().cwiseAbs().array() <= 1e-12 * rmax).any()) {
      throw Error(ErrorCode::RankDeficient,
                  "block rational Arnoldi lost rank at dimension " + std::to_string(cols) +
                      " (deflation is not supported)");
    }
    const Index rows = cols + need;
    Matrix c = Matrix::Zero(rows, need);
    c.topRows(cols) = proj;
    c.bottomRows(need) = qr.r;
    Matrix ej = Matrix::Zero(rows, m);
    ej.middleRows(cols - m, m).setIdentity();
    Matrix kcols(rows, need), hcols(rows, need);
    if (pair) {
      const double a = xi.real(), b = xi.imag();
      const Matrix cr = c.leftCols(m), ci = c.rightCols(m);
      kcols << cr, ci;
      hcols << ej + a * cr - b * ci, a * ci + b * cr;
    } else {
      kcols = c;
      hcols = ej + xi.real() * c;
    }
    append_columns(p.V, n, qr.q);
    append_columns(p.K, rows, kcols);
    append_columns(p.H, rows, hcols);
    p.poles_used.push_back(xi);
    if (pair) p.poles_used.push_back(std::conj(xi));
    cols = rows;
  }

  // Closing infinite pole: makes the top square part of the pencil a projection
  // of op onto the first `cols` basis vectors.
  Matrix w(n, m);
  for (Index c = 0; c < m; ++c) {
    Vector out;
    op.apply(p.V.col(cols - m + c), out);
    w.col(c) = out;
  }
  const double wnorm = w.norm();
  const Matrix proj = project_out(p.V, cols, w);
  Index rows = cols;
  Matrix hcols;
  if (cols + m <= n && w.norm() > 1e-12 * wnorm) {
    const QrBlock qr = thin_qr(w);
    rows = cols + m;
    hcols = Matrix::Zero(rows, m);
    hcols.topRows(cols) = proj;
    hcols.bottomRows(m) = qr.r;
    append_columns(p.V, n, qr.q);
  } else {
    hcols = proj;
  }
  Matrix kcols = Matrix::Zero(rows, m);
  kcols.middleRows(cols - m, m).setIdentity();
  append_columns(p.K, rows, kcols);
  append_columns(p.H, rows, hcols);

  // Rayleigh quotient on the whole basis, closing block included.
  const Index r = p.V.cols();
  Matrix lv(n, r);
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < r; ++c) {
    try {
      Vector out;
      op.apply(p.V.col(c), out);
      lv.col(c) = out;
    } catch (...) {
#pragma omp critical(walklap_rayleigh)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  p.rayleigh = p.V.transpose() * lv;
  p.reduced_dim = r;
  return p;
}

ReducedPencil reduce_pencil(const RationalKrylovPencil& pencil) {
  const Index r = pencil.reduced_dim;
  Matrix s;
  if (pencil.rayleigh.rows() == r && r > 0) {
    s = pencil.rayleigh;
  } else {
    const Matrix hh = pencil.H.topRows(r);
    const Matrix kh = pencil.K.topRows(r);
    Eigen::FullPivLU<Matrix> lu(kh.transpose());
    if (!lu.isInvertible()) throw Error(ErrorCode::Singular, "reduced pencil K is singular");
    s = lu.solve(hh.transpose()).transpose();
  }
  s = 0.5 * (s + s.transpose()).eval();
  const auto eig = symmetric_eigen(s);
  return {pencil.V.leftCols(r), eig.values, eig.vectors};
}

Matrix reduced_pencil_expm(const ReducedPencil& reduced, double t, const Matrix& omega) {
  require_same_size(reduced.basis.rows(), omega.rows(), "probe block rows");
  const double n = static_cast<double>(omega.rows());
  const Matrix coords = reduced.basis.transpose() * omega;
  const Vector decay = (-t * reduced.eigenvalues).array().exp();
  const Matrix inner =
      reduced.eigenvectors * (decay.asDiagonal() * (reduced.eigenvectors.transpose() * coords));
  return (reduced.basis * inner) / n;
}

Matrix reduced_pencil_expm(const RationalKrylovPencil& pencil, double t, const Matrix& omega) {
  return reduced_pencil_expm(reduce_pencil(pencil), t, omega);
}

}  // namespace walklap
