#include "walklap/kernels.hpp"

namespace walklap {

Vector SparseMatrix::diagonal() const {
  Vector d = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    for (Index p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      if (col_idx[p] == i) d[i] += values[p];
    }
  }
  return d;
}

Matrix SparseMatrix::dense() const {
  require_dense(n, "sparse to dense");
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index p = row_ptr[i]; p < row_ptr[i + 1]; ++p) m(i, col_idx[p]) += values[p];
  }
  return m;
}

namespace {

inline double row_sum(const Index* rp, const Index* ci, const double* x, Index i) {
  double s = 0.0;
  for (Index p = rp[i]; p < rp[i + 1]; ++p) s += x[ci[p]];
  return s;
}

void check_vec(const Graph& g, const Vector& x, Vector& y, Index factor, const char* what) {
  require_same_size(factor * g.num_nodes(), x.size(), what);
  y.resize(x.size());
}

}  // namespace

namespace kernels {

void spmv(const Graph& g, const Vector& x, Vector& y) {
  check_vec(g, x, y, 1, "spmv");
  const Index n = g.num_nodes();
  const Index* rp = g.row_ptr().data();
  const Index* ci = g.col_idx().data();
  const double* xp = x.data();
  double* yp = y.data();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) yp[i] = row_sum(rp, ci, xp, i);
}

void laplacian_apply(const Graph& g, const Vector& x, Vector& y) {
  check_vec(g, x, y, 1, "laplacian_apply");
  const Index n = g.num_nodes();
  const Index* rp = g.row_ptr().data();
  const Index* ci = g.col_idx().data();
  const double* xp = x.data();
  double* yp = y.data();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    yp[i] = static_cast<double>(rp[i + 1] - rp[i]) * xp[i] - row_sum(rp, ci, xp, i);
  }
}

void z_apply(const Graph& g, double mu, const Vector& x, Vector& y) {
  check_vec(g, x, y, 2, "z_apply");
  const Index n = g.num_nodes();
  const Index* rp = g.row_ptr().data();
  const Index* ci = g.col_idx().data();
  const double* top = x.data();
  const double* bot = x.data() + n;
  double* yp = y.data();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    const double d = static_cast<double>(rp[i + 1] - rp[i]);
    yp[i] = bot[i];
    yp[n + i] = mu * (mu - d) * top[i] + row_sum(rp, ci, bot, i);
  }
}

void spmm(const Graph& g, const Matrix& x, Matrix& y) {
  require_same_size(g.num_nodes(), x.rows(), "spmm");
  const Index n = g.num_nodes();
  const Index cols = x.cols();
  y.resize(n, cols);
  const Index* rp = g.row_ptr().data();
  const Index* ci = g.col_idx().data();
#pragma omp parallel for schedule(static) if (n * cols >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    for (Index c = 0; c < cols; ++c) {
      const double* xc = x.col(c).data();
      y(i, c) = row_sum(rp, ci, xc, i);
    }
  }
}

void csr_apply(const SparseMatrix& a, const Vector& x, Vector& y) {
  require_same_size(a.n, x.size(), "csr_apply");
  y.resize(a.n);
  const Index n = a.n;
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) s += a.values[p] * x[a.col_idx[p]];
    y[i] = s;
  }
}

}  // namespace kernels

namespace serial {

void spmv(const Graph& g, const Vector& x, Vector& y) {
  check_vec(g, x, y, 1, "spmv");
  for (Index i = 0; i < g.num_nodes(); ++i) {
    double s = 0.0;
    for (Index j : g.neighbors(i)) s += x[j];
    y[i] = s;
  }
}

void laplacian_apply(const Graph& g, const Vector& x, Vector& y) {
  check_vec(g, x, y, 1, "laplacian_apply");
  for (Index i = 0; i < g.num_nodes(); ++i) {
    double s = 0.0;
    for (Index j : g.neighbors(i)) s += x[j];
    y[i] = static_cast<double>(g.degree(i)) * x[i] - s;
  }
}

void z_apply(const Graph& g, double mu, const Vector& x, Vector& y) {
  check_vec(g, x, y, 2, "z_apply");
  const Index n = g.num_nodes();
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index j : g.neighbors(i)) s += x[n + j];
    y[i] = x[n + i];
    y[n + i] = mu * (mu - static_cast<double>(g.degree(i))) * x[i] + s;
  }
}

void spmm(const Graph& g, const Matrix& x, Matrix& y) {
  require_same_size(g.num_nodes(), x.rows(), "spmm");
  y.resize(g.num_nodes(), x.cols());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    for (Index c = 0; c < x.cols(); ++c) {
      double s = 0.0;
      for (Index j : g.neighbors(i)) s += x(j, c);
      y(i, c) = s;
    }
  }
}

void csr_apply(const SparseMatrix& a, const Vector& x, Vector& y) {
  require_same_size(a.n, x.size(), "csr_apply");
  y.resize(a.n);
  for (Index i = 0; i < a.n; ++i) {
    double s = 0.0;
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) s += a.values[p] * x[a.col_idx[p]];
    y[i] = s;
  }
}

}  // namespace serial

Vector adjacency_apply(const Graph& g, const Vector& x) {
  Vector y;
  kernels::spmv(g, x, y);
  return y;
}

Vector standard_laplacian_apply(const Graph& g, const Vector& x) {
  Vector y;
  kernels::laplacian_apply(g, x, y);
  return y;
}

}  // namespace walklap
