#include "walklap/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace walklap {

namespace {

// Householder reduction to tridiagonal form (after the EISPACK tred2 routine).
// On exit d holds the diagonal, e the subdiagonal in e[1..n-1], and v the
// accumulated orthogonal transformation.
void tred2(Matrix& v, Vector& d, Vector& e) {
  const Index n = v.rows();
  for (Index j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (Index i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (Index k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (Index j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (Index k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (Index j = 0; j < i; ++j) e[j] = 0.0;

      for (Index j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (Index k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (Index j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (Index j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (Index j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (Index k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (Index i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (Index k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (Index j = 0; j <= i; ++j) {
        double g = 0.0;
        for (Index k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (Index k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (Index k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (Index j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e). Rotations are accumulated into v when
// `vectors` is set.
void tql2(Matrix& v, Vector& d, Vector& e, bool vectors) {
  const Index n = d.size();
  for (Index i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  const int max_sweeps = 60;

  for (Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    Index m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_sweeps) {
          throw Error(ErrorCode::NotConverged, "symmetric QL iteration stalled");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (Index i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (vectors) {
            for (Index k = 0; k < v.rows(); ++k) {
              const double vh = v(k, i + 1);
              v(k, i + 1) = s * v(k, i) + c * vh;
              v(k, i) = c * v(k, i) - s * vh;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

SymmetricEigen sorted(Vector d, Matrix v, bool vectors) {
  const Index n = d.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return d[a] < d[b]; });
  SymmetricEigen out;
  out.values.resize(n);
  if (vectors) out.vectors.resize(v.rows(), n);
  for (Index k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    if (vectors) out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& a, bool want_vectors) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "symmetric_eigen needs a square matrix");
  const Index n = a.rows();
  if (n == 0) return {};
  if (!a.allFinite()) throw Error(ErrorCode::InvalidParameter, "matrix has non-finite entries");
  Matrix v = a.triangularView<Eigen::Lower>();
  v.triangularView<Eigen::StrictlyUpper>() = v.transpose().triangularView<Eigen::StrictlyUpper>();
  Vector d(n), e(n);
  tred2(v, d, e);
  tql2(v, d, e, want_vectors);
  return sorted(std::move(d), std::move(v), want_vectors);
}

SymmetricEigen tridiagonal_eigen(const Vector& diag, const Vector& off, bool want_vectors) {
  const Index n = diag.size();
  if (n == 0) return {};
  require_same_size(n - 1, off.size(), "tridiagonal off-diagonal");
  Vector d = diag;
  Vector e = Vector::Zero(n);
  for (Index i = 1; i < n; ++i) e[i] = off[i - 1];
  Matrix v = want_vectors ? Matrix(Matrix::Identity(n, n)) : Matrix();
  tql2(v, d, e, want_vectors);
  return sorted(std::move(d), std::move(v), want_vectors);
}

Matrix symmetric_function(const Matrix& a, const std::function<double(double)>& f) {
  const auto eig = symmetric_eigen(a);
  Vector fv = eig.values.unaryExpr(f);
  return eig.vectors * fv.asDiagonal() * eig.vectors.transpose();
}

double asymmetry(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace walklap
