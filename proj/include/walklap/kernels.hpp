#pragma once

#include "walklap/graph.hpp"

#include <vector>

namespace walklap {

/// Symmetric sparse matrix in CSR form with explicit values. Used for the
/// deformed Laplacian and other weighted variants of the adjacency pattern.
struct SparseMatrix {
  Index n = 0;
  std::vector<Index> row_ptr{0};
  std::vector<Index> col_idx;
  std::vector<double> values;

  Vector diagonal() const;
  Matrix dense() const;
};

/// Row-parallel kernels. Each has a serial twin in `serial::` that computes the
/// identical result in the identical order per row; tests compare the two and
/// the benchmark times them. Outputs must not alias inputs.
namespace kernels {

/// Rows below this count run single-threaded to avoid fork/join overhead.
inline constexpr Index kParallelThreshold = 4096;

void spmv(const Graph& g, const Vector& x, Vector& y);                  // y = A x
void laplacian_apply(const Graph& g, const Vector& x, Vector& y);       // y = (D - A) x
void z_apply(const Graph& g, double mu, const Vector& x, Vector& y);    // y = Z x, length 2n
void spmm(const Graph& g, const Matrix& x, Matrix& y);                  // Y = A X
void csr_apply(const SparseMatrix& a, const Vector& x, Vector& y);

}  // namespace kernels

namespace serial {

void spmv(const Graph& g, const Vector& x, Vector& y);
void laplacian_apply(const Graph& g, const Vector& x, Vector& y);
void z_apply(const Graph& g, double mu, const Vector& x, Vector& y);
void spmm(const Graph& g, const Matrix& x, Matrix& y);
void csr_apply(const SparseMatrix& a, const Vector& x, Vector& y);

}  // namespace serial

/// Convenience wrappers returning fresh vectors.
Vector adjacency_apply(const Graph& g, const Vector& x);
Vector standard_laplacian_apply(const Graph& g, const Vector& x);

}  // namespace walklap
