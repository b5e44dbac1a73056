#pragma once

#include "walklap/common.hpp"

#include <functional>

namespace walklap {

/// Eigenvalues ascending; columns of `vectors` are the matching orthonormal
/// eigenvectors (empty when not requested).
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Householder tridiagonalization followed by implicit QL with Wilkinson-style
/// shifts. Only the lower triangle of `a` is read.
SymmetricEigen symmetric_eigen(const Matrix& a, bool want_vectors = true);

/// Same QL iteration on a symmetric tridiagonal matrix given by its diagonal and
/// off-diagonal (length n-1).
SymmetricEigen tridiagonal_eigen(const Vector& diag, const Vector& off, bool want_vectors = true);

/// Q f(Λ) Qᵀ for symmetric `a`.
Matrix symmetric_function(const Matrix& a, const std::function<double(double)>& f);

/// Largest |a_ij - a_ji| relative to max |a_ij|.
double asymmetry(const Matrix& a);

}  // namespace walklap
