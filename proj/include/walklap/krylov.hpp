#pragma once

#include "walklap/kernels.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace walklap {

/// Matrix-free linear map of fixed size. `apply` must be reentrant.
struct LinearOperator {
  Index size = 0;
  std::function<void(const Vector&, Vector&)> apply;

  Vector operator()(const Vector& x) const {
    Vector y;
    apply(x, y);
    return y;
  }
};

LinearOperator as_operator(const SparseMatrix& a);
LinearOperator as_operator(const Matrix& a);

// ---------------------------------------------------------------------------
// Lanczos

struct LanczosDecomposition {
  Matrix Q;             // n x k, orthonormal columns
  Vector alpha;         // diagonal of T, length k
  Vector beta;          // off-diagonal of T, length k - 1
  double beta_next = 0; // coupling to the (k+1)-th vector
  double start_norm = 0;
  bool breakdown = false;

  Index dimension() const { return alpha.size(); }
  Matrix T() const;
};

/// k steps of Lanczos with full reorthogonalization. Stops early on breakdown.
LanczosDecomposition lanczos_decomposition(const LinearOperator& op, const Vector& v, int k);

struct KrylovOptions {
  double tol = 1e-12;
  int max_dim = 300;
};

struct KrylovResult {
  Vector value;
  int dimension = 0;
  bool converged = false;
  double change = 0.0;  // relative difference of the last two iterates
};

/// ||v|| Q_k f(T_k) e_1, growing k until successive iterates agree to tol
/// relative. Returns the best iterate with converged = false at max_dim.
KrylovResult lanczos_fun_apply(const LinearOperator& op, const std::function<double(double)>& f,
                               const Vector& v, const KrylovOptions& opts = {});

/// Arnoldi with full reorthogonalization for nonsymmetric operators; `dense_f`
/// maps the Hessenberg matrix H to f(H) e_1.
KrylovResult arnoldi_fun_apply(const LinearOperator& op,
                               const std::function<Vector(const Matrix&)>& dense_f,
                               const Vector& v, const KrylovOptions& opts = {});

/// phi_1(s H) e_1 via the exponential of the augmented matrix [[sH, e_1], [0, 0]].
Vector phi1_first_column(const Matrix& h, double s);
/// Dense phi_1(X) = X^{-1}(exp(X) - I), computed without inverting X.
Matrix dense_phi1(const Matrix& x);
Matrix dense_expm(const Matrix& x);

// ---------------------------------------------------------------------------
// Linear solvers

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 10000;
};

struct SolveResult {
  Vector x;
  int iterations = 0;
  double relative_residual = 0.0;
};

enum class Preconditioner { None, Jacobi };

/// Preconditioned conjugate gradients. Throws NotPositiveDefinite when a
/// search direction has nonpositive curvature and NotConverged at max_iter.
SolveResult pcg_solve(const LinearOperator& a, const Vector& b, const Vector* jacobi_diagonal,
                      const SolveOptions& opts = {});
SolveResult pcg_solve(const SparseMatrix& a, const Vector& b, Preconditioner pre,
                      const SolveOptions& opts = {});

/// MINRES for (op - shift I) x = b with symmetric op. Consistent singular
/// systems converge to the solution orthogonal to the null space.
SolveResult minres_shifted_solve(const LinearOperator& op, double shift, const Vector& b,
                                 const SolveOptions& opts = {});

struct ComplexSolveResult {
  Vector re;
  Vector im;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// (op - (a + ib) I)(x + iy) = r + is through the real symmetric embedding
/// [[op - a, b], [b, -(op - a)]] [x; y] = [r; -s].
ComplexSolveResult minres_shifted_solve(const LinearOperator& op, std::complex<double> shift,
                                        const Vector& rhs_re, const Vector& rhs_im,
                                        const SolveOptions& opts = {});

// ---------------------------------------------------------------------------
// AAA rational approximation

struct PoleSet {
  std::vector<double> real_poles;
  /// One representative (positive imaginary part) per conjugate pair.
  std::vector<std::complex<double>> complex_pairs;
  double max_error = 0.0;  // on the sample set
  int degree = 0;

  // Barycentric form of the approximant.
  Vector support;
  Vector values;
  Vector weights;

  int pole_count() const {
    return static_cast<int>(real_poles.size() + 2 * complex_pairs.size());
  }
  double evaluate(double x) const;
  /// All poles, pairs expanded, in construction order.
  std::vector<std::complex<double>> all_poles() const;
};

struct AaaOptions {
  double tol = 1e-9;  // relative to max |g|
  int max_degree = 16;
};

PoleSet aaa_poles(const Vector& x, const Vector& g, const AaaOptions& opts = {});

/// 500 log-spaced samples on [max(1e-8, a), b] plus 0, for exp(-x) on [a, b].
Vector exp_sample_points(double a, double b, int count = 500);
PoleSet aaa_exp_poles(double a, double b, const AaaOptions& opts = {});

// ---------------------------------------------------------------------------
// Block rational Arnoldi

struct RationalArnoldiOptions {
  double inner_tol = 1e-8;
  int inner_max_iter = 20000;
  /// Number of finite poles to use, cycling through the pole set; 0 uses each
  /// pole once.
  int num_poles = 0;
  /// Poles are divided by this factor before use (t* for exp(-t L), t <= t*).
  double pole_scale = 1.0;
};

/// op V K = V H with V orthonormal. Columns of K and H come in blocks of size
/// block_size, one block per polynomial step and two per complex pair.
struct RationalKrylovPencil {
  Matrix V;
  Matrix H;
  Matrix K;
  Index block_size = 0;
  /// Dimension of the projection space V(:, 0:reduced_dim).
  Index reduced_dim = 0;
  /// Vᵀ op V over the projection space. When empty, reduce_pencil falls back to
  /// the top square part of H K^{-1}, which covers the basis without its
  /// closing block.
  Matrix rayleigh;
  std::vector<std::complex<double>> poles_used;
  int inner_iterations = 0;
};

RationalKrylovPencil block_rational_arnoldi(const LinearOperator& op, const Matrix& omega,
                                            const PoleSet& poles,
                                            const RationalArnoldiOptions& opts = {});

/// Eigendecomposition of the reduced matrix, symmetrized, cached so
/// many time points can reuse it.
struct ReducedPencil {
  Matrix basis;       // n x r, the projection space
  Vector eigenvalues; // r
  Matrix eigenvectors;
};

ReducedPencil reduce_pencil(const RationalKrylovPencil& pencil);

/// (1/n) V exp(-t S) Vᵀ Omega with S the reduced matrix.
Matrix reduced_pencil_expm(const ReducedPencil& reduced, double t, const Matrix& omega);
Matrix reduced_pencil_expm(const RationalKrylovPencil& pencil, double t, const Matrix& omega);

/// Thin QR keeping Q; throws RankDeficient if some |R_ii| <= rank_tol * max |R_jj|.
Matrix orthonormal_basis(const Matrix& block, double rank_tol = 1e-12);

}  // namespace walklap
