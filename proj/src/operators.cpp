#include "walklap/operators.hpp"

#include <cmath>
#include <exception>
#include <optional>
#include <sstream>

namespace walklap {

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::Standard: return "standard";
    case Family::KWalk: return "k-walk";
    case Family::WalkTransformed: return "walk-transformed";
    case Family::Btdw: return "btdw";
    case Family::KPath: return "k-path";
  }
  return "unknown";
}

double KPathWeights::operator()(Index k) const {
  const double kd = static_cast<double>(k);
  return kind == Kind::PowerLaw ? std::pow(kd, -beta) : std::exp(-beta * kd);
}

SparseMatrix deformed_laplacian(const Graph& g, double alpha, double mu) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidParameter, "deformed Laplacian needs alpha >= 0");
  }
  require_mu(mu);
  const Index n = g.num_nodes();
  SparseMatrix a;
  a.n = n;
  a.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  a.col_idx.reserve(static_cast<std::size_t>(2 * g.num_edges() + n));
  a.values.reserve(a.col_idx.capacity());
  for (Index i = 0; i < n; ++i) {
    const double diag = 1.0 + alpha * alpha * mu * (static_cast<double>(g.degree(i)) - mu);
    bool placed = false;
    for (Index j : g.neighbors(i)) {
      if (!placed && j > i) {
        a.col_idx.push_back(i);
        a.values.push_back(diag);
        placed = true;
      }
      a.col_idx.push_back(j);
      a.values.push_back(-alpha);
    }
    if (!placed) {
      a.col_idx.push_back(i);
      a.values.push_back(diag);
    }
    a.row_ptr[i + 1] = static_cast<Index>(a.col_idx.size());
  }
  return a;
}

Matrix k_path_transformed_build(const Graph& g, const KPathWeights& weights) {
  const Index n = g.num_nodes();
  require_dense(n, "k-path Laplacian");
  if (!(weights.beta > 0.0)) throw Error(ErrorCode::InvalidParameter, "k-path weights need beta > 0");
  Matrix l = Matrix::Zero(n, n);
#pragma omp parallel for schedule(dynamic) if (n >= 256)
  for (Index i = 0; i < n; ++i) {
    const auto dist = bfs_distances(g, i);
    for (Index j = 0; j < n; ++j) {
      if (j == i || dist[j] == kUnreachable) continue;
      const double w = weights(static_cast<Index>(dist[j]));
      l(i, j) = -w;
      l(i, i) += w;
    }
  }
  return l;
}

// ---------------------------------------------------------------------------


struct LaplacianOperator::Impl {
  Family family = Family::Standard;
  Graph g;
  double mu = 0.0;
  int k = 0;
  std::optional<CoefficientFunction> f;
  OperatorOptions opts;
  double rho = 0.0;
  bool companion = false;  // phi evaluated through Z
  double c0 = 0.0;

  SparseMatrix solve_matrix;  // resolvent families
  Vector solve_diag;
  double resolvent_scale = 1.0;

  Matrix dense_l;  // k-path
  Vector t;        // includes c0
  Vector t_core;   // t - c0

  // Phi v - c0 v.
  Vector phi_core(const Vector& v) const;
  Vector resolvent_solve(const Vector& v) const;
};

Vector LaplacianOperator::Impl::resolvent_solve(const Vector& v) const {
  return pcg_solve(as_operator(solve_matrix), v, &solve_diag, opts.solve).x;
}

Vector LaplacianOperator::Impl::phi_core(const Vector& v) const {
  switch (family) {
    case Family::Standard: return adjacency_apply(g, v);
    case Family::KWalk: return btdw_walk_apply(g, mu, k, v);
    case Family::KPath: return Vector(dense_l.diagonal().cwiseProduct(v) - dense_l * v);
    default: break;
  }
  const CoefficientFunction& fn = *f;
  if (fn.is_polynomial()) {
    const auto& c = fn.series();
    if (!companion) {
      // Horner in A, skipping c_0.
      const int deg = fn.degree();
      if (deg == 0) return Vector::Zero(v.size());
      Vector acc = c[static_cast<std::size_t>(deg)] * v;
      for (int j = deg - 1; j >= 1; --j) acc = adjacency_apply(g, acc) + c[static_cast<std::size_t>(j)] * v;
      return adjacency_apply(g, acc);
    }
    Vector out = Vector::Zero(v.size());
    for (int j = 1; j <= fn.degree(); ++j) {
      if (c[static_cast<std::size_t>(j)] != 0.0) out += c[static_cast<std::size_t>(j)] * btdw_walk_apply(g, mu, j, v);
    }
    return out;
  }
  if (fn.kind() == CoefficientFunction::Kind::Resolvent) {
    return resolvent_scale * resolvent_solve(v) - v;
  }
  // Exponential.
  const double beta = *fn.parameter();
  if (!companion) {
    const LinearOperator a{g.num_nodes(), [this](const Vector& x, Vector& y) { kernels::spmv(g, x, y); }};
    const auto res = lanczos_fun_apply(a, [beta](double x) { return std::expm1(beta * x); }, v, opts.krylov);
    if (!res.converged) {
      throw Error(ErrorCode::NotConverged, "Lanczos for exp(beta A) v stopped at dimension " +
                                               std::to_string(res.dimension));
    }
    return res.value;
  }
  const Index n = g.num_nodes();
  const Vector av = adjacency_apply(g, v);
  Vector w(2 * n);
  w.head(n) = av;
  w.tail(n) = adjacency_apply(g, av) - mu * g.degrees().cwiseProduct(v);
  const LinearOperator z{2 * n, [this](const Vector& x, Vector& y) { kernels::z_apply(g, mu, x, y); }};
  const auto res = arnoldi_fun_apply(
      z, [beta](const Matrix& h) { return phi1_first_column(h, beta); }, w, opts.krylov);
  if (!res.converged) {
    throw Error(ErrorCode::NotConverged, "Arnoldi for phi_1(beta Z) stopped at dimension " +
                                             std::to_string(res.dimension));
  }
  return beta * res.value.head(n);
}

namespace {

std::shared_ptr<LaplacianOperator::Impl> finish(std::shared_ptr<LaplacianOperator::Impl> impl) {
  const Index n = impl->g.num_nodes();
  const Vector ones = Vector::Ones(n);
  if (impl->family == Family::KPath) {
    impl->t_core = impl->dense_l.diagonal();
    impl->t = impl->t_core;
    return impl;
  }
  impl->t_core = impl->phi_core(ones);
  impl->t = impl->t_core.array() + impl->c0;
  return impl;
}

}  // namespace

LaplacianOperator LaplacianOperator::standard(Graph g) {
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Standard;
  impl->g = std::move(g);
  impl->t_core = impl->g.degrees();
  impl->t = impl->t_core;
  return LaplacianOperator(std::move(impl));
}

LaplacianOperator LaplacianOperator::k_walk(Graph g, int k, double mu) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "k-walk Laplacian needs k >= 1");
  require_mu(mu);
  auto impl = std::make_shared<Impl>();
  impl->family = Family::KWalk;
  impl->g = std::move(g);
  impl->k = k;
  impl->mu = mu;
  return LaplacianOperator(finish(std::move(impl)));
}

namespace {

void configure_function(LaplacianOperator::Impl& impl, const CoefficientFunction& f) {
  using Kind = CoefficientFunction::Kind;
  const Graph& g = impl.g;
  const bool needs_radius = f.kind() == Kind::Resolvent ||
                            (f.kind() == Kind::Exponential && !f.parameter());
  if (needs_radius) {
    impl.rho = impl.companion ? spectral_radius_Z(ZOperator(g, impl.mu), impl.opts.power).value
                              : adjacency_radius(g, impl.opts.power).value;
  }
  switch (f.kind()) {
    case Kind::Resolvent: {
      const double alpha = *f.parameter();
      if (!(alpha * impl.rho < 1.0)) {
        std::ostringstream msg;
        msg << "resolvent needs alpha * rho < 1; alpha = " << alpha << ", rho("
            << (impl.companion ? "Z" : "A") << ") = " << impl.rho;
        throw Error(ErrorCode::InvalidParameter, msg.str());
      }
      const double m = impl.companion ? impl.mu : 0.0;
      impl.solve_matrix = deformed_laplacian(g, alpha, m);
      impl.solve_diag = impl.solve_matrix.diagonal();
      impl.resolvent_scale = 1.0 - alpha * alpha * m * m;
      impl.f = f;
      break;
    }
    case Kind::Exponential:
      impl.f = f.parameter() ? f : f.with_parameter(impl.rho > 0.0 ? 1.0 / impl.rho : 1.0);
      break;
    default:
      if (f.series().empty()) throw Error(ErrorCode::InvalidParameter, "empty coefficient series");
      impl.f = f;
      break;
  }
  impl.c0 = impl.f->coefficient(0);
}

}  // namespace

LaplacianOperator LaplacianOperator::walk_transformed(Graph g, const CoefficientFunction& f,
                                                      const OperatorOptions& opts) {
  auto impl = std::make_shared<Impl>();
  impl->family = Family::WalkTransformed;
  impl->g = std::move(g);
  impl->opts = opts;
  configure_function(*impl, f);
  return LaplacianOperator(finish(std::move(impl)));
}

LaplacianOperator LaplacianOperator::btdw(Graph g, double mu, const CoefficientFunction& f,
                                          const OperatorOptions& opts) {
  require_mu(mu);
  auto impl = std::make_shared<Impl>();
  impl->family = Family::Btdw;
  impl->g = std::move(g);
  impl->mu = mu;
  impl->opts = opts;
  impl->companion = mu > 0.0 || opts.companion_at_mu_zero;
  configure_function(*impl, f);
  return LaplacianOperator(finish(std::move(impl)));
}

LaplacianOperator LaplacianOperator::k_path(Graph g, const KPathWeights& weights) {
  auto impl = std::make_shared<Impl>();
  impl->family = Family::KPath;
  impl->dense_l = k_path_transformed_build(g, weights);
  impl->g = std::move(g);
  return LaplacianOperator(finish(std::move(impl)));
}

Family LaplacianOperator::family() const noexcept { return impl_->family; }
Index LaplacianOperator::size() const noexcept { return impl_->g.num_nodes(); }
const Graph& LaplacianOperator::graph() const noexcept { return impl_->g; }
double LaplacianOperator::mu() const noexcept { return impl_->mu; }
int LaplacianOperator::k() const noexcept { return impl_->k; }
const CoefficientFunction* LaplacianOperator::function() const noexcept {
  return impl_->f ? &*impl_->f : nullptr;
}
const Vector& LaplacianOperator::shift() const noexcept { return impl_->t; }
double LaplacianOperator::governing_radius() const noexcept { return impl_->rho; }

void LaplacianOperator::apply(const Vector& v, Vector& out) const {
  require_same_size(size(), v.size(), "Laplacian apply");
  if (impl_->family == Family::KPath) {
    out.noalias() = impl_->dense_l * v;
    return;
  }
  if (impl_->family == Family::Standard) {
    kernels::laplacian_apply(impl_->g, v, out);
    return;
  }
  out = impl_->t_core.cwiseProduct(v) - impl_->phi_core(v);
}

Vector LaplacianOperator::apply(const Vector& v) const {
  Vector out;
  apply(v, out);
  return out;
}

Vector LaplacianOperator::phi_apply(const Vector& v) const {
  require_same_size(size(), v.size(), "phi apply");
  return impl_->phi_core(v) + impl_->c0 * v;
}

namespace {

template <typename Fn>
Matrix by_columns(Index n, bool parallel, Fn&& column) {
  Matrix m(n, n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (Index j = 0; j < n; ++j) {
    try {
      Vector e = Vector::Zero(n);
      e[j] = 1.0;
      m.col(j) = column(e);
    } catch (...) {
#pragma omp critical(walklap_materialize)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return m;
}

}  // namespace

Matrix LaplacianOperator::materialize() const {
  require_dense(size(), "materialize");
  if (impl_->family == Family::KPath) return impl_->dense_l;
  return by_columns(size(), true, [this](const Vector& e) { return apply(e); });
}

Matrix LaplacianOperator::materialize_serial() const {
  require_dense(size(), "materialize");
  if (impl_->family == Family::KPath) return impl_->dense_l;
  return by_columns(size(), false, [this](const Vector& e) { return apply(e); });
}

Vector LaplacianOperator::diagonal() const {
  switch (impl_->family) {
    case Family::Standard: return impl_->g.degrees();
    case Family::KPath: return impl_->dense_l.diagonal();
    default: break;
  }
  const Index n = size();
  require_dense(n, "exact Laplacian diagonal");
  Vector d(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < n; ++i) {
    try {
      Vector e = Vector::Zero(n);
      e[i] = 1.0;
      d[i] = impl_->t_core[i] - impl_->phi_core(e)[i];
    } catch (...) {
#pragma omp critical(walklap_diagonal)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return d;
}

LinearOperator LaplacianOperator::as_linear_operator() const {
  auto impl = impl_;
  LaplacianOperator self(impl);
  return {size(), [self](const Vector& x, Vector& y) { self.apply(x, y); }};
}

std::string LaplacianOperator::describe() const {
  std::ostringstream out;
  out.precision(10);
  out << to_string(impl_->family);
  switch (impl_->family) {
    case Family::KWalk: out << "(k=" << impl_->k << ", mu=" << impl_->mu << ")"; break;
    case Family::WalkTransformed: out << "(" << impl_->f->describe() << ")"; break;
    case Family::Btdw: out << "(mu=" << impl_->mu << ", " << impl_->f->describe() << ")"; break;
    default: break;
  }
  return out.str();
}

LaplacianOperator standard_operator(const Graph& g) { return LaplacianOperator::standard(g); }

Vector standard_apply(const Graph& g, const Vector& v) { return standard_laplacian_apply(g, v); }

Vector k_walk_apply(const Graph& g, int k, double mu, const Vector& v) {
  return LaplacianOperator::k_walk(g, k, mu).apply(v);
}

Vector walk_transformed_apply(const Graph& g, const CoefficientFunction& f, const Vector& v) {
  return LaplacianOperator::walk_transformed(g, f).apply(v);
}

Vector btdw_transformed_apply(const Graph& g, double mu, const CoefficientFunction& f,
                              const Vector& v) {
  return LaplacianOperator::btdw(g, mu, f).apply(v);
}

Vector laplacian_diagonal(const LaplacianOperator& op) { return op.diagonal(); }
Matrix materialize(const LaplacianOperator& op) { return op.materialize(); }

SymmetricEigen dense_spectrum(const LaplacianOperator& op) {
  return dense_spectrum(op.materialize());
}

}  // namespace walklap
