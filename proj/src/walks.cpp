#include "walklap/walks.hpp"

#include "walklap/kernels.hpp"

#include <cmath>

namespace walklap {

void require_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "mu must lie in [0, 1], got " + std::to_string(mu));
  }
}

namespace {

void require_length(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidParameter, "walk length must be nonnegative");
}

}  // namespace

WalkCountSequence adjacency_power_counts(const Graph& g, int max_length) {
  return btdw_counts(g, 0.0, max_length);
}

WalkCountSequence btdw_counts(const Graph& g, double mu, int max_length) {
  require_mu(mu);
  require_length(max_length);
  const Index n = g.num_nodes();
  require_dense(n, "walk counts");
  WalkCountSequence seq;
  seq.mu = mu;
  seq.counts.reserve(static_cast<std::size_t>(max_length) + 1);
  seq.counts.push_back(Matrix::Identity(n, n));
  if (max_length == 0) return seq;

  const Matrix a = g.dense_adjacency();
  seq.counts.push_back(a);
  if (max_length == 1) return seq;

  const Vector& d = g.degrees();
  Matrix q2 = a * a;
  q2.diagonal() -= mu * d;
  seq.counts.push_back(std::move(q2));

  const Vector shift = mu * (Vector::Constant(n, mu) - d);
  for (int k = 2; k < max_length; ++k) {
    Matrix next = a * seq.counts[k];
    next.noalias() += shift.asDiagonal() * seq.counts[k - 1];
    seq.counts.push_back(std::move(next));
  }
  return seq;
}

Vector btdw_walk_apply(const Graph& g, double mu, int k, const Vector& v) {
  require_mu(mu);
  require_length(k);
  require_same_size(g.num_nodes(), v.size(), "btdw_walk_apply");
  if (k == 0) return v;
  Vector prev = v;
  Vector cur = adjacency_apply(g, v);
  if (k == 1) return cur;
  const Vector& d = g.degrees();
  Vector next = adjacency_apply(g, cur) - mu * d.cwiseProduct(v);
  const Vector shift = mu * (Vector::Constant(g.num_nodes(), mu) - d);
  Vector tmp;
  for (int j = 2; j < k; ++j) {
    prev.swap(cur);
    cur.swap(next);
    kernels::spmv(g, cur, tmp);
    next = tmp + shift.cwiseProduct(prev);
  }
  return next;
}

WalkEnumeration::WalkEnumeration(const Graph& g, int max_length, std::uint64_t budget)
    : n_(g.num_nodes()), max_length_(max_length) {
  require_length(max_length);
  table_.assign(static_cast<std::size_t>(max_length + 1) * n_ * n_ * (max_length + 1), 0.0);
  for (Index s = 0; s < n_; ++s) enumerate(g, s, budget);
}

WalkEnumeration::WalkEnumeration(const Graph& g, int max_length, Index source,
                                 std::uint64_t budget)
    : n_(g.num_nodes()), max_length_(max_length) {
  require_length(max_length);
  if (source < 0 || source >= n_) throw Error(ErrorCode::IndexOutOfRange, "walk source out of range");
  table_.assign(static_cast<std::size_t>(max_length + 1) * n_ * n_ * (max_length + 1), 0.0);
  enumerate(g, source, budget);
}

std::size_t WalkEnumeration::slot(int k, Index i, Index j, int b) const {
  const auto L = static_cast<std::size_t>(max_length_ + 1);
  const auto n = static_cast<std::size_t>(n_);
  return ((static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i)) * n +
          static_cast<std::size_t>(j)) * L + static_cast<std::size_t>(b);
}

void WalkEnumeration::enumerate(const Graph& g, Index source, std::uint64_t budget) {
  struct Frame {
    Index node;
    Index prev;  // node visited two steps before the next move, or -1
    int depth;
    int backtracks;
  };
  std::vector<Frame> stack{{source, -1, 0, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (++visited_ > budget) {
      throw Error(ErrorCode::BudgetExceeded, "walk enumeration exceeded " + std::to_string(budget) +
                                                 " partial walks");
    }
    table_[slot(f.depth, source, f.node, f.backtracks)] += 1.0;
    if (f.depth == max_length_) continue;
    for (Index next : g.neighbors(f.node)) {
      stack.push_back({next, f.node, f.depth + 1, f.backtracks + (next == f.prev ? 1 : 0)});
    }
  }
}

double WalkEnumeration::weight(double mu, int k, Index i, Index j) const {
  if (k < 0 || k > max_length_) throw Error(ErrorCode::InvalidParameter, "walk length outside enumerated range");
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error(ErrorCode::IndexOutOfRange, "walk endpoint out of range");
  double w = 0.0;
  for (int b = 0; b <= max_length_; ++b) {
    const double c = table_[slot(k, i, j, b)];
    if (c != 0.0) w += c * std::pow(1.0 - mu, b);
  }
  return w;
}

Matrix WalkEnumeration::weights(double mu, int k) const {
  Matrix w(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) w(i, j) = weight(mu, k, i, j);
  return w;
}

double brute_force_walk_weight(const Graph& g, double mu, int k, Index i, Index j,
                               std::uint64_t budget) {
  require_mu(mu);
  const WalkEnumeration e(g, k, i, budget);
  return e.weight(mu, k, i, j);
}

ZOperator::ZOperator(Graph g, double mu) : graph_(std::move(g)), mu_(mu) { require_mu(mu); }

void ZOperator::apply(const Vector& x, Vector& y) const { kernels::z_apply(graph_, mu_, x, y); }

Vector ZOperator::operator()(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

Matrix ZOperator::dense() const {
  const Index n = graph_.num_nodes();
  require_dense(n, "dense companion operator");
  Matrix z = Matrix::Zero(2 * n, 2 * n);
  z.topRightCorner(n, n).setIdentity();
  z.bottomLeftCorner(n, n).diagonal() =
      mu_ * (Vector::Constant(n, mu_) - graph_.degrees());
  z.bottomRightCorner(n, n) = graph_.dense_adjacency();
  return z;
}

Vector z_apply(const ZOperator& z, const Vector& v) { return z(v); }

}  // namespace walklap
