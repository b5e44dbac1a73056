#include "walklap/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace walklap {

Vector diffuse(const LaplacianOperator& op, const Vector& p0, double t, const KrylovOptions& opts) {
  require_same_size(op.size(), p0.size(), "initial distribution");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidParameter, "diffusion time must be >= 0");
  if (t == 0.0) return p0;
  const auto res = lanczos_fun_apply(op.as_linear_operator(), [t](double x) { return std::exp(-t * x); },
                                     p0, opts);
  if (!res.converged) {
    throw Error(ErrorCode::NotConverged, "Lanczos for exp(-t M) p0 stopped at dimension " +
                                             std::to_string(res.dimension));
  }
  return res.value;
}

const char* to_string(Normalization n) noexcept {
  switch (n) {
    case Normalization::TotalCommunicability: return "total-communicability";
    case Normalization::LaplacianDiagonal: return "laplacian-diagonal";
  }
  return "unknown";
}

MarkovChain markov_chain(const LaplacianOperator& op, Normalization norm) {
  const Index n = op.size();
  require_dense(n, "Markov chain");
  const Matrix m = op.materialize();
  MarkovChain chain;
  chain.normalization = norm;
  chain.provenance = op.describe();
  chain.d = norm == Normalization::TotalCommunicability ? op.shift() : Vector(m.diagonal());
  for (Index i = 0; i < n; ++i) {
    if (!(chain.d[i] > 0.0)) {
      throw Error(ErrorCode::Singular, "node " + std::to_string(i) +
                                           " has a nonpositive normalization entry; isolated nodes have no chain");
    }
  }
  chain.P = Matrix::Identity(n, n) - chain.d.cwiseInverse().asDiagonal() * m;
  if (norm == Normalization::LaplacianDiagonal) chain.P.diagonal().setZero();
  chain.stationary = chain.d / chain.d.sum();

  const double gap = spectral_gap(chain);
  if (gap < 1e-3) {
    chain.power_check = std::numeric_limits<double>::quiet_NaN();
  } else {
    Vector pi = Vector::Constant(n, 1.0 / n);
    const int steps = static_cast<int>(std::min(100000.0, std::ceil(40.0 / gap)));
    for (int s = 0; s < steps; ++s) {
      pi = chain.P.transpose() * pi;
      pi /= pi.sum();
    }
    chain.power_check = (pi - chain.stationary).cwiseAbs().maxCoeff();
  }
  return chain;
}

Vector chain_step(const MarkovChain& chain, const Vector& p) {
  require_same_size(chain.P.rows(), p.size(), "chain_step distribution");
  return chain.P.transpose() * p;
}

Vector chain_eigenvalues(const MarkovChain& chain) {
  // D^{1/2} P D^{-1/2} = I - D^{-1/2} M D^{-1/2} is symmetric whenever D P is.
  const Vector s = chain.d.cwiseSqrt();
  Matrix sym = s.asDiagonal() * chain.P * s.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose()).eval();
  Vector ev = symmetric_eigen(sym, false).values;
  return ev.reverse();
}

double spectral_gap(const MarkovChain& chain) {
  const Vector ev = chain_eigenvalues(chain);
  if (ev.size() < 2) return 1.0;
  std::vector<double> mods(static_cast<std::size_t>(ev.size()));
  for (Index i = 0; i < ev.size(); ++i) mods[i] = std::abs(ev[i]);
  std::sort(mods.begin(), mods.end(), std::greater<>());
  return 1.0 - mods[1];
}

std::vector<ExplorationSnapshot> exploration_history(const MarkovChain& chain, Index start,
                                                     std::vector<int> checkpoints,
                                                     double support_tol) {
  const Index n = chain.P.rows();
  if (start < 0 || start >= n) throw Error(ErrorCode::IndexOutOfRange, "exploration start node");
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (!checkpoints.empty() && checkpoints.front() < 0) {
    throw Error(ErrorCode::InvalidParameter, "checkpoints must be nonnegative");
  }
  Vector p = Vector::Zero(n);
  p[start] = 1.0;
  Vector peak = p;
  std::vector<ExplorationSnapshot> out;
  int step = 0;
  for (int target : checkpoints) {
    for (; step < target; ++step) {
      p = chain_step(chain, p);
      peak = peak.cwiseMax(p);
    }
    ExplorationSnapshot snap{target, {}};
    for (Index i = 0; i < n; ++i) {
      if (peak[i] > support_tol) snap.visited.push_back(i);
    }
    out.push_back(std::move(snap));
  }
  return out;
}

}  // namespace walklap
