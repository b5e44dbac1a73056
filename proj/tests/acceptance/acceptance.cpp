// Acceptance run: one PASS/FAIL/SKIP line per criterion, tolerances fixed here.
#include "walklap/walklap.hpp"

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace walklap;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

// Collects sub-checks of one criterion; any hard miss fails the criterion.
struct Checks {
  bool ok = true;
  std::ostringstream notes;

  void hard(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " MISS(" << what << ")";
    }
  }
  template <typename T>
  void note(const std::string& key, const T& v) {
    notes << " " << key << "=" << v;
  }
  Outcome done() const { return {ok ? Status::Pass : Status::Fail, notes.str()}; }
};

std::string fmt(double v, int prec = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Random connected graph with n nodes: a spanning tree plus a few chords, or a
// G(n, p) sample when that happens to be connected.
Graph small_random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 8);
  const Index n = size(rng);
  if (rng() % 2) {
    for (int tries = 0; tries < 50; ++tries) {
      std::uniform_real_distribution<double> p(0.25, 0.9);
      const Graph g = gen::erdos_renyi(n, p(rng), rng());
      if (count_components(g) == 1) return g;
    }
  }
  const Index max_extra = n * (n - 1) / 2 - (n - 1);
  std::uniform_int_distribution<Index> extra(0, std::max<Index>(0, std::min<Index>(max_extra, 8)));
  return gen::random_connected(n, extra(rng), rng());
}

// --- 1 ---------------------------------------------------------------------
Outcome walk_counts() {
  constexpr int kGraphs = 200;
  constexpr int kMaxLength = 6;
  constexpr double kTol = 1e-10;
  constexpr double kBudgetSeconds = 120.0;
  const double mus[] = {0.0, 0.25, 0.5, 1.0};

  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  Index largest = 0;
  for (int s = 0; s < kGraphs; ++s) {
    const Graph g = small_random_graph(rng);
    largest = std::max(largest, g.num_nodes());
    const WalkEnumeration walks(g, kMaxLength);
    for (double mu : mus) {
      const auto q = btdw_counts(g, mu, kMaxLength);
      for (int k = 0; k <= kMaxLength; ++k) {
        worst = std::max(worst, max_abs(q.counts[k] - walks.weights(mu, k)));
      }
    }
  }
  const double elapsed = seconds_since(t0);
  Checks c;
  c.hard(worst <= kTol, "max |q_k - brute force| " + fmt(worst));
  c.hard(elapsed < kBudgetSeconds, "runtime " + fmt(elapsed, 3) + " s");
  c.note("graphs", kGraphs);
  c.note("n_max", largest);
  c.note("max_abs_err", fmt(worst, 3));
  c.note("seconds", fmt(elapsed, 3));
  return c.done();
}

// --- 2 ---------------------------------------------------------------------
Outcome trap_stationary() {
  constexpr double kHardTol = 1e-6;
  constexpr double kResTol = 1e-4;
  constexpr double kSoftTol = 5e-3;
  // 1-based node labels 3 and 5.
  constexpr Index kHub = 2, kNode5 = 4;

  const Graph g = gen::trap(5, 8);
  Checks c;

  const auto std_pi = markov_chain(standard_operator(g)).stationary;
  c.hard(std::abs(std_pi[kHub] - 10.0 / 24.0) <= kHardTol, "standard node 3 " + fmt(std_pi[kHub]));
  c.hard(std::abs(std_pi[kNode5] - 1.0 / 24.0) <= kHardTol, "standard node 5 " + fmt(std_pi[kNode5]));
  c.note("standard[3]", fmt(std_pi[kHub], 8));
  c.note("standard[5]", fmt(std_pi[kNode5], 8));

  const double alpha = 1.0 / (2.0 * adjacency_radius(g).value);
  const double res = markov_chain(LaplacianOperator::walk_transformed(g, CoefficientFunction::resolvent(alpha)))
                         .stationary[kNode5];
  c.hard(std::abs(res - 0.0582171) <= kResTol, "res node 5 " + fmt(res));
  c.note("res[5]", fmt(res, 8));

  const double ex = markov_chain(LaplacianOperator::walk_transformed(g, CoefficientFunction::exponential(1.0)))
                        .stationary[kNode5];
  c.note("exp[5]", fmt(ex, 8));
  c.notes << (std::abs(ex - 0.0292211) <= kSoftTol ? " soft(exp)=hit" : " soft(exp)=miss");

  const double nbt = markov_chain(LaplacianOperator::btdw(g, 1.0, CoefficientFunction::exponential(1.0)))
                         .stationary[kNode5];
  c.note("nbt_exp[5]", fmt(nbt, 8));
  if (std::abs(nbt - 0.0504451) <= kSoftTol) {
    c.notes << " soft(nbt_exp)=hit";
  } else {
    // Report which scaling of the nonbacktracking series reproduces the panel.
    constexpr int kTerms = 20;
    auto shifted = [&](int first) {
      std::vector<double> coef(kTerms + 1, 0.0);
      double fact = 1.0;
      for (int k = 1; k <= kTerms; ++k) {
        if (k >= 2) fact *= (k - 1);
        if (k >= first) coef[k] = 1.0 / fact;
      }
      return CoefficientFunction::truncated(coef);
    };
    struct Candidate {
      std::string name;
      std::function<double()> value;
    };
    const std::vector<Candidate> candidates{
        {"c_k=1/k!,laplacian-diagonal",
         [&] {
           return markov_chain(LaplacianOperator::btdw(g, 1.0, CoefficientFunction::exponential(1.0)),
                               Normalization::LaplacianDiagonal)
               .stationary[kNode5];
         }},
        {"beta=1/rho(Z)",
         [&] {
           return markov_chain(LaplacianOperator::btdw(g, 1.0, CoefficientFunction::exponential()))
               .stationary[kNode5];
         }},
        {"c_k=1/(k-1)!,k>=1", [&] { return markov_chain(LaplacianOperator::btdw(g, 1.0, shifted(1))).stationary[kNode5]; }},
        {"c_k=1/(k-1)!,k>=2", [&] { return markov_chain(LaplacianOperator::btdw(g, 1.0, shifted(2))).stationary[kNode5]; }},
    };
    std::string best;
    double best_value = 0.0, best_err = INFINITY;
    for (const auto& cand : candidates) {
      const double v = cand.value();
      if (std::abs(v - 0.0504451) < best_err) {
        best_err = std::abs(v - 0.0504451);
        best = cand.name;
        best_value = v;
      }
    }
    c.notes << " soft(nbt_exp)=miss best_scaling=" << best << " gives " << fmt(best_value, 8);
  }
  return c.done();
}

// --- 3 ---------------------------------------------------------------------
Outcome companion_radius() {
  constexpr double kTol = 1e-8;
  constexpr double kPowerGridTol = 0.01;
  constexpr int kGraphs = 50;

  Checks c;
  const double c4 = spectral_radius_Z(ZOperator(gen::cycle(4), 1.0)).value;
  c.hard(std::abs(c4 - 1.0) <= kTol, "C4 rho(Z) " + fmt(c4));
  c.note("C4_rho_Z", fmt(c4, 12));

  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int s = 0; s < kGraphs; ++s) {
    const Index n = 5 + static_cast<Index>(rng() % 56);
    const Graph g = (s % 2) ? gen::random_connected(n, static_cast<Index>(rng() % (n + 1)), rng())
                            : gen::erdos_renyi(n, 0.15, rng());
    if (g.num_edges() == 0) continue;
    const double rz = spectral_radius_Z(ZOperator(g, 0.0)).value;
    const double ra = adjacency_radius(g).value;
    worst = std::max(worst, std::abs(rz - ra));
  }
  c.hard(worst <= kTol, "mu=0 |rho(Z) - rho(A)| " + fmt(worst));
  c.note("mu0_max_err", fmt(worst, 3));

  try {
    const Graph g = cli::resolve_graph("Pajek/USpowerGrid");
    PowerOptions po;
    po.max_iter = 20000;
    po.tol = 1e-9;
    const double rz = spectral_radius_Z(ZOperator(g, 1.0), po).value;
    c.hard(std::abs(rz - 6.23) <= kPowerGridTol, "USpowerGrid rho(Z) " + fmt(rz));
    c.note("USpowerGrid_rho_Z", fmt(rz, 8));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Io || std::string(e.what()).find("unknown graph") == std::string::npos) throw;
    c.notes << " USpowerGrid=SKIP(dataset absent)";
  }
  return c.done();
}

// --- 4 ---------------------------------------------------------------------
Outcome karate_return_probability() {
  constexpr double kExactTol = 2e-3;
  constexpr double kBand = 0.05;
  constexpr int kSeeds = 10;
  constexpr int kRequired = 8;

  const auto op = standard_operator(gen::karate());
  const Vector times = time_grid(10.0, 30);
  const auto exact = exact_return_probability(op, times);
  Checks c;
  const double p = exact.values[1];
  c.hard(std::abs(times[1] - 0.3448) < 1e-4, "grid point " + fmt(times[1]));
  c.hard(std::abs(p - 0.3626) <= kExactTol, "p(0.3448) " + fmt(p));
  c.note("n", op.size());
  c.note("p(0.3448)", fmt(p, 8));

  int passing = 0;
  double worst = 0.0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    XnysOptions xo;
    xo.probes = 4;
    xo.seed = static_cast<std::uint64_t>(seed);
    const auto est = xnystrace_exp(op, times, xo);
    const double dev = (est.values - exact.values).cwiseAbs().maxCoeff();
    worst = std::max(worst, dev);
    passing += dev <= kBand;
  }
  c.hard(passing >= kRequired, std::to_string(passing) + "/10 seeds within band");
  c.note("seeds_within_0.05", std::to_string(passing) + "/" + std::to_string(kSeeds));
  c.note("worst_dev", fmt(worst, 3));
  return c.done();
}

// --- 5 ---------------------------------------------------------------------
// phi = sum_k alpha^k q_k at mu = 1 from the three-term recurrence, with A
// applied sparsely.
Matrix nbt_resolvent_series(const Graph& g, double alpha) {
  const Index n = g.num_nodes();
  const Vector d = g.degrees();
  Matrix prev = Matrix::Identity(n, n);
  Matrix cur;
  kernels::spmm(g, prev, cur);
  Matrix sum = prev + alpha * cur;
  Matrix next;
  // q_2 = A^2 - D, then q_{k+1} = A q_k + (I - D) q_{k-1}.
  kernels::spmm(g, cur, next);
  next -= Matrix(d.asDiagonal());
  prev.swap(cur);
  cur.swap(next);
  double scale = alpha * alpha;
  for (int k = 2; k < 20000; ++k) {
    const double term = scale * max_abs(cur);
    sum += scale * cur;
    if (term < 1e-18 * max_abs(sum) && k > 10) break;
    kernels::spmm(g, cur, next);
    next.noalias() += (Vector::Ones(n) - d).asDiagonal() * prev;
    prev.swap(cur);
    cur.swap(next);
    scale *= alpha;
    // Keep the iterates O(1): rescale the pair and fold the factor into scale.
    const double m = max_abs(cur);
    if (m > 1e100) {
      cur /= m;
      prev /= m;
      scale *= m;
    }
  }
  return sum;
}

Outcome resolvent_identity() {
  constexpr int kGraphs = 50;
  constexpr double kTol = 1e-9;
  std::mt19937_64 rng(5);
  double worst = 0.0;
  Index largest = 0;
  for (int s = 0; s < kGraphs; ++s) {
    const Index n = 8 + static_cast<Index>(rng() % 121);
    const Graph g = gen::random_connected(n, 1 + static_cast<Index>(rng() % n), rng());
    largest = std::max(largest, n);
    const double alpha = 0.9 / spectral_radius_Z(ZOperator(g, 1.0)).value;
    const Matrix phi = nbt_resolvent_series(g, alpha);
    const Matrix a = Matrix(deformed_laplacian(g, alpha, 1.0).dense());
    const Matrix resid = phi * a - (1.0 - alpha * alpha) * Matrix::Identity(n, n);
    worst = std::max(worst, max_abs(resid));
  }
  Checks c;
  c.hard(worst <= kTol, "max residual " + fmt(worst));
  c.note("graphs", kGraphs);
  c.note("n_max", largest);
  c.note("max_residual", fmt(worst, 3));
  return c.done();
}

// --- 6 ---------------------------------------------------------------------
Outcome operator_invariants() {
  constexpr double kRelTol = 1e-9;
  constexpr double kBudgetSeconds = 300.0;
  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<std::pair<std::string, Graph>> graphs{
      {"path256", gen::path(256)},       {"cycle200", gen::cycle(200)},
      {"star100", gen::star(100)},       {"grid16x16", gen::grid(16, 16)},
      {"tree256", random_tree(256, 9)},  {"trap5_8", gen::trap(5, 8)},
      {"trap31_60", gen::trap(31, 60)},  {"connected120", gen::random_connected(120, 60, 4)}};

  Checks c;
  int operators = 0;
  for (const auto& [name, g] : graphs) {
    const Index n = g.num_nodes();
    const double ra = adjacency_radius(g).value;
    const std::vector<LaplacianOperator> ops{
        LaplacianOperator::standard(g),
        LaplacianOperator::walk_transformed(g, CoefficientFunction::exponential()),
        LaplacianOperator::walk_transformed(g, CoefficientFunction::resolvent(0.5 / ra)),
        LaplacianOperator::btdw(g, 0.5, CoefficientFunction::exponential()),
        LaplacianOperator::btdw(g, 1.0, CoefficientFunction::exponential()),
        LaplacianOperator::btdw(g, 1.0, CoefficientFunction::resolvent(0.5 / ra)),
        LaplacianOperator::k_path(g, {})};
    for (const auto& op : ops) {
      ++operators;
      const std::string who = name + " " + op.describe();
      const Matrix m = op.materialize();
      const double scale = max_abs(m);
      c.hard(op.apply(Vector::Ones(n)).cwiseAbs().maxCoeff() <= kRelTol * scale, "null vector " + who);
      c.hard(asymmetry(m) <= kRelTol, "symmetry " + who);
      bool sign = true;
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
          if (i != j && m(i, j) > kRelTol * scale) sign = false;
      c.hard(sign, "sign pattern " + who);
      const Vector ev = symmetric_eigen(0.5 * (m + m.transpose()), false).values;
      c.hard(ev[0] >= -kRelTol * scale, "psd " + who);
      c.hard(ev[1] > 1e-8 * scale, "nullity one " + who);
      c.hard(ev[n - 1] <= 2.0 * m.diagonal().maxCoeff() * (1 + 1e-12), "gershgorin " + who);
    }

    // mu = 0 reductions: the companion route equals the adjacency route, and
    // BTDW counts equal adjacency powers.
    OperatorOptions via_z;
    via_z.companion_at_mu_zero = true;
    for (const auto& f : {CoefficientFunction::exponential(), CoefficientFunction::resolvent(0.5 / ra)}) {
      const Matrix direct = LaplacianOperator::walk_transformed(g, f).materialize();
      const Matrix companion = LaplacianOperator::btdw(g, 0.0, f, via_z).materialize();
      c.hard(max_abs(direct - companion) <= kRelTol * max_abs(direct), "mu=0 reduction " + name);
    }
    const auto q = btdw_counts(g, 0.0, 4);
    const auto p = adjacency_power_counts(g, 4);
    for (int k = 0; k <= 4; ++k) c.hard(max_abs(q.counts[k] - p.counts[k]) == 0.0, "mu=0 counts " + name);
    const Matrix a3 = p.counts[3];
    const Matrix l3 = Matrix(a3.rowwise().sum().asDiagonal()) - a3;
    c.hard(max_abs(LaplacianOperator::k_walk(g, 3, 0.0).materialize() - l3) <= kRelTol * max_abs(l3),
           "k-walk reduction " + name);
  }
  const double elapsed = seconds_since(t0);
  c.hard(elapsed < kBudgetSeconds, "runtime " + fmt(elapsed, 3) + " s");
  c.note("graphs", graphs.size());
  c.note("operators", operators);
  c.note("seconds", fmt(elapsed, 3));
  return c.done();
}

// --- 7 ---------------------------------------------------------------------
Outcome krylov_and_aaa() {
  constexpr double kKrylovTol = 1e-8;
  constexpr double kPoleTol = 1e-8;
  constexpr double kExpTol = 1e-9;
  constexpr int kTargetPoles = 13;
  constexpr int kPoleSlack = 2;

  Checks c;
  const Graph g = gen::random_connected(200, 150, 31);
  const Matrix lap = Matrix(g.degrees().asDiagonal()) - g.dense_adjacency();
  const Matrix adj = g.dense_adjacency();
  const Vector v = gaussian_probes(200, 1, 3).col(0);
  const double ra = adjacency_radius(g).value;
  const double alpha = 0.5 / ra;
  KrylovOptions ko{1e-14, 200};

  auto rel = [](const Vector& a, const Vector& b) { return (a - b).norm() / b.norm(); };
  const double e_exp = rel(lanczos_fun_apply(as_operator(lap), [](double x) { return std::exp(-x); }, v, ko).value,
                           dense_expm(-lap) * v);
  const double e_phi = rel(lanczos_fun_apply(as_operator(lap),
                                             [](double x) { return std::abs(x) < 1e-12 ? 1.0 : -std::expm1(-x) / x; },
                                             v, ko)
                               .value,
                           dense_phi1(-lap) * v);
  const Matrix ia = Matrix::Identity(200, 200) - alpha * adj;
  const double e_res = rel(lanczos_fun_apply(as_operator(adj), [&](double x) { return 1.0 / (1.0 - alpha * x); }, v, ko)
                               .value,
                           ia.partialPivLu().solve(v));
  c.hard(e_exp <= kKrylovTol, "exp " + fmt(e_exp));
  c.hard(e_phi <= kKrylovTol, "phi1 " + fmt(e_phi));
  c.hard(e_res <= kKrylovTol, "resolvent " + fmt(e_res));
  c.note("lanczos_exp", fmt(e_exp, 3));
  c.note("lanczos_phi1", fmt(e_phi, 3));
  c.note("lanczos_res", fmt(e_res, 3));

  const Vector x = Vector::LinSpaced(200, 0.0, 10.0);
  const Vector y = (1.0 + x.array()).inverse().matrix();
  const PoleSet rat = aaa_poles(x, y);
  const bool single = rat.pole_count() == 1 && rat.real_poles.size() == 1;
  c.hard(single && std::abs(rat.real_poles[0] + 1.0) <= kPoleTol, "1/(1+x) poles");
  if (single) c.note("pole", fmt(rat.real_poles[0], 12));

  AaaOptions tight;
  tight.tol = 1e-11;
  const PoleSet ex = aaa_exp_poles(0.0, 10.0, tight);
  double sampled = 0.0;
  const Vector fresh = Vector::LinSpaced(5001, 0.0, 10.0);
  for (Index i = 0; i < fresh.size(); ++i) {
    sampled = std::max(sampled, std::abs(ex.evaluate(fresh[i]) - std::exp(-fresh[i])));
  }
  c.hard(sampled <= kExpTol, "exp on [0,10] " + fmt(sampled));
  c.note("exp_err", fmt(sampled, 3));
  c.note("exp_degree", ex.degree);

  // Pole count on [0, t* rho(L)] with t* = 100, using a 300 x 300 grid as the
  // stand-in for the road networks.
  const Graph proxy = gen::grid(300, 300);
  PowerOptions po;
  po.max_iter = 400;
  po.tol = 1e-8;
  po.require_convergence = false;
  const double rho_l = power_radius([&](const Vector& in, Vector& out) { kernels::laplacian_apply(proxy, in, out); },
                                    proxy.num_nodes(), po)
                           .value;
  AaaOptions chebfun_like;
  chebfun_like.tol = 1e-13;
  chebfun_like.max_degree = 30;
  const int poles = aaa_exp_poles(0.0, 100.0 * rho_l, chebfun_like).pole_count();
  c.note("proxy_rho_L", fmt(rho_l, 6));
  c.note("proxy_poles", poles);
  c.notes << (std::abs(poles - kTargetPoles) <= kPoleSlack ? " soft(13 poles)=hit" : " soft(13 poles)=miss");
  return c.done();
}

// --- 8 ---------------------------------------------------------------------
Outcome mu_interpolation(const std::filesystem::path& csv_dir) {
  const double mus[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const Graph g = gen::grid(30, 30);
  const double beta = 1.0 / adjacency_radius(g).value;

  Vector times = time_grid(10.0, 101);
  std::vector<Vector> curves;
  for (double mu : mus) {
    const auto op = LaplacianOperator::btdw(g, mu, CoefficientFunction::exponential(beta));
    curves.push_back(exact_return_probability(op, times).values);
  }

  Checks c;
  int ordered = 0, checked = 0;
  for (double t : {1.0, 5.0, 10.0}) {
    const Index k = static_cast<Index>(std::lround(t * 10.0));
    for (std::size_t i = 1; i < curves.size(); ++i) {
      ++checked;
      ordered += curves[i][k] > curves[i - 1][k];
    }
    c.hard(curves.back()[k] > curves.front()[k], "mu=1 > mu=0 at t=" + fmt(t));
    c.note("t=" + fmt(t, 3) + ":mu0", fmt(curves.front()[k], 8));
    c.note("t=" + fmt(t, 3) + ":mu1", fmt(curves.back()[k], 8));
  }
  c.note("ordered_pairs", std::to_string(ordered) + "/" + std::to_string(checked));

  if (!csv_dir.empty()) {
    std::filesystem::create_directories(csv_dir);
    const auto path = csv_dir / "mu_interpolation.csv";
    std::ofstream out(path);
    out << "t";
    for (double mu : mus) out << ",mu_" << mu;
    out << "\n";
    out.precision(12);
    for (Index k = 0; k < times.size(); ++k) {
      out << times[k];
      for (const auto& curve : curves) out << "," << curve[k];
      out << "\n";
    }
    c.note("csv", path.string());
  }
  return c.done();
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path csv_dir;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--csv-dir") == 0 && i + 1 < argc) {
      csv_dir = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--csv-dir DIR]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 walk counts vs enumeration", walk_counts},
      {"2 G58 stationary distributions", trap_stationary},
      {"3 companion spectral radius", companion_radius},
      {"4 karate return probability", karate_return_probability},
      {"5 deformed Laplacian resolvent identity", resolvent_identity},
      {"6 operator invariants", operator_invariants},
      {"7 Krylov and AAA accuracy", krylov_and_aaa},
      {"8 mu interpolation on 30x30 grid", [&] { return mu_interpolation(csv_dir); }},
  };

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string(" exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
    failures += o.status == Status::Fail;
    std::printf("%s  %s  [%.1fs]%s\n", tag, name.c_str(), seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
