#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <unistd.h>

#ifndef WALKLAP_VERSION
#define WALKLAP_VERSION "unknown"
#endif

namespace walklap::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorCode::Parse, "bad number for " + what + ": '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorCode::Parse, what + " must be an integer");
  return static_cast<int>(v);
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(12) << v;
  return o.str();
}

}  // namespace

std::string OperatorSpec::label() const {
  std::ostringstream o;
  const char* fn = function == Function::Resolvent ? "res" : "exp";
  switch (family) {
    case Family::Standard: return "standard";
    case Family::KWalk: o << "k-walk:k=" << k << ":mu=" << mu; return o.str();
    case Family::WalkTransformed: o << "transformed-" << fn; break;
    case Family::Btdw: o << "btdw-" << fn << ":mu=" << mu; break;
    case Family::KPath:
      o << "k-path:weights=" << (kpath_kind == KPathWeights::Kind::PowerLaw ? "power" : "exp");
      if (beta) o << ":beta=" << *beta;
      return o.str();
  }
  if (alpha) o << ":alpha=" << *alpha;
  if (beta) o << ":beta=" << *beta;
  if (truncation > 0) o << ":K=" << truncation;
  return o.str();
}

OperatorSpec parse_operator_spec(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw Error(ErrorCode::Parse, "empty operator spec");
  OperatorSpec s;
  const std::string& name = parts[0];
  if (name == "standard") {
    s.family = Family::Standard;
  } else if (name == "k-walk") {
    s.family = Family::KWalk;
  } else if (name == "k-path") {
    s.family = Family::KPath;
  } else {
    const auto dash = name.rfind('-');
    const std::string base = dash == std::string::npos ? name : name.substr(0, dash);
    const std::string fn = dash == std::string::npos ? "exp" : name.substr(dash + 1);
    if (base == "transformed") {
      s.family = Family::WalkTransformed;
    } else if (base == "btdw") {
      s.family = Family::Btdw;
    } else if (base == "nbt") {
      s.family = Family::Btdw;
      s.mu = 1.0;
    } else {
      throw Error(ErrorCode::Parse, "unknown operator family '" + name + "'");
    }
    if (fn == "res") {
      s.function = OperatorSpec::Function::Resolvent;
    } else if (fn == "exp") {
      s.function = OperatorSpec::Function::Exponential;
    } else {
      throw Error(ErrorCode::Parse, "unknown function '" + fn + "' in '" + name + "'");
    }
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "expected key=value, got '" + parts[i] + "'");
    const std::string key = parts[i].substr(0, eq), val = parts[i].substr(eq + 1);
    if (key == "mu") {
      s.mu = parse_double(val, key);
    } else if (key == "alpha") {
      s.alpha = parse_double(val, key);
    } else if (key == "beta") {
      s.beta = parse_double(val, key);
    } else if (key == "k") {
      s.k = parse_int(val, key);
    } else if (key == "K") {
      s.truncation = parse_int(val, key);
    } else if (key == "weights") {
      if (val == "power") s.kpath_kind = KPathWeights::Kind::PowerLaw;
      else if (val == "exp") s.kpath_kind = KPathWeights::Kind::Exponential;
      else throw Error(ErrorCode::Parse, "weights must be power or exp");
    } else {
      throw Error(ErrorCode::Parse, "unknown key '" + key + "' in operator spec");
    }
  }
  return s;
}

double default_alpha(const Graph& g) {
  const double rho = adjacency_radius(g).value;
  if (rho <= 0.0) throw Error(ErrorCode::InvalidParameter, "graph has no edges; give --alpha explicitly");
  return 1.0 / (2.0 * rho);
}

LaplacianOperator build_operator(const Graph& g, const OperatorSpec& s) {
  switch (s.family) {
    case Family::Standard: return LaplacianOperator::standard(g);
    case Family::KWalk: return LaplacianOperator::k_walk(g, s.k, s.mu);
    case Family::KPath: return LaplacianOperator::k_path(g, KPathWeights{s.kpath_kind, s.beta.value_or(1.0)});
    case Family::WalkTransformed:
    case Family::Btdw: break;
  }
  const bool btdw = s.family == Family::Btdw;
  CoefficientFunction f = CoefficientFunction::exponential(s.beta);
  if (s.function == OperatorSpec::Function::Resolvent) {
    f = CoefficientFunction::resolvent(s.alpha ? *s.alpha : default_alpha(g));
  }
  if (s.truncation > 0) {
    if (!f.parameter()) {
      const double rho = btdw && s.mu > 0.0 ? spectral_radius_Z(ZOperator(g, s.mu)).value
                                            : adjacency_radius(g).value;
      if (rho <= 0.0) throw Error(ErrorCode::InvalidParameter, "graph has no edges; give --beta explicitly");
      f = f.with_parameter(1.0 / rho);
    }
    std::vector<double> c(static_cast<std::size_t>(s.truncation) + 1);
    for (int k = 0; k <= s.truncation; ++k) c[k] = f.coefficient(k);
    f = CoefficientFunction::truncated(std::move(c));
  }
  return btdw ? LaplacianOperator::btdw(g, s.mu, f) : LaplacianOperator::walk_transformed(g, f);
}

Graph resolve_graph(const std::string& source, bool largest_only) {
  if (source.empty()) throw Error(ErrorCode::InvalidParameter, "no graph given (--graph)");
  Graph g;
  const std::string builtin = "builtin:";
  if (source.rfind(builtin, 0) == 0) {
    g = gen::from_spec(source.substr(builtin.size()));
  } else if (fs::is_regular_file(source)) {
    g = load_graph_file(source);
  } else {
    const char* dir = std::getenv(kDataDirEnv);
    std::string flat = source;
    for (char& c : flat) if (c == '/') c = '_';
    std::vector<fs::path> tried;
    if (dir && *dir) {
      for (const std::string& base : {source, flat, fs::path(source).filename().string()}) {
        for (const char* ext : {"", ".mtx", ".txt", ".edges"}) {
          tried.push_back(fs::path(dir) / (base + ext));
        }
      }
    }
    const auto hit = std::find_if(tried.begin(), tried.end(), [](const fs::path& p) { return fs::is_regular_file(p); });
    if (hit == tried.end()) {
      throw Error(ErrorCode::Io, "unknown graph '" + source + "': not builtin:<spec>, not a file" +
                                     (dir && *dir ? ", not found under $" + std::string(kDataDirEnv) + "=" + dir
                                                  : ", and $" + std::string(kDataDirEnv) + " is unset"));
    }
    g = load_graph_file(hit->string());
  }
  if (largest_only && count_components(g) > 1) g = largest_component(g).graph;
  return g;
}

namespace {

struct Globals {
  std::string output;
  bool json = false;
  int threads = 0;
  Index dense_limit = kDefaultDenseLimit;
  bool verbose = false;
  std::uint64_t seed = 1;
};

struct GraphArgs {
  std::string source;
  bool all_components = false;
};

struct OpArgs {
  std::string family = "standard";
  std::string function = "exp";
  double mu = kUnset;
  double alpha = kUnset;
  double beta = kUnset;
  int k = 1;
  int truncation = 0;
  std::string kpath = "exp";

  OperatorSpec spec() const {
    OperatorSpec s;
    std::string name = family;
    if (family == "transformed" || family == "btdw" || family == "nbt") name += "-" + function;
    else if (family != "standard" && family != "k-walk" && family != "k-path")
      throw Error(ErrorCode::Parse, "unknown --family '" + family + "'");
    s = parse_operator_spec(name);
    if (!std::isnan(mu)) {
      if (family == "nbt" && mu != 1.0) throw Error(ErrorCode::InvalidParameter, "--family nbt fixes mu = 1");
      s.mu = mu;
    }
    if (!std::isnan(alpha)) s.alpha = alpha;
    if (!std::isnan(beta)) s.beta = beta;
    s.k = k;
    s.truncation = truncation;
    if (kpath == "power") s.kpath_kind = KPathWeights::Kind::PowerLaw;
    else if (kpath != "exp") throw Error(ErrorCode::Parse, "--kpath-weights must be power or exp");
    if (s.function == OperatorSpec::Function::Exponential && s.alpha)
      throw Error(ErrorCode::InvalidParameter, "--alpha applies to the resolvent; use --beta for exp");
    if (s.function == OperatorSpec::Function::Resolvent && s.beta)
      throw Error(ErrorCode::InvalidParameter, "--beta applies to the exponential; use --alpha for res");
    return s;
  }
};

// Everything a command produces; written in one go at the end so a failure
// never leaves a partial file behind.
struct Result {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  json doc = json::object();
  bool json_only = false;
};

class Logger {
 public:
  Logger(std::ostream& err, bool on) : err_(err), on_(on) {}
  template <typename T>
  void operator()(const std::string& key, const T& value) const {
    if (on_) err_ << "walklap: " << key << "=" << value << "\n";
  }

 private:
  std::ostream& err_;
  bool on_;
};

std::string header_text(const std::string& command, std::uint64_t seed) {
  return std::string("walklap ") + WALKLAP_VERSION + "; command: " + command + "; seed: " + std::to_string(seed);
}

std::string render(const Result& r, const Globals& g, const std::string& command) {
  std::ostringstream o;
  if (g.json || r.json_only) {
    json doc;
    doc["header"] = {{"version", WALKLAP_VERSION}, {"command", command}, {"seed", g.seed}};
    if (!r.columns.empty()) {
      json rows = json::array();
      for (const auto& row : r.rows) {
        json obj;
        for (std::size_t c = 0; c < r.columns.size(); ++c) {
          const std::string& cell = row[c];
          char* end = nullptr;
          const double v = std::strtod(cell.c_str(), &end);
          if (cell.empty() || !end || *end != '\0') obj[r.columns[c]] = cell;
          else if (cell.find_first_of(".eEn") == std::string::npos) obj[r.columns[c]] = std::stoll(cell);
          else obj[r.columns[c]] = v;
        }
        rows.push_back(std::move(obj));
      }
      doc["rows"] = std::move(rows);
    }
    for (const auto& [k, v] : r.doc.items()) doc[k] = v;
    o << doc.dump() << "\n";
    return o.str();
  }
  o << "# " << header_text(command, g.seed) << "\n";
  for (std::size_t c = 0; c < r.columns.size(); ++c) o << (c ? "," : "") << r.columns[c];
  o << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) o << (c ? "," : "") << row[c];
    o << "\n";
  }
  return o.str();
}

void write_atomic(const std::string& path, const std::string& text) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(static_cast<long long>(::getpid()));
  try {
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
      f << text;
      f.flush();
      if (!f) throw Error(ErrorCode::Io, "write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target);
  } catch (const fs::filesystem_error& e) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, e.what());
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

Vector read_vector(const std::string& path, Index n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open input vector " + path);
  Vector v = Vector::Zero(n);
  std::string line;
  Index next = 0;
  bool keyed = false, plain = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    if (std::isalpha(static_cast<unsigned char>(line[first]))) continue;  // column header
    const auto comma = line.find(',');
    const std::string where = path + ":" + std::to_string(lineno);
    if (comma != std::string::npos) {
      keyed = true;
      const Index i = parse_int(line.substr(first, comma - first), where);
      if (i < 0 || i >= n) throw Error(ErrorCode::IndexOutOfRange, where + ": node " + std::to_string(i));
      std::string rest = line.substr(comma + 1);
      rest.erase(rest.find_last_not_of(" \t\r") + 1);
      v[i] = parse_double(rest, where);
    } else {
      plain = true;
      if (next >= n) throw Error(ErrorCode::DimensionMismatch, where + ": more than n = " + std::to_string(n) + " values");
      std::string val = line.substr(first);
      val.erase(val.find_last_not_of(" \t\r") + 1);
      v[next++] = parse_double(val, where);
    }
  }
  if (keyed && plain) throw Error(ErrorCode::Parse, path + ": mixes node,value and bare value lines");
  if (plain && next != n) {
    throw Error(ErrorCode::DimensionMismatch,
                path + ": " + std::to_string(next) + " values for n = " + std::to_string(n));
  }
  return v;
}

void node_table(Result& r, const Vector& v, const std::string& value_name = "value") {
  r.columns = {"node", value_name};
  for (Index i = 0; i < v.size(); ++i) r.rows.push_back({std::to_string(i), fmt(v[i])});
}

Normalization parse_normalization(const std::string& s) {
  if (s == "total-communicability" || s == "tc") return Normalization::TotalCommunicability;
  if (s == "laplacian-diagonal" || s == "diag") return Normalization::LaplacianDiagonal;
  throw Error(ErrorCode::Parse, "unknown normalization '" + s + "'");
}

ReturnProbabilityCurve curve_for(const LaplacianOperator& op, const Vector& times, const std::string& method,
                                 Index probes, std::uint64_t seed) {
  if (method == "exact") return exact_return_probability(op, times);
  if (method == "stochastic") {
    XnysOptions xo;
    xo.probes = probes;
    xo.seed = seed;
    return xnystrace_exp(op, times, xo);
  }
  if (method == "hutchinson") return hutchinson_lanczos(op.as_linear_operator(), times, probes, seed);
  throw Error(ErrorCode::Parse, "unknown --method '" + method + "' (exact, stochastic, hutchinson)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

  Globals glob;
  GraphArgs ga;
  OpArgs oa;

  CLI::App app{"Walk-based graph Laplacians: operators, diffusion, Markov chains and return probabilities.\n"
               "Graphs: builtin:<spec> (karate, path:N, cycle:N, complete:N, star:N, grid:RxC, trap:L:M,\n"
               "tree:N[:SEED], er:N:P[:SEED]), a .mtx / edge-list file, or a dataset name under $" +
                   std::string(kDataDirEnv) + ".",
               "walklap"};
  app.set_version_flag("--version", std::string("walklap ") + WALKLAP_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o,--output", glob.output, "Write to this file (atomically) instead of stdout");
  app.add_flag("--json", glob.json, "JSON instead of CSV");
  app.add_option("--threads", glob.threads, "Cap on OpenMP worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--dense-limit", glob.dense_limit, "Node count above which dense work is refused")
      ->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", glob.verbose, "Iteration diagnostics on stderr");
  app.add_option("--seed", glob.seed, "Random seed (recorded in the output header)");

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("-g,--graph", ga.source, "Graph source")->required();
    sub->add_flag("--all-components", ga.all_components, "Keep every component instead of the largest");
  };
  auto add_operator = [&](CLI::App* sub) {
    sub->add_option("--family", oa.family, "standard, k-walk, transformed, btdw, nbt, k-path")->capture_default_str();
    sub->add_option("--function", oa.function, "res or exp (transformed, btdw, nbt)")->capture_default_str();
    sub->add_option("--mu", oa.mu, "Backtrack downweight in [0, 1] (btdw, k-walk)");
    sub->add_option("--alpha", oa.alpha, "Resolvent parameter (default 1/(2 rho(A)))");
    sub->add_option("--beta", oa.beta, "Exponential inverse temperature or k-path decay (default 1/rho)");
    sub->add_option("--k", oa.k, "Walk length for k-walk")->capture_default_str();
    sub->add_option("--truncation", oa.truncation, "Truncate the series after K terms (0: full)")
        ->capture_default_str();
    sub->add_option("--kpath-weights", oa.kpath, "k-path weights: exp (e^-beta k) or power (k^-beta)")
        ->capture_default_str();
  };

  auto* info = app.add_subcommand("info", "Sizes, components and spectral radii");
  add_graph(info);
  double info_mu = 1.0;
  info->add_option("--mu", info_mu, "mu for rho(Z)")->capture_default_str();

  auto* apply = app.add_subcommand("apply", "Apply an operator to a vector read from CSV");
  add_graph(apply);
  add_operator(apply);
  std::string input;
  apply->add_option("-i,--input", input, "Vector CSV: one value per line or node,value")->required();

  auto* diffuse_cmd = app.add_subcommand("diffuse", "p0 exp(-t M)");
  add_graph(diffuse_cmd);
  add_operator(diffuse_cmd);
  double time = 1.0;
  Index start = 0;
  diffuse_cmd->add_option("-t,--time", time, "Diffusion time")->capture_default_str();
  diffuse_cmd->add_option("--start", start, "Start node for p0 = e_start")->capture_default_str();
  diffuse_cmd->add_option("-i,--input", input, "Initial distribution CSV (overrides --start)");

  std::string normalization = "total-communicability";
  auto* stationary = app.add_subcommand("stationary", "Stationary distribution of the induced chain");
  add_graph(stationary);
  add_operator(stationary);
  stationary->add_option("--normalization", normalization, "total-communicability or laplacian-diagonal")
      ->capture_default_str();

  auto* explore = app.add_subcommand("explore", "Nodes reached from a start node by given steps");
  add_graph(explore);
  add_operator(explore);
  std::string checkpoints = "20,40,80";
  double support_tol = kDefaultSupportTol;
  explore->add_option("--start", start, "Start node")->capture_default_str();
  explore->add_option("--checkpoints", checkpoints, "Comma-separated step counts")->capture_default_str();
  explore->add_option("--support-tol", support_tol, "Probability that counts as visited")->capture_default_str();
  explore->add_option("--normalization", normalization, "total-communicability or laplacian-diagonal")
      ->capture_default_str();

  auto* gap = app.add_subcommand("gap", "Spectral gap of the induced chain");
  add_graph(gap);
  add_operator(gap);
  gap->add_option("--normalization", normalization, "total-communicability or laplacian-diagonal")
      ->capture_default_str();

  std::string method = "exact";
  Index probes = 4;
  double tmax = 10.0;
  int points = 30;
  bool log_time = false;
  auto add_curve = [&](CLI::App* sub) {
    sub->add_option("--method", method, "exact, stochastic or hutchinson")->capture_default_str();
    sub->add_option("--probes", probes, "Probe vectors M")->capture_default_str();
    sub->add_option("--tmax", tmax, "Largest time")->capture_default_str();
    sub->add_option("--points", points, "Time points")->capture_default_str();
    sub->add_flag("--log-time", log_time, "Logarithmic time grid on [tmax/1000, tmax]");
  };
  auto* retprob = app.add_subcommand("return-prob", "Average return probability (1/n) tr exp(-t M)");
  add_graph(retprob);
  add_operator(retprob);
  add_curve(retprob);

  auto* compare = app.add_subcommand("compare", "Return-probability curves for several families");
  add_graph(compare);
  add_curve(compare);
  std::string families = "standard";
  compare->add_option("--families", families,
                      "Comma-separated specs, e.g. standard,btdw-exp:mu=0.5,transformed-res:alpha=0.1,"
                      "k-walk:k=2,k-path:beta=1,nbt-exp")
      ->capture_default_str();

  bool unmatched = false;
  compare->add_flag("--unmatched", unmatched,
                    "Let each exponential family pick its own 1/rho instead of the shared 1/rho(A)");

  auto* reproduce = app.add_subcommand("reproduce", "Reproduction pipelines");
  std::string target;
  std::string panel = "all";
  reproduce->add_option("target", target, "g58: stationary distributions on the trap graph G_{5,8}")
      ->required()
      ->check(CLI::IsMember({"g58"}));
  reproduce->add_option("--family", panel, "all, standard, res, exp, k-path, nbt-exp")->capture_default_str();
  reproduce->add_option("--normalization", normalization, "total-communicability or laplacian-diagonal")
      ->capture_default_str();

  auto* spectral = app.add_subcommand("spectral", "rho(A), rho(Z) per mu and extremal Laplacian eigenvalues (JSON)");
  add_graph(spectral);
  add_operator(spectral);
  std::string mus = "0,0.25,0.5,0.75,1";
  spectral->add_option("--mus", mus, "Comma-separated mu values")->capture_default_str();

  auto* counts = app.add_subcommand("counts", "Dense walk-count matrix q_k as i,j,value (small graphs)");
  add_graph(counts);
  int count_k = 2;
  double count_mu = 0.0;
  counts->add_option("--k", count_k, "Walk length")->capture_default_str();
  counts->add_option("--mu", count_mu, "Backtrack downweight")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const Logger log(err, glob.verbose);
  try {
    if (glob.threads > 0) omp_set_num_threads(glob.threads);
    set_dense_limit(glob.dense_limit);
    log("threads", glob.threads > 0 ? glob.threads : omp_get_max_threads());
    log("dense_limit", glob.dense_limit);

    auto load = [&]() {
      Graph g = resolve_graph(ga.source, !ga.all_components);
      log("n", g.num_nodes());
      log("m", g.num_edges());
      return g;
    };
    auto make_op = [&](const Graph& g, const OperatorSpec& s) {
      auto op = build_operator(g, s);
      log("operator", op.describe());
      if (op.governing_radius() > 0.0) log("governing_radius", op.governing_radius());
      return op;
    };
    auto check_node = [](Index i, const Graph& g) {
      if (i < 0 || i >= g.num_nodes()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "node " + std::to_string(i) + " outside [0, " + std::to_string(g.num_nodes()) + ")");
      }
    };

    Result r;
    if (*info) {
      const Graph g = load();
      const double ra = adjacency_radius(g).value;
      const auto rz = spectral_radius_Z(ZOperator(g, info_mu));
      log("rho_Z_iterations", rz.iterations);
      r.columns = {"n", "m", "components", "max_degree", "rho_A", "mu", "rho_Z"};
      r.rows.push_back({std::to_string(g.num_nodes()), std::to_string(g.num_edges()),
                        std::to_string(count_components(g)), std::to_string(g.max_degree()), fmt(ra),
                        fmt(info_mu), fmt(rz.value)});
    } else if (*apply) {
      const Graph g = load();
      const auto op = make_op(g, oa.spec());
      node_table(r, op.apply(read_vector(input, g.num_nodes())));
    } else if (*diffuse_cmd) {
      const Graph g = load();
      const auto op = make_op(g, oa.spec());
      Vector p0;
      if (!input.empty()) {
        p0 = read_vector(input, g.num_nodes());
      } else {
        check_node(start, g);
        p0 = Vector::Zero(g.num_nodes());
        p0[start] = 1.0;
      }
      node_table(r, diffuse(op, p0, time));
    } else if (*stationary) {
      const Graph g = load();
      const auto chain = markov_chain(make_op(g, oa.spec()), parse_normalization(normalization));
      log("power_check", chain.power_check);
      node_table(r, chain.stationary);
    } else if (*explore) {
      const Graph g = load();
      check_node(start, g);
      const auto chain = markov_chain(make_op(g, oa.spec()), parse_normalization(normalization));
      std::vector<int> steps;
      for (const auto& s : split(checkpoints, ',')) steps.push_back(parse_int(s, "--checkpoints"));
      const auto hist = exploration_history(chain, start, steps, support_tol);
      r.columns = {"step", "visited", "nodes"};
      json cp = json::object();
      for (const auto& snap : hist) {
        std::string nodes;
        for (Index v : snap.visited) nodes += (nodes.empty() ? "" : " ") + std::to_string(v);
        r.rows.push_back({std::to_string(snap.step), std::to_string(snap.visited.size()), nodes});
        cp[std::to_string(snap.step)] = snap.visited;
      }
      if (glob.json) {
        r.columns.clear();
        r.rows.clear();
        r.doc["start"] = start;
        r.doc["checkpoints"] = std::move(cp);
      }
    } else if (*gap) {
      const Graph g = load();
      const auto op = make_op(g, oa.spec());
      const auto chain = markov_chain(op, parse_normalization(normalization));
      r.columns = {"operator", "normalization", "gap"};
      r.rows.push_back({oa.spec().label(), to_string(chain.normalization), fmt(spectral_gap(chain))});
    } else if (*retprob) {
      const Graph g = load();
      const auto op = make_op(g, oa.spec());
      const auto c = curve_for(op, time_grid(tmax, points, log_time), method, probes, glob.seed);
      log("method", to_string(c.method));
      if (c.method == CurveMethod::Stochastic) {
        log("poles", c.pole_count);
        log("krylov_dim", c.krylov_dim);
      }
      r.columns = {"t", "p_hat", "err_est"};
      for (Index k = 0; k < c.times.size(); ++k) r.rows.push_back({fmt(c.times[k]), fmt(c.values[k]), fmt(c.errors[k])});
    } else if (*compare) {
      const Graph g = load();
      const Vector times = time_grid(tmax, points, log_time);
      std::vector<OperatorSpec> specs;
      const auto names = split(families, ',');
      for (const auto& s : names) specs.push_back(parse_operator_spec(s));
      if (specs.empty()) throw Error(ErrorCode::InvalidParameter, "--families is empty");
      // One inverse temperature for every exponential family, so curves differ
      // only by the walks they count.
      if (!unmatched) {
        std::optional<double> beta;
        for (auto& s : specs) {
          if ((s.family == Family::WalkTransformed || s.family == Family::Btdw) &&
              s.function == OperatorSpec::Function::Exponential && !s.beta && s.truncation == 0) {
            if (!beta) {
              const double rho = adjacency_radius(g).value;
              if (rho <= 0.0) throw Error(ErrorCode::InvalidParameter, "graph has no edges");
              beta = 1.0 / rho;
              log("matched_beta", *beta);
            }
            s.beta = beta;
          }
        }
      }
      // Validate every family before running any of them.
      std::vector<LaplacianOperator> ops;
      for (const auto& s : specs) ops.push_back(make_op(g, s));
      r.columns = {"t"};
      std::vector<Vector> values;
      for (std::size_t f = 0; f < ops.size(); ++f) {
        r.columns.push_back(names[f]);
        values.push_back(curve_for(ops[f], times, method, probes, glob.seed).values);
      }
      for (Index k = 0; k < times.size(); ++k) {
        std::vector<std::string> row{fmt(times[k])};
        for (const auto& v : values) row.push_back(fmt(v[k]));
        r.rows.push_back(std::move(row));
      }
    } else if (*reproduce) {
      const Graph g = gen::trap(5, 8);
      const Normalization norm = parse_normalization(normalization);
      std::vector<std::pair<std::string, OperatorSpec>> panels;
      const auto add = [&](const std::string& name, const std::string& spec) {
        if (panel == "all" || panel == name) panels.emplace_back(name, parse_operator_spec(spec));
      };
      add("standard", "standard");
      add("res", "transformed-res");
      add("exp", "transformed-exp:beta=1");
      add("k-path", "k-path:weights=exp:beta=1");
      add("nbt-exp", "nbt-exp:beta=1");
      if (panels.empty()) throw Error(ErrorCode::InvalidParameter, "unknown --family '" + panel + "' for g58");
      r.columns = {"node", "label"};
      std::vector<Vector> pis;
      for (const auto& [name, spec] : panels) {
        r.columns.push_back(name);
        pis.push_back(markov_chain(make_op(g, spec), norm).stationary);
      }
      for (Index i = 0; i < g.num_nodes(); ++i) {
        std::vector<std::string> row{std::to_string(i), std::to_string(i + 1)};
        for (const auto& pi : pis) row.push_back(fmt(pi[i]));
        r.rows.push_back(std::move(row));
      }
    } else if (*spectral) {
      const Graph g = load();
      r.json_only = true;
      r.doc["n"] = g.num_nodes();
      r.doc["m"] = g.num_edges();
      r.doc["rho_A"] = adjacency_radius(g).value;
      json rz = json::array();
      for (const auto& s : split(mus, ',')) {
        const double mu = parse_double(s, "--mus");
        rz.push_back({{"mu", mu}, {"rho_Z", spectral_radius_Z(ZOperator(g, mu)).value}});
      }
      r.doc["rho_Z"] = std::move(rz);
      const auto op = make_op(g, oa.spec());
      json lap = {{"operator", op.describe()}};
      if (g.num_nodes() <= dense_limit()) {
        const auto eig = dense_spectrum(op);
        const Index n = eig.values.size();
        lap["lambda_min"] = eig.values[0];
        lap["lambda_2"] = n > 1 ? eig.values[1] : eig.values[0];
        lap["lambda_max"] = eig.values[n - 1];
      } else {
        lap["skipped"] = "n = " + std::to_string(g.num_nodes()) + " exceeds dense limit " +
                         std::to_string(dense_limit());
      }
      r.doc["laplacian"] = std::move(lap);
    } else if (*counts) {
      const Graph g = load();
      if (count_k < 0) throw Error(ErrorCode::InvalidParameter, "--k must be >= 0");
      const auto seq = btdw_counts(g, count_mu, count_k);
      const Matrix& q = seq.counts.back();
      r.columns = {"i", "j", "value"};
      for (Index i = 0; i < q.rows(); ++i)
        for (Index j = 0; j < q.cols(); ++j)
          if (q(i, j) != 0.0) r.rows.push_back({std::to_string(i), std::to_string(j), fmt(q(i, j))});
    }

    const std::string text = render(r, glob, command);
    if (glob.output.empty()) {
      out << text;
    } else {
      write_atomic(glob.output, text);
      log("wrote", glob.output);
    }
    return 0;
  } catch (const Error& e) {
    err << "walklap: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "walklap: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace walklap::cli
