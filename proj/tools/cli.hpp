#pragma once

#include "walklap/walklap.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace walklap::cli {

/// Operator selection shared by the flag form (--family/--function/...) and
/// the compact form used by `compare` ("btdw-exp:mu=0.5").
struct OperatorSpec {
  enum class Function { Resolvent, Exponential };

  Family family = Family::Standard;
  Function function = Function::Exponential;
  double mu = 0.0;
  std::optional<double> alpha;
  std::optional<double> beta;
  int k = 1;
  int truncation = 0;  // 0: full series
  KPathWeights::Kind kpath_kind = KPathWeights::Kind::Exponential;

  std::string label() const;
};

OperatorSpec parse_operator_spec(const std::string& text);

/// Default resolvent parameter 1 / (2 rho(A)).
double default_alpha(const Graph& g);

LaplacianOperator build_operator(const Graph& g, const OperatorSpec& spec);

/// "builtin:<generator spec>", a file path, or a dataset name looked up in
/// $WALKLAP_DATA_DIR (with and without .mtx / .txt, '/' mapped to '_').
Graph resolve_graph(const std::string& source, bool largest_only = true);

inline constexpr const char* kDataDirEnv = "WALKLAP_DATA_DIR";

/// Runs one command. Returns the process exit status; diagnostics and errors go
/// to `err`, results to `out` unless --output names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace walklap::cli
