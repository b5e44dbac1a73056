#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace walklap {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Failure categories surfaced by the library. Callers that need to react to a
/// specific condition (e.g. a CLI mapping errors to messages) switch on these.
enum class ErrorCode {
  Parse,
  EmptyGraph,
  IndexOutOfRange,
  DimensionMismatch,
  SizeLimit,
  InvalidParameter,
  NotConverged,
  Oscillation,
  RankDeficient,
  NotPositiveDefinite,
  NotSymmetric,
  Singular,
  BudgetExceeded,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Node count above which dense materialization, dense walk counts and dense
/// eigendecompositions are refused. One process-wide value shared by every
/// module.
inline constexpr Index kDefaultDenseLimit = 4096;

Index dense_limit() noexcept;
void set_dense_limit(Index limit);

/// Throws ErrorCode::SizeLimit naming `what` and the active limit.
void require_dense(Index n, const char* what);

void require_same_size(Index expected, Index actual, const char* what);

}  // namespace walklap
