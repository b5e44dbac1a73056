#include "walklap/common.hpp"

#include <atomic>

namespace walklap {

namespace {
std::atomic<Index> g_dense_limit{kDefaultDenseLimit};
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::EmptyGraph: return "empty graph";
    case ErrorCode::IndexOutOfRange: return "index out of range";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::SizeLimit: return "size limit exceeded";
    case ErrorCode::InvalidParameter: return "invalid parameter";
    case ErrorCode::NotConverged: return "not converged";
    case ErrorCode::Oscillation: return "oscillating iteration";
    case ErrorCode::RankDeficient: return "rank deficient";
    case ErrorCode::NotPositiveDefinite: return "not positive definite";
    case ErrorCode::NotSymmetric: return "not symmetric";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::BudgetExceeded: return "budget exceeded";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Index dense_limit() noexcept { return g_dense_limit.load(std::memory_order_relaxed); }

void set_dense_limit(Index limit) {
  if (limit < 1) throw Error(ErrorCode::InvalidParameter, "dense limit must be positive");
  g_dense_limit.store(limit, std::memory_order_relaxed);
}

void require_dense(Index n, const char* what) {
  if (n > dense_limit()) {
    throw Error(ErrorCode::SizeLimit, std::string(what) + " needs n <= dense limit " +
                                          std::to_string(dense_limit()) + ", got n = " +
                                          std::to_string(n));
  }
}

void require_same_size(Index expected, Index actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected length " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(actual));
  }
}

}  // namespace walklap
