#include "walklap/coefficients.hpp"

#include "walklap/common.hpp"

#include <cmath>
#include <sstream>

namespace walklap {

CoefficientFunction CoefficientFunction::resolvent(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidParameter, "resolvent needs alpha > 0");
  }
  return {Kind::Resolvent, alpha, -1, {}};
}

CoefficientFunction CoefficientFunction::exponential(std::optional<double> beta) {
  if (beta && (!(*beta > 0.0) || !std::isfinite(*beta))) {
    throw Error(ErrorCode::InvalidParameter, "exponential needs beta > 0");
  }
  return {Kind::Exponential, beta, -1, {}};
}

CoefficientFunction CoefficientFunction::truncated(std::vector<double> coefficients) {
  if (coefficients.empty()) throw Error(ErrorCode::InvalidParameter, "empty coefficient series");
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidParameter, "non-finite coefficient");
  }
  const int degree = static_cast<int>(coefficients.size()) - 1;
  return {Kind::TruncatedSeries, std::nullopt, degree, std::move(coefficients)};
}

CoefficientFunction CoefficientFunction::monomial(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidParameter, "monomial degree must be nonnegative");
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  return {Kind::Monomial, std::nullopt, k, std::move(c)};
}

CoefficientFunction CoefficientFunction::with_parameter(double value) const {
  switch (kind_) {
    case Kind::Resolvent: return resolvent(value);
    case Kind::Exponential: return exponential(value);
    default: return *this;
  }
}

double CoefficientFunction::coefficient(int k) const {
  if (k < 0) return 0.0;
  switch (kind_) {
    case Kind::Resolvent: return std::pow(*param_, k);
    case Kind::Exponential: {
      const double beta = param_.value_or(1.0);
      return std::exp(k * std::log(beta) - std::lgamma(k + 1.0));
    }
    case Kind::TruncatedSeries:
    case Kind::Monomial: return k <= degree_ ? series_[static_cast<std::size_t>(k)] : 0.0;
  }
  return 0.0;
}

double CoefficientFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::Resolvent: return 1.0 / (1.0 - *param_ * x);
    case Kind::Exponential: return std::exp(param_.value_or(1.0) * x);
    case Kind::TruncatedSeries:
    case Kind::Monomial: {
      double acc = 0.0;
      for (int k = degree_; k >= 0; --k) acc = acc * x + series_[static_cast<std::size_t>(k)];
      return acc;
    }
  }
  return 0.0;
}

bool CoefficientFunction::in_positive_class() const {
  if (kind_ == Kind::Monomial) return false;
  for (double c : series_) {
    if (c < 0.0) return false;
  }
  return true;
}

std::string CoefficientFunction::describe() const {
  std::ostringstream out;
  out.precision(12);
  switch (kind_) {
    case Kind::Resolvent: out << "resolvent(alpha=" << *param_ << ")"; break;
    case Kind::Exponential:
      if (param_) out << "exp(beta=" << *param_ << ")";
      else out << "exp(beta=auto)";
      break;
    case Kind::TruncatedSeries: out << "series(K=" << degree_ << ")"; break;
    case Kind::Monomial: out << "monomial(k=" << degree_ << ")"; break;
  }
  return out.str();
}

}  // namespace walklap
