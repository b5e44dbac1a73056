#pragma once

#include <optional>
#include <string>
#include <vector>

namespace walklap {

/// Weight sequence {c_k} over walk lengths and its generating function
/// f(x) = sum_k c_k x^k.
class CoefficientFunction {
 public:
  enum class Kind { Resolvent, Exponential, TruncatedSeries, Monomial };

  /// c_k = alpha^k, f(x) = 1 / (1 - alpha x).
  static CoefficientFunction resolvent(double alpha);
  /// c_k = beta^k / k!. Without beta the operator picks the inverse
  /// temperature 1/rho of the governing matrix.
  static CoefficientFunction exponential(std::optional<double> beta = std::nullopt);
  static CoefficientFunction truncated(std::vector<double> coefficients);
  /// c_k = 1, all other coefficients 0. Not a member of the positive class.
  static CoefficientFunction monomial(int k);

  Kind kind() const noexcept { return kind_; }
  /// alpha or beta; nullopt for an automatically scaled exponential.
  std::optional<double> parameter() const noexcept { return param_; }
  int degree() const noexcept { return degree_; }
  const std::vector<double>& series() const noexcept { return series_; }

  /// Copy with the parameter fixed; used once the operator resolved beta.
  CoefficientFunction with_parameter(double value) const;

  double coefficient(int k) const;
  double operator()(double x) const;

  /// Nonnegative coefficients, so the induced Laplacian keeps the M-matrix
  /// sign pattern. Monomials are flagged out regardless.
  bool in_positive_class() const;
  /// True when c_1 > 0, which makes the transformed Laplacian's graph equal
  /// the original graph.
  bool has_linear_term() const { return coefficient(1) > 0.0; }
  bool is_polynomial() const { return kind_ == Kind::TruncatedSeries || kind_ == Kind::Monomial; }

  std::string describe() const;

 private:
  CoefficientFunction(Kind kind, std::optional<double> param, int degree, std::vector<double> series)
      : kind_(kind), param_(param), degree_(degree), series_(std::move(series)) {}

  Kind kind_;
  std::optional<double> param_;
  int degree_ = -1;
  std::vector<double> series_;
};

}  // namespace walklap
