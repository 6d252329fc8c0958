#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mixent {

/// A b×d real matrix; rows are the outer (ℓ_p) index, columns the inner (ℓ_q) index.
using MixedMatrix = Eigen::MatrixXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Raised when an operation is called outside its stated preconditions.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when the hypotheses of a conditional rate statement fail.
struct HypothesisError : std::domain_error {
  HypothesisError(std::string which, const std::string& what)
      : std::domain_error(what), hypothesis(std::move(which)) {}
  std::string hypothesis;
};

/// Raised when a certificate does not re-verify from its raw data.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a combinatorial or geometric construction cannot reach its target.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A quasi-norm exponent in (0, ∞].
class Exponent {
 public:
  constexpr Exponent() = default;
  explicit Exponent(double value);

  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }
  /// Accepts "inf", decimals and simple fractions such as "1/2".
  static Exponent parse(std::string_view text);

  [[nodiscard]] double value() const { return value_; }
  [[nodiscard]] bool is_inf() const { return std::isinf(value_); }
  /// 1/value, exactly 0 for ∞.
  [[nodiscard]] double reciprocal() const { return is_inf() ? 0.0 : 1.0 / value_; }
  [[nodiscard]] std::string str() const;

  friend bool operator==(Exponent a, Exponent b) { return a.value_ == b.value_; }
  friend auto operator<=>(Exponent a, Exponent b) { return a.value_ <=> b.value_; }

 private:
  double value_ = 1.0;
};

inline Exponent min(Exponent a, Exponent b) { return a < b ? a : b; }

/// Exponents of the embedding ℓ_p^b(ℓ_q^d) → ℓ_r^b(ℓ_u^d).
struct ExponentTuple {
  Exponent p, q, r, u;

  [[nodiscard]] bool is_embedding_monotone() const { return p <= r && q <= u; }
  /// 1/p − 1/r
  [[nodiscard]] double outer_gap() const { return p.reciprocal() - r.reciprocal(); }
  /// 1/q − 1/u
  [[nodiscard]] double inner_gap() const { return q.reciprocal() - u.reciprocal(); }
  [[nodiscard]] std::string str() const;
};

struct Shape {
  int b = 1;
  int d = 1;
  [[nodiscard]] int size() const { return b * d; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Accumulates (Σ t_i^e)^{1/e} over nonnegative magnitudes, with max for e = ∞.
template <typename Real>
class LpAccumulator {
 public:
  explicit LpAccumulator(Exponent e) : e_(e.value()) {
    if (e.is_inf()) kind_ = Kind::Max;
    else if (e_ == 1.0) kind_ = Kind::One;
    else if (e_ == 2.0) kind_ = Kind::Two;
    else kind_ = Kind::General;
  }

  void add(Real t) {
    switch (kind_) {
      case Kind::Max: acc_ = std::max(acc_, t); break;
      case Kind::One: acc_ += t; break;
      case Kind::Two: acc_ += t * t; break;
      case Kind::General: if (t > 0) acc_ += std::pow(t, Real(e_)); break;
    }
  }

  [[nodiscard]] Real result() const {
    switch (kind_) {
      case Kind::Max:
      case Kind::One: return acc_;
      case Kind::Two: return std::sqrt(acc_);
      case Kind::General: return acc_ > 0 ? std::pow(acc_, Real(1) / Real(e_)) : Real(0);
    }
    return acc_;
  }

 private:
  enum class Kind { Max, One, Two, General };
  double e_;
  Kind kind_;
  Real acc_ = 0;
};

/// ‖x‖_{p,q} = (Σ_i (Σ_j |x_ij|^q)^{p/q})^{1/p}, max-replacement for ∞.
template <typename Derived>
typename Derived::RealScalar mixed_norm(const Eigen::MatrixBase<Derived>& x, Exponent p, Exponent q) {
  using Real = typename Derived::RealScalar;
  LpAccumulator<Real> outer(p);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    LpAccumulator<Real> inner(q);
    for (Eigen::Index j = 0; j < x.cols(); ++j) inner.add(std::abs(x(i, j)));
    outer.add(inner.result());
  }
  return outer.result();
}

/// Flat ℓ_e norm of a vector expression.
template <typename Derived>
typename Derived::RealScalar lp_norm(const Eigen::MatrixBase<Derived>& x, Exponent e) {
  LpAccumulator<typename Derived::RealScalar> acc(e);
  for (Eigen::Index i = 0; i < x.size(); ++i) acc.add(std::abs(x(i)));
  return acc.result();
}

/// Mixed distance between two row-major flattened b×d matrices.
inline double mixed_distance(const double* a, const double* b, int rows, int cols, Exponent p, Exponent q) {
  LpAccumulator<double> outer(p);
  for (int i = 0; i < rows; ++i) {
    LpAccumulator<double> inner(q);
    for (int j = 0; j < cols; ++j) inner.add(std::abs(a[i * cols + j] - b[i * cols + j]));
    outer.add(inner.result());
  }
  return outer.result();
}

struct QuasiNormConstant {
  double alpha = 1.0;
};

/// Smallest α with ‖x+y‖ ≤ α(‖x‖+‖y‖) for a γ-norm: 1 if γ ≥ 1, else 2^{1/γ−1}.
QuasiNormConstant quasi_norm_constant(Exponent gamma);

/// Quasi-norm constant of ℓ_p^b(ℓ_q^d), governed by min{1, p, q}.
QuasiNormConstant mixed_quasi_norm_constant(Exponent p, Exponent q);

/// ‖id: ℓ_p^b(ℓ_q^d) → ℓ_r^b(ℓ_u^d)‖.
double identity_norm(const ExponentTuple& params, Shape shape);

/// M_{2ε} ≤ N_ε ≤ M_ε.
bool sandwich_check(long long packing_count_at_2eps, long long covering_count_at_eps,
                    long long packing_count_at_eps);

}  // namespace mixent
