#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "amoeba/types.hpp"

namespace amoeba {

/// A k-dimensional affine linear space in (C*)^{k+m}, given by the
/// parametrization t -> (t_1, ..., t_k, f_1(t), ..., f_m(t)) with affine forms
/// f_j(t) = b_j + sum_i a_ji t_i.
class AffineSpaceSpec {
 public:
  /// Throws InvalidSpec on empty or non-finite data, mismatched shapes, or an
  /// identically vanishing form.
  AffineSpaceSpec(Eigen::MatrixXcd a, Eigen::VectorXcd b);

  int k() const { return static_cast<int>(a_.cols()); }
  int m() const { return static_cast<int>(a_.rows()); }
  int ambient_dim() const { return k() + m(); }
  const Eigen::MatrixXcd& a() const { return a_; }
  const Eigen::VectorXcd& b() const { return b_; }

  /// f_j(t), no torus checks.
  Complex form(int j, const ComplexVector& t) const;
  /// b_j's modulus plus sum_i |a_ji| |t_i|; the natural magnitude of f_j near t.
  double form_scale(int j, const ComplexVector& t) const;

  bool operator==(const AffineSpaceSpec& other) const;

 private:
  Eigen::MatrixXcd a_;
  Eigen::VectorXcd b_;
};

/// Multiplicative torus translation relating an input space to its canonical
/// form. Vectors indexed by coordinates of the *input* space.
struct TranslationRecord {
  std::vector<double> log_shift;
  std::vector<double> arg_shift;
  /// Canonical parameter t' = param_shift (.) t.
  ComplexVector param_shift;
  /// Canonical form j is input form row_order[j].
  std::vector<int> row_order;

  ComplexVector canonical_parameter(const ComplexVector& t) const;
  ComplexVector input_parameter(const ComplexVector& canonical_t) const;
  LogPoint to_input(const LogPoint& canonical) const;
  LogPoint to_canonical(const LogPoint& input) const;
  TorusPoint to_input(const TorusPoint& canonical) const;
  TorusPoint to_canonical(const TorusPoint& input) const;

 private:
  int canonical_index(int input_coord) const;
};

struct CanonicalSpec {
  AffineSpaceSpec spec;
  TranslationRecord record;
};

inline constexpr double kPivotTolerance = 1e-12;
inline constexpr double kAngleTolerance = 1e-9;
inline constexpr double kRealnessTolerance = 1e-9;

/// Translates the space so that its first form reads 1 + sum_i t_i. The pivot
/// row is the first form with |b_j| > 1e-12 unless overridden.
/// Throws AllConstantsZero or ZeroRowCoefficient.
CanonicalSpec normalize(const AffineSpaceSpec& spec, std::optional<int> pivot_row = std::nullopt);

bool is_canonical(const AffineSpaceSpec& spec);

/// rho(t) = (t, f_1(t), ..., f_m(t)). Throws DimensionMismatch or OffTorus.
ComplexVector evaluate(const AffineSpaceSpec& spec, const ComplexVector& t);

LogPoint log_map(const ComplexVector& z);
TorusPoint arg_map(const ComplexVector& z);

/// True when some torus translation makes every coefficient real.
bool is_real(const AffineSpaceSpec& spec, double tol = kRealnessTolerance);

/// Relative zero test used for torus membership of computed coordinates.
inline bool is_effectively_zero(const Complex& value, double scale) {
  return std::abs(value) <= 1e-12 * std::max(scale, 1e-300);
}

}  // namespace amoeba
