#pragma once

#include <vector>

#include "amoeba/core_model.hpp"

namespace amoeba {

/// Linear relation c_yj2 y_j^2 + c_y12 y_1^2 + c_r2 r^2 + c_const = 0 between
/// the moduli r = |t|, y_1 = |f_1(t)| and y_j = |f_j(t)| of a real line.
struct QuadricCoeffs {
  int form = 0;  // 1-based index j of f_j, 2 <= j <= m
  double c_yj2 = -1.0;
  double c_y12 = 0.0;
  double c_r2 = 0.0;
  double c_const = 0.0;

  double evaluate(double r, double y1, double yj) const {
    return c_yj2 * yj * yj + c_y12 * y1 * y1 + c_r2 * r * r + c_const;
  }
};

struct LineMembership {
  bool inside = false;
  /// Arguments theta in [0, 2pi) of parameters t = r e^{i theta} of the input
  /// space whose image is the queried point.
  std::vector<double> witnesses;
};

struct FiberSolutions {
  ComplexVector points;
  std::size_t count() const { return points.size(); }
};

inline constexpr double kLineTolerance = 1e-9;
inline constexpr double kFiberDedupRadius = 1e-7;

/// One quadric per form j >= 2. Throws NotALine, NotReal or ZeroConstant.
std::vector<QuadricCoeffs> real_line_quadrics(const AffineSpaceSpec& spec);

/// (W_j + T_j)^2 - |b_j|^2 |a_j|^2 (4r^2 - (y_1^2 - r^2 - 1)^2) sin^2(theta_aj - theta_bj),
/// evaluated in canonical coordinates at the parameter point. `form` is the
/// 1-based index j >= 2 of the canonical form.
double complex_line_residual(const AffineSpaceSpec& spec, const ParameterPoint& p, int form);

/// Decides whether x lies in the amoeba of the line by solving the first
/// modulus equation for cos(theta) and checking the others (in log scale, to
/// within tol) at the resulting candidates.
LineMembership line_amoeba_membership(const AffineSpaceSpec& spec, const LogPoint& x, double tol = kLineTolerance);

/// The exact fiber Log^{-1}(x) of the line, as parameters t.
FiberSolutions line_fiber_solutions(const AffineSpaceSpec& spec, const LogPoint& x, double tol = kLineTolerance,
                                    double dedup_radius = kFiberDedupRadius);

}  // namespace amoeba
