#pragma once

#include <vector>

#include "amoeba/laurent.hpp"

namespace amoeba {

/// The compact torus T_r of points whose coordinate log-moduli equal `r`.
struct TorusFiber {
  LogPoint r;
};

enum class FiberVerdict { Inside, Outside, Indeterminate };

struct CertificateReport {
  LaurentPolynomial G;
  /// Minimum of sum_j |f_j|^2 over the uniform angle grid on the fiber.
  double grid_min = 0.0;
  /// Same minimum after coordinate-descent refinement.
  double refined_min = 0.0;
  int grid_size = 0;
  /// max over the grid of |G(z) - sum_j |f_j(z)|^2|.
  double identity_residual = 0.0;
  /// Lipschitz bound of sqrt(sum_j |f_j|^2) w.r.t. the max-norm on angles.
  double lipschitz = 0.0;
  FiberVerdict verdict = FiberVerdict::Indeterminate;
};

inline constexpr int kMaxFiberDim = 3;
inline constexpr double kInsideThreshold = 1e-6;
inline constexpr double kLipschitzSafety = 10.0;

/// g(z) = sum_alpha conj(a_alpha) w^alpha with w_i = r_i^2 / z_i, so that
/// f g = |f|^2 on the fiber.
LaurentPolynomial conjugate_reflection(const LaurentPolynomial& f, const TorusFiber& fiber);

/// g(z) = sum_alpha conj(a_alpha) e^{-2i<theta, alpha>} z^alpha, so that
/// f g = |f|^2 on the argument fiber Arg^{-1}(theta).
LaurentPolynomial coamoeba_reflection(const LaurentPolynomial& f, const TorusPoint& angles);

/// Points of the fiber at the given angles.
ComplexVector fiber_point(const TorusFiber& fiber, const std::vector<double>& angles);

/// Approximate minimum of |f| over the fiber: uniform angle grid followed by
/// `refine_steps` rounds of coordinate descent from the best grid points,
/// then a damped Gauss-Newton polish of (Re f, Im f).
/// Throws DimensionTooLarge for more than three variables.
double fiber_min(const LaurentPolynomial& f, const TorusFiber& fiber, int grid_per_dim, int refine_steps);

/// Builds G = sum_j f_j g_j for the fiber and decides whether the fiber meets
/// the common zero set of the generators: Inside when the refined minimum of
/// sum_j |f_j|^2 is below 1e-6; Outside when every angle cell of width h
/// satisfies sqrt(sum_j |f_j|^2) > 10 L h at its centre (cells failing this
/// are subdivided); Indeterminate otherwise.
CertificateReport certificate(const std::vector<LaurentPolynomial>& generators, const TorusFiber& fiber,
                              int grid_per_dim, int refine_steps);

}  // namespace amoeba
