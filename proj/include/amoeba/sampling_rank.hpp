#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "amoeba/core_model.hpp"

namespace amoeba {

struct ModulusCoords {
  std::vector<double> y;
};

struct ArgCoords {
  std::vector<double> psi;
};

/// The k x 2k logarithmic Gauss matrix A(z) of a space with m = k.
struct GaussMatrix {
  Eigen::MatrixXcd entries;

  /// Stack of real and imaginary parts, 2k x 2k.
  Eigen::MatrixXd realified() const;
  /// Stack of A and its conjugate, 2k x 2k complex.
  Eigen::MatrixXcd with_conjugate() const;
};

enum class ImageMode { Amoeba, Coamoeba };

inline constexpr double kRankTolerance = 1e-8;

/// Rank of `m` counting singular values above rel_tol times the largest.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = kRankTolerance);

/// y_j = |f_j(t)| through the expanded cosine sums; the result is checked
/// against direct complex evaluation and a disagreement beyond 1e-10
/// (relative) raises std::logic_error.
ModulusCoords modulus_coords(const AffineSpaceSpec& spec, const ParameterPoint& p);

/// psi_j = arg f_j(t) in [0, 2pi). Cross-checked modulo pi against the
/// arctangent expansion. Throws UndefinedArgument when some f_j(t) = 0.
ArgCoords arg_coords(const AffineSpaceSpec& spec, const ParameterPoint& p);

/// Jacobians of Log o rho and Arg o rho in the coordinates
/// (log r_1, ..., log r_k, theta_1, ..., theta_k). Rows are the k + m image
/// coordinates, columns the 2k parameter coordinates.
Eigen::MatrixXd amoeba_jacobian(const AffineSpaceSpec& spec, const ParameterPoint& p);
Eigen::MatrixXd coamoeba_jacobian(const AffineSpaceSpec& spec, const ParameterPoint& p);

/// Largest numerical Jacobian rank over n_samples random parameter points
/// (log r uniform in [-2, 2], theta uniform).
int dimension_estimate(const AffineSpaceSpec& spec, ImageMode mode, std::uint64_t n_samples, std::uint64_t seed,
                       double rank_tol = kRankTolerance);

/// Throws NotSquareCase (m != k), DimensionMismatch, or NotOnSpace when z is
/// farther than 1e-9 (relative) from the space.
GaussMatrix gauss_matrix(const AffineSpaceSpec& spec, const ComplexVector& z);

/// True iff the realified Gauss matrix has numerical rank below 2k.
bool is_critical(const AffineSpaceSpec& spec, const ComplexVector& z, double rank_tol = kRankTolerance);

}  // namespace amoeba
