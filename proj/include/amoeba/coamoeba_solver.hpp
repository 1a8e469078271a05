#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amoeba/core_model.hpp"

namespace amoeba {

/// Element of {+1, -1}^{2k}; selects the reflected space s . P(k).
struct SignPattern {
  std::vector<int> s;

  static SignPattern all_positive(int length) { return SignPattern{std::vector<int>(length, 1)}; }
  /// Bit i of the mask set means s_i = -1.
  static SignPattern from_mask(std::uint32_t mask, int length);
  std::uint32_t mask() const;
  std::string to_string() const;

  auto operator<=>(const SignPattern&) const = default;
};

struct CoamoebaMembership {
  bool interior = false;  // false means Degenerate
  SignPattern pattern;
  /// Signed solution of the system: x_l e^{i theta_l} and y_j e^{i psi_j}
  /// reproduce the space's coordinates.
  std::vector<double> x;
  std::vector<double> y;
};

struct TilingStats {
  std::map<SignPattern, std::uint64_t> counts;
  std::uint64_t degenerate_count = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr double kConditionLimit = 1e12;
inline constexpr double kComponentTolerance = 1e-9;

/// Solves the real 2k x 2k system
///   b_j + sum_l a_jl x_l e^{i theta_l} = y_j e^{i psi_j},  j = 1..k,
/// for a torus point (theta_1..theta_k, psi_1..psi_k). The sign pattern of a
/// nondegenerate solution names the reflected space whose coamoeba contains
/// the point. Throws NotSquareCase or DimensionMismatch.
CoamoebaMembership classify(const AffineSpaceSpec& spec, const TorusPoint& angles, double tol = kComponentTolerance);

TilingStats tiling_stats(const AffineSpaceSpec& spec, std::uint64_t n_samples, std::uint64_t seed);

/// Fraction of uniform torus samples with the all-positive pattern, times
/// (2pi)^{2k}, with its binomial standard error.
VolumeEstimate coamoeba_volume(const AffineSpaceSpec& spec, std::uint64_t n_samples, std::uint64_t seed);

/// Same estimate from an existing tiling run.
VolumeEstimate coamoeba_volume(const TilingStats& stats, int k);

}  // namespace amoeba
