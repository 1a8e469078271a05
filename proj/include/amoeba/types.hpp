#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace amoeba {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2pi).
double wrap_angle(double angle);

/// Signed distance between two angles, reduced to (-pi, pi].
double angle_difference(double a, double b);

/// Image of a point under the coordinatewise log-modulus map.
struct LogPoint {
  std::vector<double> x;
};

/// Image of a point under the coordinatewise argument map, angles in [0, 2pi).
struct TorusPoint {
  std::vector<double> angles;
};

/// Polar coordinates of a point of the parameter torus (C*)^k.
struct ParameterPoint {
  std::vector<double> r;
  std::vector<double> theta;

  static ParameterPoint from_complex(const ComplexVector& t);
  static ParameterPoint from_log_polar(const std::vector<double>& log_r, const std::vector<double>& theta);

  std::size_t size() const { return r.size(); }
  ComplexVector to_complex() const;
  /// Throws InvalidArgument unless r_i > 0 and all entries are finite.
  void validate() const;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

}  // namespace amoeba
