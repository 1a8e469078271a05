#include "amoeba/types.hpp"

#include <cmath>

#include "amoeba/errors.hpp"

namespace amoeba {

double wrap_angle(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative value plus 2pi can round up to 2pi itself.
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double angle_difference(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

ParameterPoint ParameterPoint::from_complex(const ComplexVector& t) {
  ParameterPoint p;
  p.r.reserve(t.size());
  p.theta.reserve(t.size());
  for (const Complex& ti : t) {
    p.r.push_back(std::abs(ti));
    p.theta.push_back(wrap_angle(std::arg(ti)));
  }
  return p;
}

ParameterPoint ParameterPoint::from_log_polar(const std::vector<double>& log_r, const std::vector<double>& theta) {
  if (log_r.size() != theta.size()) {
    throw AmoebaError(ErrorCode::DimensionMismatch, "log_r and theta lengths differ");
  }
  ParameterPoint p;
  for (std::size_t i = 0; i < log_r.size(); ++i) {
    p.r.push_back(std::exp(log_r[i]));
    p.theta.push_back(wrap_angle(theta[i]));
  }
  return p;
}

ComplexVector ParameterPoint::to_complex() const {
  ComplexVector t(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) t[i] = std::polar(r[i], theta[i]);
  return t;
}

void ParameterPoint::validate() const {
  if (r.size() != theta.size()) {
    throw AmoebaError(ErrorCode::DimensionMismatch, "r and theta lengths differ");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i]) || !std::isfinite(theta[i])) {
      throw AmoebaError(ErrorCode::InvalidArgument, "parameter point needs finite r_i > 0 (index " + std::to_string(i) + ")");
    }
  }
}

}  // namespace amoeba
