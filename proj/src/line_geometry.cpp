#include "amoeba/line_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {

namespace {

void require_line(const AffineSpaceSpec& spec) {
  if (spec.k() != 1) {
    throw AmoebaError(ErrorCode::NotALine, "expected k = 1, got k = " + std::to_string(spec.k()));
  }
}

}  // namespace

std::vector<QuadricCoeffs> real_line_quadrics(const AffineSpaceSpec& spec) {
  require_line(spec);
  if (spec.m() < 2) throw AmoebaError(ErrorCode::InvalidArgument, "quadrics need m >= 2");
  if (!is_real(spec)) throw AmoebaError(ErrorCode::NotReal, "the line is not real");
  for (int j = 0; j < spec.m(); ++j) {
    if (spec.b()(j) == Complex{}) {
      throw AmoebaError(ErrorCode::ZeroConstant, "form f_" + std::to_string(j + 1) + " has zero constant");
    }
  }
  const Complex a1 = spec.a()(0, 0);
  const Complex b1 = spec.b()(0);
  if (a1 == Complex{}) throw AmoebaError(ErrorCode::ZeroRowCoefficient, "f_1 has zero t-coefficient");

  // With y_1^2 = |b_1|^2 + |a_1|^2 r^2 + 2 Re(a_1 conj(b_1) t) and realness
  // forcing Re(a_j conj(b_j) t) = sigma_j |a_j b_j| / |a_1 b_1| Re(a_1 conj(b_1) t),
  // the j-th modulus equation becomes linear in y_j^2, y_1^2, r^2. In canonical
  // form this is W_j + T_j = 0.
  const double n1 = std::norm(a1) * std::norm(b1);
  std::vector<QuadricCoeffs> out;
  for (int j = 1; j < spec.m(); ++j) {
    const Complex aj = spec.a()(j, 0);
    const Complex bj = spec.b()(j);
    // |a_j||b_j||a_1||b_1| cos((theta_aj - theta_bj) - (theta_a1 - theta_b1))
    const double cross = (aj * std::conj(bj) * std::conj(a1) * b1).real();
    QuadricCoeffs q;
    q.form = j + 1;
    q.c_yj2 = -1.0;
    q.c_y12 = cross / n1;
    q.c_r2 = std::norm(aj) - cross * std::norm(a1) / n1;
    q.c_const = std::norm(bj) - cross * std::norm(b1) / n1;
    out.push_back(q);
  }
  return out;
}

double complex_line_residual(const AffineSpaceSpec& spec, const ParameterPoint& p, int form) {
  require_line(spec);
  p.validate();
  if (p.size() != 1) throw AmoebaError(ErrorCode::DimensionMismatch, "line parameter point has one coordinate");
  const CanonicalSpec canon = normalize(spec);
  const int row = form - 1;
  if (row < 1 || row >= canon.spec.m()) {
    throw AmoebaError(ErrorCode::InvalidArgument, "form index must lie in 2.." + std::to_string(canon.spec.m()));
  }
  const Complex aj = canon.spec.a()(row, 0);
  const Complex bj = canon.spec.b()(row);
  if (bj == Complex{}) throw AmoebaError(ErrorCode::ZeroConstant, "form has zero constant");

  const ComplexVector t = canon.record.canonical_parameter(p.to_complex());
  const double r = std::abs(t[0]);
  const double y1 = std::abs(canon.spec.form(0, t));
  const double yj = std::abs(canon.spec.form(row, t));
  const double delta = std::arg(aj) - std::arg(bj);
  const double abs_ab = std::abs(aj) * std::abs(bj);
  const double s = y1 * y1 - r * r - 1.0;

  const double w = -yj * yj + std::norm(aj) * r * r + std::norm(bj);
  const double tt = abs_ab * s * std::cos(delta);
  const double sin_delta = std::sin(delta);
  const double rhs = abs_ab * abs_ab * (4.0 * r * r - s * s) * sin_delta * sin_delta;
  return (w + tt) * (w + tt) - rhs;
}

LineMembership line_amoeba_membership(const AffineSpaceSpec& spec, const LogPoint& x, double tol) {
  require_line(spec);
  if (static_cast<int>(x.x.size()) != 1 + spec.m()) {
    throw AmoebaError(ErrorCode::DimensionMismatch, "point must have " + std::to_string(1 + spec.m()) + " coordinates");
  }
  const CanonicalSpec canon = normalize(spec);
  const LogPoint xc = canon.record.to_canonical(x);

  const double r = std::exp(xc.x[0]);
  const double y1 = std::exp(xc.x[1]);
  const double cos_theta = (y1 * y1 - r * r - 1.0) / (2.0 * r);
  LineMembership out;
  if (!std::isfinite(cos_theta) || cos_theta > 1.0 + tol || cos_theta < -1.0 - tol) return out;
  // 4 r^2 sin^2(theta) = ((r+1)^2 - y1^2)(y1^2 - (r-1)^2), factored to avoid cancellation.
  const double sin_sq = (r + 1.0 - y1) * (r + 1.0 + y1) * (y1 - r + 1.0) * (y1 + r - 1.0) / (4.0 * r * r);
  const double sin_theta = std::sqrt(std::clamp(sin_sq, 0.0, 1.0));
  const double c = std::clamp(cos_theta, -1.0, 1.0);

  auto satisfies_all = [&](double theta) {
    const ComplexVector t{std::polar(r, theta)};
    for (int j = 1; j < canon.spec.m(); ++j) {
      const double yj = std::abs(canon.spec.form(j, t));
      if (!(yj > 0.0) || std::abs(std::log(yj) - xc.x[1 + j]) > tol) return false;
    }
    return true;
  };
  auto record = [&](double theta) {
    const double input_theta = wrap_angle(std::arg(canon.record.input_parameter({std::polar(r, theta)})[0]));
    for (double w : out.witnesses) {
      if (std::abs(angle_difference(w, input_theta)) * std::exp(x.x[0]) <= kFiberDedupRadius) return;
    }
    out.witnesses.push_back(input_theta);
  };

  // Boundary band of the first equation: a single tangential witness when it
  // satisfies everything.
  if (std::abs(cos_theta) > 1.0 - tol) {
    const double theta = c > 0.0 ? 0.0 : std::numbers::pi;
    if (satisfies_all(theta)) {
      record(theta);
      out.inside = true;
      return out;
    }
  }
  for (double theta : {std::atan2(sin_theta, c), std::atan2(-sin_theta, c)}) {
    if (satisfies_all(theta)) record(theta);
  }
  out.inside = !out.witnesses.empty();
  return out;
}

FiberSolutions line_fiber_solutions(const AffineSpaceSpec& spec, const LogPoint& x, double tol, double dedup_radius) {
  const LineMembership member = line_amoeba_membership(spec, x, tol);
  FiberSolutions out;
  const double r = std::exp(x.x.at(0));
  for (double theta : member.witnesses) {
    const Complex t = std::polar(r, theta);
    bool duplicate = false;
    for (const Complex& q : out.points) duplicate = duplicate || std::abs(q - t) <= dedup_radius;
    if (!duplicate) out.points.push_back(t);
  }
  return out;
}

}  // namespace amoeba
