#include "amoeba/sampling_rank.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "amoeba/errors.hpp"
#include "amoeba/parallel.hpp"

namespace amoeba {

namespace {

void check_point(const AffineSpaceSpec& spec, const ParameterPoint& p) {
  p.validate();
  if (static_cast<int>(p.size()) != spec.k()) {
    throw AmoebaError(ErrorCode::DimensionMismatch,
                      "expected " + std::to_string(spec.k()) + " parameters, got " + std::to_string(p.size()));
  }
}

// d log f_j / d log r_i = a_ji t_i / f_j, and d log f_j / d theta_i is i times that.
Eigen::MatrixXcd log_derivatives(const AffineSpaceSpec& spec, const ComplexVector& t) {
  Eigen::MatrixXcd w(spec.m(), spec.k());
  for (int j = 0; j < spec.m(); ++j) {
    const Complex f = spec.form(j, t);
    if (f == Complex{} || is_effectively_zero(f, spec.form_scale(j, t))) {
      throw AmoebaError(ErrorCode::UndefinedArgument, "f_" + std::to_string(j + 1) + " vanishes at the parameter point");
    }
    for (int i = 0; i < spec.k(); ++i) w(j, i) = spec.a()(j, i) * t[i] / f;
  }
  return w;
}

}  // namespace

Eigen::MatrixXd GaussMatrix::realified() const {
  Eigen::MatrixXd out(2 * entries.rows(), entries.cols());
  out << entries.real(), entries.imag();
  return out;
}

Eigen::MatrixXcd GaussMatrix::with_conjugate() const {
  Eigen::MatrixXcd out(2 * entries.rows(), entries.cols());
  out << entries, entries.conjugate();
  return out;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

ModulusCoords modulus_coords(const AffineSpaceSpec& spec, const ParameterPoint& p) {
  check_point(spec, p);
  const int k = spec.k();
  const ComplexVector t = p.to_complex();
  ModulusCoords out;
  out.y.reserve(spec.m());
  for (int j = 0; j < spec.m(); ++j) {
    const double bj = std::abs(spec.b()(j));
    const double theta_b = std::arg(spec.b()(j));
    double y2 = bj * bj;
    for (int i = 0; i < k; ++i) {
      const double ai = std::abs(spec.a()(j, i));
      const double theta_ai = std::arg(spec.a()(j, i));
      y2 += ai * ai * p.r[i] * p.r[i];
      y2 += 2.0 * bj * ai * p.r[i] * std::cos(p.theta[i] + theta_ai - theta_b);
      for (int l = i + 1; l < k; ++l) {
        const double al = std::abs(spec.a()(j, l));
        const double theta_al = std::arg(spec.a()(j, l));
        y2 += 2.0 * ai * al * p.r[i] * p.r[l] * std::cos((p.theta[i] - p.theta[l]) + (theta_ai - theta_al));
      }
    }
    const double direct = std::norm(spec.form(j, t));
    const double scale = spec.form_scale(j, t);
    if (std::abs(y2 - direct) > 1e-10 * std::max(1.0, scale * scale)) {
      throw std::logic_error("modulus expansion disagrees with direct evaluation for f_" + std::to_string(j + 1));
    }
    out.y.push_back(std::sqrt(std::max(0.0, y2)));
  }
  return out;
}

ArgCoords arg_coords(const AffineSpaceSpec& spec, const ParameterPoint& p) {
  check_point(spec, p);
  const int k = spec.k();
  const ComplexVector t = p.to_complex();
  ArgCoords out;
  out.psi.reserve(spec.m());
  for (int j = 0; j < spec.m(); ++j) {
    const Complex f = spec.form(j, t);
    const double scale = spec.form_scale(j, t);
    if (f == Complex{} || is_effectively_zero(f, scale)) {
      throw AmoebaError(ErrorCode::UndefinedArgument, "f_" + std::to_string(j + 1) + " vanishes at the parameter point");
    }
    const double psi = wrap_angle(std::atan2(f.imag(), f.real()));

    // Arctangent form, determined modulo pi.
    const Complex bj = spec.b()(j);
    double num = 0.0;
    double den = 0.0;
    double offset = 0.0;
    if (bj != Complex{}) {
      const double theta_b = std::arg(bj);
      den = 1.0;
      offset = theta_b;
      for (int i = 0; i < k; ++i) {
        const Complex aij = spec.a()(j, i);
        const double rho = std::abs(aij / bj) * p.r[i];
        const double phase = p.theta[i] + std::arg(aij) - theta_b;
        num += rho * std::sin(phase);
        den += rho * std::cos(phase);
      }
    } else {
      for (int i = 0; i < k; ++i) {
        const Complex aij = spec.a()(j, i);
        const double rho = std::abs(aij) * p.r[i];
        num += rho * std::sin(p.theta[i] + std::arg(aij));
        den += rho * std::cos(p.theta[i] + std::arg(aij));
      }
    }
    const double expansion = offset + std::atan(num / den);
    double diff = std::remainder(psi - expansion, std::numbers::pi);
    const double tol = 1e-10 * std::max(1.0, scale / std::abs(f));
    if (std::abs(diff) > tol) {
      throw std::logic_error("argument expansion disagrees with direct evaluation for f_" + std::to_string(j + 1));
    }
    out.psi.push_back(psi);
  }
  return out;
}

Eigen::MatrixXd amoeba_jacobian(const AffineSpaceSpec& spec, const ParameterPoint& p) {
  check_point(spec, p);
  const int k = spec.k();
  const Eigen::MatrixXcd w = log_derivatives(spec, p.to_complex());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(k + spec.m(), 2 * k);
  jac.topLeftCorner(k, k).setIdentity();
  jac.bottomLeftCorner(spec.m(), k) = w.real();
  jac.bottomRightCorner(spec.m(), k) = -w.imag();
  return jac;
}

Eigen::MatrixXd coamoeba_jacobian(const AffineSpaceSpec& spec, const ParameterPoint& p) {
  check_point(spec, p);
  const int k = spec.k();
  const Eigen::MatrixXcd w = log_derivatives(spec, p.to_complex());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(k + spec.m(), 2 * k);
  jac.topRightCorner(k, k).setIdentity();
  jac.bottomLeftCorner(spec.m(), k) = w.imag();
  jac.bottomRightCorner(spec.m(), k) = w.real();
  return jac;
}

int dimension_estimate(const AffineSpaceSpec& spec, ImageMode mode, std::uint64_t n_samples, std::uint64_t seed,
                       double rank_tol) {
  if (n_samples < 1) throw AmoebaError(ErrorCode::InvalidArgument, "dimension_estimate needs at least one sample");
  const int k = spec.k();
  std::vector<int> best(chunk_count(n_samples), 0);
  for_each_chunk(n_samples, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    std::mt19937_64 rng(derive_seed(seed, chunk));
    int local = 0;
    ParameterPoint p;
    p.r.resize(k);
    p.theta.resize(k);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (int i = 0; i < k; ++i) {
        p.r[i] = std::exp(-2.0 + 4.0 * uniform01(rng));
        p.theta[i] = kTwoPi * uniform01(rng);
      }
      try {
        const Eigen::MatrixXd jac =
            mode == ImageMode::Amoeba ? amoeba_jacobian(spec, p) : coamoeba_jacobian(spec, p);
        local = std::max(local, numerical_rank(jac, rank_tol));
      } catch (const AmoebaError& e) {
        if (e.code() != ErrorCode::UndefinedArgument) throw;
      }
    }
    best[chunk] = local;
  });
  int rank = 0;
  for (int r : best) rank = std::max(rank, r);
  return rank;
}

GaussMatrix gauss_matrix(const AffineSpaceSpec& spec, const ComplexVector& z) {
  const int k = spec.k();
  if (spec.m() != k) {
    throw AmoebaError(ErrorCode::NotSquareCase, "Gauss matrix needs m = k (got k=" + std::to_string(k) +
                                                     ", m=" + std::to_string(spec.m()) + ")");
  }
  if (static_cast<int>(z.size()) != 2 * k) {
    throw AmoebaError(ErrorCode::DimensionMismatch, "point must have " + std::to_string(2 * k) + " coordinates");
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == Complex{}) throw AmoebaError(ErrorCode::OffTorus, "coordinate " + std::to_string(i + 1) + " is zero");
  }
  const ComplexVector t(z.begin(), z.begin() + k);
  for (int j = 0; j < k; ++j) {
    const double scale = std::max({1.0, spec.form_scale(j, t), std::abs(z[k + j])});
    if (std::abs(spec.form(j, t) - z[k + j]) > 1e-9 * scale) {
      throw AmoebaError(ErrorCode::NotOnSpace, "coordinate " + std::to_string(k + j + 1) + " does not match f_" +
                                                   std::to_string(j + 1));
    }
  }
  GaussMatrix g{Eigen::MatrixXcd::Zero(k, 2 * k)};
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) g.entries(j, i) = spec.a()(j, i) * z[i];
    g.entries(j, k + j) = -z[k + j];
  }
  return g;
}

bool is_critical(const AffineSpaceSpec& spec, const ComplexVector& z, double rank_tol) {
  const GaussMatrix g = gauss_matrix(spec, z);
  return numerical_rank(g.realified(), rank_tol) < 2 * spec.k();
}

}  // namespace amoeba
