#include "amoeba/amoeba_volume.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "amoeba/errors.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/sampling_rank.hpp"

namespace amoeba {

namespace {

void require_square(const AffineSpaceSpec& spec) {
  if (spec.m() != spec.k()) {
    throw AmoebaError(ErrorCode::NotSquareCase, "needs m = k (got k=" + std::to_string(spec.k()) +
                                                     ", m=" + std::to_string(spec.m()) + ")");
  }
}

// Past this |log r| the density is below e^{-300} and the proposal tails are
// polynomial, so the weight underflows to zero anyway.
constexpr double kLogRadiusCutoff = 300.0;

}  // namespace

double jacobian_density(const AffineSpaceSpec& spec, const ParameterPoint& p) {
  require_square(spec);
  return std::abs(amoeba_jacobian(spec, p).determinant());
}

double critical_fraction(const AffineSpaceSpec& spec, int probes, std::uint64_t seed) {
  require_square(spec);
  const int k = spec.k();
  std::mt19937_64 rng(derive_seed(seed, 0xc7));
  int critical = 0;
  int tried = 0;
  for (int s = 0; s < probes; ++s) {
    ComplexVector t(k);
    for (auto& ti : t) ti = std::polar(std::exp(-2.0 + 4.0 * uniform01(rng)), kTwoPi * uniform01(rng));
    try {
      const ComplexVector z = evaluate(spec, t);
      ++tried;
      if (is_critical(spec, z)) ++critical;
    } catch (const AmoebaError& e) {
      if (e.code() != ErrorCode::OffTorus) throw;
    }
  }
  return tried == 0 ? 1.0 : static_cast<double>(critical) / tried;
}

VolumeEstimate amoeba_volume(const AffineSpaceSpec& spec, std::uint64_t n_samples, std::uint64_t seed) {
  require_square(spec);
  if (!is_real(spec)) throw AmoebaError(ErrorCode::NotReal, "amoeba volume is only available for real spaces");
  if (critical_fraction(spec, 100, seed) > 0.5) {
    throw AmoebaError(ErrorCode::NotGeneric, "the space is critical almost everywhere (e.g. a linear space through the origin)");
  }
  const int k = spec.k();
  const std::size_t chunks = chunk_count(n_samples);
  std::vector<double> sums(chunks, 0.0);
  std::vector<double> sums_sq(chunks, 0.0);
  for_each_chunk(n_samples, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    std::mt19937_64 rng(derive_seed(seed, chunk));
    std::vector<double> log_r(k);
    std::vector<double> theta(k);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t s = begin; s < end; ++s) {
      double inv_pdf = 1.0;
      bool in_range = true;
      for (int i = 0; i < k; ++i) {
        const double u = std::tan(std::numbers::pi * (uniform01(rng) - 0.5));
        log_r[i] = u;
        theta[i] = kTwoPi * uniform01(rng);
        inv_pdf *= std::numbers::pi * (1.0 + u * u) * kTwoPi;
        in_range = in_range && std::abs(u) < kLogRadiusCutoff;
      }
      if (!in_range) continue;
      double weight = 0.0;
      try {
        weight = jacobian_density(spec, ParameterPoint::from_log_polar(log_r, theta)) * inv_pdf;
      } catch (const AmoebaError& e) {
        if (e.code() != ErrorCode::UndefinedArgument) throw;
      }
      if (!std::isfinite(weight)) weight = 0.0;
      sum += weight;
      sum_sq += weight * weight;
    }
    sums[chunk] = sum;
    sums_sq[chunk] = sum_sq;
  });

  VolumeEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  if (n_samples == 0) return est;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sum_sq += sums_sq[c];
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  const double multiplicity = std::ldexp(1.0, k);
  est.value = mean / multiplicity;
  est.std_error = std::sqrt(var / n) / multiplicity;
  return est;
}

NumericFiber fiber_solutions_numeric(const AffineSpaceSpec& spec, const LogPoint& x, const MultistartConfig& cfg,
                                     std::uint64_t seed) {
  require_square(spec);
  const int k = spec.k();
  const int n = 2 * k;
  if (static_cast<int>(x.x.size()) != n) {
    throw AmoebaError(ErrorCode::DimensionMismatch, "point must have " + std::to_string(n) + " coordinates");
  }
  if (cfg.newton_tol <= 0.0 || cfg.max_iters <= 0 || cfg.dedup_radius <= 0.0 || cfg.n_starts < 0) {
    throw AmoebaError(ErrorCode::InvalidArgument, "multistart settings must be positive");
  }
  const int starts = cfg.n_starts > 0 ? cfg.n_starts : 64 << k;

  // Unknowns v = (log r, theta); residual F(v) = Log(rho(t)) - x.
  auto residual = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
    ComplexVector t(k);
    for (int i = 0; i < k; ++i) t[i] = std::polar(std::exp(v(i)), v(k + i));
    out.resize(n);
    for (int i = 0; i < k; ++i) out(i) = v(i) - x.x[i];
    for (int j = 0; j < k; ++j) {
      const double y = std::abs(spec.form(j, t));
      if (!(y > 0.0) || !std::isfinite(y)) return false;
      out(k + j) = std::log(y) - x.x[k + j];
    }
    return true;
  };

  NumericFiber fiber;
  std::vector<Eigen::VectorXd> found;
  std::mt19937_64 rng(derive_seed(seed, 0xf1be));
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < k; ++i) {
      v(i) = x.x[i];
      v(k + i) = kTwoPi * uniform01(rng);
    }
    Eigen::VectorXd f;
    bool converged = false;
    bool alive = residual(v, f);
    for (int it = 0; alive && it < cfg.max_iters; ++it) {
      if (f.lpNorm<Eigen::Infinity>() < cfg.newton_tol) {
        converged = true;
        break;
      }
      Eigen::MatrixXd jac;
      try {
        jac = amoeba_jacobian(spec, ParameterPoint::from_log_polar(
                                        std::vector<double>(v.data(), v.data() + k),
                                        std::vector<double>(v.data() + k, v.data() + n)));
      } catch (const AmoebaError&) {
        alive = false;
        break;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
      if (!lu.isInvertible()) {
        alive = false;
        break;
      }
      const Eigen::VectorXd step = lu.solve(-f);
      // Backtracking on the residual norm.
      const double norm0 = f.norm();
      double lambda = 1.0;
      bool accepted = false;
      for (int h = 0; h < 40; ++h, lambda *= 0.5) {
        Eigen::VectorXd trial = v + lambda * step;
        Eigen::VectorXd ft;
        if (residual(trial, ft) && ft.norm() < norm0) {
          v = std::move(trial);
          f = std::move(ft);
          accepted = true;
          break;
        }
      }
      if (!accepted) alive = false;
    }
    if (alive && !converged && f.lpNorm<Eigen::Infinity>() < cfg.newton_tol) converged = true;
    if (!converged) {
      ++fiber.nonconverged;
      continue;
    }
    for (int i = 0; i < k; ++i) v(k + i) = wrap_angle(v(k + i));
    bool duplicate = false;
    for (const auto& w : found) {
      double dist = 0.0;
      for (int i = 0; i < k; ++i) {
        dist = std::max(dist, std::abs(v(i) - w(i)));
        dist = std::max(dist, std::abs(angle_difference(v(k + i), w(k + i))));
      }
      if (dist <= cfg.dedup_radius) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    found.push_back(v);
    ComplexVector t(k);
    for (int i = 0; i < k; ++i) t[i] = std::polar(std::exp(v(i)), v(k + i));
    const ParameterPoint p = ParameterPoint::from_complex(t);
    if (jacobian_density(spec, p) < kCriticalDensity) ++fiber.critical;
    fiber.points.push_back(std::move(t));
  }
  return fiber;
}

int fiber_count_numeric(const AffineSpaceSpec& spec, const LogPoint& x, const MultistartConfig& cfg,
                        std::uint64_t seed) {
  return static_cast<int>(fiber_solutions_numeric(spec, x, cfg, seed).points.size());
}

}  // namespace amoeba
