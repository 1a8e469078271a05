#pragma once

#include <cstdint>
#include <vector>

#include "amoeba/core_model.hpp"

namespace amoeba {

struct MultistartConfig {
  int n_starts = 0;  // 0 selects 64 * 2^k
  double newton_tol = 1e-12;
  int max_iters = 100;
  double dedup_radius = 1e-6;
};

/// Distinct Newton solutions of Log(rho(t)) = x.
struct NumericFiber {
  std::vector<ComplexVector> points;
  /// Starts that failed to converge (singular Jacobian, left the torus, or
  /// hit max_iters). Diagnostic only.
  int nonconverged = 0;
  /// Solutions whose Jacobian density is below 1e-8.
  int critical = 0;
};

inline constexpr double kCriticalDensity = 1e-8;

/// |det| of the square amoeba Jacobian in (log r, theta) coordinates.
/// Throws NotSquareCase, UndefinedArgument.
double jacobian_density(const AffineSpaceSpec& spec, const ParameterPoint& p);

/// Monte Carlo estimate of 2^{-k} times the integral of jacobian_density over
/// R^k x [0, 2pi)^k, with standard Cauchy proposals for each log r_i and
/// uniform angles. Throws NotSquareCase, NotReal, NotGeneric.
VolumeEstimate amoeba_volume(const AffineSpaceSpec& spec, std::uint64_t n_samples, std::uint64_t seed);

/// Fraction of `probes` random parameter points at which the space is critical.
double critical_fraction(const AffineSpaceSpec& spec, int probes, std::uint64_t seed);

NumericFiber fiber_solutions_numeric(const AffineSpaceSpec& spec, const LogPoint& x, const MultistartConfig& cfg,
                                     std::uint64_t seed = 0);

/// Size of fiber_solutions_numeric.
int fiber_count_numeric(const AffineSpaceSpec& spec, const LogPoint& x, const MultistartConfig& cfg,
                        std::uint64_t seed = 0);

}  // namespace amoeba
