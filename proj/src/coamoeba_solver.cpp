#include "amoeba/coamoeba_solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "amoeba/errors.hpp"
#include "amoeba/parallel.hpp"

namespace amoeba {

namespace {

// Stack-allocated up to k = 4; the sampling loops call this millions of times.
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;

void require_square(const AffineSpaceSpec& spec) {
  if (spec.m() != spec.k()) {
    throw AmoebaError(ErrorCode::NotSquareCase, "coamoeba tiling needs m = k (got k=" + std::to_string(spec.k()) +
                                                     ", m=" + std::to_string(spec.m()) + ")");
  }
}

template <typename Matrix, typename Vector>
bool solve_system(const AffineSpaceSpec& spec, const double* angles, Vector& solution) {
  const int k = spec.k();
  const int n = 2 * k;
  Matrix mat = Matrix::Zero(n, n);
  Vector rhs(n);
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < k; ++l) {
      const Complex entry = spec.a()(j, l) * std::polar(1.0, angles[l]);
      mat(j, l) = entry.real();
      mat(k + j, l) = entry.imag();
    }
    mat(j, k + j) = -std::cos(angles[k + j]);
    mat(k + j, k + j) = -std::sin(angles[k + j]);
    rhs(j) = -spec.b()(j).real();
    rhs(k + j) = -spec.b()(j).imag();
  }
  Eigen::JacobiSVD<Matrix> svd(mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(n - 1);
  if (!(smin > 0.0) || smax / smin > kConditionLimit) return false;
  solution = svd.solve(rhs);
  return solution.allFinite();
}

// Returns the pattern mask of a nondegenerate solution, or -1.
template <typename Vector>
std::int64_t pattern_mask(const Vector& solution, double tol) {
  std::int64_t mask = 0;
  for (Eigen::Index i = 0; i < solution.size(); ++i) {
    if (!(std::abs(solution(i)) >= tol)) return -1;
    if (solution(i) < 0.0) mask |= std::int64_t{1} << i;
  }
  return mask;
}

std::int64_t classify_mask(const AffineSpaceSpec& spec, const double* angles, double tol) {
  if (spec.k() <= 4) {
    SmallVector sol;
    if (!solve_system<SmallMatrix>(spec, angles, sol)) return -1;
    return pattern_mask(sol, tol);
  }
  Eigen::VectorXd sol;
  if (!solve_system<Eigen::MatrixXd>(spec, angles, sol)) return -1;
  return pattern_mask(sol, tol);
}

}  // namespace

SignPattern SignPattern::from_mask(std::uint32_t mask, int length) {
  SignPattern p = all_positive(length);
  for (int i = 0; i < length; ++i) {
    if (mask & (1u << i)) p.s[i] = -1;
  }
  return p;
}

std::uint32_t SignPattern::mask() const {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) m |= 1u << i;
  }
  return m;
}

std::string SignPattern::to_string() const {
  std::string out;
  for (int v : s) out.push_back(v > 0 ? '+' : '-');
  return out;
}

CoamoebaMembership classify(const AffineSpaceSpec& spec, const TorusPoint& angles, double tol) {
  require_square(spec);
  const int k = spec.k();
  if (static_cast<int>(angles.angles.size()) != 2 * k) {
    throw AmoebaError(ErrorCode::DimensionMismatch, "torus point must have " + std::to_string(2 * k) + " angles");
  }
  CoamoebaMembership out;
  Eigen::VectorXd sol;
  if (!solve_system<Eigen::MatrixXd>(spec, angles.angles.data(), sol)) return out;
  const std::int64_t mask = pattern_mask(sol, tol);
  if (mask < 0) return out;
  out.interior = true;
  out.pattern = SignPattern::from_mask(static_cast<std::uint32_t>(mask), 2 * k);
  out.x.assign(sol.data(), sol.data() + k);
  out.y.assign(sol.data() + k, sol.data() + 2 * k);
  return out;
}

TilingStats tiling_stats(const AffineSpaceSpec& spec, std::uint64_t n_samples, std::uint64_t seed) {
  require_square(spec);
  const int k = spec.k();
  const int n = 2 * k;
  if (n > 30) throw AmoebaError(ErrorCode::InvalidArgument, "k too large for pattern bookkeeping");
  const std::size_t patterns = std::size_t{1} << n;

  const std::size_t chunks = chunk_count(n_samples);
  std::vector<std::vector<std::uint64_t>> per_chunk(chunks);
  std::vector<std::uint64_t> degenerate(chunks, 0);
  for_each_chunk(n_samples, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    std::mt19937_64 rng(derive_seed(seed, chunk));
    std::vector<std::uint64_t> counts(patterns, 0);
    std::vector<double> angles(n);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (double& a : angles) a = kTwoPi * uniform01(rng);
      const std::int64_t mask = classify_mask(spec, angles.data(), kComponentTolerance);
      if (mask < 0) {
        ++degenerate[chunk];
      } else {
        ++counts[static_cast<std::size_t>(mask)];
      }
    }
    per_chunk[chunk] = std::move(counts);
  });

  TilingStats stats;
  stats.n_samples = n_samples;
  stats.seed = seed;
  std::vector<std::uint64_t> total(patterns, 0);
  for (std::size_t c = 0; c < chunks; ++c) {
    stats.degenerate_count += degenerate[c];
    for (std::size_t p = 0; p < patterns; ++p) total[p] += per_chunk[c][p];
  }
  for (std::size_t p = 0; p < patterns; ++p) {
    if (total[p] > 0) stats.counts[SignPattern::from_mask(static_cast<std::uint32_t>(p), n)] = total[p];
  }
  return stats;
}

VolumeEstimate coamoeba_volume(const TilingStats& stats, int k) {
  VolumeEstimate est;
  est.n_samples = stats.n_samples;
  est.seed = stats.seed;
  if (stats.n_samples == 0) return est;
  const double torus = std::pow(kTwoPi, 2 * k);
  const auto it = stats.counts.find(SignPattern::all_positive(2 * k));
  const double hits = it == stats.counts.end() ? 0.0 : static_cast<double>(it->second);
  const double n = static_cast<double>(stats.n_samples);
  const double p = hits / n;
  est.value = p * torus;
  est.std_error = torus * std::sqrt(p * (1.0 - p) / n);
  return est;
}

VolumeEstimate coamoeba_volume(const AffineSpaceSpec& spec, std::uint64_t n_samples, std::uint64_t seed) {
  return coamoeba_volume(tiling_stats(spec, n_samples, seed), spec.k());
}

}  // namespace amoeba
