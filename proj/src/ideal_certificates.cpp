#include "amoeba/ideal_certificates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

void check_dims(int n, const TorusFiber& fiber, int grid_per_dim) {
  if (n > kMaxFiberDim) {
    throw AmoebaError(ErrorCode::DimensionTooLarge,
                      "fiber search supports at most " + std::to_string(kMaxFiberDim) + " variables, got " + std::to_string(n));
  }
  if (static_cast<int>(fiber.r.x.size()) != n) {
    throw AmoebaError(ErrorCode::DimensionMismatch, "fiber has " + std::to_string(fiber.r.x.size()) +
                                                        " coordinates, polynomial has " + std::to_string(n) + " variables");
  }
  if (grid_per_dim < 8) throw AmoebaError(ErrorCode::InvalidArgument, "grid must have at least 8 points per dimension");
}

struct Candidate {
  double value;
  std::vector<int> cell;
};

// Visits every grid point, keeping the best few that are pairwise at least
// two cells apart (cyclically).
struct GridScan {
  double grid_min = std::numeric_limits<double>::infinity();
  std::vector<Candidate> best;
};

int cyclic_cell_distance(const std::vector<int>& a, const std::vector<int>& b, int grid) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int raw = std::abs(a[i] - b[i]);
    d = std::max(d, std::min(raw, grid - raw));
  }
  return d;
}

GridScan scan_grid(int n, int grid, const Objective& objective, const std::function<void(const std::vector<double>&)>& visit,
                   std::size_t keep = 8) {
  GridScan scan;
  const double spacing = kTwoPi / grid;
  std::vector<int> cell(n, 0);
  std::vector<double> angles(n, 0.0);
  while (true) {
    for (int i = 0; i < n; ++i) angles[i] = spacing * cell[i];
    if (visit) visit(angles);
    const double v = objective(angles);
    scan.grid_min = std::min(scan.grid_min, v);

    auto near = std::find_if(scan.best.begin(), scan.best.end(),
                             [&](const Candidate& c) { return cyclic_cell_distance(c.cell, cell, grid) <= 2; });
    if (near != scan.best.end()) {
      if (v < near->value) *near = Candidate{v, cell};
    } else if (scan.best.size() < keep) {
      scan.best.push_back(Candidate{v, cell});
    } else {
      auto worst = std::max_element(scan.best.begin(), scan.best.end(),
                                    [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
      if (v < worst->value) *worst = Candidate{v, cell};
    }

    int i = 0;
    while (i < n && ++cell[i] == grid) cell[i++] = 0;
    if (i == n) break;
  }
  return scan;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi, double& argmin) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = f(d);
    }
  }
  argmin = fc < fd ? c : d;
  return std::min(fc, fd);
}

struct Refined {
  double value;
  std::vector<double> angles;
};

std::vector<Refined> refine(int n, int grid, const Objective& objective, const GridScan& scan, int rounds) {
  const double spacing = kTwoPi / grid;
  std::vector<Refined> out;
  for (const auto& cand : scan.best) {
    std::vector<double> angles(n);
    for (int i = 0; i < n; ++i) angles[i] = spacing * cand.cell[i];
    double value = cand.value;
    for (int round = 0; round < rounds; ++round) {
      for (int i = 0; i < n; ++i) {
        const double centre = angles[i];
        auto along = [&](double a) {
          angles[i] = a;
          return objective(angles);
        };
        double arg = centre;
        const double v = golden_section(along, centre - spacing, centre + spacing, arg);
        if (v < value) {
          value = v;
          angles[i] = arg;
        } else {
          angles[i] = centre;
        }
      }
    }
    out.push_back(Refined{value, angles});
  }
  return out;
}

// Levenberg-Marquardt on the residuals (Re f_j, Im f_j) as functions of the
// angles. Only decreasing steps are taken. Returns sum_j |f_j|^2.
double polish(const std::vector<LaurentPolynomial>& fs, const TorusFiber& fiber, Refined start, int iters = 60) {
  const int n = static_cast<int>(start.angles.size());
  const int rows = 2 * static_cast<int>(fs.size());
  auto residuals = [&](const std::vector<double>& a, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    const ComplexVector z = fiber_point(fiber, a);
    r.resize(rows);
    if (jac) jac->setZero(rows, n);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      Complex v = 0.0;
      std::vector<Complex> d(n, 0.0);
      for (const auto& t : fs[j].terms()) {
        Complex term = t.coeff;
        for (int i = 0; i < n; ++i) term *= integer_power(z[i], t.alpha[i]);
        v += term;
        for (int i = 0; i < n; ++i) d[i] += Complex(0.0, t.alpha[i]) * term;
      }
      r(2 * j) = v.real();
      r(2 * j + 1) = v.imag();
      if (jac) {
        for (int i = 0; i < n; ++i) {
          (*jac)(2 * j, i) = d[i].real();
          (*jac)(2 * j + 1, i) = d[i].imag();
        }
      }
    }
  };
  Eigen::VectorXd r, trial_r;
  Eigen::MatrixXd jac;
  residuals(start.angles, r, &jac);
  double value = r.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < iters && value > 0.0; ++it) {
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
      Eigen::MatrixXd m = jtj;
      m.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = m.ldlt().solve(-g);
      std::vector<double> trial = start.angles;
      for (int i = 0; i < n; ++i) trial[i] += delta(i);
      residuals(trial, trial_r, nullptr);
      const double v = trial_r.squaredNorm();
      if (std::isfinite(v) && v < value) {
        start.angles = trial;
        value = v;
        lambda = std::max(lambda * 0.1, 1e-12);
        stepped = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!stepped) break;
    residuals(start.angles, r, &jac);
  }
  return value;
}

// Clears the angle torus cell by cell: a cell of width h around c is cleared
// when norm(c) > safety * L * h; otherwise it is split into 2^n children.
bool certify_outside(int n, int grid, double lipschitz, const Objective& norm) {
  constexpr int kMaxDepth = 24;
  constexpr std::size_t kBudget = 4'000'000;
  struct Cell {
    std::vector<double> centre;
    double width;
    int depth;
  };
  const double spacing = kTwoPi / grid;
  std::vector<Cell> stack;
  std::vector<int> idx(n, 0);
  while (true) {
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = spacing * idx[i];
    stack.push_back(Cell{std::move(c), spacing, 0});
    int i = 0;
    while (i < n && ++idx[i] == grid) idx[i++] = 0;
    if (i == n) break;
  }
  std::size_t processed = 0;
  while (!stack.empty()) {
    Cell cell = std::move(stack.back());
    stack.pop_back();
    if (++processed > kBudget) return false;
    if (norm(cell.centre) > kLipschitzSafety * lipschitz * cell.width) continue;
    if (cell.depth >= kMaxDepth) return false;
    const double half = 0.5 * cell.width;
    for (int child = 0; child < (1 << n); ++child) {
      std::vector<double> c = cell.centre;
      for (int d = 0; d < n; ++d) c[d] += ((child >> d) & 1 ? 0.25 : -0.25) * cell.width;
      stack.push_back(Cell{std::move(c), half, cell.depth + 1});
    }
  }
  return true;
}

}  // namespace

ComplexVector fiber_point(const TorusFiber& fiber, const std::vector<double>& angles) {
  ComplexVector z(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) z[i] = std::polar(std::exp(fiber.r.x.at(i)), angles[i]);
  return z;
}

LaurentPolynomial conjugate_reflection(const LaurentPolynomial& f, const TorusFiber& fiber) {
  const int n = f.dim();
  if (static_cast<int>(fiber.r.x.size()) != n) throw AmoebaError(ErrorCode::DimensionMismatch, "fiber dimension");
  std::vector<LaurentPolynomial::Term> terms;
  for (const auto& term : f.terms()) {
    std::vector<int> alpha(n);
    double log_scale = 0.0;
    for (int i = 0; i < n; ++i) {
      alpha[i] = -term.alpha[i];
      log_scale += 2.0 * term.alpha[i] * fiber.r.x[i];
    }
    terms.push_back({std::move(alpha), std::conj(term.coeff) * std::exp(log_scale)});
  }
  return LaurentPolynomial(n, std::move(terms));
}

LaurentPolynomial coamoeba_reflection(const LaurentPolynomial& f, const TorusPoint& angles) {
  const int n = f.dim();
  if (static_cast<int>(angles.angles.size()) != n) throw AmoebaError(ErrorCode::DimensionMismatch, "angle dimension");
  std::vector<LaurentPolynomial::Term> terms;
  for (const auto& term : f.terms()) {
    double phase = 0.0;
    for (int i = 0; i < n; ++i) phase += term.alpha[i] * angles.angles[i];
    terms.push_back({term.alpha, std::conj(term.coeff) * std::polar(1.0, -2.0 * phase)});
  }
  return LaurentPolynomial(n, std::move(terms));
}

double fiber_min(const LaurentPolynomial& f, const TorusFiber& fiber, int grid_per_dim, int refine_steps) {
  const int n = f.dim();
  check_dims(n, fiber, grid_per_dim);
  const Objective modulus = [&](const std::vector<double>& a) { return std::abs(f.evaluate(fiber_point(fiber, a))); };
  const GridScan scan = scan_grid(n, grid_per_dim, modulus, nullptr);
  double best = scan.grid_min;
  for (auto& cand : refine(n, grid_per_dim, modulus, scan, std::max(0, refine_steps))) {
    cand.value *= cand.value;
    best = std::min(best, std::sqrt(polish({f}, fiber, std::move(cand))));
  }
  return best;
}

CertificateReport certificate(const std::vector<LaurentPolynomial>& generators, const TorusFiber& fiber,
                              int grid_per_dim, int refine_steps) {
  if (generators.empty()) throw AmoebaError(ErrorCode::InvalidArgument, "need at least one generator");
  const int n = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != n) throw AmoebaError(ErrorCode::DimensionMismatch, "generators live in different tori");
  }
  check_dims(n, fiber, grid_per_dim);

  LaurentPolynomial G = generators.front() * conjugate_reflection(generators.front(), fiber);
  for (std::size_t j = 1; j < generators.size(); ++j) G = G + generators[j] * conjugate_reflection(generators[j], fiber);

  const Objective sum_sq = [&](const std::vector<double>& a) {
    const ComplexVector z = fiber_point(fiber, a);
    double s = 0.0;
    for (const auto& f : generators) s += std::norm(f.evaluate(z));
    return s;
  };
  const Objective norm = [&](const std::vector<double>& a) { return std::sqrt(sum_sq(a)); };

  CertificateReport report{G};
  report.grid_size = grid_per_dim;
  double residual = 0.0;
  const GridScan scan = scan_grid(n, grid_per_dim, sum_sq, [&](const std::vector<double>& a) {
    const ComplexVector z = fiber_point(fiber, a);
    double s = 0.0;
    for (const auto& f : generators) s += std::norm(f.evaluate(z));
    residual = std::max(residual, std::abs(G.evaluate(z) - s));
  });
  report.identity_residual = residual;
  report.grid_min = scan.grid_min;
  report.refined_min = scan.grid_min;
  for (auto& cand : refine(n, grid_per_dim, sum_sq, scan, std::max(0, refine_steps))) {
    report.refined_min = std::min(report.refined_min, polish(generators, fiber, std::move(cand)));
  }

  double l2 = 0.0;
  for (const auto& f : generators) {
    const double d = f.angular_derivative_bound(fiber.r.x);
    l2 += d * d;
  }
  report.lipschitz = std::sqrt(l2);

  if (report.refined_min <= kInsideThreshold) {
    report.verdict = FiberVerdict::Inside;
  } else if (certify_outside(n, grid_per_dim, report.lipschitz, norm)) {
    report.verdict = FiberVerdict::Outside;
  }
  return report;
}

}  // namespace amoeba
