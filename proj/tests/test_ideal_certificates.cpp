#include <doctest.h>

#include <random>

#include "amoeba/errors.hpp"
#include "amoeba/ideal_certificates.hpp"
#include "amoeba/laurent.hpp"
#include "amoeba/line_geometry.hpp"
#include "oracles.hpp"

using namespace amoeba;
using oracle::cd;
using oracle::kPi;
using Term = LaurentPolynomial::Term;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const AmoebaError& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

// Coefficient of z^alpha, zero when absent.
cd coeff(const LaurentPolynomial& p, std::vector<int> alpha) {
  for (const auto& t : p.terms())
    if (t.alpha == alpha) return t.coeff;
  return 0.0;
}

const LaurentPolynomial kTrinomial(2, {Term{{0, 0}, 1.0}, Term{{1, 0}, 1.0}, Term{{0, 1}, 1.0}});
// w - z - 1, vanishing on the line (t, 1 + t).
const LaurentPolynomial kLine(2, {Term{{0, 1}, 1.0}, Term{{1, 0}, -1.0}, Term{{0, 0}, -1.0}});

LaurentPolynomial random_poly(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> e(-2, 2), count(1, 6);
  std::vector<Term> terms;
  const int c = count(rng);
  for (int i = 0; i < c; ++i) {
    std::vector<int> alpha(n);
    for (auto& a : alpha) a = e(rng);
    terms.push_back(Term{alpha, cd(g(rng), g(rng))});
  }
  return LaurentPolynomial(n, terms);
}

// All points of the uniform angle grid.
template <class F>
void for_grid(int n, int grid, F&& f) {
  std::vector<int> cell(n, 0);
  std::vector<double> ang(n);
  while (true) {
    for (int i = 0; i < n; ++i) ang[i] = kTwoPi * cell[i] / grid;
    f(ang);
    int i = 0;
    while (i < n && ++cell[i] == grid) cell[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace

TEST_CASE("Laurent polynomial basics") {
  const LaurentPolynomial p(1, {Term{{1}, 2.0}, Term{{1}, -2.0}, Term{{0}, 3.0}});
  CHECK(p.terms().size() == 1);
  CHECK(p.evaluate({5.0}) == cd(3.0));
  const auto q = kTrinomial * kTrinomial;
  CHECK(coeff(q, {1, 1}) == cd(2.0));
  CHECK(std::abs(q.evaluate({cd(0.3, 1), cd(-2, 0.5)}) - std::pow(kTrinomial.evaluate({cd(0.3, 1), cd(-2, 0.5)}), 2)) <
        1e-12);
  CHECK(integer_power(cd(0, 2), -2) == cd(-0.25, 0.0));
  CHECK(code_of([] { LaurentPolynomial(2, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { LaurentPolynomial(2, {Term{{1}, 1.0}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("conjugate reflection examples") {
  const auto g = conjugate_reflection(kTrinomial, TorusFiber{LogPoint{{std::log(3.0), 0.0}}});
  CHECK(g.terms().size() == 3);
  CHECK(std::abs(coeff(g, {0, 0}) - 1.0) < 1e-12);
  CHECK(std::abs(coeff(g, {-1, 0}) - 9.0) < 1e-12);
  CHECK(std::abs(coeff(g, {0, -1}) - 1.0) < 1e-12);

  const LaurentPolynomial z(1, {Term{{1}, 1.0}});
  const auto gz = conjugate_reflection(z, TorusFiber{LogPoint{{std::log(2.0)}}});
  CHECK(std::abs(coeff(gz, {-1}) - 4.0) < 1e-12);

  const LaurentPolynomial real(2, {Term{{2, -1}, 1.5}, Term{{0, 1}, -0.5}, Term{{0, 0}, 2.0}});
  const auto gr = conjugate_reflection(real, TorusFiber{LogPoint{{0.0, 0.0}}});
  const ComplexVector pt{cd(0.4, 1.3), cd(-0.7, 0.2)};
  CHECK(std::abs(gr.evaluate(pt) - real.evaluate({1.0 / pt[0], 1.0 / pt[1]})) < 1e-12);
}

TEST_CASE("coamoeba reflection examples") {
  const LaurentPolynomial f(1, {Term{{0}, 1.0}, Term{{1}, 1.0}});
  const auto g0 = coamoeba_reflection(f, TorusPoint{{0.0}});
  CHECK(std::abs(coeff(g0, {1}) - 1.0) < 1e-12);
  const auto g1 = coamoeba_reflection(f, TorusPoint{{kPi / 2}});
  CHECK(std::abs(coeff(g1, {1}) + 1.0) < 1e-12);
  for (double y : {0.1, 1.0, 7.0}) {
    const cd z(0, y);
    CHECK(std::abs(f.evaluate({z}) * g1.evaluate({z}) - (1 + y * y)) < 1e-12);
  }
  const LaurentPolynomial iz(1, {Term{{1}, cd(0, 1)}});
  const double th = 0.9;
  const auto gi = coamoeba_reflection(iz, TorusPoint{{th}});
  CHECK(std::abs(coeff(gi, {1}) - cd(0, -1) * std::polar(1.0, -2 * th)) < 1e-12);
}

TEST_CASE("reflection identities on fibers") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> lr(-0.7, 0.7), th(0, 2 * kPi), mod(-1.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto f = random_poly(n, rng);
      std::vector<double> r(n), theta(n);
      for (int i = 0; i < n; ++i) {
        r[i] = lr(rng);
        theta[i] = th(rng);
      }
      const TorusFiber fiber{LogPoint{r}};
      const auto g = conjugate_reflection(f, fiber);
      const auto h = coamoeba_reflection(f, TorusPoint{theta});
      double worst = 0.0;
      const int grid = n == 3 ? 32 : 64;
      for_grid(n, grid, [&](const std::vector<double>& ang) {
        const auto z = fiber_point(fiber, ang);
        const cd fz = f.evaluate(z);
        worst = std::max(worst, std::abs(fz * g.evaluate(z) - std::norm(fz)) / std::max(1.0, std::norm(fz)));
        // Argument fiber: moduli from the grid, arguments fixed.
        ComplexVector w(n);
        for (int i = 0; i < n; ++i) w[i] = std::polar(std::exp(std::sin(ang[i])), theta[i]);
        const cd fw = f.evaluate(w);
        worst = std::max(worst, std::abs(fw * h.evaluate(w) - std::norm(fw)) / std::max(1.0, std::norm(fw)));
      });
      CHECK(worst <= 1e-8);
    }
  }
}

TEST_CASE("fiber minimum") {
  CHECK(fiber_min(kTrinomial, TorusFiber{LogPoint{{0.0, 0.0}}}, 64, 20) < 1e-6);
  CHECK(fiber_min(kTrinomial, TorusFiber{LogPoint{{std::log(3.0), 0.0}}}, 64, 20) >= 1.0 - 1e-12);
  const LaurentPolynomial z(1, {Term{{1}, 1.0}});
  CHECK(fiber_min(z, TorusFiber{LogPoint{{std::log(2.5)}}}, 16, 5) == doctest::Approx(2.5).epsilon(1e-14));
  const LaurentPolynomial big(4, {Term{{1, 0, 0, 0}, 1.0}});
  CHECK(code_of([&] { fiber_min(big, TorusFiber{LogPoint{{0, 0, 0, 0}}}, 8, 1); }) == ErrorCode::DimensionTooLarge);
  CHECK(code_of([&] { fiber_min(z, TorusFiber{LogPoint{{0.0}}}, 4, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("certificate examples") {
  const auto out = certificate({kLine}, TorusFiber{LogPoint{{0.0, std::log(3.0)}}}, 64, 20);
  CHECK(out.grid_min >= 1.0);
  CHECK(out.verdict == FiberVerdict::Outside);
  CHECK(out.identity_residual <= 1e-8);

  const auto in = certificate({kLine}, TorusFiber{LogPoint{{0.0, 0.0}}}, 512, 20);
  CHECK(in.grid_min <= 1e-3);
  CHECK(in.refined_min <= 1e-6);
  CHECK(in.verdict == FiberVerdict::Inside);

  const LaurentPolynomial z1(2, {Term{{1, 0}, 1.0}, Term{{0, 0}, -1.0}});
  const LaurentPolynomial w1(2, {Term{{0, 1}, 1.0}, Term{{0, 0}, -1.0}});
  const auto pt = certificate({z1, w1}, TorusFiber{LogPoint{{0.0, 0.0}}}, 16, 5);
  CHECK(pt.grid_min == 0.0);
  CHECK(pt.verdict == FiberVerdict::Inside);
  const auto off = certificate({z1, w1}, TorusFiber{LogPoint{{0.5, 0.0}}}, 16, 5);
  CHECK(off.verdict == FiberVerdict::Outside);
}

TEST_CASE("certificate polynomial equals the sum of squared moduli") {
  std::mt19937_64 rng(13);
  const std::vector<LaurentPolynomial> gens = {random_poly(2, rng), random_poly(2, rng)};
  const TorusFiber fiber{LogPoint{{0.3, -0.4}}};
  const auto rep = certificate(gens, fiber, 64, 10);
  double g_min = 1e300, s_min = 1e300;
  for_grid(2, 64, [&](const std::vector<double>& ang) {
    const auto z = fiber_point(fiber, ang);
    g_min = std::min(g_min, rep.G.evaluate(z).real());
    double s = 0.0;
    for (const auto& f : gens) s += std::norm(f.evaluate(z));
    s_min = std::min(s_min, s);
  });
  CHECK(std::abs(g_min - s_min) <= 1e-10 * std::max(1.0, s_min));
  CHECK(std::abs(rep.grid_min - s_min) <= 1e-10 * std::max(1.0, s_min));
}

TEST_CASE("unit monomial multiples leave the certificate unchanged") {
  const auto base = certificate({kLine}, TorusFiber{LogPoint{{0.0, 0.7}}}, 64, 10);
  const auto moved = kLine.times_monomial(std::polar(1.0, 0.4), {2, 0});
  const auto other = certificate({moved}, TorusFiber{LogPoint{{0.0, 0.7}}}, 64, 10);
  CHECK(std::abs(base.grid_min - other.grid_min) <= 1e-10);
  CHECK(base.verdict == other.verdict);
  // Where |z^beta| != 1 the minimum scales, the verdict does not.
  const auto b2 = certificate({kLine}, TorusFiber{LogPoint{{0.4, 1.2}}}, 64, 10);
  const auto o2 = certificate({moved}, TorusFiber{LogPoint{{0.4, 1.2}}}, 64, 10);
  CHECK(b2.verdict == o2.verdict);
}

TEST_CASE("certificates agree with exact line membership") {
  const AffineSpaceSpec canon(Eigen::MatrixXcd::Ones(1, 1), Eigen::VectorXcd::Ones(1));
  int compared = 0;
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      const double x0 = -2.0 + 4.0 * i / 11.0, x1 = -2.0 + 4.0 * j / 11.0;
      if (oracle::canonical_line_boundary_distance(x0, x1) < 0.02) continue;
      const bool inside = line_amoeba_membership(canon, LogPoint{{x0, x1}}).inside;
      const auto rep = certificate({kLine}, TorusFiber{LogPoint{{x0, x1}}}, 64, 20);
      CHECK(rep.verdict == (inside ? FiberVerdict::Inside : FiberVerdict::Outside));
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("certificate input errors") {
  CHECK(code_of([] { certificate({kLine}, TorusFiber{LogPoint{{0.0}}}, 16, 1); }) == ErrorCode::DimensionMismatch);
  const LaurentPolynomial big(4, {Term{{1, 0, 0, 0}, 1.0}});
  CHECK(code_of([&] { certificate({big}, TorusFiber{LogPoint{{0, 0, 0, 0}}}, 8, 1); }) == ErrorCode::DimensionTooLarge);
}
