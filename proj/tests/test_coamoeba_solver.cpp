#include <doctest.h>

#include <random>

#include "amoeba/coamoeba_solver.hpp"
#include "amoeba/core_model.hpp"
#include "amoeba/errors.hpp"
#include "oracles.hpp"

using namespace amoeba;
using oracle::cd;
using oracle::kPi;

namespace {

const AffineSpaceSpec kCanon(Eigen::MatrixXcd::Ones(1, 1), Eigen::VectorXcd::Ones(1));

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const AmoebaError& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("sign patterns") {
  const auto s = SignPattern::from_mask(0b0101, 4);
  CHECK(s.s == std::vector<int>{-1, 1, -1, 1});
  CHECK(s.mask() == 0b0101u);
  CHECK(s.to_string() == "-+-+");
  CHECK(SignPattern::all_positive(2).to_string() == "++");
}

TEST_CASE("classify examples") {
  auto c = classify(kCanon, TorusPoint{{2 * kPi / 3, kPi / 3}});
  REQUIRE(c.interior);
  CHECK(c.pattern.to_string() == "++");
  CHECK(c.x[0] == doctest::Approx(1.0));
  CHECK(c.y[0] == doctest::Approx(1.0));
  c = classify(kCanon, TorusPoint{{kPi / 3, 2 * kPi / 3}});
  REQUIRE(c.interior);
  CHECK(c.pattern.to_string() == "--");
  CHECK(c.x[0] == doctest::Approx(-1.0));
  CHECK(c.y[0] == doctest::Approx(-1.0));
  CHECK_FALSE(classify(kCanon, TorusPoint{{kPi / 2, kPi / 2}}).interior);
  const AffineSpaceSpec k1m2(Eigen::MatrixXcd::Ones(2, 1), Eigen::VectorXcd::Ones(2));
  CHECK(code_of([&] { classify(k1m2, TorusPoint{{0.1, 0.2, 0.3}}); }) == ErrorCode::NotSquareCase);
  CHECK(code_of([&] { classify(kCanon, TorusPoint{{0.1}}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("classify matches the closed form on the canonical line") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> th(0, 2 * kPi);
  for (int s = 0; s < 5000; ++s) {
    const double a = th(rng), b = th(rng);
    const auto w = oracle::canonical_line_witness(a, b);
    const auto c = classify(kCanon, TorusPoint{{a, b}});
    if (!c.interior) continue;
    REQUIRE(w.has_value());
    CHECK(c.x[0] == doctest::Approx(w->x).epsilon(1e-9));
    CHECK(c.y[0] == doctest::Approx(w->y).epsilon(1e-9));
    CHECK(c.pattern.s[0] == (w->x > 0 ? 1 : -1));
    CHECK(c.pattern.s[1] == (w->y > 0 ? 1 : -1));
  }
}

TEST_CASE("witness reconstruction and symmetry") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> th(0, 2 * kPi);
  for (int s = 0; s < 2000; ++s) {
    const int k = 1 + s % 3;
    const AffineSpaceSpec spec(oracle::random_complex(k, k, rng), oracle::random_complex(k, 1, rng));
    std::vector<double> angles(2 * k);
    for (auto& v : angles) v = th(rng);
    const auto c = classify(spec, TorusPoint{angles});
    if (!c.interior) continue;
    ComplexVector t(k);
    for (int i = 0; i < k; ++i) t[i] = c.x[i] * std::polar(1.0, angles[i]);
    for (int j = 0; j < k; ++j) {
      const cd fj = spec.form(j, t);
      const cd zj = c.y[j] * std::polar(1.0, angles[k + j]);
      CHECK(std::abs(fj - zj) <= 1e-8 * std::max(1.0, std::abs(fj)));
    }
    // Flipping coordinates by pi flips the pattern.
    const std::uint32_t flip = static_cast<std::uint32_t>(rng() % (1u << (2 * k)));
    auto shifted = angles;
    for (int i = 0; i < 2 * k; ++i)
      if (flip >> i & 1u) shifted[i] = wrap_angle(shifted[i] + kPi);
    const auto c2 = classify(spec, TorusPoint{shifted});
    if (!c2.interior) continue;
    CHECK(c2.pattern.mask() == (c.pattern.mask() ^ flip));
  }
}

TEST_CASE("arguments of the space classify as all-positive") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lr(-2, 2), th(0, 2 * kPi);
  int interior = 0;
  for (int s = 0; s < 10000; ++s) {
    const int k = 1 + s % 2;
    const AffineSpaceSpec spec(oracle::random_complex(k, k, rng), oracle::random_complex(k, 1, rng));
    std::vector<double> u(2 * k);
    for (int i = 0; i < k; ++i) {
      u[i] = lr(rng);
      u[k + i] = th(rng);
    }
    const auto t = oracle::from_log_polar(u);
    const auto z = oracle::rho(spec.a(), spec.b(), t);
    const auto c = classify(spec, arg_map(z));
    if (!c.interior) continue;
    ++interior;
    CHECK(c.pattern == SignPattern::all_positive(2 * k));
    for (int i = 0; i < k; ++i) CHECK(c.x[i] == doctest::Approx(std::abs(t[i])).epsilon(1e-8));
    for (int j = 0; j < k; ++j) CHECK(c.y[j] == doctest::Approx(std::abs(z[k + j])).epsilon(1e-8));
  }
  CHECK(interior > 9900);
}

TEST_CASE("tiling statistics") {
  const auto empty = tiling_stats(kCanon, 0, 1);
  CHECK(empty.counts.empty());
  CHECK(empty.n_samples == 0);

  const auto st = tiling_stats(kCanon, 200000, 5);
  std::uint64_t total = st.degenerate_count;
  std::vector<std::uint64_t> counts;
  for (const auto& [p, c] : st.counts) {
    total += c;
    counts.push_back(c);
  }
  CHECK(total == 200000);
  CHECK(counts.size() == 4);
  CHECK(oracle::within_multinomial(counts, 200000, 0.25, 4.0));

  const auto again = tiling_stats(kCanon, 200000, 5);
  CHECK(again.counts == st.counts);
}

TEST_CASE("coamoeba volume") {
  const auto small = coamoeba_volume(kCanon, 100, 9);
  const double p = small.value / (4 * kPi * kPi);
  CHECK(small.std_error == doctest::Approx(4 * kPi * kPi * std::sqrt(p * (1 - p) / 100)));
  const auto v = coamoeba_volume(kCanon, 200000, 9);
  CHECK(std::abs(v.value - kPi * kPi) < 4 * v.std_error);
  CHECK(v.n_samples == 200000);
  CHECK(v.seed == 9);
  // Standard error shrinks like n^{-1/2}.
  const auto a = coamoeba_volume(kCanon, 10000, 1), b = coamoeba_volume(kCanon, 1000000, 1);
  CHECK(a.std_error / b.std_error == doctest::Approx(10.0).epsilon(0.05));
}
