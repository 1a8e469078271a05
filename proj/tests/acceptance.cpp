// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "amoeba/amoeba_volume.hpp"
#include "amoeba/cli_io.hpp"
#include "amoeba/coamoeba_solver.hpp"
#include "amoeba/core_model.hpp"
#include "amoeba/ideal_certificates.hpp"
#include "amoeba/laurent.hpp"
#include "amoeba/line_geometry.hpp"
#include "amoeba/sampling_rank.hpp"
#include "oracles.hpp"

using namespace amoeba;
using oracle::cd;
using oracle::kPi;
using Clock = std::chrono::steady_clock;

namespace {

const AffineSpaceSpec kCanon(Eigen::MatrixXcd::Ones(1, 1), Eigen::VectorXcd::Ones(1));

AffineSpaceSpec product_space() {
  Eigen::VectorXcd b(2);
  b << 1.0, 2.0;
  return AffineSpaceSpec(Eigen::MatrixXcd::Identity(2, 2), b);
}

AffineSpaceSpec generic_real_k2() {
  std::mt19937_64 rng(2024);
  return AffineSpaceSpec(oracle::random_real(2, 2, rng), oracle::random_real(2, 1, rng));
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void set_threads(const char* n) { setenv("AMOEBA_THREADS", n, 1); }

struct Result {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Result()>& body) {
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  if (!r.pass) ++failures;
  std::printf("[%s] criterion %d: %s | %s\n", r.pass ? "PASS" : "FAIL", id, name.c_str(), r.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Result volume_check(const VolumeEstimate& e, double target, double seconds, double limit) {
  const double z = std::abs(e.value - target) / e.std_error;
  return {z <= 3.0 && seconds < limit,
          fmt("estimate %.6f +- %.6f, target %.6f, |z| = %.2f, %.1f s (limit %.0f s)", e.value, e.std_error, target, z,
              seconds, limit)};
}

Result tiling_check(const AffineSpaceSpec& spec, int k) {
  const std::uint64_t n = 1000000;
  const auto st = tiling_stats(spec, n, 11);
  const std::size_t want = std::size_t{1} << (2 * k);
  std::uint64_t nondeg = n - st.degenerate_count;
  const double p = 1.0 / static_cast<double>(want);
  const double sd = std::sqrt(static_cast<double>(n) * p * (1 - p));
  double worst = 0.0;
  for (const auto& [pat, c] : st.counts) worst = std::max(worst, std::abs(static_cast<double>(c) - n * p) / sd);
  const double deg = static_cast<double>(st.degenerate_count) / n;
  const bool ok = st.counts.size() == want && worst <= 3.0 && deg < 1e-3 && nondeg + st.degenerate_count == n;
  return {ok, fmt("k=%d: %zu/%zu patterns, worst |z| = %.2f, degenerate fraction %.2g", k, st.counts.size(), want, worst,
                  deg)};
}

}  // namespace

int main() {
  set_threads("1");

  report(1, "coamoeba volume k=1 equals pi^2", [] {
    const auto t0 = Clock::now();
    const auto e = coamoeba_volume(kCanon, 1000000, 1);
    return volume_check(e, kPi * kPi, seconds_since(t0), 30.0);
  });

  report(2, "coamoeba volume k=2 equals pi^4", [] {
    const auto t0 = Clock::now();
    const auto e = coamoeba_volume(generic_real_k2(), 1000000, 2);
    return volume_check(e, std::pow(kPi, 4), seconds_since(t0), 120.0);
  });

  report(3, "amoeba volume of the real line equals pi^2/2", [] {
    const auto e = amoeba_volume(kCanon, 1000000, 3);
    const double quad = oracle::canonical_line_density_integral() / 2.0;
    const double target = kPi * kPi / 2.0;
    const double z = std::abs(e.value - target) / e.std_error;
    const double quad_rel = std::abs(quad - target) / target;
    const double z_quad = std::abs(e.value - quad) / e.std_error;
    return Result{z <= 3.0 && quad_rel < 5e-5 && z_quad <= 3.0,
                  fmt("estimate %.6f +- %.6f, |z| = %.2f; quadrature %.10f (rel err %.1e), |z| vs quadrature %.2f",
                      e.value, e.std_error, z, quad, quad_rel, z_quad)};
  });

  report(4, "amoeba volume of the real product space equals pi^4/4", [] {
    const auto t0 = Clock::now();
    const auto e = amoeba_volume(product_space(), 1000000, 4);
    return volume_check(e, std::pow(kPi, 4) / 4.0, seconds_since(t0), 600.0);
  });

  report(5, "sign patterns tile the torus evenly", [] {
    const auto a = tiling_check(kCanon, 1);
    const auto b = tiling_check(generic_real_k2(), 2);
    return Result{a.pass && b.pass, a.detail + "; " + b.detail};
  });

  report(6, "quadric of t -> (t, t+1, -2t+5) is exact", [] {
    const auto path = (std::filesystem::temp_directory_path() / "amoeba_acceptance_line.json").string();
    std::ofstream(path) << R"({"k":1,"m":2,"a":[[1],[-2]],"b":[1,5]})";
    std::ostringstream out, err;
    const int code = run_cli({"quadric", "--spec", path}, out, err);
    const auto j = nlohmann::json::parse(out.str());
    const bool ok = code == 0 && j.size() == 1 && j[0]["equation"] == "y_2^2 + 10*y_1^2 - 14*r^2 - 35 = 0" &&
                    j[0]["yj2"].is_number_integer() && j[0]["yj2"] == 1 && j[0]["y12"].is_number_integer() &&
                    j[0]["y12"] == 10 && j[0]["r2"].is_number_integer() && j[0]["r2"] == -14 &&
                    j[0]["const"].is_number_integer() && j[0]["const"] == -35;
    return Result{ok, "emitted " + j[0]["equation"].get<std::string>()};
  });

  report(7, "fiber cardinality is 2^k at regular values", [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lr(-2.0, 2.0), th(0.0, 2 * kPi);
    const auto prod = product_space();
    const auto regular_line = [](const std::vector<cd>& fib) {
      if (fib.size() != 2) return false;
      for (const auto& t : fib)
        if (std::abs(t.imag()) / std::norm(1.0 + t) <= 1e-8) return false;
      return true;
    };
    const auto contains = [](const std::vector<ComplexVector>& pts, const ComplexVector& t) {
      for (const auto& p : pts) {
        double d = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) d = std::max(d, std::abs(p[i] - t[i]) / std::max(1.0, std::abs(t[i])));
        if (d < 1e-7) return true;
      }
      return false;
    };
    int line_ok = 0, prod_ok = 0, line_n = 0, prod_n = 0, oracle_disagree = 0;
    while (line_n < 100) {
      const cd t = std::polar(std::exp(lr(rng)), th(rng));
      const auto x = log_map(evaluate(kCanon, {t}));
      const auto exact = oracle::real_line_fiber(1.0, 1.0, x.x[0], x.x[1]);
      if (!regular_line(exact)) continue;
      ++line_n;
      const auto num = fiber_solutions_numeric(kCanon, x, MultistartConfig{}, line_n);
      bool agree = num.points.size() == exact.size();
      for (const auto& e : exact) agree = agree && contains(num.points, {e});
      oracle_disagree += !agree;
      line_ok += num.points.size() == 2 && line_fiber_solutions(kCanon, x).count() == 2;
    }
    while (prod_n < 100) {
      const cd t1 = std::polar(std::exp(lr(rng)), th(rng)), t2 = std::polar(std::exp(lr(rng)), th(rng));
      const auto x = log_map(evaluate(prod, {t1, t2}));
      const auto e1 = oracle::real_line_fiber(1.0, 1.0, x.x[0], x.x[2]);
      const auto e2 = oracle::real_line_fiber(1.0, 2.0, x.x[1], x.x[3]);
      if (!regular_line(e1)) continue;
      bool reg2 = e2.size() == 2;
      for (const auto& t : e2) reg2 = reg2 && std::abs(t.imag()) / std::norm(2.0 + t) > 1e-8;
      if (!reg2) continue;
      ++prod_n;
      const auto num = fiber_solutions_numeric(prod, x, MultistartConfig{}, prod_n);
      bool agree = num.points.size() == e1.size() * e2.size();
      for (const auto& u : e1)
        for (const auto& v : e2) agree = agree && contains(num.points, {u, v});
      oracle_disagree += !agree;
      prod_ok += num.points.size() == 4;
    }
    return Result{line_ok == 100 && prod_ok == 100 && oracle_disagree == 0,
                  fmt("line: %d/100 with count 2; product: %d/100 with count 4; oracle disagreements %d", line_ok, prod_ok,
                      oracle_disagree)};
  });

  report(8, "dimension is min(2k, k+m) in both modes", [] {
    std::mt19937_64 rng(8);
    const int shapes[5][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}};
    int ok = 0, total = 0;
    for (const auto& km : shapes) {
      for (int s = 0; s < 20; ++s) {
        const int k = km[0], m = km[1];
        const AffineSpaceSpec spec(oracle::random_complex(m, k, rng), oracle::random_complex(m, 1, rng));
        for (auto mode : {ImageMode::Amoeba, ImageMode::Coamoeba}) {
          ++total;
          ok += dimension_estimate(spec, mode, 100, 100 * s + k + m) == std::min(2 * k, k + m);
        }
      }
    }
    return Result{ok == total, fmt("%d/%d estimates correct over 100 specs", ok, total)};
  });

  report(9, "reflection, certificate and line identities", [] {
    using Term = LaurentPolynomial::Term;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> e(-2, 2);
    std::uniform_real_distribution<double> lr(-0.7, 0.7), th(0, 2 * kPi);
    double refl = 0.0;
    for (int n = 1; n <= 3; ++n) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<Term> terms;
        for (int i = 0; i < 5; ++i) {
          std::vector<int> a(n);
          for (auto& v : a) v = e(rng);
          terms.push_back(Term{a, cd(g(rng), g(rng))});
        }
        const LaurentPolynomial f(n, terms);
        std::vector<double> r(n), theta(n);
        for (int i = 0; i < n; ++i) {
          r[i] = lr(rng);
          theta[i] = th(rng);
        }
        const TorusFiber fiber{LogPoint{r}};
        const auto gf = conjugate_reflection(f, fiber);
        const auto hf = coamoeba_reflection(f, TorusPoint{theta});
        for (int s = 0; s < 2000; ++s) {
          std::vector<double> ang(n);
          for (auto& v : ang) v = th(rng);
          const auto z = fiber_point(fiber, ang);
          const cd fz = f.evaluate(z);
          refl = std::max(refl, std::abs(fz * gf.evaluate(z) - std::norm(fz)) / std::max(1.0, std::norm(fz)));
          ComplexVector w(n);
          for (int i = 0; i < n; ++i) w[i] = std::polar(std::exp(2.0 * lr(rng)), theta[i]);
          const cd fw = f.evaluate(w);
          refl = std::max(refl, std::abs(fw * hf.evaluate(w) - std::norm(fw)) / std::max(1.0, std::norm(fw)));
        }
      }
    }

    const LaurentPolynomial line_poly(2, {Term{{0, 1}, 1.0}, Term{{1, 0}, -1.0}, Term{{0, 0}, -1.0}});
    int compared = 0, agree = 0;
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        const double x0 = -3.0 + 6.0 * i / 39.0, x1 = -3.0 + 6.0 * j / 39.0;
        if (oracle::canonical_line_boundary_distance(x0, x1) < 0.02) continue;
        ++compared;
        const bool inside = line_amoeba_membership(kCanon, LogPoint{{x0, x1}}).inside;
        const auto rep = certificate({line_poly}, TorusFiber{LogPoint{{x0, x1}}}, 64, 20);
        agree += rep.verdict == (inside ? FiberVerdict::Inside : FiberVerdict::Outside);
      }
    }

    Eigen::MatrixXcd a(2, 1);
    a << 1.0, 1.0;
    Eigen::VectorXcd b(2);
    b << 1.0, cd(0, -2);
    const AffineSpaceSpec non_real(a, b);
    double wt = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const ParameterPoint p{{std::exp(2.0 * lr(rng))}, {th(rng)}};
      wt = std::max(wt, std::abs(complex_line_residual(non_real, p, 2)));
    }
    return Result{refl <= 1e-8 && compared == agree && wt <= 1e-8,
                  fmt("reflection residual %.2e; certificate agrees at %d/%d grid points; (W+T)^2 residual %.2e", refl,
                      agree, compared, wt)};
  });

  report(10, "Jacobians match finite differences and runs are reproducible", [] {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> lr(-2, 2), th(0, 2 * kPi);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const int k = 1 + s % 2, m = 1 + (s / 2) % 3;
      const AffineSpaceSpec spec(oracle::random_complex(m, k, rng), oracle::random_complex(m, 1, rng));
      std::vector<double> lrv(k), thv(k);
      for (int i = 0; i < k; ++i) {
        lrv[i] = lr(rng);
        thv[i] = th(rng);
      }
      std::vector<double> u(lrv);
      u.insert(u.end(), thv.begin(), thv.end());
      const auto p = ParameterPoint::from_log_polar(lrv, thv);
      for (bool arg : {false, true}) {
        const Eigen::MatrixXd an = arg ? coamoeba_jacobian(spec, p) : amoeba_jacobian(spec, p);
        const Eigen::MatrixXd fd = oracle::fd_jacobian(spec.a(), spec.b(), u, arg);
        worst = std::max(worst, (an - fd).norm() / std::max(1.0, an.norm()));
      }
    }

    // Same seed, different worker counts: identical bits.
    const auto k2 = generic_real_k2();
    const auto prod = product_space();
    const auto snapshot = [&] {
      std::ostringstream s;
      s.precision(17);
      const auto c = coamoeba_volume(k2, 200000, 5);
      const auto a = amoeba_volume(prod, 200000, 5);
      const auto t = tiling_stats(k2, 200000, 5);
      s << c.value << ' ' << c.std_error << ' ' << a.value << ' ' << a.std_error << ' ' << t.degenerate_count;
      for (const auto& [pat, n] : t.counts) s << ' ' << pat.to_string() << n;
      s << ' ' << dimension_estimate(k2, ImageMode::Amoeba, 100000, 5);
      const auto f = fiber_solutions_numeric(prod, LogPoint{{0.1, 0.2, 0.3, 0.5}}, MultistartConfig{}, 5);
      for (const auto& pt : f.points)
        for (const auto& v : pt) s << ' ' << v.real() << ' ' << v.imag();
      return s.str();
    };
    set_threads("1");
    const auto one = snapshot();
    const auto one_again = snapshot();
    set_threads("4");
    const auto four = snapshot();
    set_threads("1");
    const bool repro = one == one_again && one == four;
    return Result{worst <= 1e-5 && repro,
                  fmt("max relative Jacobian error %.2e; reproducible across reruns and thread counts: %s", worst,
                      repro ? "yes" : "no")};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
