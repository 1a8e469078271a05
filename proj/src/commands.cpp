#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "amoeba/amoeba_volume.hpp"
#include "amoeba/cli_io.hpp"
#include "amoeba/coamoeba_solver.hpp"
#include "amoeba/core_model.hpp"
#include "amoeba/errors.hpp"
#include "amoeba/ideal_certificates.hpp"
#include "amoeba/io.hpp"
#include "amoeba/line_geometry.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/sampling_rank.hpp"

namespace amoeba {

namespace {

using Json = nlohmann::ordered_json;

// Points of the tiling cloud written with --out.
constexpr std::uint64_t kMaxCloudPoints = 20000;
constexpr double kSampleLogRadius = 3.0;

Json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<long long>(v);
  return v;
}

Json complex_json(const Complex& z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

Json estimate_json(const VolumeEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["stderr"] = e.std_error;
  j["n_samples"] = e.n_samples;
  j["seed"] = e.seed;
  return j;
}

std::string term(double c, const std::string& symbol, bool first) {
  std::ostringstream s;
  const double mag = std::abs(c);
  if (first) {
    if (c < 0) s << "-";
  } else {
    s << (c < 0 ? " - " : " + ");
  }
  const bool unit = mag == 1.0 && !symbol.empty();
  if (!unit) {
    if (mag == std::floor(mag) && mag < 9.0e15) {
      s << static_cast<long long>(mag);
    } else {
      s << std::setprecision(17) << mag;
    }
    if (!symbol.empty()) s << "*";
  }
  s << symbol;
  return s.str();
}

std::string quadric_equation(double yj2, double y12, double r2, double c, int form) {
  const std::vector<std::pair<double, std::string>> parts = {
      {yj2, "y_" + std::to_string(form) + "^2"}, {y12, "y_1^2"}, {r2, "r^2"}, {c, ""}};
  std::string eq;
  for (const auto& [coef, sym] : parts) {
    if (coef == 0.0) continue;
    eq += term(coef, sym, eq.empty());
  }
  if (eq.empty()) eq = "0";
  return eq + " = 0";
}

void write_report(const RunConfig& cfg, const Json& report, std::ostream& out, const std::string& text) {
  if (cfg.json) {
    out << report.dump(2) << "\n";
  } else {
    out << text;
  }
  if (!cfg.out_path.empty()) emit_json(report, cfg.out_path);
}

void write_cloud(const RunConfig& cfg, const PointCloud& cloud, const std::vector<std::string>& default_axes,
                 const std::string& title, std::ostream& out) {
  const auto& axes = cfg.axes.empty() ? default_axes : cfg.axes;
  if (cfg.out_path.empty()) {
    if (cfg.format == OutputFormat::Svg) {
      write_svg(cloud, axes, out, SvgStyle{title});
    } else {
      write_csv(cloud, out);
    }
    return;
  }
  if (cfg.format == OutputFormat::Svg) {
    emit_svg(cloud, axes, cfg.out_path, SvgStyle{title});
  } else {
    emit_csv(cloud, cfg.out_path);
  }
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  const int k = spec.k();
  const int n = spec.ambient_dim();
  const bool log_mode = cfg.mode == "log";

  std::vector<std::vector<double>> cols(2 * k + n);
  std::vector<double> log_r(k), theta(k);
  std::vector<int> idx(2 * k, 0);
  const auto r_steps = cfg.grid_r;
  const auto t_steps = cfg.grid_t;
  while (true) {
    for (int i = 0; i < k; ++i) {
      log_r[i] = -kSampleLogRadius + 2.0 * kSampleLogRadius * (idx[i] + 0.5) / r_steps;
      theta[i] = kTwoPi * (idx[k + i] + 0.5) / t_steps;
    }
    const ParameterPoint p = ParameterPoint::from_log_polar(log_r, theta);
    try {
      const ComplexVector z = evaluate(spec, p.to_complex());
      const std::vector<double> image = log_mode ? log_map(z).x : arg_map(z).angles;
      for (int i = 0; i < k; ++i) {
        cols[i].push_back(log_r[i]);
        cols[k + i].push_back(theta[i]);
      }
      for (int c = 0; c < n; ++c) cols[2 * k + c].push_back(image[c]);
    } catch (const AmoebaError& e) {
      if (e.code() != ErrorCode::OffTorus) throw;
    }
    int d = 0;
    for (; d < 2 * k; ++d) {
      if (++idx[d] < (d < k ? r_steps : t_steps)) break;
      idx[d] = 0;
    }
    if (d == 2 * k) break;
  }

  PointCloud cloud;
  for (int i = 0; i < k; ++i) cloud.add_column("log_r" + std::to_string(i + 1), std::move(cols[i]));
  for (int i = 0; i < k; ++i) cloud.add_column("theta" + std::to_string(i + 1), std::move(cols[k + i]));
  const std::string prefix = log_mode ? "x" : "psi";
  std::vector<std::string> image_names;
  for (int c = 0; c < n; ++c) {
    image_names.push_back(prefix + std::to_string(c + 1));
    cloud.add_column(image_names.back(), std::move(cols[2 * k + c]));
  }
  if (cfg.format == OutputFormat::Json) {
    Json report;
    for (std::size_t c = 0; c < cloud.names.size(); ++c) report[cloud.names[c]] = cloud.columns[c];
    RunConfig as_json = cfg;
    as_json.json = true;
    write_report(as_json, report, out, "");
    return 0;
  }
  std::vector<std::string> axes(image_names.begin(), image_names.begin() + std::min(n, 3));
  write_cloud(cfg, cloud, axes, log_mode ? "amoeba samples" : "coamoeba samples", out);
  return 0;
}

int cmd_dim(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  const ImageMode mode = cfg.mode == "coamoeba" ? ImageMode::Coamoeba : ImageMode::Amoeba;
  const int d = dimension_estimate(spec, mode, cfg.samples, cfg.seed);
  Json report;
  report["mode"] = cfg.mode;
  report["dimension"] = d;
  report["k"] = spec.k();
  report["m"] = spec.m();
  report["n_samples"] = cfg.samples;
  report["seed"] = cfg.seed;
  write_report(cfg, report, out, std::to_string(d) + "\n");
  return 0;
}

int cmd_quadric(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  Json report = Json::array();
  std::string text;
  for (const auto& q : real_line_quadrics(spec)) {
    // Printed with a positive y_j^2 coefficient.
    const double s = q.c_yj2 < 0 ? -1.0 : 1.0;
    const double yj2 = s * q.c_yj2 + 0.0, y12 = s * q.c_y12 + 0.0, r2 = s * q.c_r2 + 0.0, c = s * q.c_const + 0.0;
    Json j;
    j["form"] = q.form;
    j["yj2"] = number(yj2);
    j["y12"] = number(y12);
    j["r2"] = number(r2);
    j["const"] = number(c);
    j["equation"] = quadric_equation(yj2, y12, r2, c, q.form);
    text += j["equation"].get<std::string>() + "\n";
    report.push_back(std::move(j));
  }
  if (cfg.json || cfg.out_path.empty()) {
    out << report.dump(2) << "\n";
  } else {
    out << text;
  }
  if (!cfg.out_path.empty()) emit_json(report, cfg.out_path);
  return 0;
}

int cmd_member(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  const LineMembership m = line_amoeba_membership(spec, LogPoint{cfg.point}, cfg.tol);
  Json report;
  report["point"] = cfg.point;
  report["verdict"] = m.inside ? "Inside" : "Outside";
  report["witnesses"] = m.witnesses;
  std::string text = m.inside ? "Inside\n" : "Outside\n";
  for (double w : m.witnesses) text += "witness theta " + fmt(w, 17) + "\n";
  write_report(cfg, report, out, text);
  return 0;
}

int cmd_fiber(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  const FiberSolutions f = line_fiber_solutions(spec, LogPoint{cfg.point}, cfg.tol);
  Json report;
  report["point"] = cfg.point;
  report["count"] = f.count();
  Json pts = Json::array();
  std::string text = "count " + std::to_string(f.count()) + "\n";
  for (const auto& t : f.points) {
    pts.push_back(complex_json(t));
    text += "t = " + fmt(t.real(), 17) + (t.imag() < 0 ? " - " : " + ") + fmt(std::abs(t.imag()), 17) + "i\n";
  }
  report["solutions"] = pts;
  write_report(cfg, report, out, text);
  return 0;
}

int cmd_coclassify(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  const CoamoebaMembership c = classify(spec, TorusPoint{cfg.theta});
  Json report;
  report["theta"] = cfg.theta;
  report["status"] = c.interior ? "interior" : "degenerate";
  report["pattern"] = c.interior ? c.pattern.to_string() : "";
  report["x"] = c.x;
  report["y"] = c.y;
  std::string text = c.interior ? "interior " + c.pattern.to_string() + "\n" : "degenerate\n";
  if (!c.x.empty()) text += "x " + list_text(c.x) + "\ny " + list_text(c.y) + "\n";
  write_report(cfg, report, out, text);
  return 0;
}

PointCloud tiling_cloud(const AffineSpaceSpec& spec, std::uint64_t n, std::uint64_t seed) {
  const int k = spec.k();
  std::vector<std::vector<double>> cols(2 * k);
  std::vector<std::string> labels;
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::vector<double> angles(2 * k);
  for (std::uint64_t s = 0; s < n; ++s) {
    for (auto& a : angles) a = kTwoPi * uniform01(rng);
    const CoamoebaMembership c = classify(spec, TorusPoint{angles});
    for (int i = 0; i < 2 * k; ++i) cols[i].push_back(angles[i]);
    labels.push_back(c.interior ? c.pattern.to_string() : "degenerate");
  }
  PointCloud cloud;
  for (int i = 0; i < k; ++i) cloud.add_column("theta" + std::to_string(i + 1), std::move(cols[i]));
  for (int i = 0; i < k; ++i) cloud.add_column("psi" + std::to_string(i + 1), std::move(cols[k + i]));
  cloud.label_name = "pattern";
  cloud.labels = std::move(labels);
  return cloud;
}

int cmd_tiling(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  const TilingStats stats = tiling_stats(spec, cfg.samples, cfg.seed);
  const double n = static_cast<double>(std::max<std::uint64_t>(stats.n_samples, 1));
  Json report;
  report["n_samples"] = stats.n_samples;
  report["seed"] = stats.seed;
  Json patterns;
  std::string text;
  for (const auto& [pattern, count] : stats.counts) {
    Json p;
    p["count"] = count;
    p["frequency"] = static_cast<double>(count) / n;
    patterns[pattern.to_string()] = p;
    text += pattern.to_string() + " " + std::to_string(count) + " " + fmt(static_cast<double>(count) / n) + "\n";
  }
  report["patterns"] = patterns;
  report["degenerate"] = stats.degenerate_count;
  report["degenerate_fraction"] = static_cast<double>(stats.degenerate_count) / n;
  text += "degenerate " + std::to_string(stats.degenerate_count) + " " +
          fmt(static_cast<double>(stats.degenerate_count) / n) + "\n";
  if (cfg.json) {
    out << report.dump(2) << "\n";
  } else {
    out << text;
  }
  if (!cfg.out_path.empty()) {
    const PointCloud cloud = tiling_cloud(spec, std::min(cfg.samples, kMaxCloudPoints), cfg.seed);
    if (cfg.format == OutputFormat::Json) {
      emit_json(report, cfg.out_path);
    } else {
      std::vector<std::string> axes = {"theta1", "psi1"};
      if (spec.k() >= 2) axes = {"theta1", "theta2", "psi1"};
      std::ostringstream sink;
      write_cloud(cfg, cloud, axes, "sign patterns", sink);
    }
  }
  return 0;
}

int cmd_volume(const RunConfig& cfg, std::ostream& out, bool amoeba) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  const VolumeEstimate e = amoeba ? amoeba_volume(spec, cfg.samples, cfg.seed)
                                  : coamoeba_volume(spec, cfg.samples, cfg.seed);
  write_report(cfg, estimate_json(e), out, fmt(e.value) + " +- " + fmt(e.std_error) + "\n");
  return 0;
}

int cmd_fibercount(const RunConfig& cfg, std::ostream& out) {
  const AffineSpaceSpec spec = load_spec(cfg.spec_path);
  MultistartConfig mc;
  mc.n_starts = cfg.starts;
  const NumericFiber f = fiber_solutions_numeric(spec, LogPoint{cfg.point}, mc, cfg.seed);
  Json report;
  report["point"] = cfg.point;
  report["count"] = f.points.size();
  report["nonconverged"] = f.nonconverged;
  report["critical"] = f.critical;
  Json pts = Json::array();
  for (const auto& z : f.points) {
    Json p = Json::array();
    for (const auto& t : z) p.push_back(complex_json(t));
    pts.push_back(p);
  }
  report["solutions"] = pts;
  write_report(cfg, report, out, std::to_string(f.points.size()) + "\n");
  return 0;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const auto generators = load_ideal(cfg.ideal_path);
  const CertificateReport r = certificate(generators, TorusFiber{LogPoint{cfg.fiber}}, cfg.grid, cfg.refine);
  const char* verdict = r.verdict == FiberVerdict::Inside    ? "Inside"
                        : r.verdict == FiberVerdict::Outside ? "Outside"
                                                             : "Indeterminate";
  Json report;
  report["fiber"] = cfg.fiber;
  report["verdict"] = verdict;
  report["grid_min"] = r.grid_min;
  report["refined_min"] = r.refined_min;
  report["grid"] = r.grid_size;
  report["lipschitz"] = r.lipschitz;
  report["identity_residual"] = r.identity_residual;
  report["certificate_terms"] = r.G.terms().size();
  std::string text = std::string(verdict) + "\nmin " + fmt(r.refined_min) + "\n";
  write_report(cfg, report, out, text);
  return 0;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::Help:
      out << cfg.help_text;
      return 0;
    case Command::Sample: return cmd_sample(cfg, out);
    case Command::Dim: return cmd_dim(cfg, out);
    case Command::Quadric: return cmd_quadric(cfg, out);
    case Command::Member: return cmd_member(cfg, out);
    case Command::Fiber: return cmd_fiber(cfg, out);
    case Command::Coclassify: return cmd_coclassify(cfg, out);
    case Command::Tiling: return cmd_tiling(cfg, out);
    case Command::Covolume: return cmd_volume(cfg, out, false);
    case Command::Avolume: return cmd_volume(cfg, out, true);
    case Command::Fibercount: return cmd_fibercount(cfg, out);
    case Command::Certify: return cmd_certify(cfg, out);
  }
  return 2;
}

}  // namespace amoeba
