#include "amoeba/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "amoeba/errors.hpp"

namespace amoeba {

namespace {

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (!j.is_object()) throw AmoebaError(ErrorCode::InvalidSpec, "complex entry must be {\"re\":..,\"im\":..}");
  const double re = j.value("re", 0.0);
  const double im = j.value("im", 0.0);
  return Complex{re, im};
}

nlohmann::ordered_json complex_to_json(const Complex& c) {
  nlohmann::ordered_json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AmoebaError(ErrorCode::IoError, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw AmoebaError(ErrorCode::InvalidSpec, path + ": " + e.what());
  }
}

}  // namespace

AffineSpaceSpec spec_from_json(const nlohmann::json& j) {
  try {
    const int k = j.at("k").get<int>();
    const int m = j.at("m").get<int>();
    if (k < 1 || m < 1) throw AmoebaError(ErrorCode::InvalidSpec, "k and m must be positive");
    const auto& a = j.at("a");
    const auto& b = j.at("b");
    if (!a.is_array() || static_cast<int>(a.size()) != m) {
      throw AmoebaError(ErrorCode::InvalidSpec, "\"a\" must have m rows");
    }
    if (!b.is_array() || static_cast<int>(b.size()) != m) {
      throw AmoebaError(ErrorCode::InvalidSpec, "\"b\" must have m entries");
    }
    Eigen::MatrixXcd am(m, k);
    Eigen::VectorXcd bv(m);
    for (int r = 0; r < m; ++r) {
      if (!a[r].is_array() || static_cast<int>(a[r].size()) != k) {
        throw AmoebaError(ErrorCode::InvalidSpec, "row " + std::to_string(r + 1) + " of \"a\" must have k entries");
      }
      for (int c = 0; c < k; ++c) am(r, c) = complex_from_json(a[r][c]);
      bv(r) = complex_from_json(b[r]);
    }
    return AffineSpaceSpec(std::move(am), std::move(bv));
  } catch (const nlohmann::json::exception& e) {
    throw AmoebaError(ErrorCode::InvalidSpec, e.what());
  }
}

nlohmann::ordered_json spec_to_json(const AffineSpaceSpec& spec) {
  nlohmann::ordered_json j;
  j["k"] = spec.k();
  j["m"] = spec.m();
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  nlohmann::ordered_json b = nlohmann::ordered_json::array();
  for (int r = 0; r < spec.m(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < spec.k(); ++c) row.push_back(complex_to_json(spec.a()(r, c)));
    a.push_back(std::move(row));
    b.push_back(complex_to_json(spec.b()(r)));
  }
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  return j;
}

AffineSpaceSpec load_spec(const std::string& path) { return spec_from_json(read_json_file(path)); }

std::vector<LaurentPolynomial> ideal_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw AmoebaError(ErrorCode::InvalidSpec, "ideal must be a non-empty list");
  std::vector<LaurentPolynomial> out;
  try {
    for (const auto& gen : j) {
      std::vector<LaurentPolynomial::Term> terms;
      int n = -1;
      for (const auto& t : gen.at("terms")) {
        auto alpha = t.at("alpha").get<std::vector<int>>();
        if (n < 0) n = static_cast<int>(alpha.size());
        terms.push_back({std::move(alpha), Complex{t.value("re", 0.0), t.value("im", 0.0)}});
      }
      if (n < 1) throw AmoebaError(ErrorCode::InvalidSpec, "generator without terms");
      out.emplace_back(n, std::move(terms));
    }
  } catch (const nlohmann::json::exception& e) {
    throw AmoebaError(ErrorCode::InvalidSpec, e.what());
  } catch (const AmoebaError& e) {
    if (e.code() == ErrorCode::InvalidSpec) throw;
    throw AmoebaError(ErrorCode::InvalidSpec, e.what());
  }
  return out;
}

std::vector<LaurentPolynomial> load_ideal(const std::string& path) { return ideal_from_json(read_json_file(path)); }

std::vector<double> parse_number_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw AmoebaError(ErrorCode::UsageError, flag + ": cannot parse '" + item + "' as a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw AmoebaError(ErrorCode::UsageError, flag + ": expected a comma-separated list of numbers");
  return out;
}

}  // namespace amoeba
