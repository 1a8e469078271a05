#include "amoeba/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {

Complex integer_power(Complex z, int e) {
  if (e < 0) return 1.0 / integer_power(z, -e);
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1) result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

LaurentPolynomial::LaurentPolynomial(int n, std::vector<Term> terms) : n_(n) {
  if (n < 1) throw AmoebaError(ErrorCode::InvalidArgument, "polynomial needs at least one variable");
  if (terms.empty()) throw AmoebaError(ErrorCode::InvalidArgument, "polynomial needs at least one term");
  std::map<std::vector<int>, Complex> merged;
  for (auto& term : terms) {
    if (static_cast<int>(term.alpha.size()) != n) {
      throw AmoebaError(ErrorCode::InvalidArgument, "exponent of length " + std::to_string(term.alpha.size()) +
                                                        " in a polynomial of " + std::to_string(n) + " variables");
    }
    if (!std::isfinite(term.coeff.real()) || !std::isfinite(term.coeff.imag())) {
      throw AmoebaError(ErrorCode::InvalidArgument, "non-finite coefficient");
    }
    merged[term.alpha] += term.coeff;
  }
  for (auto& [alpha, coeff] : merged) {
    if (coeff != Complex{}) terms_.push_back(Term{alpha, coeff});
  }
  if (terms_.empty()) terms_.push_back(Term{std::vector<int>(n, 0), Complex{}});
}

Complex LaurentPolynomial::evaluate(const ComplexVector& z) const {
  if (static_cast<int>(z.size()) != n_) throw AmoebaError(ErrorCode::DimensionMismatch, "point dimension");
  Complex sum{};
  for (const auto& term : terms_) {
    Complex v = term.coeff;
    for (int i = 0; i < n_; ++i) {
      if (term.alpha[i] != 0) v *= integer_power(z[i], term.alpha[i]);
    }
    sum += v;
  }
  return sum;
}

double LaurentPolynomial::modulus_bound(const std::vector<double>& log_r) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    double e = 0.0;
    for (int i = 0; i < n_; ++i) e += term.alpha[i] * log_r.at(i);
    sum += std::abs(term.coeff) * std::exp(e);
  }
  return sum;
}

double LaurentPolynomial::angular_derivative_bound(const std::vector<double>& log_r) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    double e = 0.0;
    int degree = 0;
    for (int i = 0; i < n_; ++i) {
      e += term.alpha[i] * log_r.at(i);
      degree += std::abs(term.alpha[i]);
    }
    sum += std::abs(term.coeff) * std::exp(e) * degree;
  }
  return sum;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& other) const {
  if (other.n_ != n_) throw AmoebaError(ErrorCode::DimensionMismatch, "polynomial dimensions differ");
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return LaurentPolynomial(n_, std::move(all));
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& other) const {
  if (other.n_ != n_) throw AmoebaError(ErrorCode::DimensionMismatch, "polynomial dimensions differ");
  std::vector<Term> all;
  all.reserve(terms_.size() * other.terms_.size());
  for (const auto& p : terms_) {
    for (const auto& q : other.terms_) {
      std::vector<int> alpha(n_);
      for (int i = 0; i < n_; ++i) alpha[i] = p.alpha[i] + q.alpha[i];
      all.push_back(Term{std::move(alpha), p.coeff * q.coeff});
    }
  }
  return LaurentPolynomial(n_, std::move(all));
}

LaurentPolynomial LaurentPolynomial::times_monomial(Complex c, const std::vector<int>& beta) const {
  return *this * LaurentPolynomial(n_, {Term{beta, c}});
}

}  // namespace amoeba
