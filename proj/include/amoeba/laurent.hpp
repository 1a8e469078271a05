#pragma once

#include <vector>

#include "amoeba/types.hpp"

namespace amoeba {

/// Sparse Laurent polynomial sum_alpha a_alpha z^alpha in n variables.
class LaurentPolynomial {
 public:
  struct Term {
    std::vector<int> alpha;
    Complex coeff;
  };

  /// Merges repeated exponents and drops vanishing coefficients. Throws
  /// InvalidArgument if `terms` is empty or an exponent has the wrong length.
  LaurentPolynomial(int n, std::vector<Term> terms);

  int dim() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  Complex evaluate(const ComplexVector& z) const;

  /// sum_alpha |a_alpha| prod_i r_i^alpha_i for moduli r_i = exp(log_r_i):
  /// an upper bound of |f| on the torus with these moduli.
  double modulus_bound(const std::vector<double>& log_r) const;
  /// Upper bound of |d f / d theta_i| summed over i on the same torus.
  double angular_derivative_bound(const std::vector<double>& log_r) const;

  LaurentPolynomial operator+(const LaurentPolynomial& other) const;
  LaurentPolynomial operator*(const LaurentPolynomial& other) const;
  /// c z^beta f.
  LaurentPolynomial times_monomial(Complex c, const std::vector<int>& beta) const;

 private:
  int n_;
  std::vector<Term> terms_;
};

/// z^e for integer e, by repeated squaring.
Complex integer_power(Complex z, int e);

}  // namespace amoeba
