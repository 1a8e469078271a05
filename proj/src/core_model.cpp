#include "amoeba/core_model.hpp"

#include <cmath>
#include <queue>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {

AffineSpaceSpec::AffineSpaceSpec(Eigen::MatrixXcd a, Eigen::VectorXcd b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() < 1 || a_.cols() < 1) {
    throw AmoebaError(ErrorCode::InvalidSpec, "need k >= 1 and m >= 1");
  }
  if (b_.size() != a_.rows()) {
    throw AmoebaError(ErrorCode::InvalidSpec, "b has length " + std::to_string(b_.size()) + " but a has " +
                                                  std::to_string(a_.rows()) + " rows");
  }
  if (!a_.allFinite() || !b_.allFinite()) {
    throw AmoebaError(ErrorCode::InvalidSpec, "coefficients must be finite");
  }
  for (int j = 0; j < m(); ++j) {
    if (b_(j) == Complex{} && a_.row(j).isZero(0.0)) {
      throw AmoebaError(ErrorCode::InvalidSpec, "form " + std::to_string(j + 1) + " is identically zero");
    }
  }
}

Complex AffineSpaceSpec::form(int j, const ComplexVector& t) const {
  Complex v = b_(j);
  for (int i = 0; i < k(); ++i) v += a_(j, i) * t[i];
  return v;
}

double AffineSpaceSpec::form_scale(int j, const ComplexVector& t) const {
  double s = std::abs(b_(j));
  for (int i = 0; i < k(); ++i) s += std::abs(a_(j, i)) * std::abs(t[i]);
  return s;
}

bool AffineSpaceSpec::operator==(const AffineSpaceSpec& other) const {
  return a_.rows() == other.a_.rows() && a_.cols() == other.a_.cols() && a_ == other.a_ && b_ == other.b_;
}

int TranslationRecord::canonical_index(int input_coord) const {
  const int k = static_cast<int>(param_shift.size());
  if (input_coord < k) return input_coord;
  for (std::size_t j = 0; j < row_order.size(); ++j) {
    if (row_order[j] == input_coord - k) return k + static_cast<int>(j);
  }
  throw AmoebaError(ErrorCode::DimensionMismatch, "coordinate out of range");
}

ComplexVector TranslationRecord::canonical_parameter(const ComplexVector& t) const {
  if (t.size() != param_shift.size()) throw AmoebaError(ErrorCode::DimensionMismatch, "parameter length");
  ComplexVector out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = param_shift[i] * t[i];
  return out;
}

ComplexVector TranslationRecord::input_parameter(const ComplexVector& canonical_t) const {
  if (canonical_t.size() != param_shift.size()) throw AmoebaError(ErrorCode::DimensionMismatch, "parameter length");
  ComplexVector out(canonical_t.size());
  for (std::size_t i = 0; i < canonical_t.size(); ++i) out[i] = canonical_t[i] / param_shift[i];
  return out;
}

LogPoint TranslationRecord::to_input(const LogPoint& canonical) const {
  if (canonical.x.size() != log_shift.size()) throw AmoebaError(ErrorCode::DimensionMismatch, "log point length");
  LogPoint out{std::vector<double>(log_shift.size())};
  for (std::size_t c = 0; c < log_shift.size(); ++c) {
    out.x[c] = log_shift[c] + canonical.x[canonical_index(static_cast<int>(c))];
  }
  return out;
}

LogPoint TranslationRecord::to_canonical(const LogPoint& input) const {
  if (input.x.size() != log_shift.size()) throw AmoebaError(ErrorCode::DimensionMismatch, "log point length");
  LogPoint out{std::vector<double>(log_shift.size())};
  for (std::size_t c = 0; c < log_shift.size(); ++c) {
    out.x[canonical_index(static_cast<int>(c))] = input.x[c] - log_shift[c];
  }
  return out;
}

TorusPoint TranslationRecord::to_input(const TorusPoint& canonical) const {
  if (canonical.angles.size() != arg_shift.size()) throw AmoebaError(ErrorCode::DimensionMismatch, "torus point length");
  TorusPoint out{std::vector<double>(arg_shift.size())};
  for (std::size_t c = 0; c < arg_shift.size(); ++c) {
    out.angles[c] = wrap_angle(arg_shift[c] + canonical.angles[canonical_index(static_cast<int>(c))]);
  }
  return out;
}

TorusPoint TranslationRecord::to_canonical(const TorusPoint& input) const {
  if (input.angles.size() != arg_shift.size()) throw AmoebaError(ErrorCode::DimensionMismatch, "torus point length");
  TorusPoint out{std::vector<double>(arg_shift.size())};
  for (std::size_t c = 0; c < arg_shift.size(); ++c) {
    out.angles[canonical_index(static_cast<int>(c))] = wrap_angle(input.angles[c] - arg_shift[c]);
  }
  return out;
}

CanonicalSpec normalize(const AffineSpaceSpec& spec, std::optional<int> pivot_row) {
  const int k = spec.k();
  const int m = spec.m();
  int pivot = -1;
  if (pivot_row) {
    if (*pivot_row < 0 || *pivot_row >= m) {
      throw AmoebaError(ErrorCode::InvalidArgument, "pivot row out of range");
    }
    if (std::abs(spec.b()(*pivot_row)) <= kPivotTolerance) {
      throw AmoebaError(ErrorCode::InvalidArgument, "pivot row has zero constant");
    }
    pivot = *pivot_row;
  } else {
    for (int j = 0; j < m; ++j) {
      if (std::abs(spec.b()(j)) > kPivotTolerance) {
        pivot = j;
        break;
      }
    }
  }
  if (pivot < 0) {
    throw AmoebaError(ErrorCode::AllConstantsZero, "every constant b_j vanishes; the space carries a C*-action");
  }
  for (int i = 0; i < k; ++i) {
    if (std::abs(spec.a()(pivot, i)) <= kPivotTolerance) {
      throw AmoebaError(ErrorCode::ZeroRowCoefficient,
                        "pivot form " + std::to_string(pivot + 1) + " has zero coefficient for t_" + std::to_string(i + 1));
    }
  }

  const Complex bp = spec.b()(pivot);
  TranslationRecord rec;
  rec.row_order.push_back(pivot);
  for (int j = 0; j < m; ++j) {
    if (j != pivot) rec.row_order.push_back(j);
  }
  rec.param_shift.resize(k);
  rec.log_shift.assign(k + m, 0.0);
  rec.arg_shift.assign(k + m, 0.0);
  for (int i = 0; i < k; ++i) {
    const Complex c = spec.a()(pivot, i) / bp;
    rec.param_shift[i] = c;
    rec.log_shift[i] = -std::log(std::abs(c));
    rec.arg_shift[i] = wrap_angle(-std::arg(c));
  }
  for (int j = 0; j < m; ++j) {
    rec.log_shift[k + j] = std::log(std::abs(bp));
    rec.arg_shift[k + j] = wrap_angle(std::arg(bp));
  }

  Eigen::MatrixXcd a(m, k);
  Eigen::VectorXcd b(m);
  for (int row = 0; row < m; ++row) {
    const int j = rec.row_order[row];
    if (j == pivot) {
      a.row(row).setConstant(Complex{1.0, 0.0});
      b(row) = Complex{1.0, 0.0};
      continue;
    }
    b(row) = spec.b()(j) / bp;
    for (int i = 0; i < k; ++i) a(row, i) = spec.a()(j, i) / spec.a()(pivot, i);
  }
  return CanonicalSpec{AffineSpaceSpec(std::move(a), std::move(b)), std::move(rec)};
}

bool is_canonical(const AffineSpaceSpec& spec) {
  if (spec.b()(0) != Complex{1.0, 0.0}) return false;
  for (int i = 0; i < spec.k(); ++i) {
    if (spec.a()(0, i) != Complex{1.0, 0.0}) return false;
  }
  return true;
}

ComplexVector evaluate(const AffineSpaceSpec& spec, const ComplexVector& t) {
  if (static_cast<int>(t.size()) != spec.k()) {
    throw AmoebaError(ErrorCode::DimensionMismatch,
                      "expected " + std::to_string(spec.k()) + " parameters, got " + std::to_string(t.size()));
  }
  ComplexVector z(t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == Complex{}) throw AmoebaError(ErrorCode::OffTorus, "parameter t_" + std::to_string(i + 1) + " is zero");
  }
  for (int j = 0; j < spec.m(); ++j) {
    const Complex f = spec.form(j, t);
    if (f == Complex{} || is_effectively_zero(f, spec.form_scale(j, t))) {
      throw AmoebaError(ErrorCode::OffTorus, "form f_" + std::to_string(j + 1) + " vanishes");
    }
    z.push_back(f);
  }
  return z;
}

LogPoint log_map(const ComplexVector& z) {
  LogPoint out;
  out.x.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == Complex{}) throw AmoebaError(ErrorCode::OffTorus, "coordinate " + std::to_string(i + 1) + " is zero");
    out.x.push_back(std::log(std::abs(z[i])));
  }
  return out;
}

TorusPoint arg_map(const ComplexVector& z) {
  TorusPoint out;
  out.angles.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == Complex{}) throw AmoebaError(ErrorCode::OffTorus, "coordinate " + std::to_string(i + 1) + " is zero");
    out.angles.push_back(wrap_angle(std::arg(z[i])));
  }
  return out;
}

// Realness as phase synchronisation on the bipartite graph of forms and
// columns (column 0 holds the constants): the space is real iff there are unit
// scalars u_j (forms) and v_c (columns) with u_j v_c M_jc real for every
// nonzero coefficient. For forms with b_j != 0 this is exactly projective
// realness of the ratios a_ji / b_j; forms with b_j = 0 only constrain the
// relative phases of their own coefficients.
bool is_real(const AffineSpaceSpec& spec, double tol) {
  const int m = spec.m();
  const int cols = spec.k() + 1;
  auto entry = [&](int j, int c) { return c == 0 ? spec.b()(j) : spec.a()(j, c - 1); };

  double max_abs = 0.0;
  for (int j = 0; j < m; ++j)
    for (int c = 0; c < cols; ++c) max_abs = std::max(max_abs, std::abs(entry(j, c)));
  const double cutoff = kPivotTolerance * max_abs;
  auto present = [&](int j, int c) { return std::abs(entry(j, c)) > cutoff; };
  auto unit = [&](int j, int c) {
    const Complex v = entry(j, c);
    return v / std::abs(v);
  };

  // Nodes 0..m-1 are forms, m..m+cols-1 are columns.
  std::vector<Complex> phase(m + cols, Complex{});
  std::vector<bool> seen(m + cols, false);
  for (int start = 0; start < m + cols; ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    phase[start] = 1.0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      const int node = q.front();
      q.pop();
      if (node < m) {
        for (int c = 0; c < cols; ++c) {
          if (!present(node, c) || seen[m + c]) continue;
          seen[m + c] = true;
          phase[m + c] = std::conj(phase[node] * unit(node, c));
          q.push(m + c);
        }
      } else {
        const int c = node - m;
        for (int j = 0; j < m; ++j) {
          if (!present(j, c) || seen[j]) continue;
          seen[j] = true;
          phase[j] = std::conj(phase[node] * unit(j, c));
          q.push(j);
        }
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    for (int c = 0; c < cols; ++c) {
      if (!present(j, c)) continue;
      if (std::abs((phase[j] * phase[m + c] * unit(j, c)).imag()) > tol) return false;
    }
  }
  return true;
}

}  // namespace amoeba
