#pragma once

#include <vector>

#include "modlab/core.hpp"

namespace modlab {

/// p(x) = sum_j coeffs[j] T_j(x), deg p <= degree_bound.
struct ChebyshevPoly {
  std::vector<double> coeffs;
  int degree_bound = 0;

  ChebyshevPoly() : coeffs{0.0} {}
  ChebyshevPoly(std::vector<double> c, int n);

  /// Clenshaw backward recurrence.
  [[nodiscard]] double operator()(double x) const;
  /// Coefficients below `tol` at the tail removed; degree_bound unchanged.
  [[nodiscard]] ChebyshevPoly trimmed(double tol = 1e-14) const;
  [[nodiscard]] bool is_zero(double tol = 0.0) const;
  /// Descriptor evaluating this polynomial (derivatives not declared).
  [[nodiscard]] FunctionDescriptor descriptor() const;

  /// Conversion from monomial coefficients a_0 + a_1 x + ... .
  [[nodiscard]] static ChebyshevPoly from_monomial(const std::vector<double>& a);
};

/// T_0(x), ..., T_n(x) by the three-term recurrence.
void chebyshev_values(double x, int n, double* out);

}  // namespace modlab
