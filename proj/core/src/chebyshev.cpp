#include "modlab/chebyshev.hpp"

#include <cmath>
#include <utility>

namespace modlab {

ChebyshevPoly::ChebyshevPoly(std::vector<double> c, int n)
    : coeffs(std::move(c)), degree_bound(n) {
  if (coeffs.empty()) coeffs.push_back(0.0);
}

double ChebyshevPoly::operator()(double x) const {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + coeffs[0];
}

ChebyshevPoly ChebyshevPoly::trimmed(double tol) const {
  ChebyshevPoly p = *this;
  while (p.coeffs.size() > 1 && std::abs(p.coeffs.back()) < tol) p.coeffs.pop_back();
  return p;
}

bool ChebyshevPoly::is_zero(double tol) const {
  for (double c : coeffs) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

FunctionDescriptor ChebyshevPoly::descriptor() const {
  FunctionDescriptor f;
  f.eval = [p = *this](double x) { return p(x); };
  f.label = "chebyshev_poly";
  return f;
}

ChebyshevPoly ChebyshevPoly::from_monomial(const std::vector<double>& a) {
  const int n = a.empty() ? 0 : static_cast<int>(a.size()) - 1;
  std::vector<double> c(n + 1, 0.0);
  // x^j in Chebyshev form, built by x T_m = (T_{m+1} + T_{|m-1|}) / 2.
  std::vector<double> xj(n + 1, 0.0);
  xj[0] = 1.0;
  for (int j = 0; j <= n; ++j) {
    for (int m = 0; m <= j; ++m) c[m] += a[j] * xj[m];
    std::vector<double> next(n + 1, 0.0);
    for (int m = 0; m <= j && m + 1 <= n; ++m) {
      if (xj[m] == 0.0) continue;
      next[m + 1] += (m == 0 ? 1.0 : 0.5) * xj[m];
      if (m >= 1) next[m - 1] += 0.5 * xj[m];
    }
    xj = std::move(next);
  }
  return ChebyshevPoly(std::move(c), n);
}

void chebyshev_values(double x, int n, double* out) {
  out[0] = 1.0;
  if (n >= 1) out[1] = x;
  for (int j = 2; j <= n; ++j) out[j] = 2.0 * x * out[j - 1] - out[j - 2];
}

}  // namespace modlab
