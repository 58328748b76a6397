#include "modlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "modlab/errors.hpp"

namespace modlab {

namespace {

double endpoint_power(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (base <= 0.0) return exponent > 0.0 ? 0.0 : kInf;
  return std::pow(base, exponent);
}

}  // namespace

double JacobiWeight::operator()(double x) const {
  return endpoint_power(1.0 + x, alpha) * endpoint_power(1.0 - x, beta);
}

double weight_eval(const JacobiWeight& w, double x) { return w(x); }

double phi(double x) {
  const double v = (1.0 - x) * (1.0 + x);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

NormOrder::NormOrder(double q) : q_(q) {
  if (!(q >= 1.0)) {
    throw InvalidArgumentError("norm order must satisfy q >= 1, got " +
                               std::to_string(q));
  }
}

NormOrder NormOrder::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return infinity();
  std::size_t used = 0;
  double q = 0.0;
  try {
    q = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgumentError("cannot parse norm order '" + text + "'");
  }
  if (used != text.size()) {
    throw InvalidArgumentError("cannot parse norm order '" + text + "'");
  }
  return NormOrder(q);
}

std::string NormOrder::to_string() const { return format_real(q_); }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

namespace {

EndpointExponents default_derivative_exponents(EndpointExponents e, int r) {
  auto shift = [r](double v) {
    if (v < 0.0) return v - r;
    const double rounded = std::round(v);
    if (rounded == v) return std::max(v - r, 0.0);
    return v - r;
  };
  return {shift(e.minus), shift(e.plus)};
}

}  // namespace

FunctionDescriptor FunctionDescriptor::derivative(int r) const {
  if (r == 0) return *this;
  if (r < 0 || r > derivative_order()) {
    throw DerivativeUnavailableError(
        "derivative of order " + std::to_string(r) + " requested but only " +
        std::to_string(derivative_order()) + " declared for '" + label + "'");
  }
  FunctionDescriptor d;
  d.eval = derivatives[r - 1];
  d.derivatives.assign(derivatives.begin() + r, derivatives.end());
  if (static_cast<int>(derivative_exponents.size()) >= r) {
    d.endpoint_exponents = derivative_exponents[r - 1];
    d.derivative_exponents.assign(derivative_exponents.begin() + r,
                                  derivative_exponents.end());
  } else {
    d.endpoint_exponents = default_derivative_exponents(endpoint_exponents, r);
  }
  if (monotone && monotone->order > r) {
    d.monotone = MonotoneDeclaration{monotone->order - r, monotone->source};
  }
  d.support = support;
  d.breakpoints = breakpoints;
  d.label = label + "^(" + std::to_string(r) + ")";
  return d;
}

FunctionDescriptor constant_function(double c) {
  return monomial_polynomial({c});
}

FunctionDescriptor monomial_polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  auto horner = [](const std::vector<double>& a) {
    return [a](double x) {
      double s = 0.0;
      for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * x + *it;
      return s;
    };
  };
  FunctionDescriptor f;
  f.eval = horner(coeffs);
  std::vector<double> a = coeffs;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  // Exact derivatives up to the degree plus one (identically zero beyond).
  for (int r = 1; r <= degree + 1; ++r) {
    std::vector<double> b;
    for (std::size_t j = 1; j < a.size(); ++j) b.push_back(a[j] * double(j));
    if (b.empty()) b.push_back(0.0);
    f.derivatives.push_back(horner(b));
    f.derivative_exponents.push_back({0.0, 0.0});
    a = std::move(b);
  }
  f.label = "polynomial";
  return f;
}

FunctionDescriptor scaled(const FunctionDescriptor& f, double c) {
  FunctionDescriptor g = f;
  g.eval = [e = f.eval, c](double x) { return c * e(x); };
  for (auto& d : g.derivatives) {
    d = [d0 = d, c](double x) { return c * d0(x); };
  }
  if (c < 0.0) g.monotone.reset();
  if (c == 0.0) g.support.reset();
  g.label = f.label + "*c";
  return g;
}

FunctionDescriptor reflected(const FunctionDescriptor& f, int k) {
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  FunctionDescriptor g;
  g.eval = [e = f.eval, sign](double x) { return sign * e(-x); };
  double chain = -1.0;
  for (const auto& d : f.derivatives) {
    const double s = sign * chain;
    g.derivatives.push_back([d, s](double x) { return s * d(-x); });
    chain = -chain;
  }
  g.endpoint_exponents = {f.endpoint_exponents.plus, f.endpoint_exponents.minus};
  for (const auto& e : f.derivative_exponents) {
    g.derivative_exponents.push_back({e.plus, e.minus});
  }
  if (f.monotone && f.monotone->order == k) g.monotone = f.monotone;
  if (f.support) g.support = Interval{-f.support->hi, -f.support->lo};
  for (auto it = f.breakpoints.rbegin(); it != f.breakpoints.rend(); ++it) {
    g.breakpoints.push_back(-*it);
  }
  g.label = f.label + "(-x)";
  return g;
}

FunctionDescriptor sum(const FunctionDescriptor& f, const FunctionDescriptor& g) {
  FunctionDescriptor s;
  s.eval = [a = f.eval, b = g.eval](double x) { return a(x) + b(x); };
  const int order = std::min(f.derivative_order(), g.derivative_order());
  for (int r = 0; r < order; ++r) {
    s.derivatives.push_back([a = f.derivatives[r], b = g.derivatives[r]](double x) {
      return a(x) + b(x);
    });
  }
  s.endpoint_exponents = {
      std::min(f.endpoint_exponents.minus, g.endpoint_exponents.minus),
      std::min(f.endpoint_exponents.plus, g.endpoint_exponents.plus)};
  if (f.monotone && g.monotone && f.monotone->order == g.monotone->order) {
    s.monotone = MonotoneDeclaration{f.monotone->order, CertificateSource::checked};
  }
  if (f.support && g.support) {
    s.support = Interval{std::min(f.support->lo, g.support->lo),
                         std::max(f.support->hi, g.support->hi)};
  }
  s.breakpoints = f.breakpoints;
  s.breakpoints.insert(s.breakpoints.end(), g.breakpoints.begin(),
                       g.breakpoints.end());
  s.label = f.label + "+" + g.label;
  return s;
}

void QuadratureConfig::validate() const {
  if (panels_per_side < 1 || nodes_per_panel < 1 || nodes_per_panel > 64) {
    throw InvalidArgumentError("quadrature counts must be >= 1 (nodes <= 64)");
  }
  if (!(grading_exponent >= 1.0)) {
    throw InvalidArgumentError("grading_exponent must be >= 1");
  }
  if (!(clip_epsilon > 0.0 && clip_epsilon <= 1e-6)) {
    throw InvalidArgumentError("clip_epsilon must lie in (0, 1e-6]");
  }
}

}  // namespace modlab
