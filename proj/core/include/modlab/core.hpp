#pragma once

#include <functional>
#include <limits>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

/// w(x) = (1+x)^alpha (1-x)^beta.
struct JacobiWeight {
  double alpha = 0.0;
  double beta = 0.0;

  [[nodiscard]] double operator()(double x) const;
  /// Weight with the exponents swapped, i.e. w(-x).
  [[nodiscard]] JacobiWeight reflected() const { return {beta, alpha}; }
  /// w * phi^r.
  [[nodiscard]] JacobiWeight times_phi_power(double r) const {
    return {alpha + 0.5 * r, beta + 0.5 * r};
  }
  [[nodiscard]] bool is_unweighted() const { return alpha == 0.0 && beta == 0.0; }
};

[[nodiscard]] double weight_eval(const JacobiWeight& w, double x);

/// phi(x) = sqrt(1 - x^2), computed as sqrt((1-x)(1+x)).
[[nodiscard]] double phi(double x);

class NormOrder {
 public:
  NormOrder() = default;
  explicit NormOrder(double q);

  [[nodiscard]] static NormOrder infinity() { return NormOrder(kInf); }
  /// Accepts a decimal number or "inf".
  [[nodiscard]] static NormOrder parse(const std::string& text);

  [[nodiscard]] double value() const { return q_; }
  [[nodiscard]] bool is_infinite() const { return q_ == kInf; }
  /// 1/q, with 1/inf = 0.
  [[nodiscard]] double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / q_; }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const NormOrder&, const NormOrder&) = default;

 private:
  double q_ = 1.0;
};

/// |f(x)| = O((1+x)^minus) near -1 and O((1-x)^plus) near +1.
struct EndpointExponents {
  double minus = 0.0;
  double plus = 0.0;
};

enum class CertificateSource { analytic, checked };

struct MonotoneDeclaration {
  int order = 1;
  CertificateSource source = CertificateSource::analytic;
};

using RealFunction = std::function<double(double)>;

struct FunctionDescriptor {
  RealFunction eval;
  EndpointExponents endpoint_exponents;
  /// derivatives[r-1] evaluates f^{(r)}.
  std::vector<RealFunction> derivatives;
  /// Optional exponents of the derivatives; defaults are derived from
  /// endpoint_exponents when absent.
  std::vector<EndpointExponents> derivative_exponents;
  std::optional<MonotoneDeclaration> monotone;
  std::optional<Interval> support;
  /// Points where f or one of its low derivatives is not smooth. Quadrature
  /// splits panels there.
  std::vector<double> breakpoints;
  std::string label;

  [[nodiscard]] double operator()(double x) const { return eval(x); }
  [[nodiscard]] int derivative_order() const {
    return static_cast<int>(derivatives.size());
  }
  /// Descriptor of f^{(r)}; r = 0 returns a copy. Throws
  /// DerivativeUnavailableError when r exceeds the declared order.
  [[nodiscard]] FunctionDescriptor derivative(int r) const;
};

/// 64-bit FNV-1a hash, used to tag results with their configuration.
[[nodiscard]] std::uint64_t fnv1a(std::string_view text);

/// 17 significant digits; "inf" and "-inf" for infinities.
[[nodiscard]] std::string format_real(double x);

[[nodiscard]] FunctionDescriptor constant_function(double c);
/// sum_j coeffs[j] x^j with exact derivatives of every order.
[[nodiscard]] FunctionDescriptor monomial_polynomial(std::vector<double> coeffs);
[[nodiscard]] FunctionDescriptor scaled(const FunctionDescriptor& f, double c);
/// x -> (-1)^k f(-x); preserves k-monotonicity.
[[nodiscard]] FunctionDescriptor reflected(const FunctionDescriptor& f, int k);
[[nodiscard]] FunctionDescriptor sum(const FunctionDescriptor& f,
                                     const FunctionDescriptor& g);

struct QuadratureConfig {
  int panels_per_side = 48;
  int nodes_per_panel = 8;
  double grading_exponent = 2.0;
  double clip_epsilon = 1e-12;

  /// Throws InvalidArgumentError on violated invariants.
  void validate() const;
  /// Same configuration with twice the panels.
  [[nodiscard]] QuadratureConfig refined() const {
    QuadratureConfig c = *this;
    c.panels_per_side *= 2;
    return c;
  }
};

}  // namespace modlab
