#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modlab/core.hpp"
#include "modlab/extremals.hpp"
#include "modlab/moduli.hpp"

namespace modlab {

struct UpsilonSpec {
  int k = 1;
  NormOrder q;
  NormOrder p = NormOrder::infinity();
  double alpha = 0.0;
  double beta = 0.0;

  /// Throws SpecError unless k >= 1 and q < p.
  void validate() const;
};

/// Sharp rate of the modulus over k-monotone unit-sphere functions, by case:
/// delta^(2/q-2/p) for k >= 2 except (2,1,inf); delta^2 |ln delta| for
/// (2,1,inf) with a non-trivial weight and delta^2 without; for k = 1,
/// delta^(2/q-2/p) when p < 2q, delta^(1/q) |ln delta|^(1/(2q)) when p = 2q and
/// delta^(1/q) when p > 2q. Requires 0 < delta < 1/4.
[[nodiscard]] double upsilon(const UpsilonSpec& spec, double delta);

/// Exponent a and log power b with upsilon ~ delta^a |ln delta|^b.
struct RateExponents {
  double exponent = 0.0;
  double log_power = 0.0;
};
[[nodiscard]] RateExponents upsilon_exponents(const UpsilonSpec& spec);

/// Rate of the worst best-approximation error over k-monotone unit-sphere
/// functions. `lower == upper` except in the two cases known only up to a
/// logarithmic factor.
struct RateBracket {
  double lower = 0.0;
  double upper = 0.0;
  [[nodiscard]] bool is_bracket() const { return lower != upper; }
};
/// Requires n >= 1 and alpha, beta >= 0.
[[nodiscard]] RateBracket mpoly_rate(const UpsilonSpec& spec, int n);

struct SweepResult {
  /// Strictly monotone abscissae (delta_j or n_j).
  std::vector<double> abscissae;
  std::vector<double> values;
  std::string module;
  std::string op;
  std::uint64_t request_hash = 0;
};

enum class RateModel { pure_power, power_log };
[[nodiscard]] std::string to_string(RateModel model);

struct RateFit {
  /// Coefficient of ln x.
  double exponent = 0.0;
  /// Coefficient of ln|ln x|; 0 for the pure power model.
  double log_power = 0.0;
  double constant = 0.0;
  double r_squared = 0.0;
  /// Largest absolute residual of the log-space fit.
  double residual_max = 0.0;
  RateModel model = RateModel::pure_power;
};

/// Least squares of ln v on {1, ln x} or {1, ln x, ln|ln x|}. Throws
/// DegenerateFitError for fewer than 5 points, non-positive values or a
/// rank-deficient design.
[[nodiscard]] RateFit fit_rate(const SweepResult& sweep, RateModel model);
/// Fits both models and keeps power_log only when it lowers residual_max by
/// at least 25%.
[[nodiscard]] RateFit fit_rate_auto(const SweepResult& sweep);

/// delta = 2^-3, ..., 2^-10.
[[nodiscard]] std::vector<double> dyadic_deltas(int first = 3, int last = 10);
/// n in {4, 6, 8, 12, 16, 24, 32, 48, 64}.
[[nodiscard]] std::vector<int> default_degrees();

struct FamilySpec {
  int k = 1;
  JacobiWeight weight;
  NormOrder q;
  NormOrder p = NormOrder::infinity();
};

using Family = std::function<CatalogEntry(double delta)>;

/// For each delta: instantiate the member, certify it k-monotone (analytic
/// declarations of order k are trusted), divide by its measured ||w f||_p and
/// record the modulus. `base` supplies the quadrature and sampling settings.
[[nodiscard]] SweepResult family_sup_sweep(const Family& family, const FamilySpec& spec,
                                           const std::vector<double>& deltas,
                                           const ModulusRequest& base = {});

struct CheckSummary {
  std::vector<double> abscissae;
  std::vector<double> ratios;
  double max_over_median = 0.0;
  /// Log-log slope of ratio against abscissa.
  double trend_slope = 0.0;
  bool vacuous = false;
  bool passed = false;
};

/// Bounded (max/median <= 20) with no growth trend (slope in [-0.3, 0.3]).
[[nodiscard]] CheckSummary summarize_ratios(std::vector<double> abscissae,
                                            std::vector<double> ratios);

/// E_n(f) / omega^k(f, 1/n) for each n (n >= 2k). Empty and vacuous when f is
/// a polynomial of degree < k.
[[nodiscard]] CheckSummary jackson_check(const FunctionDescriptor& f, int k,
                                         const JacobiWeight& w, NormOrder q,
                                         const std::vector<int>& degrees,
                                         const ModulusRequest& base = {});

/// omega^k(f, delta) / (delta^k sum_{0 <= i < 1/delta} (i+1)^(k-1) E_i(f)).
/// Requires 1/delta <= 65 so that all degrees stay at most 64.
[[nodiscard]] CheckSummary inverse_check(const FunctionDescriptor& f, int k,
                                         const JacobiWeight& w, NormOrder q,
                                         const std::vector<double>& deltas,
                                         const ModulusRequest& base = {});

/// omega^k(f, delta)_{w,q} / (delta^r omega^{k-r}(f^(r), delta)_{w phi^r, q}).
/// Throws DerivativeUnavailableError when f^(r) is not declared.
[[nodiscard]] CheckSummary derivative_transfer_check(const FunctionDescriptor& f,
                                                     int k, int r,
                                                     const JacobiWeight& w,
                                                     NormOrder q,
                                                     const std::vector<double>& deltas,
                                                     const ModulusRequest& base = {});

struct EmbeddingRatio {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
  bool vacuous = false;
};

/// ||w_{alpha-gamma, beta-gamma} g||_p / ||w_{alpha,beta} f^(r+1)||_p with
/// g = f^(r) - f^(r)(0). Throws InvalidArgumentError unless gamma < 1,
/// IntegrabilityError when either weight leaves J_p and the norm diverges.
[[nodiscard]] EmbeddingRatio embedding_check(const FunctionDescriptor& f, int r,
                                             double alpha, double beta, double gamma,
                                             NormOrder p,
                                             const QuadratureConfig& quad = {});

}  // namespace modlab
