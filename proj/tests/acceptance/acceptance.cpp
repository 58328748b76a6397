// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modlab/approx.hpp"
#include "modlab/extremals.hpp"
#include "modlab/kernels.hpp"
#include "modlab/moduli.hpp"
#include "modlab/quadrature.hpp"
#include "modlab/rates.hpp"
#include "modlab/verify.hpp"

using namespace modlab;

namespace {

// Pinned tolerances.
constexpr double kHeavisideSlopeTol = 0.1;
constexpr double kTruncatedSlopeTol = 0.15;
constexpr double kCalibrationDrift = 0.20;
constexpr double kLogRegressionR2 = 0.95;
constexpr double kZetaMinOverMax = 0.5;
constexpr double kKernelLevelChange = 0.10;
constexpr double kOddKernelZero = 1e-10;
constexpr double kPsiRoundtrip = 1e-10;
constexpr double kChangeOfVariables = 1e-3;
constexpr double kEnSlopeTol = 0.15;
constexpr double kRatioBound = 20.0;
constexpr double kTrendBound = 0.3;
constexpr double kRemezTrialChange = 0.10;
constexpr double kRefinementAgreement = 0.02;
constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool passed = false;
  std::string detail;
};

/// "key=value" pairs with 4 significant digits.
class Detail {
 public:
  template <class T>
  Detail& operator()(const std::string& key, const T& value) {
    os_ << (first_ ? "" : " ") << key << '=' << std::setprecision(4) << value;
    first_ = false;
    return *this;
  }
  [[nodiscard]] std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  bool first_ = true;
};

/// A modulus or E_n value reported by some criterion, recomputable on a
/// refined discretization.
struct Probe {
  std::string label;
  double base = 0.0;
  std::function<double()> refined;
};

std::vector<Probe>& probes() {
  static std::vector<Probe> p;
  return p;
}

NormOrder order(double q) { return std::isinf(q) ? NormOrder::infinity() : NormOrder(q); }

ModulusRequest modulus_request(int k, double delta, JacobiWeight w, NormOrder q) {
  ModulusRequest r;
  r.k = k;
  r.delta = delta;
  r.weight = w;
  r.q = q;
  return r;
}

double total_modulus(const FunctionDescriptor& f, const ModulusRequest& req, std::string label) {
  const double v = dt_modulus(f, req).total;
  probes().push_back({std::move(label), v, [f, req] { return dt_modulus(f, req.refined()).total; }});
  return v;
}

double main_modulus(const FunctionDescriptor& f, const ModulusRequest& req, std::string label) {
  const double v = main_part_modulus(f, req).value;
  probes().push_back(
      {std::move(label), v, [f, req] { return main_part_modulus(f, req.refined()).value; }});
  return v;
}

double best_error(const FunctionDescriptor& f, int n, JacobiWeight w, NormOrder q,
                  std::string label) {
  const int grid = default_grid_size(n);
  const double v = best_approx(f, n, w, q, grid).error;
  probes().push_back({std::move(label), v, [f, n, w, q, grid] {
                        return best_approx(f, n, w, q, 2 * grid, QuadratureConfig{}.refined())
                            .error;
                      }});
  return v;
}

std::string pair_label(double q) {
  return std::isinf(q) ? "inf" : (std::ostringstream() << q).str();
}

/// Least-squares slope and r^2 of y on x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double cxx = sxx - sx * sx / n;
  const double cxy = sxy - sx * sy / n;
  const double cyy = syy - sy * sy / n;
  return {cxy / cxx, cxy * cxy / (cxx * cyy)};
}

// 1. Six-case dispatch against formulas written out here.
Verdict upsilon_dispatch() {
  std::mt19937_64 rng(kSeed);
  const std::vector<double> qs = {1.0, 1.5, 2.0, 3.0};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> per_case(6, 0);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    // Cycle through the cases so each is hit; randomize everything else.
    const int c = i % 6;
    const double q = qs[rng() % qs.size()];
    int k = 1;
    double p = kInf;
    double alpha = (rng() % 2) ? 0.5 * (1 + rng() % 3) : 0.0;
    double beta = (rng() % 2) ? 0.25 * (1 + rng() % 4) : 0.0;
    switch (c) {
      case 0:  // k >= 2 away from (2, 1, inf)
        k = 2 + static_cast<int>(rng() % 3);
        p = q * (1.2 + 3.0 * unit(rng));
        if (k == 2 && q == 1.0) p = 1.5 + unit(rng);
        break;
      case 1:  // (2, 1, inf), weighted
        k = 2;
        if (alpha == 0.0 && beta == 0.0) alpha = 0.5;
        break;
      case 2:  // (2, 1, inf), unweighted
        k = 2;
        alpha = beta = 0.0;
        break;
      case 3:  // k = 1, p < 2q
        p = q * (1.05 + 0.9 * unit(rng));
        break;
      case 4:  // k = 1, p = 2q
        p = 2.0 * q;
        break;
      default:  // k = 1, p > 2q
        p = (rng() % 3 == 0) ? kInf : q * (2.2 + 4.0 * unit(rng));
        break;
    }
    const double q_eff = (c == 1 || c == 2) ? 1.0 : q;
    const double delta = 0.001 + 0.248 * unit(rng);
    const UpsilonSpec s{k, NormOrder(q_eff), order(p), alpha, beta};
    const double iq = 1.0 / q_eff;
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    const double ln = std::abs(std::log(delta));
    double want = 0.0;
    switch (c) {
      case 0: want = std::pow(delta, 2.0 * iq - 2.0 * ip); break;
      case 1: want = delta * delta * ln; break;
      case 2: want = delta * delta; break;
      case 3: want = std::pow(delta, 2.0 * iq - 2.0 * ip); break;
      case 4: want = std::pow(delta, iq) * std::pow(ln, 0.5 * iq); break;
      default: want = std::pow(delta, iq); break;
    }
    ++per_case[c];
    if (upsilon(s, delta) != want) ++mismatches;
  }
  const int fewest = *std::min_element(per_case.begin(), per_case.end());
  return {mismatches == 0 && fewest > 0,
          Detail()("points", 200)("mismatches", mismatches)("min_per_case", fewest).str()};
}

// 2. dt_modulus of the unit step decays like delta^(1/q).
Verdict heaviside_rate() {
  const auto f = catalog_get("heaviside").descriptor;
  const auto deltas = dyadic_deltas(3, 10);
  double worst = 0.0;
  Detail d;
  for (const double q : {1.0, 2.0}) {
    for (const JacobiWeight w : {JacobiWeight{0.0, 0.0}, JacobiWeight{0.5, 0.5}}) {
      SweepResult s;
      s.abscissae = deltas;
      for (const double delta : deltas) {
        s.values.push_back(total_modulus(f, modulus_request(1, delta, w, NormOrder(q)),
                                         "heaviside q=" + pair_label(q)));
      }
      const double slope = fit_rate(s, RateModel::pure_power).exponent;
      worst = std::max(worst, std::abs(slope - 1.0 / q));
      d("q" + pair_label(q) + "_a" + pair_label(w.alpha), slope);
    }
  }
  d("max_dev", worst);
  return {worst <= kHeavisideSlopeTol, d.str()};
}

// 3. Normalized spikes at +1 with eps = 2k^2 delta^2.
Verdict truncated_power_rate() {
  const auto deltas = dyadic_deltas(3, 10);
  bool ok = true;
  Detail d;
  for (const auto& [k, q, p] : {std::tuple{2, 1.0, 2.0}, std::tuple{3, 1.0, kInf},
                                std::tuple{2, 2.0, kInf}}) {
    SweepResult s;
    s.abscissae = deltas;
    for (const double delta : deltas) {
      const auto e = catalog_get("truncated_power", {{"k", k}, {"p", p}, {"delta", delta}});
      const double norm = weighted_norm(e.descriptor, e.norm_weight, e.norm_p);
      const std::string label = "truncated_power k=" + std::to_string(k);
      s.values.push_back(
          total_modulus(e.descriptor, modulus_request(k, delta, {}, NormOrder(q)), label) / norm);
    }
    const double want = 2.0 / q - (std::isinf(p) ? 0.0 : 2.0 / p);
    const double slope = fit_rate(s, RateModel::pure_power).exponent;
    // Calibrate against the sharp rate at the largest delta.
    const UpsilonSpec spec{k, NormOrder(q), order(p), 0.0, 0.0};
    const double calibrated = s.values.front() / upsilon(spec, deltas.front());
    double drift = 0.0;
    bool bounded = true;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      const double ups = upsilon(spec, deltas[j]);
      drift = std::max(drift, std::abs(s.values[j] / (calibrated * ups) - 1.0));
      if (s.values[j] > (1.0 + kCalibrationDrift) * calibrated * ups) bounded = false;
    }
    ok = ok && std::abs(slope - want) <= kTruncatedSlopeTol && drift < kCalibrationDrift &&
         bounded;
    const std::string tag = std::to_string(k) + pair_label(q) + pair_label(p);
    d("slope" + tag, slope)("want" + tag, want)("drift" + tag, drift);
  }
  return {ok, d.str()};
}

// 4. Log factor for (2, 1, inf) with a weight.
Verdict log_factor_case() {
  const auto e = catalog_get("inverse_power", {{"beta", 0.5}});
  std::vector<double> x;
  std::vector<double> y;
  for (const double delta : dyadic_deltas(3, 10)) {
    const double om = main_modulus(e.descriptor, modulus_request(2, delta, {0.0, 0.5}, NormOrder(1.0)),
                                   "inverse_power");
    x.push_back(std::log(1.0 / delta));
    y.push_back(om / (delta * delta));
  }
  const auto [slope, r2] = linear_fit(x, y);
  return {slope > 0.0 && r2 >= kLogRegressionR2, Detail()("slope", slope)("r2", r2).str()};
}

// 5. Zeta-spline main part against delta |ln delta|^(1/2) / |ln |ln delta||^(3/4).
Verdict zeta_lower_bound() {
  std::vector<double> ratios;
  for (const double delta : dyadic_deltas(4, 9)) {
    const auto e = catalog_get("zeta_spline", {{"delta", delta}, {"lambda", 1.5}, {"p", 2}});
    const double norm = weighted_norm(e.descriptor, e.norm_weight, e.norm_p);
    const double om = main_modulus(e.descriptor, modulus_request(1, delta, {}, NormOrder(1.0)),
                                   "zeta_spline") /
                      norm;
    const double ln = std::abs(std::log(delta));
    ratios.push_back(om / (delta * std::sqrt(ln) / std::pow(std::log(ln), 0.75)));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double r = *lo / *hi;
  return {r >= kZetaMinOverMax, Detail()("min", *lo)("max", *hi)("min_over_max", r).str()};
}

// 6. Kernel A_k(y, h).
Verdict kernel_bound() {
  const double h1 = std::ldexp(1.0, -9);
  const double h2 = std::ldexp(1.0, -10);
  double level_change = 0.0;
  for (const int k : {1, 2, 3}) {
    for (const double beta : {-0.25, 0.0, 0.5, 1.0}) {
      const double a = kernel_sup_ratio(k, beta, h1).ratio;
      const double b = kernel_sup_ratio(k, beta, h2).ratio;
      level_change = std::max(level_change, std::abs(b / a - 1.0));
    }
  }
  double odd_max = 0.0;
  for (const int k : {1, 3}) {
    for (const double h : {h1, h2, 1.0 / 16}) {
      odd_max = std::max(odd_max, kernel_sup_ratio(k, -0.5, h).max_abs);
    }
  }
  // beta = 0, k even: max_y |A_k| / h^k must not grow as h shrinks, although
  // the grid reaches theta ~ h.
  double even_change = 0.0;
  for (const int k : {2, 4}) {
    std::vector<double> c;
    for (const double h : {1.0 / 64, h1, h2}) {
      c.push_back(kernel_sup_ratio(k, 0.0, h).max_abs / std::pow(h, k));
    }
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    even_change = std::max(even_change, *hi / *lo - 1.0);
  }
  return {level_change < kKernelLevelChange && odd_max <= kOddKernelZero &&
              even_change < kKernelLevelChange,
          Detail()("level_change", level_change)("odd_max_abs", odd_max)(
              "even_calibration_change", even_change)
              .str()};
}

// 7. psi inverts the shift, has a bounded derivative, and changes variables.
Verdict psi_machinery() {
  double roundtrip = 0.0;
  double dmin = kInf;
  double dmax = 0.0;
  for (const double eta : {0.005, 0.02, 0.08, 0.3, 0.7}) {
    const double la = std::sqrt(2.0 * eta);
    for (int j = 0; j <= 40; ++j) {
      const double lambda = -la + 2.0 * la * j / 40.0;
      for (int i = 0; i <= 400; ++i) {
        const double x = -1.0 + eta + (2.0 - 2.0 * eta) * i / 400.0;
        roundtrip = std::max(roundtrip, std::abs(psi(lambda, x + lambda * phi(x)) - x));
      }
    }
    const double lc = std::sqrt(eta / 2.0);
    const double shift = std::sqrt(2.0 * eta - eta * eta);
    for (int j = 0; j <= 40; ++j) {
      const double lambda = -lc + 2.0 * lc * j / 40.0;
      const double a = -1.0 + eta + lambda * shift;
      const double b = 1.0 - eta + lambda * shift;
      for (int i = 0; i <= 400; ++i) {
        const double d = psi_derivative(lambda, a + (b - a) * i / 400.0);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
      }
    }
  }
  // int_{-1+eta}^{1-eta} g(x) f(x + lambda phi(x)) dx against the psi form,
  // f = indicator of [0, 1], g = phi, both by the midpoint rule.
  const double eta = 0.08;
  const double lambda = 0.1;
  const int cells = 400000;
  auto f = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
  double lhs = 0.0;
  {
    const double a = -1.0 + eta;
    const double h = (2.0 - 2.0 * eta) / cells;
    for (int i = 0; i < cells; ++i) {
      const double x = a + (i + 0.5) * h;
      lhs += phi(x) * f(x + lambda * phi(x)) * h;
    }
  }
  double rhs = 0.0;
  {
    const double shift = lambda * std::sqrt(2.0 * eta - eta * eta);
    const double a = -1.0 + eta + shift;
    const double h = (2.0 - 2.0 * eta) / cells;
    for (int i = 0; i < cells; ++i) {
      const double y = a + (i + 0.5) * h;
      rhs += f(y) * phi(psi(lambda, y)) * psi_derivative(lambda, y) * h;
    }
  }
  const double change = std::abs(lhs - rhs) / std::abs(lhs);
  return {roundtrip <= kPsiRoundtrip && dmin >= 0.5 && dmax <= 2.0 && change <= kChangeOfVariables,
          Detail()("roundtrip", roundtrip)("dpsi_min", dmin)("dpsi_max", dmax)("change_rel",
                                                                                change)
              .str()};
}

// 8. E_n(x_+^(k-1)) ~ n^(-(k-1+1/q)).
Verdict en_rates() {
  const std::vector<int> degrees = {8, 12, 16, 24, 32, 48, 64};
  bool ok = true;
  Detail d;
  for (const auto& [k, q] : {std::pair{2, kInf}, std::pair{2, 2.0}, std::pair{3, 1.0}}) {
    const auto f = catalog_get("truncated_power_origin", {{"k", k}}).descriptor;
    SweepResult s;
    for (const int n : degrees) {
      s.abscissae.push_back(n);
      s.values.push_back(best_error(f, n, {}, order(q), "E_n x_+^" + std::to_string(k - 1)));
    }
    const double slope = fit_rate(s, RateModel::pure_power).exponent;
    const double want = -(k - 1.0 + (std::isinf(q) ? 0.0 : 1.0 / q));
    ok = ok && std::abs(slope - want) <= kEnSlopeTol;
    const std::string tag = std::to_string(k) + pair_label(q);
    d("slope" + tag, slope)("want" + tag, want);
  }
  return {ok, d.str()};
}

// 9. Jackson and inverse ratios bounded without trend. L_2, where neither
// estimate saturates for these functions.
Verdict jackson_inverse() {
  struct Case {
    std::string name;
    FunctionDescriptor f;
    int k;
  };
  const std::vector<Case> cases = {
      {"heaviside", catalog_get("heaviside").descriptor, 1},
      {"x_+", catalog_get("truncated_power_origin", {{"k", 2}}).descriptor, 2},
      {"x_+^2", catalog_get("truncated_power_origin", {{"k", 3}}).descriptor, 3}};
  const std::vector<int> degrees = {8, 12, 16, 24, 32, 48, 64};
  const std::vector<double> deltas = dyadic_deltas(3, 6);
  bool ok = true;
  Detail d;
  for (const Case& c : cases) {
    const auto j = jackson_check(c.f, c.k, {}, NormOrder(2.0), degrees);
    const auto i = inverse_check(c.f, c.k, {}, NormOrder(2.0), deltas);
    for (const auto* s : {&j, &i}) {
      ok = ok && s->passed && s->max_over_median <= kRatioBound &&
           std::abs(s->trend_slope) <= kTrendBound;
    }
    d(c.name + "_jackson_slope", j.trend_slope)(c.name + "_inverse_slope", i.trend_slope);
  }
  return {ok, d.str()};
}

// 10. Remez ratio over random degree-32 polynomials and capacity-1/32 sets.
Verdict remez_check() {
  const int degree = 32;
  const double capacity = 1.0 / 32.0;
  auto max_ratio = [&](int trials, NormOrder q, JacobiWeight w) {
    std::mt19937_64 rng(kSeed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi - capacity);
    double m = 0.0;
    for (int t = 0; t < trials; ++t) {
      std::vector<double> c(degree + 1);
      for (double& v : c) v = gauss(rng);
      const double theta = angle(rng);
      // arcsin-measure of [cos(theta + cap), cos(theta)] is exactly cap.
      const Interval e{std::cos(theta + capacity), std::cos(theta)};
      m = std::max(m, remez_ratio(ChebyshevPoly(c, degree), e, w, q).ratio);
    }
    return m;
  };
  bool ok = true;
  Detail d;
  for (const auto& [q, w] : {std::pair{NormOrder::infinity(), JacobiWeight{0.0, 0.0}},
                             std::pair{NormOrder(1.0), JacobiWeight{0.5, 0.5}}}) {
    const double a = max_ratio(100, q, w);
    const double b = max_ratio(200, q, w);
    const double change = std::abs(b / a - 1.0);
    ok = ok && std::isfinite(a) && std::isfinite(b) && change < kRemezTrialChange;
    d("max100_q" + q.to_string(), a)("max200_q" + q.to_string(), b);
  }
  return {ok, d.str()};
}

// 11. Every modulus and E_n value above against a refined discretization.
Verdict refinement_agreement() {
  const auto& ps = probes();
  if (ps.empty()) return {false, "no values recorded"};
  double worst = 0.0;
  std::string where;
  for (const Probe& p : ps) {
    const double r = p.refined();
    const double scale = std::max(std::abs(p.base), std::abs(r));
    const double dev = scale > 0.0 ? std::abs(r - p.base) / scale : 0.0;
    if (dev > worst) {
      worst = dev;
      where = p.label;
    }
  }
  return {worst < kRefinementAgreement,
          Detail()("values", ps.size())("max_rel_change", worst)("at", where).str()};
}

// 12. Every module property suite.
Verdict property_suites() {
  const auto outcomes = run_suite("all", kSeed);
  int failed = 0;
  std::string names;
  for (const auto& o : outcomes) {
    if (!o.passed) {
      ++failed;
      names += (names.empty() ? "" : ",") + o.suite + "/" + o.name;
    }
  }
  Detail d;
  d("checks", outcomes.size())("failed", failed);
  if (failed) d("which", names);
  return {failed == 0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "upsilon_dispatch", upsilon_dispatch},
      {2, "heaviside_rate", heaviside_rate},
      {3, "truncated_power_rate", truncated_power_rate},
      {4, "log_factor_case", log_factor_case},
      {5, "zeta_spline_lower_bound", zeta_lower_bound},
      {6, "kernel_bound", kernel_bound},
      {7, "psi_machinery", psi_machinery},
      {8, "best_approximation_rates", en_rates},
      {9, "jackson_inverse_consistency", jackson_inverse},
      {10, "remez_ratio", remez_check},
      {11, "refinement_agreement", refinement_agreement},
      {12, "property_suites", property_suites},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.passed) ++failures;
    std::cout << (v.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << ' ' << c.name
              << "  [" << std::fixed << std::setprecision(1) << secs << "s]  "
              << std::defaultfloat << v.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed"
            << std::endl;
  return failures;
}
