#include "modlab/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "modlab/errors.hpp"

namespace modlab {

namespace {

constexpr double kClip = 1e-12;

double factorial_ratio(int a, int b) {
  // a! / b! for a >= b >= 0.
  double r = 1.0;
  for (int i = b + 1; i <= a; ++i) r *= i;
  return r;
}

std::string format_params(const ParamMap& params) {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [key, value] : params) {
    if (!first) os << ", ";
    first = false;
    os << key << "=";
    if (std::isinf(value)) {
      os << "inf";
    } else {
      os << value;
    }
  }
  return os.str();
}

class Params {
 public:
  Params(std::string entry, ParamMap given, ParamMap defaults)
      : entry_(std::move(entry)), values_(std::move(defaults)) {
    for (const auto& [key, value] : given) {
      if (!values_.contains(key)) {
        throw ParamRangeError("entry '" + entry_ + "' has no parameter '" + key + "'");
      }
      values_[key] = value;
    }
  }

  [[nodiscard]] double get(const std::string& key) const { return values_.at(key); }

  [[nodiscard]] int integer(const std::string& key, int min_value) const {
    const double v = get(key);
    if (v != std::floor(v) || v < min_value || v > 1e6) {
      throw ParamRangeError("entry '" + entry_ + "': parameter '" + key +
                            "' must be an integer >= " + std::to_string(min_value));
    }
    return static_cast<int>(v);
  }

  void require(bool ok, const std::string& what) const {
    if (!ok) throw ParamRangeError("entry '" + entry_ + "': " + what);
  }

  [[nodiscard]] const ParamMap& all() const { return values_; }

 private:
  std::string entry_;
  ParamMap values_;
};

NormOrder norm_param(const Params& params, const std::string& key) {
  const double p = params.get(key);
  params.require(p >= 1.0, key + " must be >= 1");
  return std::isinf(p) ? NormOrder::infinity() : NormOrder(p);
}

/// lambda (x - a)_+^{k-1} with exact derivatives up to order k-1.
FunctionDescriptor truncated_power_descriptor(int k, double a, double lambda) {
  FunctionDescriptor f;
  auto term = [k, a, lambda](int r) -> RealFunction {
    const int power = k - 1 - r;
    const double c = lambda * factorial_ratio(k - 1, power);
    if (power == 0) return [a, c](double x) { return x >= a ? c : 0.0; };
    return [a, c, power](double x) {
      return x > a ? c * std::pow(x - a, power) : 0.0;
    };
  };
  f.eval = term(0);
  for (int r = 1; r <= k - 1; ++r) {
    f.derivatives.push_back(term(r));
    f.derivative_exponents.push_back({0.0, 0.0});
  }
  f.support = Interval{std::max(a, -1.0), 1.0};
  if (a > -1.0 && a < 1.0) f.breakpoints.push_back(a);
  f.monotone = MonotoneDeclaration{k, CertificateSource::analytic};
  return f;
}

struct Builder {
  std::string name;
  ParamMap defaults;
  std::string defining_result;
  std::string rate_formula;
  std::function<CatalogEntry(const Params&)> build;
};

std::pair<double, double> zero_rate(int, NormOrder, NormOrder) { return {0.0, 0.0}; }

const std::vector<Builder>& builders() {
  static const std::vector<Builder> table = [] {
    std::vector<Builder> b;

    b.push_back({"oscillating_step",
                 {{"k", 1}, {"delta", 1.0 / 16.0}, {"p", 1}},
                 "alternating unit steps on [k delta i, k delta (i+1/2)]: unit-sphere "
                 "member whose main-part modulus stays bounded below",
                 "Omega >= c",
                 [](const Params& ps) {
                   const int k = ps.integer("k", 1);
                   const double delta = ps.get("delta");
                   ps.require(delta > 0.0 && delta <= 1.0 / (2.0 * k),
                              "delta must lie in (0, 1/(2k)]");
                   const double step = k * delta;
                   const int imax = static_cast<int>(std::floor(1.0 / (2.0 * step)));
                   std::vector<double> left(imax + 1);
                   std::vector<double> right(imax + 1);
                   for (int i = 0; i <= imax; ++i) {
                     left[i] = step * i;
                     right[i] = step * (i + 0.5);
                   }
                   CatalogEntry e;
                   e.descriptor.eval = [left, right, step, imax](double x) {
                     if (x < 0.0) return 0.0;
                     int i = static_cast<int>(std::floor(x / step));
                     // Closed intervals; a point is tested against the stored
                     // endpoints of the two candidate intervals, lower i first.
                     for (int j = std::max(i - 1, 0); j <= std::min(i, imax); ++j) {
                       if (x >= left[j] && x <= right[j]) return (j % 2 == 0) ? 1.0 : -1.0;
                     }
                     return 0.0;
                   };
                   for (int i = 0; i <= imax; ++i) {
                     if (i > 0) e.descriptor.breakpoints.push_back(left[i]);
                     e.descriptor.breakpoints.push_back(right[i]);
                   }
                   e.descriptor.breakpoints.insert(e.descriptor.breakpoints.begin(), 0.0);
                   e.descriptor.support = Interval{0.0, right[imax]};
                   e.order = 0;
                   e.claimed_rate = {"Omega >= c", zero_rate};
                   e.norm_p = norm_param(ps, "p");
                   return e;
                 }});

    b.push_back({"heaviside",
                 {{"p", 1}},
                 "indicator of [0,1]: 1-monotone, modulus of order delta^(1/q)",
                 "delta^(1/q)",
                 [](const Params& ps) {
                   CatalogEntry e;
                   e.descriptor.eval = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
                   e.descriptor.derivatives.push_back([](double) { return 0.0; });
                   e.descriptor.support = Interval{0.0, 1.0};
                   e.descriptor.breakpoints = {0.0};
                   e.descriptor.monotone = MonotoneDeclaration{1, CertificateSource::analytic};
                   e.order = 1;
                   e.claimed_rate = {"delta^(1/q)", [](int, NormOrder q, NormOrder) {
                                       return std::pair{q.reciprocal(), 0.0};
                                     }};
                   e.norm_p = norm_param(ps, "p");
                   return e;
                 }});

    b.push_back({"truncated_power",
                 {{"k", 2}, {"epsilon", 0.08}, {"beta", 0}, {"p", kInf}, {"delta", 0}},
                 "lambda (x-1+eps)_+^(k-1), lambda = eps^(-k-beta-1/p+1): unit-sphere "
                 "k-monotone spike at +1; with eps = 2k^2 delta^2 the modulus is "
                 "at least c delta^(2/q-2/p)",
                 "eps^(1/q-1/p) = c delta^(2/q-2/p)",
                 [](const Params& ps) {
                   const int k = ps.integer("k", 1);
                   const NormOrder p = norm_param(ps, "p");
                   const double beta = ps.get("beta");
                   double eps = ps.get("epsilon");
                   if (ps.get("delta") > 0.0) {
                     const double delta = ps.get("delta");
                     eps = std::min(2.0 * k * k * delta * delta, 1.0);
                   }
                   ps.require(eps > 0.0 && eps <= 1.0, "epsilon must lie in (0, 1]");
                   ps.require(p.is_infinite() ? beta >= 0.0 : beta > -p.reciprocal(),
                              "beta must lie in J_p");
                   const double lambda = std::pow(eps, -k - beta - p.reciprocal() + 1.0);
                   CatalogEntry e;
                   e.descriptor = truncated_power_descriptor(k, 1.0 - eps, lambda);
                   e.order = k;
                   e.claimed_rate = {"delta^(2/q-2/p)", [](int, NormOrder q, NormOrder pp) {
                                       return std::pair{2.0 * q.reciprocal() -
                                                            2.0 * pp.reciprocal(),
                                                        0.0};
                                     }};
                   e.norm_p = p;
                   e.norm_weight = JacobiWeight{0.0, beta};
                   e.params = ps.all();
                   e.params["epsilon"] = eps;
                   e.params["lambda"] = lambda;
                   return e;
                 }});

    b.push_back({"inverse_power",
                 {{"beta", 0.5}},
                 "(1-x)^(-beta) in the unit sphere of L_inf with weight (1-x)^beta: "
                 "second-order main-part modulus in L_1 at least c delta^2 |ln delta|",
                 "delta^2 |ln delta|",
                 [](const Params& ps) {
                   const double beta = ps.get("beta");
                   ps.require(beta > 0.0, "beta must be > 0");
                   CatalogEntry e;
                   auto clip = [](double x) { return 1.0 - std::min(x, 1.0 - kClip); };
                   e.descriptor.eval = [beta, clip](double x) {
                     return std::pow(clip(x), -beta);
                   };
                   e.descriptor.derivatives.push_back([beta, clip](double x) {
                     return beta * std::pow(clip(x), -beta - 1.0);
                   });
                   e.descriptor.derivatives.push_back([beta, clip](double x) {
                     return beta * (beta + 1.0) * std::pow(clip(x), -beta - 2.0);
                   });
                   e.descriptor.endpoint_exponents = {0.0, -beta};
                   e.descriptor.derivative_exponents = {{0.0, -beta - 1.0},
                                                        {0.0, -beta - 2.0}};
                   e.descriptor.monotone = MonotoneDeclaration{2, CertificateSource::analytic};
                   e.order = 2;
                   e.claimed_rate = {"delta^2 |ln delta|", [](int, NormOrder, NormOrder) {
                                       return std::pair{2.0, 1.0};
                                     }};
                   e.norm_p = NormOrder::infinity();
                   e.norm_weight = JacobiWeight{0.0, beta};
                   return e;
                 }});

    b.push_back({"zeta_spline",
                 {{"m", 6}, {"delta", 0}, {"lambda", 1.5}, {"beta", 0}, {"p", 2}},
                 "nondecreasing step function on the Chebyshev partition with n = 2^m "
                 "knots and dyadic levels 2^(2 beta (m-j) + 2(m-j)/p) zeta_j^(1/p): "
                 "first-order modulus at least c delta^(1/q) |ln delta|^(1/(2q)) / "
                 "|ln|ln delta||^(lambda/(2q)) when p = 2q",
                 "delta^(1/q) |ln delta|^(1/(2q)) / |ln|ln delta||^(lambda/(2q))",
                 [](const Params& ps) {
                   int m = ps.integer("m", 2);
                   if (ps.get("delta") > 0.0) {
                     const double delta = ps.get("delta");
                     ps.require(delta < 0.25, "delta must lie in (0, 1/4)");
                     m = static_cast<int>(std::floor(std::log2(1.0 / delta))) + 1;
                   }
                   ps.require(m >= 2 && m <= 24, "m must lie in [2, 24]");
                   const double lambda = ps.get("lambda");
                   const double beta = ps.get("beta");
                   const NormOrder p = norm_param(ps, "p");
                   ps.require(lambda > 1.0, "lambda must be > 1");
                   ps.require(!p.is_infinite() && beta > -p.reciprocal(),
                              "requires p < inf and beta > -1/p");
                   const int n = 1 << m;
                   std::vector<double> level(n + 2, 0.0);
                   double zeta_sum = 0.0;
                   for (int j = 0; j <= m - 2; ++j) {
                     const double zeta =
                         1.0 / ((j + 2.0) * std::pow(std::log(j + 2.0), lambda));
                     zeta_sum += zeta;
                     const double v = std::pow(2.0, 2.0 * beta * (m - j) +
                                                        2.0 * (m - j) * p.reciprocal()) *
                                      std::pow(zeta, p.reciprocal());
                     for (int i = 1 << j; i <= (1 << (j + 1)) - 1; ++i) level[i] = v;
                   }
                   CatalogEntry e;
                   e.descriptor.eval = [level, n](double x) {
                     if (x <= 0.0) return 0.0;
                     const double theta = std::acos(std::min(x, 1.0));
                     int i = static_cast<int>(std::floor(n * theta / std::numbers::pi)) + 1;
                     i = std::clamp(i, 1, n);
                     return level[i];
                   };
                   e.descriptor.derivatives.push_back([](double) { return 0.0; });
                   for (int i = 1; i < n / 2; ++i) {
                     e.descriptor.breakpoints.push_back(std::cos(i * std::numbers::pi / n));
                   }
                   std::reverse(e.descriptor.breakpoints.begin(), e.descriptor.breakpoints.end());
                   e.descriptor.support = Interval{0.0, 1.0};
                   e.descriptor.monotone = MonotoneDeclaration{1, CertificateSource::analytic};
                   e.order = 1;
                   e.claimed_rate = {
                       "delta^(1/q) |ln delta|^(1/(2q)) / |ln|ln delta||^(lambda/(2q))",
                       [](int, NormOrder q, NormOrder) {
                         return std::pair{q.reciprocal(), 0.5 * q.reciprocal()};
                       }};
                   e.norm_p = p;
                   e.norm_weight = JacobiWeight{beta, beta};
                   // ||w f||_p^p is bounded by a multiple of the partial zeta sum.
                   e.norm_scale = std::pow(zeta_sum, p.reciprocal());
                   e.params = ps.all();
                   e.params["m"] = m;
                   e.params["n"] = n;
                   return e;
                 }});

    b.push_back({"truncated_power_origin",
                 {{"k", 2}, {"p", kInf}},
                 "x_+^(k-1): best approximation error at least c n^(-k+1-1/q)",
                 "E_n >= c n^(-k+1-1/q)",
                 [](const Params& ps) {
                   const int k = ps.integer("k", 1);
                   CatalogEntry e;
                   e.descriptor = truncated_power_descriptor(k, 0.0, 1.0);
                   e.order = k;
                   e.claimed_rate = {"n^(-k+1-1/q)", [](int kk, NormOrder q, NormOrder) {
                                       return std::pair{kk - 1.0 + q.reciprocal(), 0.0};
                                     }};
                   e.norm_p = norm_param(ps, "p");
                   e.norm_scale = e.norm_p.is_infinite()
                                      ? 1.0
                                      : std::pow(1.0 / ((k - 1) * e.norm_p.value() + 1.0),
                                                 e.norm_p.reciprocal());
                   return e;
                 }});

    b.push_back({"moving_truncated_power",
                 {{"k", 2}, {"n", 16}, {"beta", 0}, {"p", kInf}},
                 "(x - xi_n)_+^(k-1) with xi_n = 1 - 2k^2/n^2: best approximation "
                 "error at least c n^(-2/q+2/p) ||w f_n||_p",
                 "E_n >= c n^(-2/q+2/p) ||w f_n||_p",
                 [](const Params& ps) {
                   const int k = ps.integer("k", 1);
                   const int n = ps.integer("n", 1);
                   ps.require(n >= 2 * k, "n must be >= 2k");
                   const double beta = ps.get("beta");
                   const NormOrder p = norm_param(ps, "p");
                   const double xi = 1.0 - 2.0 * k * k / (double(n) * n);
                   CatalogEntry e;
                   e.descriptor = truncated_power_descriptor(k, xi, 1.0);
                   e.order = k;
                   e.claimed_rate = {"n^(-2/q+2/p)", [](int, NormOrder q, NormOrder pp) {
                                       return std::pair{2.0 * q.reciprocal() -
                                                            2.0 * pp.reciprocal(),
                                                        0.0};
                                     }};
                   e.norm_p = p;
                   e.norm_weight = JacobiWeight{0.0, beta};
                   e.norm_scale = std::pow(1.0 - xi, beta + k - 1.0 + p.reciprocal());
                   e.params = ps.all();
                   e.params["xi"] = xi;
                   return e;
                 }});

    b.push_back({"constant",
                 {{"c", 1}},
                 "constant function: every modulus vanishes",
                 "0",
                 [](const Params& ps) {
                   const double c = ps.get("c");
                   CatalogEntry e;
                   e.descriptor = constant_function(c);
                   e.descriptor.monotone = MonotoneDeclaration{1, CertificateSource::analytic};
                   e.order = 1;
                   e.claimed_rate = {"0", zero_rate};
                   e.norm_p = NormOrder::infinity();
                   e.norm_scale = std::abs(c);
                   return e;
                 }});
    return b;
  }();
  return table;
}

}  // namespace

CatalogEntry catalog_get(const std::string& name, const ParamMap& params) {
  for (const Builder& b : builders()) {
    if (b.name != name) continue;
    Params ps(name, params, b.defaults);
    CatalogEntry e = b.build(ps);
    if (e.params.empty()) e.params = ps.all();
    e.name = name;
    e.defining_result = b.defining_result;
    e.descriptor.label = name + "(" + format_params(e.params) + ")";
    return e;
  }
  throw UnknownEntryError("no catalog entry named '" + name + "'");
}

std::vector<CatalogInfo> catalog_list() {
  std::vector<CatalogInfo> out;
  for (const Builder& b : builders()) {
    out.push_back({b.name, b.defaults, b.defining_result, b.rate_formula});
  }
  return out;
}

ChebyshevPartition chebyshev_partition(int n) {
  if (n < 2) throw ParamRangeError("Chebyshev partition needs n >= 2");
  ChebyshevPartition part;
  part.n = n;
  part.knots.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    part.knots[i] = std::cos(i * std::numbers::pi / n);
  }
  part.knots[0] = 1.0;
  part.knots[n] = -1.0;
  if (n % 2 == 0) part.knots[n / 2] = 0.0;
  for (int i = 1; i <= n; ++i) {
    part.knots[i] = (i <= n / 2) ? part.knots[i] : -part.knots[n - i];
  }
  for (int i = 2; i <= n; ++i) {
    const double a = part.length(i - 1);
    const double b = part.length(i);
    if (!(b <= 3.0 * a && a <= 3.0 * b)) {
      throw DegenerateError("Chebyshev partition intervals " + std::to_string(i - 1) +
                            " and " + std::to_string(i) + " not comparable");
    }
  }
  return part;
}

Interval d_interval(double t, double h) {
  const double r = (h / 2.0) * std::sqrt((1.0 - t) * (1.0 + t) + h * h / 4.0);
  const double s = 1.0 + h * h / 4.0;
  return {(t - r) / s, (t + r) / s};
}

Interval d_interval(const ChebyshevPartition& partition, int i, double h) {
  if (i < 1 || i > partition.n - 1) {
    throw ParamRangeError("D_i(h) needs 1 <= i <= n-1");
  }
  if (!(h > 0.0)) throw ParamRangeError("D_i(h) needs h > 0");
  return d_interval(partition.knots[i], h);
}

}  // namespace modlab
