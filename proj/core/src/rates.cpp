#include "modlab/rates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "modlab/approx.hpp"
#include "modlab/differences.hpp"
#include "modlab/errors.hpp"
#include "modlab/parallel.hpp"
#include "modlab/quadrature.hpp"

namespace modlab {

void UpsilonSpec::validate() const {
  if (k < 1) throw SpecError("k must be >= 1");
  if (!(q.value() < p.value())) {
    throw SpecError("requires q < p, got q=" + q.to_string() + ", p=" + p.to_string());
  }
}

namespace {

bool is_log_case(const UpsilonSpec& s) {
  return s.k == 2 && s.q.value() == 1.0 && s.p.is_infinite();
}

bool weighted(const UpsilonSpec& s) { return s.alpha != 0.0 || s.beta != 0.0; }

}  // namespace

RateExponents upsilon_exponents(const UpsilonSpec& spec) {
  spec.validate();
  const double iq = spec.q.reciprocal();
  const double ip = spec.p.reciprocal();
  if (spec.k >= 2) {
    if (is_log_case(spec)) return {2.0, weighted(spec) ? 1.0 : 0.0};
    return {2.0 * iq - 2.0 * ip, 0.0};
  }
  const double p = spec.p.value();
  const double twice_q = 2.0 * spec.q.value();
  if (p < twice_q) return {2.0 * iq - 2.0 * ip, 0.0};
  if (p == twice_q) return {iq, 0.5 * iq};
  return {iq, 0.0};
}

double upsilon(const UpsilonSpec& spec, double delta) {
  spec.validate();
  if (!(delta > 0.0 && delta < 0.25)) {
    throw InvalidArgumentError("upsilon requires 0 < delta < 1/4");
  }
  const double iq = spec.q.reciprocal();
  const double ip = spec.p.reciprocal();
  const double ln = std::abs(std::log(delta));
  if (spec.k >= 2) {
    if (is_log_case(spec)) {
      return weighted(spec) ? delta * delta * ln : delta * delta;
    }
    return std::pow(delta, 2.0 * iq - 2.0 * ip);
  }
  const double p = spec.p.value();
  const double twice_q = 2.0 * spec.q.value();
  if (p < twice_q) return std::pow(delta, 2.0 * iq - 2.0 * ip);
  if (p == twice_q) return std::pow(delta, iq) * std::pow(ln, 0.5 * iq);
  return std::pow(delta, iq);
}

RateBracket mpoly_rate(const UpsilonSpec& spec, int n) {
  spec.validate();
  if (n < 1) throw SpecError("n must be >= 1");
  if (spec.alpha < 0.0 || spec.beta < 0.0) throw SpecError("requires alpha, beta >= 0");
  const double iq = spec.q.reciprocal();
  const double ip = spec.p.reciprocal();
  const double nn = n;
  const double lg = std::log(nn + 1.0);
  if (spec.k >= 2) {
    if (is_log_case(spec)) {
      const double base = 1.0 / (nn * nn);
      return {base, weighted(spec) ? base * lg : base};
    }
    const double v = std::pow(nn, -2.0 * iq + 2.0 * ip);
    return {v, v};
  }
  const double p = spec.p.value();
  const double twice_q = 2.0 * spec.q.value();
  if (p == twice_q) {
    const double base = std::pow(nn, -iq);
    return {base, base * std::pow(lg, 0.5 * iq)};
  }
  const double v = std::pow(nn, -std::min(2.0 * iq - 2.0 * ip, iq));
  return {v, v};
}

std::string to_string(RateModel model) {
  return model == RateModel::pure_power ? "pure_power" : "power_log";
}

RateFit fit_rate(const SweepResult& sweep, RateModel model) {
  const auto m = sweep.abscissae.size();
  if (m < 5 || sweep.values.size() != m) {
    throw DegenerateFitError("a rate fit needs at least 5 (abscissa, value) pairs");
  }
  const int cols = model == RateModel::pure_power ? 2 : 3;
  Eigen::MatrixXd X(m, cols);
  Eigen::VectorXd y(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = sweep.abscissae[j];
    const double v = sweep.values[j];
    if (!(v > 0.0) || !std::isfinite(v) || !(x > 0.0) || x == 1.0) {
      throw DegenerateFitError("rate fits need positive values and abscissae != 1");
    }
    X(j, 0) = 1.0;
    X(j, 1) = std::log(x);
    if (cols == 3) X(j, 2) = std::log(std::abs(std::log(x)));
    y(j) = std::log(v);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols) throw DegenerateFitError("rank-deficient rate design");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd res = y - X * beta;
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = res.squaredNorm();
  RateFit fit;
  fit.model = model;
  fit.constant = std::exp(beta(0));
  fit.exponent = beta(1);
  fit.log_power = cols == 3 ? beta(2) : 0.0;
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  fit.residual_max = res.cwiseAbs().maxCoeff();
  return fit;
}

RateFit fit_rate_auto(const SweepResult& sweep) {
  const RateFit plain = fit_rate(sweep, RateModel::pure_power);
  try {
    const RateFit logged = fit_rate(sweep, RateModel::power_log);
    if (logged.residual_max <= 0.75 * plain.residual_max) return logged;
  } catch (const DegenerateFitError&) {
  }
  return plain;
}

std::vector<double> dyadic_deltas(int first, int last) {
  std::vector<double> out;
  for (int j = first; j <= last; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

std::vector<int> default_degrees() { return {4, 6, 8, 12, 16, 24, 32, 48, 64}; }

SweepResult family_sup_sweep(const Family& family, const FamilySpec& spec,
                             const std::vector<double>& deltas,
                             const ModulusRequest& base) {
  std::ostringstream key;
  key.precision(17);
  key << "family_sup_sweep k=" << spec.k << " q=" << spec.q.to_string()
      << " p=" << spec.p.to_string() << " alpha=" << spec.weight.alpha
      << " beta=" << spec.weight.beta;
  for (double d : deltas) key << ' ' << d;

  const auto values = parallel_map<double>(deltas.size(), [&](std::size_t j) {
    const CatalogEntry entry = family(deltas[j]);
    const FunctionDescriptor& f = entry.descriptor;
    const bool declared = f.monotone && f.monotone->order == spec.k &&
                          f.monotone->source == CertificateSource::analytic;
    if (!declared) {
      const MonotoneVerdict verdict = certify_k_monotone(f, spec.k);
      if (!verdict.certified) {
        throw InvalidArgumentError("family member " + f.label + " is not " +
                                   std::to_string(spec.k) + "-monotone");
      }
    }
    const double norm = weighted_norm(f, spec.weight, spec.p, {-1.0, 1.0}, base.quad);
    if (!(norm > 0.0)) throw DegenerateError("family member " + f.label + " has zero norm");
    ModulusRequest req = base;
    req.k = spec.k;
    req.delta = deltas[j];
    req.weight = spec.weight;
    req.q = spec.q;
    return dt_modulus(f, req).total / norm;
  });

  SweepResult out;
  out.abscissae = deltas;
  out.values = values;
  out.module = "rates";
  out.op = "family_sup_sweep";
  out.request_hash = fnv1a(key.str());
  return out;
}

CheckSummary summarize_ratios(std::vector<double> abscissae, std::vector<double> ratios) {
  CheckSummary s;
  s.abscissae = std::move(abscissae);
  s.ratios = std::move(ratios);
  std::vector<double> lx;
  std::vector<double> ly;
  std::vector<double> positive;
  bool bad = false;
  for (std::size_t j = 0; j < s.ratios.size(); ++j) {
    const double r = s.ratios[j];
    if (!std::isfinite(r)) {
      bad = true;
    } else if (r > 0.0) {
      positive.push_back(r);
      lx.push_back(std::log(s.abscissae[j]));
      ly.push_back(std::log(r));
    }
  }
  if (positive.empty() && !bad) {
    s.vacuous = true;
    s.passed = true;
    return s;
  }
  if (!positive.empty()) {
    std::vector<double> sorted = positive;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t h = sorted.size() / 2;
    const double median =
        sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
    s.max_over_median = sorted.back() / median;
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t j = 0; j < lx.size(); ++j) {
      mx += lx[j] / n;
      my += ly[j] / n;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t j = 0; j < lx.size(); ++j) {
      sxy += (lx[j] - mx) * (ly[j] - my);
      sxx += (lx[j] - mx) * (lx[j] - mx);
    }
    s.trend_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  // A zero ratio next to positive ones is a bound that collapsed.
  const bool mixed = positive.size() != s.ratios.size();
  s.passed = !bad && !mixed && s.max_over_median <= 20.0 && std::abs(s.trend_slope) <= 0.3;
  return s;
}

namespace {

constexpr double kVanishing = 1e-12;

ModulusRequest request_for(const ModulusRequest& base, int k, double delta,
                           const JacobiWeight& w, NormOrder q) {
  ModulusRequest req = base;
  req.k = k;
  req.delta = delta;
  req.weight = w;
  req.q = q;
  return req;
}

/// True when f agrees with a polynomial of degree < k up to rounding.
bool low_degree_polynomial(const FunctionDescriptor& f, int k, const JacobiWeight& w,
                           NormOrder q, const QuadratureConfig& quad) {
  const double scale = weighted_norm(f, w, q, {-1.0, 1.0}, quad);
  if (scale == 0.0) return true;
  const double e = best_approx(f, k - 1, w, q, 0, quad).error;
  return e <= kVanishing * scale;
}

double ratio_of(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : 0.0;
}

}  // namespace

CheckSummary jackson_check(const FunctionDescriptor& f, int k, const JacobiWeight& w,
                           NormOrder q, const std::vector<int>& degrees,
                           const ModulusRequest& base) {
  if (low_degree_polynomial(f, k, w, q, base.quad)) {
    CheckSummary s;
    s.vacuous = true;
    s.passed = true;
    return s;
  }
  const auto ratios = parallel_map<double>(degrees.size(), [&](std::size_t j) {
    const int n = degrees[j];
    const double e = best_approx(f, n, w, q, 0, base.quad).error;
    const double om = dt_modulus(f, request_for(base, k, 1.0 / n, w, q)).total;
    return ratio_of(e, om);
  });
  std::vector<double> xs(degrees.begin(), degrees.end());
  return summarize_ratios(std::move(xs), ratios);
}

CheckSummary inverse_check(const FunctionDescriptor& f, int k, const JacobiWeight& w,
                           NormOrder q, const std::vector<double>& deltas,
                           const ModulusRequest& base) {
  if (low_degree_polynomial(f, k, w, q, base.quad)) {
    CheckSummary s;
    s.vacuous = true;
    s.passed = true;
    return s;
  }
  // Number of terms: integers i with 0 <= i < 1/delta.
  auto terms = [](double delta) {
    return static_cast<int>(std::ceil(1.0 / delta - 1e-12));
  };
  int top = 0;
  for (double d : deltas) top = std::max(top, terms(d));
  if (top > 65) throw InvalidArgumentError("inverse_check needs degrees beyond 64");
  const auto errors = parallel_map<double>(static_cast<std::size_t>(top), [&](std::size_t i) {
    return best_approx(f, static_cast<int>(i), w, q, 0, base.quad).error;
  });
  const auto ratios = parallel_map<double>(deltas.size(), [&](std::size_t j) {
    const double d = deltas[j];
    double s = 0.0;
    for (int i = 0; i < terms(d); ++i) s += std::pow(i + 1.0, k - 1) * errors[i];
    const double om = dt_modulus(f, request_for(base, k, d, w, q)).total;
    return ratio_of(om, std::pow(d, k) * s);
  });
  return summarize_ratios(deltas, ratios);
}

CheckSummary derivative_transfer_check(const FunctionDescriptor& f, int k, int r,
                                       const JacobiWeight& w, NormOrder q,
                                       const std::vector<double>& deltas,
                                       const ModulusRequest& base) {
  if (r <= 0 || r >= k) throw InvalidArgumentError("requires 0 < r < k");
  const FunctionDescriptor fr = f.derivative(r);
  const JacobiWeight wr = w.times_phi_power(r);
  const auto ratios = parallel_map<double>(deltas.size(), [&](std::size_t j) {
    const double d = deltas[j];
    const double lhs = dt_modulus(f, request_for(base, k, d, w, q)).total;
    const double rhs = std::pow(d, r) * dt_modulus(fr, request_for(base, k - r, d, wr, q)).total;
    const double scale = std::max(lhs, rhs);
    if (scale <= kVanishing * std::pow(d, k)) return 0.0;
    return ratio_of(lhs, rhs);
  });
  return summarize_ratios(deltas, ratios);
}

EmbeddingRatio embedding_check(const FunctionDescriptor& f, int r, double alpha,
                               double beta, double gamma, NormOrder p,
                               const QuadratureConfig& quad) {
  if (!(gamma < 1.0)) throw InvalidArgumentError("embedding requires gamma < 1");
  if (r < 0) throw InvalidArgumentError("embedding requires r >= 0");
  FunctionDescriptor g = f.derivative(r);
  const FunctionDescriptor g1 = f.derivative(r + 1);
  const double at_zero = g(0.0);
  if (at_zero != 0.0) g = sum(g, constant_function(-at_zero));
  EmbeddingRatio out;
  out.numerator = weighted_norm(g, {alpha - gamma, beta - gamma}, p, {-1.0, 1.0}, quad);
  out.denominator = weighted_norm(g1, {alpha, beta}, p, {-1.0, 1.0}, quad);
  if (out.denominator == 0.0) {
    out.vacuous = out.numerator == 0.0;
    out.ratio = out.vacuous ? 0.0 : kInf;
    return out;
  }
  out.ratio = out.numerator / out.denominator;
  return out;
}

}  // namespace modlab
