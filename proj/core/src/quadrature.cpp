#include "modlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "modlab/errors.hpp"

namespace modlab {

namespace {

constexpr int kMaxGaussNodes = 64;
constexpr int kExtraSupSamples = 512;
constexpr int kGoldenPolishIterations = 40;

GaussRule compute_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    throw SingularityError("non-finite value " + std::to_string(v) +
                           " at x = " + std::to_string(x));
  }
  return v;
}

int side_panels(const QuadratureConfig& quad, double exponent) {
  const double extra = std::clamp(-exponent, 0.0, 1.0);
  return quad.panels_per_side +
         static_cast<int>(std::lround(quad.panels_per_side * extra));
}

/// Boundaries of [s, e] graded toward `end` (+1 or -1); `s` is the far side.
void append_graded_side(std::vector<double>& out, double s, double e,
                        double end, int panels, double grading) {
  const double d0 = std::abs(end - s);
  const double dmin = std::abs(end - e);
  if (!(d0 > 2.0 * dmin) || dmin <= 0.0) {
    for (int j = 0; j <= panels; ++j) {
      out.push_back(j == panels ? e : s + (e - s) * j / panels);
    }
    return;
  }
  const double log_ratio = std::log(dmin / d0);
  for (int j = 0; j <= panels; ++j) {
    if (j == 0) {
      out.push_back(s);
    } else if (j == panels) {
      out.push_back(e);
    } else {
      const double t = std::pow(static_cast<double>(j) / panels, grading);
      const double d = d0 * std::exp(t * log_ratio);
      out.push_back(end > 0.0 ? end - d : end + d);
    }
  }
}

std::vector<double> mesh_with_breakpoints(Interval interval,
                                          EndpointExponents exponents,
                                          const std::vector<double>& breakpoints,
                                          const QuadratureConfig& quad) {
  std::vector<double> mesh = graded_mesh(interval, exponents, quad);
  if (mesh.size() < 2) return mesh;
  const double lo = mesh.front();
  const double hi = mesh.back();
  for (double b : breakpoints) {
    if (b > lo && b < hi) mesh.push_back(b);
  }
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
  return mesh;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::array<GaussRule, kMaxGaussNodes + 1> rules = [] {
    std::array<GaussRule, kMaxGaussNodes + 1> r;
    for (int m = 1; m <= kMaxGaussNodes; ++m) r[m] = compute_gauss_rule(m);
    return r;
  }();
  if (n < 1 || n > kMaxGaussNodes) {
    throw InvalidArgumentError("Gauss-Legendre order out of range: " +
                               std::to_string(n));
  }
  return rules[n];
}

std::vector<double> graded_mesh(Interval interval, EndpointExponents exponents,
                                const QuadratureConfig& quad) {
  quad.validate();
  const double lo = std::max(interval.lo, -1.0 + quad.clip_epsilon);
  const double hi = std::min(interval.hi, 1.0 - quad.clip_epsilon);
  if (!(lo < hi)) return {};
  const double len = hi - lo;
  const bool near_minus = (lo + 1.0) < 0.25 * len;
  const bool near_plus = (1.0 - hi) < 0.25 * len;
  const double g = quad.grading_exponent;

  std::vector<double> out;
  if (near_minus && near_plus) {
    const double mid = 0.5 * (lo + hi);
    append_graded_side(out, mid, lo, -1.0, side_panels(quad, exponents.minus), g);
    std::reverse(out.begin(), out.end());
    out.pop_back();
    append_graded_side(out, mid, hi, 1.0, side_panels(quad, exponents.plus), g);
  } else if (near_plus) {
    append_graded_side(out, lo, hi, 1.0, side_panels(quad, exponents.plus), g);
  } else if (near_minus) {
    append_graded_side(out, hi, lo, -1.0, side_panels(quad, exponents.minus), g);
    std::reverse(out.begin(), out.end());
  } else {
    const int p = quad.panels_per_side;
    for (int j = 0; j <= p; ++j) {
      out.push_back(j == p ? hi : lo + len * j / p);
    }
  }
  return out;
}

EndpointExponents product_exponents(const FunctionDescriptor& f,
                                    const JacobiWeight& w) {
  EndpointExponents e{w.alpha + f.endpoint_exponents.minus,
                      w.beta + f.endpoint_exponents.plus};
  if (f.support) {
    if (f.support->lo > -1.0) e.minus = 0.0;
    if (f.support->hi < 1.0) e.plus = 0.0;
  }
  return e;
}

double integrand_norm(const Integrand& integrand, NormOrder q, Interval interval,
                      const QuadratureConfig& quad) {
  quad.validate();
  if (!(interval.lo < interval.hi)) return 0.0;
  const bool touches_minus = interval.lo <= -1.0;
  const bool touches_plus = interval.hi >= 1.0;
  const EndpointExponents e = integrand.exponents;

  if (q.is_infinite()) {
    if ((touches_minus && e.minus < 0.0) || (touches_plus && e.plus < 0.0)) {
      throw IntegrabilityError(
          "integrand is unbounded at an endpoint (exponents " +
          std::to_string(e.minus) + ", " + std::to_string(e.plus) + ")");
    }
  } else {
    const double qv = q.value();
    if ((touches_minus && qv * e.minus <= -1.0) ||
        (touches_plus && qv * e.plus <= -1.0)) {
      throw IntegrabilityError(
          "q * exponent <= -1 at an endpoint (q = " + q.to_string() +
          ", exponents " + std::to_string(e.minus) + ", " +
          std::to_string(e.plus) + ")");
    }
  }

  const std::vector<double> mesh =
      mesh_with_breakpoints(interval, e, integrand.breakpoints, quad);
  if (mesh.size() < 2) return 0.0;
  const auto& g = integrand.g;
  const GaussRule& rule = gauss_legendre(quad.nodes_per_panel);

  if (q.is_infinite()) {
    std::vector<double> xs;
    const std::size_t panels = mesh.size() - 1;
    const int extra = static_cast<int>(
        (kExtraSupSamples + static_cast<int>(panels) - 1) / static_cast<int>(panels));
    for (std::size_t i = 0; i < panels; ++i) {
      const double a = mesh[i];
      const double b = mesh[i + 1];
      xs.push_back(a);
      for (double t : rule.nodes) xs.push_back(0.5 * (a + b) + 0.5 * (b - a) * t);
      for (int j = 1; j <= extra; ++j) xs.push_back(a + (b - a) * j / (extra + 1));
    }
    xs.push_back(mesh.back());
    for (double bp : integrand.breakpoints) {
      if (bp >= mesh.front() && bp <= mesh.back()) {
        xs.push_back(bp);
        xs.push_back(std::nextafter(bp, -kInf));
        xs.push_back(std::nextafter(bp, kInf));
      }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] < mesh.front() || xs[i] > mesh.back()) continue;
      const double v = std::abs(checked(g(xs[i]), xs[i]));
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    double a = xs[best_i > 0 ? best_i - 1 : 0];
    double b = xs[std::min(best_i + 1, xs.size() - 1)];
    a = std::max(a, mesh.front());
    b = std::min(b, mesh.back());
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = std::abs(checked(g(c), c));
    double fd = std::abs(checked(g(d), d));
    for (int it = 0; it < kGoldenPolishIterations && b - a > 0.0; ++it) {
      best = std::max({best, fc, fd});
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = std::abs(checked(g(c), c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = std::abs(checked(g(d), d));
      }
    }
    best = std::max({best, fc, fd});
    return best;
  }

  const double qv = q.value();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    const double a = mesh[i];
    const double b = mesh[i + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double panel = 0.0;
    for (int j = 0; j < quad.nodes_per_panel; ++j) {
      const double x = mid + half * rule.nodes[j];
      const double v = std::abs(checked(g(x), x));
      panel += rule.weights[j] * (qv == 1.0 ? v : std::pow(v, qv));
    }
    total += half * panel;
  }
  // Portions of the interval inside the clip band.
  auto tail = [&](double x_edge, double width, bool at_endpoint, double expo) {
    if (width <= 0.0) return 0.0;
    const double v = std::abs(checked(g(x_edge), x_edge));
    const double vq = qv == 1.0 ? v : std::pow(v, qv);
    return at_endpoint ? vq * width / (qv * expo + 1.0) : vq * width;
  };
  if (interval.lo < mesh.front()) {
    total += tail(mesh.front(), mesh.front() - std::max(interval.lo, -1.0),
                  touches_minus, e.minus);
  }
  if (interval.hi > mesh.back()) {
    total += tail(mesh.back(), std::min(interval.hi, 1.0) - mesh.back(),
                  touches_plus, e.plus);
  }
  return qv == 1.0 ? total : std::pow(total, 1.0 / qv);
}

double weighted_norm(const FunctionDescriptor& f, const JacobiWeight& w,
                     NormOrder q, Interval interval, const QuadratureConfig& quad) {
  Interval region = interval;
  if (f.support) {
    region.lo = std::max(region.lo, f.support->lo);
    region.hi = std::min(region.hi, f.support->hi);
  }
  if (!(region.lo < region.hi)) return 0.0;
  Integrand integrand;
  integrand.g = [&f, &w](double x) {
    const double v = f(x);
    return v == 0.0 ? 0.0 : w(x) * v;
  };
  integrand.exponents = product_exponents(f, w);
  integrand.breakpoints = f.breakpoints;
  return integrand_norm(integrand, q, region, quad);
}

std::vector<QuadraturePoint> quadrature_points(
    Interval interval, EndpointExponents exponents,
    const std::vector<double>& breakpoints, const QuadratureConfig& quad) {
  const std::vector<double> mesh =
      mesh_with_breakpoints(interval, exponents, breakpoints, quad);
  std::vector<QuadraturePoint> out;
  if (mesh.size() < 2) return out;
  const GaussRule& rule = gauss_legendre(quad.nodes_per_panel);
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    const double half = 0.5 * (mesh[i + 1] - mesh[i]);
    const double mid = 0.5 * (mesh[i + 1] + mesh[i]);
    for (int j = 0; j < quad.nodes_per_panel; ++j) {
      out.push_back({mid + half * rule.nodes[j], half * rule.weights[j]});
    }
  }
  return out;
}

}  // namespace modlab
