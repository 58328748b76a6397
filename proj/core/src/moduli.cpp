#include "modlab/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "modlab/differences.hpp"
#include "modlab/errors.hpp"
#include "modlab/kernels.hpp"
#include "modlab/quadrature.hpp"

namespace modlab {

namespace {

constexpr double kVanishing = 1e-13;

std::vector<double> singular_points(const FunctionDescriptor& f) {
  std::vector<double> pts = f.breakpoints;
  if (f.support) {
    if (f.support->lo > -1.0) pts.push_back(f.support->lo);
    if (f.support->hi < 1.0) pts.push_back(f.support->hi);
  }
  return pts;
}

EndpointExponents integrand_exponents(const FunctionDescriptor& f,
                                      const JacobiWeight& w) {
  const EndpointExponents e = product_exponents(f, JacobiWeight{0.0, 0.0});
  return {w.alpha + std::min(e.minus, 0.0), w.beta + std::min(e.plus, 0.0)};
}

template <class Norm>
SupremumResult sup_over_h(Norm norm, double h_max, int samples, int golden) {
  std::vector<double> values(samples + 1, 0.0);
  int best = 1;
  for (int j = 1; j <= samples; ++j) {
    values[j] = norm(h_max * j / samples);
    if (values[j] > values[best]) best = j;
  }
  SupremumResult out{values[best], h_max * best / samples};
  const double lo_h = h_max * (best - 1) / samples;
  double a = best > 1 ? lo_h : 0.5 * h_max / samples;
  double b = h_max * std::min(best + 1, samples) / samples;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = norm(c);
  double fd = norm(d);
  auto record = [&](double h, double v) {
    if (v > out.value) {
      out.value = v;
      out.argmax_h = h;
    }
  };
  record(c, fc);
  record(d, fd);
  for (int it = 0; it < golden; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = norm(c);
      record(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = norm(d);
      record(d, fd);
    }
  }
  if (out.value < kVanishing) out.value = 0.0;
  return out;
}

}  // namespace

void ModulusRequest::validate() const {
  if (k < 1) throw InvalidArgumentError("modulus order k must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0 / (2.0 * k))) {
    throw InvalidArgumentError("delta must lie in (0, 1/(2k)], got " +
                               std::to_string(delta));
  }
  if (h_samples < 8) throw InvalidArgumentError("h_samples must be >= 8");
  if (golden_iterations < 0) throw InvalidArgumentError("golden_iterations < 0");
  quad.validate();
}

ModulusRequest ModulusRequest::refined() const {
  ModulusRequest r = *this;
  r.quad = quad.refined();
  r.h_samples *= 2;
  return r;
}

double main_part_norm(const FunctionDescriptor& f, int k, double h,
                      const JacobiWeight& w, NormOrder q,
                      const QuadratureConfig& quad) {
  const double margin = 2.0 * k * k * h * h;
  const Interval strip{-1.0 + margin, 1.0 - margin};
  if (!(strip.lo < strip.hi)) return 0.0;
  std::vector<double> lambdas(k + 1);
  std::vector<double> coeff(k + 1);
  for (int i = 0; i <= k; ++i) {
    lambdas[i] = (i - 0.5 * k) * h;
    coeff[i] = binomial(k, i) * (((k - i) % 2 == 0) ? 1.0 : -1.0);
  }
  Integrand integrand;
  integrand.g = [&](double x) {
    const double ph = phi(x);
    // x +- k h phi(x) / 2 stays in [-1, 1] on the strip.
    double s = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double xi = x + lambdas[i] * ph;
      const double v = f(xi);
      if (!std::isfinite(v)) {
        throw SingularityError("non-finite f at x = " + std::to_string(xi));
      }
      s += coeff[i] * v;
    }
    return s == 0.0 ? 0.0 : w(x) * s;
  };
  integrand.exponents = integrand_exponents(f, w);
  for (double b : singular_points(f)) {
    for (int i = 0; i <= k; ++i) integrand.breakpoints.push_back(psi(lambdas[i], b));
  }
  return integrand_norm(integrand, q, strip, quad);
}

double boundary_norm(const FunctionDescriptor& f, int k, double h,
                     double strip_width, BoundarySide side, const JacobiWeight& w,
                     NormOrder q, const QuadratureConfig& quad) {
  const bool forward = side == BoundarySide::forward_at_minus_one;
  const Interval strip = forward ? Interval{-1.0, -1.0 + strip_width}
                                 : Interval{1.0 - strip_width, 1.0};
  DifferenceSpec spec{k, h, forward ? Direction::forward : Direction::backward,
                      Interval{-1.0, 1.0}};
  Integrand integrand;
  integrand.g = [&](double x) {
    const double d = difference(f.eval, spec, x);
    return d == 0.0 ? 0.0 : w(x) * d;
  };
  integrand.exponents = integrand_exponents(f, w);
  if (forward) {
    integrand.exponents.plus = 0.0;
  } else {
    integrand.exponents.minus = 0.0;
  }
  for (double b : singular_points(f)) {
    for (int i = 0; i <= k; ++i) {
      integrand.breakpoints.push_back(forward ? b - i * h : b + (k - i) * h);
    }
  }
  // Where the stencil leaves [-1, 1] the difference is 0 by definition.
  integrand.breakpoints.push_back(forward ? 1.0 - k * h : -1.0 + k * h);
  return integrand_norm(integrand, q, strip, quad);
}

SupremumResult main_part_modulus(const FunctionDescriptor& f,
                                 const ModulusRequest& req) {
  req.validate();
  auto norm = [&](double h) {
    return main_part_norm(f, req.k, h, req.weight, req.q, req.quad);
  };
  return sup_over_h(norm, req.delta, req.h_samples, req.golden_iterations);
}

SupremumResult boundary_modulus(const FunctionDescriptor& f,
                                const ModulusRequest& req, BoundarySide side) {
  req.validate();
  const double width = 2.0 * req.k * req.k * req.delta * req.delta;
  auto norm = [&](double h) {
    return boundary_norm(f, req.k, h, width, side, req.weight, req.q, req.quad);
  };
  return sup_over_h(norm, width, req.h_samples, req.golden_iterations);
}

ModulusResult combine(const SupremumResult& main, const SupremumResult& forward,
                      const SupremumResult& backward) {
  ModulusResult r;
  r.main = main.value;
  r.forward = forward.value;
  r.backward = backward.value;
  r.total = r.main + r.forward + r.backward;
  r.argmax_main = main.argmax_h;
  r.argmax_forward = forward.argmax_h;
  r.argmax_backward = backward.argmax_h;
  return r;
}

ModulusResult dt_modulus(const FunctionDescriptor& f, const ModulusRequest& req) {
  return combine(main_part_modulus(f, req),
                 boundary_modulus(f, req, BoundarySide::forward_at_minus_one),
                 boundary_modulus(f, req, BoundarySide::backward_at_plus_one));
}

}  // namespace modlab
