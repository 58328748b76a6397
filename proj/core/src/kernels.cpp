#include "modlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modlab/differences.hpp"
#include "modlab/errors.hpp"

namespace modlab {

namespace {

double radicand(double lambda, double y) {
  return (1.0 - y) * (1.0 + y) + lambda * lambda;
}

}  // namespace

double psi(double lambda, double y) {
  const double r = std::sqrt(std::max(radicand(lambda, y), 0.0));
  return (y - lambda * r) / (1.0 + lambda * lambda);
}

double psi_derivative(double lambda, double y) {
  const double s = radicand(lambda, y);
  if (s <= 1e-14) {
    throw DegenerateError("1 - y^2 + lambda^2 <= 1e-14 at y = " + std::to_string(y) +
                          ", lambda = " + std::to_string(lambda));
  }
  const double r = std::sqrt(s);
  return (lambda * y + r) / ((1.0 + lambda * lambda) * r);
}

double g_kernel(double beta, double theta, double y, double t) {
  const double s = std::sqrt(1.0 + t * t);
  const double base = 1.0 - t * y / s;
  return std::pow(theta, 2.0 * beta) * std::pow(1.0 + t * t, -beta - 1.0) *
         std::pow(base, -2.0 * beta - 1.0);
}

KernelPoint KernelPoint::at(double y, double beta, int k, double h) {
  return KernelPoint{y, phi(y), beta, k, h};
}

double a_kernel(const KernelPoint& p) {
  const double step = p.h / p.theta;
  double s = 0.0;
  for (int i = 0; i <= p.k; ++i) {
    const double t = (i - 0.5 * p.k) * step;
    const double c = binomial(p.k, i) * (((p.k - i) % 2 == 0) ? 1.0 : -1.0);
    s += c * g_kernel(p.beta, p.theta, p.y, t);
  }
  return s;
}

KernelBound kernel_sup_ratio(int k, double beta, double h, int grid_points) {
  KernelBound out;
  const double dmin = 2.0 * k * k * h * h;
  auto visit = [&](double y) {
    const KernelPoint p = KernelPoint::at(y, beta, k, h);
    const double a = std::abs(a_kernel(p));
    const double scale = std::pow(h, k) * std::pow(p.theta, 2.0 * beta - k);
    const double r = a / scale;
    out.max_abs = std::max(out.max_abs, a);
    if (r > out.ratio) {
      out.ratio = r;
      out.argmax_y = y;
    }
  };
  visit(0.0);
  if (dmin >= 1.0) return out;
  for (int j = 0; j < grid_points; ++j) {
    const double d = std::pow(dmin, static_cast<double>(j) / (grid_points - 1));
    visit(1.0 - d);
  }
  return out;
}

}  // namespace modlab
