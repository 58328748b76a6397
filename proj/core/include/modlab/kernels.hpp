#pragma once

#include "modlab/core.hpp"

namespace modlab {

/// Inverse of x -> x + lambda phi(x):
/// psi(lambda, y) = (y - lambda sqrt(1 - y^2 + lambda^2)) / (1 + lambda^2).
[[nodiscard]] double psi(double lambda, double y);

/// d psi / dy = (lambda y + r) / ((1 + lambda^2) r), r = sqrt(1 - y^2 + lambda^2).
/// Throws DegenerateError when 1 - y^2 + lambda^2 <= 1e-14.
[[nodiscard]] double psi_derivative(double lambda, double y);

/// g_y(t) = theta^{2 beta} (1+t^2)^{-beta-1} (1 - t y / sqrt(1+t^2))^{-2 beta - 1}.
[[nodiscard]] double g_kernel(double beta, double theta, double y, double t);

struct KernelPoint {
  double y = 0.0;
  double theta = 1.0;
  double beta = 0.0;
  int k = 1;
  double h = 0.0;

  /// Point with theta = phi(y).
  [[nodiscard]] static KernelPoint at(double y, double beta, int k, double h);
};

/// A_k(y, h): the k-th symmetric difference of t -> g_kernel(beta, theta, y, t)
/// at t = 0 with step h / theta.
[[nodiscard]] double a_kernel(const KernelPoint& point);

struct KernelBound {
  /// max |A_k(y,h)| / (h^k theta^{2 beta - k}) over the y grid.
  double ratio = 0.0;
  /// max |A_k(y,h)| over the same grid.
  double max_abs = 0.0;
  double argmax_y = 0.0;
};

/// Scans y in [0, 1 - 2k^2 h^2] on a grid geometric in 1 - y (plus y = 0).
[[nodiscard]] KernelBound kernel_sup_ratio(int k, double beta, double h,
                                           int grid_points = 400);

}  // namespace modlab
