#pragma once

#include <vector>

#include "modlab/core.hpp"

namespace modlab {

/// Gauss-Legendre rule on [-1,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule with n nodes, 1 <= n <= 64.
[[nodiscard]] const GaussRule& gauss_legendre(int n);

/// Panel boundaries on `interval`, clustered geometrically toward any end that
/// lies near +-1. The boundaries never come closer than clip_epsilon to +-1.
/// Endpoints with negative exponents receive additional panels.
[[nodiscard]] std::vector<double> graded_mesh(Interval interval,
                                              EndpointExponents exponents,
                                              const QuadratureConfig& quad);

/// A real function g together with the growth exponents of |g| at +-1 and
/// the points where g is not smooth.
struct Integrand {
  RealFunction g;
  EndpointExponents exponents;
  std::vector<double> breakpoints;
};

/// ||g||_{L_q(interval)} by composite Gauss-Legendre quadrature on the graded
/// mesh, with an analytic power-law correction for the part of the interval
/// inside the clip band. For q = inf, the maximum over a dense graded sample
/// set refined by golden-section search.
[[nodiscard]] double integrand_norm(const Integrand& integrand, NormOrder q,
                                    Interval interval,
                                    const QuadratureConfig& quad = {});

/// ||w f||_{L_q(interval)}.
[[nodiscard]] double weighted_norm(const FunctionDescriptor& f,
                                   const JacobiWeight& w, NormOrder q,
                                   Interval interval = {-1.0, 1.0},
                                   const QuadratureConfig& quad = {});

/// Exponents of |w f| at +-1, with an end outside the support of f counted as
/// vanishing.
[[nodiscard]] EndpointExponents product_exponents(const FunctionDescriptor& f,
                                                  const JacobiWeight& w);

/// Quadrature nodes and weights for integrals over `interval`, using the same
/// panels as integrand_norm. Used to discretize approximation problems.
struct QuadraturePoint {
  double x;
  double weight;
};
[[nodiscard]] std::vector<QuadraturePoint> quadrature_points(
    Interval interval, EndpointExponents exponents,
    const std::vector<double>& breakpoints, const QuadratureConfig& quad);

}  // namespace modlab
