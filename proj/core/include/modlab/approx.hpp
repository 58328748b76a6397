#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modlab/chebyshev.hpp"
#include "modlab/core.hpp"

namespace modlab {

enum class ApproxSolver { least_squares, linear_program, exchange, irls };

[[nodiscard]] std::string to_string(ApproxSolver solver);

struct ResidualStats {
  /// Objective of the discretized problem at the returned polynomial.
  double discrete_objective = 0.0;
  /// Alternating extremal points of the discrete weighted residual (within
  /// 1% of its maximum); q = inf only.
  int alternation_count = 0;
  /// Relative gap between the discrete primal objective and the LP dual
  /// objective; NaN when no LP was solved.
  double duality_gap = 0.0;
  /// Levelled error of the final exchange reference; q = inf only.
  double levelled_error = 0.0;
};

struct ApproxResult {
  ChebyshevPoly poly;
  /// Continuous weighted norm of the residual.
  double error = 0.0;
  ApproxSolver solver = ApproxSolver::least_squares;
  int iterations = 0;
  int grid_size = 0;
  ResidualStats residual_stats;
};

/// Default discretization size max(20(n+1), 512).
[[nodiscard]] int default_grid_size(int n);

/// Best weighted L_q approximation of f from polynomials of degree <= n on a
/// graded grid of about `grid_size` points (0 selects the default). q = 2 by
/// weighted least squares, q = inf by discrete exchange with a linear-program
/// fallback (and LP certificate for non-trivial weights), q = 1 by linear
/// programming, other q by iteratively reweighted least squares. The reported
/// error is the continuous weighted norm of the residual; the zero polynomial
/// is returned when it is at least as good.
[[nodiscard]] ApproxResult best_approx(const FunctionDescriptor& f, int n,
                                       const JacobiWeight& w, NormOrder q,
                                       int grid_size = 0,
                                       const QuadratureConfig& quad = {});

/// Iteratively reweighted least squares started at the zero polynomial, for
/// any finite q > 1. Throws SolverStallError when 50 iterations do not reach a
/// relative coefficient change below 1e-9.
[[nodiscard]] ApproxResult irls_approx(const FunctionDescriptor& f, int n,
                                       const JacobiWeight& w, NormOrder q,
                                       int grid_size = 0,
                                       const QuadratureConfig& quad = {});

/// ||w (f - p)||_q on [-1, 1].
[[nodiscard]] double residual_norm(const FunctionDescriptor& f, const ChebyshevPoly& p,
                                   const JacobiWeight& w, NormOrder q,
                                   const QuadratureConfig& quad = {});

struct RemezRatio {
  double ratio = 1.0;
  /// Integral of (1 - x^2)^{-1/2} over E.
  double capacity = 0.0;
};

/// ||p w||_{L_q[-1,1]} / ||p w||_{L_q([-1,1] \ E)}. Throws DivisionError when
/// the complement norm vanishes.
[[nodiscard]] RemezRatio remez_ratio(const ChebyshevPoly& p,
                                     const std::optional<Interval>& excluded,
                                     const JacobiWeight& w, NormOrder q,
                                     const QuadratureConfig& quad = {});

/// Strict sign alternations of f over an ordered grid; values with
/// |f| < 1e-12 are skipped.
[[nodiscard]] int sign_changes(const RealFunction& f, std::span<const double> grid);

}  // namespace modlab
