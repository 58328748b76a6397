#pragma once

#include "modlab/core.hpp"

namespace modlab {

struct ModulusRequest {
  int k = 1;
  double delta = 0.1;
  JacobiWeight weight;
  NormOrder q;
  int h_samples = 64;
  QuadratureConfig quad;
  int golden_iterations = 20;

  /// Throws InvalidArgumentError unless 0 < delta <= 1/(2k), h_samples >= 8.
  void validate() const;
  /// Twice the quadrature panels and twice the h samples.
  [[nodiscard]] ModulusRequest refined() const;
};

struct SupremumResult {
  double value = 0.0;
  double argmax_h = 0.0;
};

struct ModulusResult {
  double main = 0.0;
  double forward = 0.0;
  double backward = 0.0;
  double total = 0.0;
  double argmax_main = 0.0;
  double argmax_forward = 0.0;
  double argmax_backward = 0.0;
};

enum class BoundarySide { forward_at_minus_one, backward_at_plus_one };

/// ||w Delta^k_{h phi}(f)||_{L_q[-1+2k^2h^2, 1-2k^2h^2]} for a single h.
[[nodiscard]] double main_part_norm(const FunctionDescriptor& f, int k, double h,
                                    const JacobiWeight& w, NormOrder q,
                                    const QuadratureConfig& quad = {});

/// Norm of the one-sided difference with step h over the boundary strip of
/// the given width at -1 (forward) or +1 (backward).
[[nodiscard]] double boundary_norm(const FunctionDescriptor& f, int k, double h,
                                   double strip_width, BoundarySide side,
                                   const JacobiWeight& w, NormOrder q,
                                   const QuadratureConfig& quad = {});

/// Sup over 0 < h <= delta of main_part_norm: uniform h grid plus
/// golden-section refinement around the grid argmax.
[[nodiscard]] SupremumResult main_part_modulus(const FunctionDescriptor& f,
                                               const ModulusRequest& req);

/// Sup over 0 < h <= 2k^2 delta^2 of boundary_norm on the strip of width
/// 2k^2 delta^2.
[[nodiscard]] SupremumResult boundary_modulus(const FunctionDescriptor& f,
                                              const ModulusRequest& req,
                                              BoundarySide side);

[[nodiscard]] ModulusResult combine(const SupremumResult& main,
                                    const SupremumResult& forward,
                                    const SupremumResult& backward);

/// Weighted Ditzian-Totik modulus: main part plus both boundary parts.
[[nodiscard]] ModulusResult dt_modulus(const FunctionDescriptor& f,
                                       const ModulusRequest& req);

}  // namespace modlab
