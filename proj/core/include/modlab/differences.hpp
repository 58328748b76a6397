#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modlab/chebyshev.hpp"
#include "modlab/core.hpp"

namespace modlab {

enum class Direction { symmetric, forward, backward };

struct DifferenceSpec {
  int order = 1;
  double step = 0.0;
  Direction direction = Direction::symmetric;
  Interval domain{-1.0, 1.0};

  void validate() const;
};

/// Binomial coefficient C(k, i) as a double.
[[nodiscard]] double binomial(int k, int i);

/// k-th difference of f at x. The symmetric difference is
/// sum_i C(k,i) (-1)^{k-i} f(x - kh/2 + ih) when x +- kh/2 lie in the domain
/// and 0 otherwise; forward and backward differences are the symmetric one
/// taken at x + kh/2 and x - kh/2.
[[nodiscard]] double difference(const RealFunction& f, const DifferenceSpec& spec,
                                double x);
[[nodiscard]] double difference(const FunctionDescriptor& f,
                                const DifferenceSpec& spec, double x);

/// [x_0, ..., x_k; f] in Newton form. Points are sorted first, so the value
/// does not depend on their order.
[[nodiscard]] double divided_difference(std::span<const double> points,
                                        const FunctionDescriptor& f);
/// Same, from already computed values f(points[i]).
[[nodiscard]] double divided_difference_values(std::span<const double> points,
                                               std::span<const double> values);

struct MonotoneVerdict {
  bool certified = false;
  /// The offending node set and divided difference when refuted.
  std::vector<double> witness;
  double witness_value = 0.0;
  std::size_t evaluations = 0;
};

/// Statistical certificate that every k-th divided difference of f is >= 0:
/// all (k+1)-subsets of a 40-point Chebyshev grid plus `trials` seeded random
/// node sets. A value below -(tol + its rounding bound) refutes.
[[nodiscard]] MonotoneVerdict certify_k_monotone(const FunctionDescriptor& f,
                                                 int k, int trials = 500,
                                                 std::uint64_t seed = 42,
                                                 double tol = 1e-9);

/// Two-sided derivative f^{(r)}(x0): exact when declared, otherwise central
/// differences with Richardson extrapolation.
[[nodiscard]] double central_derivative(const FunctionDescriptor& f, int r,
                                        double x0 = 0.0);
/// Left derivative f_-^{(r)}(0) (left limit of f for r = 0).
[[nodiscard]] double left_derivative(const FunctionDescriptor& f, int r);

/// T_{k-1}(f, x) = sum_{i<k-1} f^{(i)}(0) x^i / i! + f_-^{(k-1)}(0) x^{k-1}/(k-1)!.
[[nodiscard]] ChebyshevPoly taylor_truncation(const FunctionDescriptor& f, int k);

struct MPlusSplit {
  FunctionDescriptor f1;
  FunctionDescriptor f2;
};

/// f1(x) = (f - T_{k-1}(f))(x) and f2(x) = (-1)^k (f - T_{k-1}(f))(-x) for
/// x in (0,1], both 0 on [-1,0].
[[nodiscard]] MPlusSplit mplus_split(const FunctionDescriptor& f, int k);

}  // namespace modlab
