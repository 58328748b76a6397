#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "modlab/core.hpp"

namespace modlab {

using ParamMap = std::map<std::string, double>;

/// Rate claimed for an entry: value ~ C s^exponent |ln s|^log_power, where s
/// is delta for moduli and 1/n for best approximation.
struct ClaimedRate {
  std::string formula;
  std::function<std::pair<double, double>(int k, NormOrder q, NormOrder p)> exponents;
};

struct CatalogEntry {
  std::string name;
  ParamMap params;
  FunctionDescriptor descriptor;
  /// Declared k-monotonicity order, 0 when the entry is not k-monotone.
  int order = 0;
  ClaimedRate claimed_rate;
  /// The result this entry witnesses, in words.
  std::string defining_result;
  /// Norm in which the entry is normalized: ||norm_weight f||_{norm_p} is
  /// comparable to norm_scale.
  NormOrder norm_p;
  JacobiWeight norm_weight;
  double norm_scale = 1.0;
};

struct CatalogInfo {
  std::string name;
  ParamMap defaults;
  std::string defining_result;
  std::string rate_formula;
};

/// Throws UnknownEntryError for unknown names and ParamRangeError for unknown
/// parameter keys or values outside the entry's validity range. Missing
/// parameters take the entry's defaults.
[[nodiscard]] CatalogEntry catalog_get(const std::string& name,
                                       const ParamMap& params = {});
[[nodiscard]] std::vector<CatalogInfo> catalog_list();

/// Knots t_i = cos(i pi / n), i = 0..n, and intervals I_i = [t_i, t_{i-1}].
struct ChebyshevPartition {
  int n = 0;
  std::vector<double> knots;

  [[nodiscard]] Interval interval(int i) const { return {knots[i], knots[i - 1]}; }
  [[nodiscard]] double length(int i) const { return knots[i - 1] - knots[i]; }
};

/// Throws ParamRangeError for n < 2; verifies that neighbouring interval
/// lengths are within a factor 3 of each other.
[[nodiscard]] ChebyshevPartition chebyshev_partition(int n);

/// D(t, h) = {x : x - h phi(x)/2 <= t <= x + h phi(x)/2}.
[[nodiscard]] Interval d_interval(double t, double h);
/// D_i(h) for knot t_i, 1 <= i <= n-1.
[[nodiscard]] Interval d_interval(const ChebyshevPartition& partition, int i,
                                  double h);

}  // namespace modlab
