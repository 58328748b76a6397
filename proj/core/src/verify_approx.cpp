#include <algorithm>
#include <cmath>

#include "modlab/approx.hpp"
#include "modlab/extremals.hpp"
#include "modlab/parallel.hpp"
#include "modlab/quadrature.hpp"
#include "verify_support.hpp"

namespace modlab::detail {

namespace {

FunctionDescriptor smooth_exp() {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::exp(x); };
  return f;
}

FunctionDescriptor abs_value() {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::abs(x); };
  f.breakpoints = {0.0};
  return f;
}

FunctionDescriptor origin_power(int k) {
  return catalog_get("truncated_power_origin", {{"k", k}}).descriptor;
}

}  // namespace

std::vector<CheckOutcome> verify_approx(std::uint64_t seed) {
  SuiteBuilder s("approx", seed);

  s.check("equioscillation",
          "q=inf solutions show >= n+2 alternating extremal residuals; unweighted "
          "amplitudes within 1% of the reported error",
          "Chebyshev alternation characterizes best uniform approximation", [&] {
            struct Case {
              FunctionDescriptor f;
              JacobiWeight w;
            };
            const std::vector<Case> cases = {{smooth_exp(), {}},
                                             {abs_value(), {}},
                                             {origin_power(3), {}},
                                             {smooth_exp(), {0.5, 1.0}},
                                             {origin_power(2), {1.0, 0.0}}};
            int failures = 0;
            double worst_amp = 0.0;
            for (const Case& c : cases) {
              for (const int n : {2, 5, 10}) {
                const ApproxResult r = best_approx(c.f, n, c.w, NormOrder::infinity());
                if (r.residual_stats.alternation_count < n + 2) ++failures;
                if (c.w.is_unweighted()) {
                  const double amp =
                      std::abs(r.residual_stats.levelled_error - r.error) / r.error;
                  worst_amp = std::max(worst_amp, amp);
                  if (amp > 0.01) ++failures;
                }
              }
            }
            return Verdict{failures == 0,
                           Detail()("failures", failures)("max_amplitude_gap", worst_amp)};
          });

  s.check("nonincreasing_in_degree",
          "E_n is nonincreasing for n = 2..32 on three catalog entries, tolerance 1e-10, "
          "all degrees sharing the n = 32 discretization",
          "polynomial spaces are nested", [&] {
            struct Case {
              FunctionDescriptor f;
              NormOrder q;
            };
            const std::vector<Case> cases = {
                {catalog_get("heaviside").descriptor, NormOrder(1.0)},
                {origin_power(2), NormOrder(2.0)},
                {catalog_get("truncated_power", {{"k", 3}, {"epsilon", 0.1}}).descriptor,
                 NormOrder::infinity()}};
            // A shared grid keeps the discrete problems nested.
            const int grid = default_grid_size(32);
            double worst = 0.0;
            for (const Case& c : cases) {
              const auto e = parallel_map<double>(31, [&](std::size_t i) {
                return best_approx(c.f, static_cast<int>(i) + 2, {}, c.q, grid).error;
              });
              for (std::size_t i = 1; i < e.size(); ++i) worst = std::max(worst, e[i] - e[i - 1]);
            }
            return Verdict{worst <= 1e-10, Detail()("max_increase", worst)};
          });

  s.check("irls_matches_least_squares",
          "for q=2, reweighted least squares from zero reproduces the direct least-squares "
          "error to 1e-9 relative",
          "the L_2 best approximation is the weighted orthogonal projection", [&] {
            double worst = 0.0;
            for (const JacobiWeight w : {JacobiWeight{}, JacobiWeight{0.5, 0.25}}) {
              for (const int n : {3, 8, 16}) {
                for (const FunctionDescriptor& f : {smooth_exp(), abs_value(), origin_power(2)}) {
                  const double ls = best_approx(f, n, w, NormOrder(2.0)).error;
                  const double ir = irls_approx(f, n, w, NormOrder(2.0)).error;
                  worst = std::max(worst, std::abs(ls - ir) / ls);
                }
              }
            }
            return Verdict{worst <= 1e-9, Detail()("max_rel_error", worst)};
          });

  s.check("grid_refinement_stable",
          "doubling the discretization changes E_n by < 0.5% on the acceptance runs",
          "the discretized problem converges to the continuous best approximation", [&] {
            struct Run {
              int k;
              NormOrder q;
            };
            const std::vector<Run> runs = {
                {2, NormOrder::infinity()}, {2, NormOrder(2.0)}, {3, NormOrder(1.0)}};
            const std::vector<int> degrees = {8, 12, 16, 24, 32, 48, 64};
            double worst = 0.0;
            for (const Run& run : runs) {
              const FunctionDescriptor f = origin_power(run.k);
              const auto changes = parallel_map<double>(degrees.size(), [&](std::size_t i) {
                const int n = degrees[i];
                const double a = best_approx(f, n, {}, run.q).error;
                const double b = best_approx(f, n, {}, run.q, 2 * default_grid_size(n)).error;
                return std::abs(a - b) / b;
              });
              worst = std::max(worst, *std::max_element(changes.begin(), changes.end()));
            }
            return Verdict{worst < 0.005, Detail()("max_rel_change", worst)};
          });

  s.check("truncated_power_lower_witness",
          "for x_+^(k-1), k in {1,2}, q=inf: E_n n^(k-1) is bounded below by a positive "
          "constant that varies by at most a factor 1.5 over n = 8..64",
          "best approximation of a truncated power is at least c n^(-k+1-1/q)", [&] {
            const std::vector<int> degrees = {8, 12, 16, 24, 32, 48, 64};
            double worst_spread = 0.0;
            double smallest = kInf;
            for (const int k : {1, 2}) {
              const FunctionDescriptor f = origin_power(k);
              const auto ratio = parallel_map<double>(degrees.size(), [&](std::size_t i) {
                const int n = degrees[i];
                return best_approx(f, n, {}, NormOrder::infinity()).error *
                       std::pow(n, k - 1);
              });
              const auto [mn, mx] = std::minmax_element(ratio.begin(), ratio.end());
              smallest = std::min(smallest, *mn);
              worst_spread = std::max(worst_spread, *mx / *mn);
            }
            return Verdict{smallest > 0.0 && worst_spread <= 1.5,
                           Detail()("min_calibration", smallest)("max_spread", worst_spread)};
          });

  s.check("truncated_power_derivative_norms",
          "||w f^(r)||_p / (1-xi)^(beta+k-r-1+1/p) for f = (x-xi)_+^(k-1) varies by at most "
          "15% across xi = 1 - 2k^2/n^2, n = 8..64 with n >= 4k",
          "weighted norms of truncated powers scale with the distance of the kink to +1",
          [&] {
            double worst = 0.0;
            for (const int k : {2, 3, 4}) {
              for (int r = 0; r <= k - 1; ++r) {
                for (const NormOrder p : {NormOrder(1.0), NormOrder(2.0), NormOrder::infinity()}) {
                  for (const JacobiWeight w : {JacobiWeight{0.0, 0.0}, JacobiWeight{1.0, 0.5}}) {
                    double lo = kInf;
                    double hi = 0.0;
                    for (const int n : {8, 12, 16, 24, 32, 48, 64}) {
                      // Closer to -1 the factor (1+x)^alpha is no longer ~2^alpha.
                      if (n < 4 * k) continue;
                      const auto e =
                          catalog_get("moving_truncated_power", {{"k", k}, {"n", n}});
                      const double xi = e.params.at("xi");
                      const double v = weighted_norm(e.descriptor.derivative(r), w, p);
                      const double scale =
                          std::pow(1.0 - xi, w.beta + k - r - 1.0 + p.reciprocal());
                      lo = std::min(lo, v / scale);
                      hi = std::max(hi, v / scale);
                    }
                    worst = std::max(worst, hi / lo - 1.0);
                  }
                }
              }
            }
            return Verdict{worst <= 0.15, Detail()("max_spread", worst)};
          });

  return s.take();
}

}  // namespace modlab::detail
