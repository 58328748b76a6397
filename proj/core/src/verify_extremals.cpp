#include <algorithm>
#include <cmath>

#include "modlab/differences.hpp"
#include "modlab/extremals.hpp"
#include "modlab/parallel.hpp"
#include "modlab/quadrature.hpp"
#include "verify_support.hpp"

namespace modlab::detail {

namespace {

/// Normalized norm ||norm_weight f||_{norm_p} / norm_scale.
double normalized_norm(const CatalogEntry& e) {
  return weighted_norm(e.descriptor, e.norm_weight, e.norm_p) / e.norm_scale;
}

struct Sweep {
  std::string label;
  std::vector<CatalogEntry> members;
};

/// The parameter sweeps exercised by the acceptance runs.
std::vector<Sweep> acceptance_sweeps() {
  std::vector<Sweep> out;
  auto dyadic = [](int a, int b) {
    std::vector<double> d;
    for (int j = a; j <= b; ++j) d.push_back(std::ldexp(1.0, -j));
    return d;
  };
  const struct {
    int k;
    double p;
  } tp[] = {{2, 2.0}, {3, kInf}, {2, kInf}};
  for (const auto& c : tp) {
    Sweep s{"truncated_power k=" + std::to_string(c.k), {}};
    for (double d : dyadic(3, 10)) {
      s.members.push_back(
          catalog_get("truncated_power", {{"k", c.k}, {"p", c.p}, {"delta", d}}));
    }
    out.push_back(std::move(s));
  }
  {
    Sweep s{"zeta_spline", {}};
    for (double d : dyadic(4, 9)) {
      s.members.push_back(catalog_get("zeta_spline", {{"delta", d}}));
    }
    out.push_back(std::move(s));
  }
  {
    Sweep s{"oscillating_step", {}};
    for (double d : dyadic(3, 7)) {
      s.members.push_back(catalog_get("oscillating_step", {{"delta", d}, {"p", kInf}}));
    }
    out.push_back(std::move(s));
  }
  for (const int k : {2, 3}) {
    Sweep s{"moving_truncated_power k=" + std::to_string(k), {}};
    for (const int n : {8, 12, 16, 24, 32, 48, 64}) {
      s.members.push_back(catalog_get("moving_truncated_power", {{"k", k}, {"n", n}}));
    }
    out.push_back(std::move(s));
  }
  out.push_back({"heaviside", {catalog_get("heaviside")}});
  out.push_back({"inverse_power", {catalog_get("inverse_power")}});
  out.push_back({"truncated_power_origin",
                 {catalog_get("truncated_power_origin", {{"k", 2}}),
                  catalog_get("truncated_power_origin", {{"k", 3}, {"p", 1}})}});
  return out;
}

}  // namespace

std::vector<CheckOutcome> verify_extremals(std::uint64_t seed) {
  SuiteBuilder s("extremals", seed);

  s.check("entries_k_monotone",
          "every catalog entry with a declared order certifies k-monotone at that order "
          "(seeded, 500 trials)",
          "the extremal functions belong to the k-monotone classes", [&] {
            std::vector<CatalogEntry> entries;
            for (const auto& info : catalog_list()) entries.push_back(catalog_get(info.name));
            entries.push_back(catalog_get("truncated_power", {{"k", 3}, {"epsilon", 0.01}}));
            entries.push_back(catalog_get("truncated_power_origin", {{"k", 4}}));
            entries.push_back(catalog_get("moving_truncated_power", {{"k", 3}, {"n", 32}}));
            entries.push_back(catalog_get("zeta_spline", {{"m", 9}, {"beta", 0.5}}));
            const auto ok = parallel_map<int>(entries.size(), [&](std::size_t i) {
              const CatalogEntry& e = entries[i];
              if (e.order == 0) return 1;
              return certify_k_monotone(e.descriptor, e.order, 500, seed).certified ? 1 : 0;
            });
            int failures = 0;
            std::string failed;
            for (std::size_t i = 0; i < ok.size(); ++i) {
              if (!ok[i]) {
                ++failures;
                failed += (failed.empty() ? "" : ",") + entries[i].name;
              }
            }
            return Verdict{failures == 0,
                           Detail()("entries", entries.size())("failures", failures)(
                               "failed", failed.empty() ? "none" : failed)};
          });

  s.check("normalization",
          "the normalized weighted norm lies in [1/4, 4] and drifts by < 10% across each "
          "acceptance sweep",
          "the extremal functions lie on the weighted unit sphere up to constants", [&] {
            const auto sweeps = acceptance_sweeps();
            double lo = kInf;
            double hi = 0.0;
            double drift = 0.0;
            std::string worst_sweep = "none";
            for (const Sweep& sw : sweeps) {
              const auto norms = parallel_map<double>(sw.members.size(), [&](std::size_t i) {
                return normalized_norm(sw.members[i]);
              });
              const auto [mn, mx] = std::minmax_element(norms.begin(), norms.end());
              lo = std::min(lo, *mn);
              hi = std::max(hi, *mx);
              if (*mx / *mn - 1.0 > drift) {
                drift = *mx / *mn - 1.0;
                worst_sweep = sw.label;
              }
            }
            return Verdict{lo >= 0.25 && hi <= 4.0 && drift < 0.1,
                           Detail()("min", lo)("max", hi)("max_drift", drift)(
                               "worst_sweep", worst_sweep)};
          });

  s.check("zeta_spline_shape",
          "zeta_spline is nondecreasing and vanishes on [-1, 0]",
          "the dyadic levels of the step-function extremal are nonincreasing in the "
          "interval index",
          [&] {
            int violations = 0;
            for (const int m : {3, 6, 10}) {
              for (const double beta : {-0.25, 0.0, 1.0}) {
                const auto e = catalog_get("zeta_spline", {{"m", m}, {"beta", beta}});
                double prev = 0.0;
                for (int j = 0; j <= 20000; ++j) {
                  const double x = -1.0 + 2.0 * j / 20000.0;
                  const double v = e.descriptor(x);
                  if (x <= 0.0 && v != 0.0) ++violations;
                  if (v < prev) ++violations;
                  prev = v;
                }
              }
            }
            return Verdict{violations == 0, Detail()("violations", violations)};
          });

  s.check("d_intervals_inside_strip",
          "for h <= 1/(2n), every D_i(h) lies in [-1+2h^2, 1-2h^2]",
          "the sets D_i(h) stay inside the main-part strip", [&] {
            int violations = 0;
            for (const int n : {4, 8, 16, 33, 64, 128, 256}) {
              const auto part = chebyshev_partition(n);
              for (const double h : {0.5 / n, 0.25 / n, 0.1 / n}) {
                for (int i = 1; i <= n - 1; ++i) {
                  const Interval d = d_interval(part, i, h);
                  if (d.lo < -1.0 + 2.0 * h * h || d.hi > 1.0 - 2.0 * h * h) ++violations;
                }
              }
            }
            return Verdict{violations == 0, Detail()("violations", violations)};
          });

  s.check("interval_length_bounds",
          "|I_i| >= phi(x)/n + 1/n^2 at sample points of every I_i, and "
          "2 phi(x)/n <= |I_i| <= 5 phi(x)/n for 2 <= i <= n-1",
          "Chebyshev partition intervals are comparable to phi(x)/n", [&] {
            int violations = 0;
            for (const int n : {4, 8, 16, 33, 64, 128, 256}) {
              const auto part = chebyshev_partition(n);
              for (int i = 1; i <= n; ++i) {
                const Interval I = part.interval(i);
                const double len = part.length(i);
                for (int j = 0; j <= 50; ++j) {
                  const double x = I.lo + len * j / 50.0;
                  if (len < phi(x) / n + 1.0 / (double(n) * n)) ++violations;
                  if (i >= 2 && i <= n - 1 &&
                      (len < 2.0 * phi(x) / n || len > 5.0 * phi(x) / n)) {
                    ++violations;
                  }
                }
              }
            }
            return Verdict{violations == 0, Detail()("violations", violations)};
          });

  return s.take();
}

}  // namespace modlab::detail
