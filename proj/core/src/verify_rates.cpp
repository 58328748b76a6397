#include <algorithm>
#include <cmath>

#include "modlab/approx.hpp"
#include "modlab/errors.hpp"
#include "modlab/extremals.hpp"
#include "modlab/parallel.hpp"
#include "modlab/quadrature.hpp"
#include "modlab/rates.hpp"
#include "verify_support.hpp"

namespace modlab::detail {

namespace {

struct FamilyCase {
  std::string label;
  Family family;
  FamilySpec spec;
};

std::vector<FamilyCase> rate_families() {
  std::vector<FamilyCase> out;
  const struct {
    int k;
    double q;
    double p;
  } tp[] = {{2, 1.0, 2.0}, {3, 1.0, kInf}, {2, 2.0, kInf}};
  for (const auto& c : tp) {
    const int k = c.k;
    const double p = c.p;
    out.push_back({"truncated_power k=" + std::to_string(k) + " q=" + format_real(c.q) +
                       " p=" + format_real(c.p),
                   [k, p](double d) {
                     return catalog_get("truncated_power", {{"k", k}, {"p", p}, {"delta", d}});
                   },
                   {k, {}, NormOrder(c.q), NormOrder(c.p)}});
  }
  out.push_back({"heaviside k=1 q=1 p=inf",
                 [](double) { return catalog_get("heaviside"); },
                 {1, {0.5, 0.5}, NormOrder(1.0), NormOrder::infinity()}});
  out.push_back({"inverse_power k=2 q=1 p=inf",
                 [](double) { return catalog_get("inverse_power"); },
                 {2, {0.0, 0.5}, NormOrder(1.0), NormOrder::infinity()}});
  out.push_back({"zeta_spline k=1 q=1 p=2",
                 [](double d) { return catalog_get("zeta_spline", {{"delta", d}}); },
                 {1, {}, NormOrder(1.0), NormOrder(2.0)}});
  return out;
}

UpsilonSpec upsilon_spec(const FamilySpec& s) {
  return {s.k, s.q, s.p, s.weight.alpha, s.weight.beta};
}

}  // namespace

std::vector<CheckOutcome> verify_rates(std::uint64_t seed) {
  SuiteBuilder s("rates", seed);
  const std::vector<double> deltas = dyadic_deltas();

  s.check("upsilon_dispatch",
          "upsilon is defined and continuous in delta within each case; at (2,1,inf) the "
          "weighted and unweighted branches differ exactly by |ln delta|",
          "the six-case sharp rate of the modulus over k-monotone unit spheres", [&] {
            double jump = 0.0;
            double branch = 0.0;
            const double qs[] = {1.0, 1.5, 2.0, 3.0};
            const double ps[] = {1.5, 2.0, 3.0, 4.0, 6.0, kInf};
            for (int k = 1; k <= 4; ++k) {
              for (const double q : qs) {
                for (const double p : ps) {
                  if (!(q < p)) continue;
                  for (const double ab : {0.0, 0.5}) {
                    const UpsilonSpec spec{k, NormOrder(q), NormOrder(p), ab, ab};
                    double prev = upsilon(spec, 1e-6);
                    for (double d = 1e-6 * 1.001; d < 0.25; d *= 1.001) {
                      const double v = upsilon(spec, d);
                      if (!std::isfinite(v) || v <= 0.0) return Verdict{false, "non-positive value"};
                      jump = std::max(jump, std::abs(v / prev - 1.0));
                      prev = v;
                    }
                  }
                }
              }
            }
            for (double d = 1e-6; d < 0.25; d *= 1.37) {
              const UpsilonSpec w{2, NormOrder(1.0), NormOrder::infinity(), 0.0, 0.5};
              const UpsilonSpec u{2, NormOrder(1.0), NormOrder::infinity(), 0.0, 0.0};
              branch = std::max(branch,
                                std::abs(upsilon(w, d) / upsilon(u, d) / std::abs(std::log(d)) - 1.0));
            }
            return Verdict{jump <= 1e-2 && branch <= 1e-15,
                           Detail()("max_step_jump", jump)("branch_error", branch)};
          });

  // Sweeps shared by the next two checks.
  const auto families = rate_families();
  std::vector<SweepResult> sweeps;
  std::string sweep_error;
  try {
    for (const auto& fc : families) sweeps.push_back(family_sup_sweep(fc.family, fc.spec, deltas));
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }

  s.check("family_exponents",
          "fitted exponents of extremal-family sweeps match upsilon within 0.15 and log "
          "powers within 0.5",
          "the rate upsilon is attained by the extremal families", [&] {
            if (!sweep_error.empty()) throw SpecError(sweep_error);
            double worst_a = 0.0;
            double worst_b = 0.0;
            std::string worst = "none";
            for (std::size_t i = 0; i < families.size(); ++i) {
              const RateFit fit = fit_rate_auto(sweeps[i]);
              const RateExponents want = upsilon_exponents(upsilon_spec(families[i].spec));
              const double da = std::abs(fit.exponent - want.exponent);
              const double db = std::abs(fit.log_power - want.log_power);
              if (da > worst_a) {
                worst_a = da;
                worst = families[i].label;
              }
              worst_b = std::max(worst_b, db);
            }
            return Verdict{worst_a <= 0.15 && worst_b <= 0.5,
                           Detail()("max_exponent_error", worst_a)("max_log_power_error", worst_b)(
                               "worst_family", worst)};
          });

  s.check("upper_bound_trend",
          "dt_modulus / upsilon of normalized k-monotone members is bounded and does not "
          "grow as delta shrinks (log-log slope against 1/delta <= 0.15)",
          "the modulus of a k-monotone unit-sphere function is at most c upsilon", [&] {
            if (!sweep_error.empty()) throw SpecError(sweep_error);
            std::vector<std::pair<SweepResult, FamilySpec>> items;
            for (std::size_t i = 0; i < families.size(); ++i) {
              items.push_back({sweeps[i], families[i].spec});
            }
            // Fixed members measured against every delta.
            const FamilySpec fixed_specs[] = {
                {2, {0.0, 0.0}, NormOrder(1.0), NormOrder(2.0)},
                {3, {0.5, 0.5}, NormOrder(2.0), NormOrder::infinity()}};
            const Family fixed[] = {
                [](double) { return catalog_get("truncated_power_origin", {{"k", 2}}); },
                [](double) {
                  return catalog_get("truncated_power", {{"k", 3}, {"epsilon", 0.01}});
                }};
            for (int i = 0; i < 2; ++i) {
              items.push_back({family_sup_sweep(fixed[i], fixed_specs[i], deltas), fixed_specs[i]});
            }
            double worst_slope = -kInf;
            double worst_ratio = 0.0;
            for (const auto& [sw, spec] : items) {
              std::vector<double> inv;
              std::vector<double> ratio;
              for (std::size_t j = 0; j < sw.abscissae.size(); ++j) {
                inv.push_back(1.0 / sw.abscissae[j]);
                ratio.push_back(sw.values[j] / upsilon(upsilon_spec(spec), sw.abscissae[j]));
              }
              const CheckSummary cs = summarize_ratios(inv, ratio);
              worst_slope = std::max(worst_slope, cs.trend_slope);
              worst_ratio = std::max(worst_ratio, *std::max_element(ratio.begin(), ratio.end()));
            }
            return Verdict{std::isfinite(worst_ratio) && worst_slope <= 0.15,
                           Detail()("max_slope", worst_slope)("max_ratio", worst_ratio)};
          });

  s.check("approximation_lower_bound",
          "E_n(f_n) / (||w f_n||_p mpoly_rate) for the moving truncated power is positive and "
          "its minimum over n = 24..64 is at least half its minimum over n = 8..16",
          "best approximation of the moving truncated power is at least c n^(-2/q+2/p) "
          "||w f_n||_p",
          [&] {
            const std::vector<int> degrees = {8, 12, 16, 24, 32, 48, 64};
            const FamilySpec cases[] = {{2, {0.0, 0.0}, NormOrder(1.0), NormOrder::infinity()},
                                        {3, {0.0, 0.0}, NormOrder(2.0), NormOrder::infinity()},
                                        {2, {0.0, 0.5}, NormOrder(2.0), NormOrder::infinity()}};
            double worst_decay = kInf;
            double smallest = kInf;
            for (const FamilySpec& c : cases) {
              const auto ratio = parallel_map<double>(degrees.size(), [&](std::size_t i) {
                const int n = degrees[i];
                const auto e = catalog_get("moving_truncated_power",
                                           {{"k", c.k}, {"n", n}, {"beta", c.weight.beta}});
                const double norm = weighted_norm(e.descriptor, c.weight, c.p);
                const double err = best_approx(e.descriptor, n, c.weight, c.q).error;
                return err / (norm * mpoly_rate(upsilon_spec(c), n).lower);
              });
              const double early = *std::min_element(ratio.begin(), ratio.begin() + 3);
              const double late = *std::min_element(ratio.begin() + 3, ratio.end());
              smallest = std::min({smallest, early, late});
              worst_decay = std::min(worst_decay, late / early);
            }
            return Verdict{smallest > 0.0 && worst_decay >= 0.5,
                           Detail()("min_calibration", smallest)("min_late_over_early", worst_decay)};
          });

  return s.take();
}

}  // namespace modlab::detail
