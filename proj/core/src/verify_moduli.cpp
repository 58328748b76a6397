#include <algorithm>
#include <cmath>

#include "modlab/differences.hpp"
#include "modlab/extremals.hpp"
#include "modlab/moduli.hpp"
#include "modlab/parallel.hpp"
#include "modlab/quadrature.hpp"
#include "modlab/rates.hpp"
#include "verify_support.hpp"

namespace modlab::detail {

namespace {

struct Case {
  FunctionDescriptor f;
  int k;
  JacobiWeight w;
  NormOrder q;
};

ModulusRequest request(const Case& c, double delta) {
  ModulusRequest r;
  r.k = c.k;
  r.delta = delta;
  r.weight = c.w;
  r.q = c.q;
  return r;
}

/// x_+^s for s > 0: nondecreasing and vanishing on [-1, 0].
FunctionDescriptor root_power(double s) {
  FunctionDescriptor f;
  f.eval = [s](double x) { return x > 0.0 ? std::pow(x, s) : 0.0; };
  f.support = Interval{0.0, 1.0};
  f.breakpoints = {0.0};
  return f;
}

std::vector<Case> catalog_cases() {
  return {
      {catalog_get("heaviside").descriptor, 1, {0.0, 0.0}, NormOrder(1.0)},
      {catalog_get("truncated_power_origin", {{"k", 2}}).descriptor, 2, {0.5, 0.5},
       NormOrder(2.0)},
      {catalog_get("truncated_power", {{"k", 2}, {"epsilon", 0.02}}).descriptor, 2,
       {0.0, 0.0}, NormOrder(1.0)},
      {catalog_get("inverse_power").descriptor, 2, {0.0, 0.5}, NormOrder(1.0)},
      {catalog_get("zeta_spline").descriptor, 1, {0.0, 0.0}, NormOrder::infinity()},
  };
}

}  // namespace

std::vector<CheckOutcome> verify_moduli(std::uint64_t seed) {
  SuiteBuilder s("moduli", seed);
  const std::vector<double> deltas = dyadic_deltas(3, 8);

  s.check("monotone_in_delta",
          "dt_modulus total is nondecreasing in delta over a dyadic sweep, tolerance "
          "1e-12",
          "the modulus is a supremum over a growing range of steps", [&] {
            const auto cases = catalog_cases();
            const auto drops = parallel_map<double>(cases.size(), [&](std::size_t i) {
              double worst = 0.0;
              double prev = kInf;
              for (double d : deltas) {  // decreasing delta
                const double t = dt_modulus(cases[i].f, request(cases[i], d)).total;
                worst = std::max(worst, t - prev);
                prev = t;
              }
              return worst;
            });
            const double worst = *std::max_element(drops.begin(), drops.end());
            return Verdict{worst <= 1e-12, Detail()("max_increase_when_shrinking", worst)};
          });

  s.check("homogeneous",
          "dt_modulus(c f) = |c| dt_modulus(f) to 1e-12 relative",
          "homogeneity of the L_q norm", [&] {
            double worst = 0.0;
            for (const Case& c : catalog_cases()) {
              const double base = dt_modulus(c.f, request(c, 0.0625)).total;
              for (const double factor : {-3.0, 0.5, 2.5}) {
                const double t = dt_modulus(scaled(c.f, factor), request(c, 0.0625)).total;
                worst = std::max(worst, std::abs(t - std::abs(factor) * base) /
                                            std::max(std::abs(factor) * base, 1e-300));
              }
            }
            return Verdict{worst <= 1e-12, Detail()("max_rel_error", worst)};
          });

  s.check("reflection",
          "modulus of f with w_{a,b} equals that of (-1)^k f(-x) with w_{b,a} within 2%",
          "reflection x -> -x exchanges the weight exponents of k-monotone unit spheres",
          [&] {
            double worst = 0.0;
            for (const Case& c : catalog_cases()) {
              const JacobiWeight w{0.25, c.w.beta};
              Case mirrored{reflected(c.f, c.k), c.k, w.reflected(), c.q};
              Case direct = c;
              direct.w = w;
              const double a = dt_modulus(direct.f, request(direct, 0.0625)).total;
              const double b = dt_modulus(mirrored.f, request(mirrored, 0.0625)).total;
              worst = std::max(worst, std::abs(a - b) / a);
            }
            return Verdict{worst <= 0.02, Detail()("max_rel_error", worst)};
          });

  s.check("subadditive",
          "dt_modulus(f+g) <= dt_modulus(f) + dt_modulus(g) + 1e-10 on catalog pairs",
          "triangle inequality for the modulus", [&] {
            const auto cases = catalog_cases();
            double worst = -kInf;
            for (std::size_t i = 0; i < cases.size(); ++i) {
              for (std::size_t j = i + 1; j < cases.size(); ++j) {
                Case c = cases[i];
                c.k = std::max(cases[i].k, cases[j].k);
                c.q = NormOrder(1.0);
                c.w = {0.0, 0.5};
                const double a = dt_modulus(cases[i].f, request(c, 0.0625)).total;
                const double b = dt_modulus(cases[j].f, request(c, 0.0625)).total;
                const double ab = dt_modulus(sum(cases[i].f, cases[j].f), request(c, 0.0625)).total;
                worst = std::max(worst, ab - a - b);
              }
            }
            return Verdict{worst <= 1e-10, Detail()("max_excess", worst)};
          });

  s.check("bounded_by_norm",
          "for alpha, beta >= 0 the total modulus is at most 2^(k+2) ||w f||_q",
          "the modulus of order k is bounded by the weighted norm for nonnegative weight "
          "exponents",
          [&] {
            double worst = 0.0;
            for (const Case& c : catalog_cases()) {
              for (const JacobiWeight w : {JacobiWeight{0.0, 0.5}, JacobiWeight{1.0, 1.0}}) {
                Case cw = c;
                cw.w = w;
                const double t = dt_modulus(c.f, request(cw, 0.125)).total;
                const double n = weighted_norm(c.f, w, c.q);
                worst = std::max(worst, t / (std::ldexp(1.0, c.k + 2) * n));
              }
            }
            return Verdict{worst <= 1.0, Detail()("max_ratio_to_bound", worst)};
          });

  s.check("backward_boundary_local",
          "for members vanishing on [-1,0] the backward modulus is at most 2^k times the "
          "norm on the strip [1-2k^2 delta^2, 1], with no growth under delta-halving",
          "the backward boundary modulus of a nonnegative nondecreasing function is "
          "controlled by its norm near +1",
          [&] {
            struct Member {
              FunctionDescriptor f;
              int k;
              JacobiWeight w;
              NormOrder q;
            };
            const std::vector<Member> members = {
                {mplus_split(catalog_get("inverse_power").descriptor, 2).f1, 2, {0.0, 0.0},
                 NormOrder(1.0)},
                {root_power(0.5), 1, {0.0, 0.5}, NormOrder(2.0)},
                {root_power(2.5), 3, {0.5, 0.5}, NormOrder(1.0)},
                {catalog_get("truncated_power", {{"k", 2}, {"epsilon", 1e-4}}).descriptor, 2,
                 {0.0, 1.0}, NormOrder(1.0)},
            };
            double worst = 0.0;
            double growth = 0.0;
            for (const Member& m : members) {
              double prev = 0.0;
              for (double d : deltas) {
                ModulusRequest r;
                r.k = m.k;
                r.delta = d;
                r.weight = m.w;
                r.q = m.q;
                const double back =
                    boundary_modulus(m.f, r, BoundarySide::backward_at_plus_one).value;
                const double width = 2.0 * m.k * m.k * d * d;
                const double local = weighted_norm(m.f, m.w, m.q, {1.0 - width, 1.0});
                const double ratio = back / (std::ldexp(1.0, m.k) * local);
                worst = std::max(worst, ratio);
                if (prev > 0.0) growth = std::max(growth, ratio / prev);
                prev = ratio;
              }
            }
            return Verdict{worst <= 1.0 && growth <= 1.2,
                           Detail()("max_ratio_to_bound", worst)("max_halving_growth", growth)};
          });

  return s.take();
}

}  // namespace modlab::detail
