#include <algorithm>
#include <cmath>
#include <random>

#include "modlab/chebyshev.hpp"
#include "modlab/core.hpp"
#include "modlab/extremals.hpp"
#include "modlab/quadrature.hpp"
#include "verify_support.hpp"

namespace modlab::detail {

namespace {

/// Max of |p| on [-1,1]: dense grid, then golden-section polish around each
/// grid local maximum.
double polynomial_sup(const ChebyshevPoly& p) {
  constexpr int m = 20000;
  std::vector<double> v(m + 1);
  for (int j = 0; j <= m; ++j) v[j] = std::abs(p(-1.0 + 2.0 * j / m));
  double best = std::max(v[0], v[m]);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int j = 1; j < m; ++j) {
    if (v[j] < v[j - 1] || v[j] < v[j + 1]) continue;
    double a = -1.0 + 2.0 * (j - 1) / m;
    double b = -1.0 + 2.0 * (j + 1) / m;
    for (int it = 0; it < 80; ++it) {
      const double c = b - gr * (b - a);
      const double d = a + gr * (b - a);
      if (std::abs(p(c)) >= std::abs(p(d))) {
        b = d;
      } else {
        a = c;
      }
    }
    best = std::max(best, std::abs(p(0.5 * (a + b))));
  }
  return best;
}

ChebyshevPoly random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(degree + 1);
  for (auto& x : c) x = u(rng);
  return ChebyshevPoly(c, degree);
}

}  // namespace

std::vector<CheckOutcome> verify_core(std::uint64_t seed) {
  SuiteBuilder s("core", seed);

  s.check("weight_reciprocity",
          "w_{a,b}(x) w_{-a,-b}(x) = 1 on (-1,1) to 1e-14 relative",
          "definition of the Jacobi weight", [&] {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> ue(-2.0, 2.0);
            std::uniform_real_distribution<double> ux(-0.999, 0.999);
            double worst = 0.0;
            for (int i = 0; i < 2000; ++i) {
              const JacobiWeight w{ue(rng), ue(rng)};
              const JacobiWeight inv{-w.alpha, -w.beta};
              const double x = ux(rng);
              worst = std::max(worst, std::abs(weight_eval(w, x) * weight_eval(inv, x) - 1.0));
            }
            return Verdict{worst <= 1e-14, Detail()("max_error", worst)};
          });

  s.check("norm_monotone",
          "|f| <= |g| pointwise implies ||w f||_q <= ||w g||_q + 1e-12",
          "monotonicity of weighted L_q norms", [&] {
            std::mt19937_64 rng(seed + 1);
            int violations = 0;
            double worst = -kInf;
            for (int i = 0; i < 12; ++i) {
              const ChebyshevPoly p = random_poly(rng, 6);
              FunctionDescriptor f = p.descriptor();
              FunctionDescriptor g;
              g.eval = [p](double x) { return std::abs(p(x)) + 0.05 * (1.0 + x * x); };
              const JacobiWeight w{0.25 * (i % 4), 0.5 * (i % 3)};
              for (const NormOrder q : {NormOrder(1.0), NormOrder(2.0), NormOrder(3.5),
                                        NormOrder::infinity()}) {
                const double nf = weighted_norm(f, w, q);
                const double ng = weighted_norm(g, w, q);
                worst = std::max(worst, nf - ng);
                if (nf > ng + 1e-12) ++violations;
              }
            }
            return Verdict{violations == 0,
                           Detail()("violations", violations)("max_excess", worst)};
          });

  s.check("sup_norm_polynomial",
          "q=inf unweighted norm of a polynomial matches a dense-grid maximum to 1e-10 "
          "relative",
          "definition of the L_inf norm", [&] {
            std::mt19937_64 rng(seed + 2);
            double worst = 0.0;
            for (int i = 0; i < 10; ++i) {
              const ChebyshevPoly p = random_poly(rng, 2 + i);
              const double got = weighted_norm(p.descriptor(), {}, NormOrder::infinity());
              const double want = polynomial_sup(p);
              worst = std::max(worst, std::abs(got - want) / want);
            }
            return Verdict{worst <= 1e-10, Detail()("max_rel_error", worst)};
          });

  s.check("norm_reflection",
          "||w_{a,b} f(x)||_q = ||w_{b,a} f(-x)||_q",
          "reflection x -> -x exchanges the weight exponents and preserves "
          "k-monotone unit spheres",
          [&] {
            double worst = 0.0;
            const std::vector<CatalogEntry> entries = {
                catalog_get("heaviside"), catalog_get("truncated_power", {{"k", 3}}),
                catalog_get("inverse_power"), catalog_get("zeta_spline")};
            for (const auto& e : entries) {
              const FunctionDescriptor r = reflected(e.descriptor, 0);
              for (const JacobiWeight w : {JacobiWeight{0.0, 0.5}, JacobiWeight{1.0, 0.5}}) {
                for (const NormOrder q : {NormOrder(1.0), NormOrder(2.0), NormOrder::infinity()}) {
                  const double a = weighted_norm(e.descriptor, w, q);
                  const double b = weighted_norm(r, w.reflected(), q);
                  worst = std::max(worst, std::abs(a - b) / std::max(a, 1e-300));
                }
              }
            }
            return Verdict{worst <= 1e-8, Detail()("max_rel_error", worst)};
          });

  return s.take();
}

}  // namespace modlab::detail
