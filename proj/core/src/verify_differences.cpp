#include <algorithm>
#include <cmath>
#include <random>

#include "modlab/differences.hpp"
#include "modlab/extremals.hpp"
#include "modlab/quadrature.hpp"
#include "verify_support.hpp"

namespace modlab::detail {

namespace {

/// (x - a)_+^m with exact derivatives.
FunctionDescriptor shifted_power(double a, int m) {
  FunctionDescriptor f;
  f.eval = [a, m](double x) { return x > a ? std::pow(x - a, m) : 0.0; };
  for (int r = 1; r <= m; ++r) {
    double c = 1.0;
    for (int i = 0; i < r; ++i) c *= (m - i);
    f.derivatives.push_back([a, m, r, c](double x) {
      return x > a ? c * std::pow(x - a, m - r) : 0.0;
    });
  }
  f.breakpoints = {a};
  f.monotone = MonotoneDeclaration{m + 1, CertificateSource::analytic};
  return f;
}

FunctionDescriptor exponential() {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::exp(x); };
  for (int r = 0; r < 6; ++r) f.derivatives.push_back([](double x) { return std::exp(x); });
  f.monotone = MonotoneDeclaration{6, CertificateSource::analytic};
  return f;
}

}  // namespace

std::vector<CheckOutcome> verify_differences(std::uint64_t seed) {
  SuiteBuilder s("differences", seed);

  s.check("annihilates_low_degree",
          "k-th differences vanish within 1e-11 on polynomials of degree <= k-1 at 200 "
          "interior points",
          "k-th differences annihilate polynomials of degree below k", [&] {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            double worst = 0.0;
            for (int k = 1; k <= 6; ++k) {
              std::vector<double> a(k);
              for (auto& c : a) c = u(rng);
              const FunctionDescriptor p = monomial_polynomial(a);
              for (int j = 0; j < 200; ++j) {
                const double h = 0.01 + 0.1 * (0.5 + 0.5 * u(rng)) / k;
                const double x = (1.0 - 0.5 * k * h) * u(rng);
                const double d = difference(p, {k, h, Direction::symmetric, {-1.0, 1.0}}, x);
                worst = std::max(worst, std::abs(d));
              }
            }
            return Verdict{worst <= 1e-11, Detail()("max_abs", worst)};
          });

  s.check("mean_value_bracket",
          "Delta_h^k(e^x, x) / h^k lies between the min and max of e^x on the stencil, "
          "within 1e-6",
          "mean value form of the k-th difference", [&] {
            std::mt19937_64 rng(seed + 1);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            const FunctionDescriptor f = exponential();
            double worst = 0.0;
            for (int k = 1; k <= 5; ++k) {
              for (const double h : {0.2, 0.05, 0.01}) {
                for (int j = 0; j < 40; ++j) {
                  const double x = (1.0 - 0.5 * k * h) * u(rng);
                  const double v =
                      difference(f, {k, h, Direction::symmetric, {-1.0, 1.0}}, x) /
                      std::pow(h, k);
                  const double lo = std::exp(x - 0.5 * k * h);
                  const double hi = std::exp(x + 0.5 * k * h);
                  worst = std::max({worst, lo - v, v - hi});
                }
              }
            }
            return Verdict{worst <= 1e-6, Detail()("max_excursion", worst)};
          });

  s.check("divided_difference_symmetric",
          "divided differences are invariant under 100 seeded permutations to 1e-12 "
          "relative",
          "divided differences are symmetric functions of their nodes", [&] {
            std::mt19937_64 rng(seed + 2);
            std::uniform_real_distribution<double> u(-0.99, 0.99);
            const FunctionDescriptor f = exponential();
            double worst = 0.0;
            for (int trial = 0; trial < 100; ++trial) {
              const int k = 1 + trial % 5;
              std::vector<double> pts(k + 1);
              for (auto& x : pts) x = u(rng);
              const double ref = divided_difference(pts, f);
              std::shuffle(pts.begin(), pts.end(), rng);
              const double again = divided_difference(pts, f);
              worst = std::max(worst, std::abs(again - ref) / std::abs(ref));
            }
            return Verdict{worst <= 1e-12, Detail()("max_rel_change", worst)};
          });

  s.check("mplus_split_members",
          "both parts of the split certify k-monotone and vanish on [-1,0]",
          "reduction of k-monotone functions to those vanishing on (-1,0]", [&] {
            int failures = 0;
            std::vector<std::pair<FunctionDescriptor, int>> inputs;
            for (int k = 1; k <= 3; ++k) inputs.push_back({exponential(), k});
            inputs.push_back({shifted_power(-0.3, 1), 2});
            inputs.push_back({shifted_power(0.4, 2), 3});
            inputs.push_back({catalog_get("heaviside").descriptor, 1});
            for (const auto& [f, k] : inputs) {
              const MPlusSplit parts = mplus_split(f, k);
              for (const FunctionDescriptor* g : {&parts.f1, &parts.f2}) {
                if (!certify_k_monotone(*g, k, 500, seed).certified) ++failures;
                for (int j = 0; j <= 100; ++j) {
                  if ((*g)(-1.0 + j / 100.0) != 0.0) {
                    ++failures;
                    break;
                  }
                }
              }
            }
            return Verdict{failures == 0, Detail()("failures", failures)};
          });

  s.check("taylor_norm_bound",
          "||w T_{k-1}(f)||_p / ||w f||_p stays below 10 over catalog members and "
          "settles (last halving changes it by < 10%) as the members sharpen",
          "the weighted norm of the truncated Taylor polynomial is controlled by that of "
          "a k-monotone function",
          [&] {
            const std::vector<JacobiWeight> weights = {{0.0, 0.0}, {0.5, 1.0}};
            double worst = 0.0;
            double growth = 0.0;
            for (const JacobiWeight& w : weights) {
              for (const NormOrder p : {NormOrder(1.0), NormOrder(2.0), NormOrder::infinity()}) {
                // Fixed members.
                std::vector<std::pair<FunctionDescriptor, int>> members = {
                    {exponential(), 3},
                    {catalog_get("heaviside").descriptor, 1},
                    {catalog_get("truncated_power_origin", {{"k", 3}}).descriptor, 3}};
                for (const auto& [f, k] : members) {
                  const double t = weighted_norm(taylor_truncation(f, k).descriptor(), w, p);
                  worst = std::max(worst, t / weighted_norm(f, w, p));
                }
                // A family whose kink moves toward the expansion point.
                double prev = 0.0;
                double last = 0.0;
                for (int j = 1; j <= 8; ++j) {
                  const FunctionDescriptor f = shifted_power(-std::ldexp(1.0, -j), 2);
                  const double r =
                      weighted_norm(taylor_truncation(f, 3).descriptor(), w, p) /
                      weighted_norm(f, w, p);
                  worst = std::max(worst, r);
                  prev = last;
                  last = r;
                }
                growth = std::max(growth, std::abs(last / prev - 1.0));
              }
            }
            return Verdict{worst <= 10.0 && growth < 0.1,
                           Detail()("max_ratio", worst)("last_halving_change", growth)};
          });

  return s.take();
}

}  // namespace modlab::detail
