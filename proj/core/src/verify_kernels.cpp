#include <algorithm>
#include <cmath>

#include "modlab/kernels.hpp"
#include "modlab/parallel.hpp"
#include "modlab/quadrature.hpp"
#include "verify_support.hpp"

namespace modlab::detail {

std::vector<CheckOutcome> verify_kernels(std::uint64_t seed) {
  SuiteBuilder s("kernels", seed);

  s.check("psi_inverts_shift",
          "max over a 100 x 20 (x, lambda) grid of |psi(lambda, x + lambda phi(x)) - x| "
          "is at most 1e-10 for |lambda| <= sqrt(2 eta), |x| <= 1 - eta",
          "x -> x + lambda phi(x) is increasing with inverse psi on the inner window", [&] {
            double worst = 0.0;
            for (const double eta : {0.01, 0.08, 0.5}) {
              const double lmax = std::sqrt(2.0 * eta);
              for (int i = 0; i < 100; ++i) {
                const double x = -1.0 + eta + (2.0 - 2.0 * eta) * i / 99.0;
                for (int j = 0; j < 20; ++j) {
                  const double lambda = -lmax + 2.0 * lmax * j / 19.0;
                  const double y = x + lambda * phi(x);
                  worst = std::max(worst, std::abs(psi(lambda, y) - x));
                }
              }
            }
            return Verdict{worst <= 1e-10, Detail()("max_error", worst)};
          });

  s.check("psi_derivative_range",
          "d psi / dy lies in [1/2, 2] for |lambda| <= sqrt(eta/2) on the image of "
          "[-1+eta, 1-eta]",
          "the shift x -> x + lambda phi(x) has derivative between 1/2 and 2", [&] {
            double lo = kInf;
            double hi = -kInf;
            for (const double eta : {0.01, 0.08, 0.3}) {
              const double lmax = std::sqrt(eta / 2.0);
              const double shift = std::sqrt(2.0 * eta - eta * eta);
              for (int j = 0; j < 21; ++j) {
                const double lambda = -lmax + 2.0 * lmax * j / 20.0;
                const double a = -1.0 + eta + lambda * shift;
                const double b = 1.0 - eta + lambda * shift;
                for (int i = 0; i <= 200; ++i) {
                  const double d = psi_derivative(lambda, a + (b - a) * i / 200.0);
                  lo = std::min(lo, d);
                  hi = std::max(hi, d);
                }
              }
            }
            return Verdict{lo >= 0.5 && hi <= 2.0, Detail()("min", lo)("max", hi)};
          });

  s.check("phi_endpoint_bound",
          "phi(x) <= sqrt(2/eta) (1 - |x|) for |x| <= 1 - eta, eta in {0.01, 0.1}",
          "phi is comparable to the distance to the nearer endpoint away from +-1", [&] {
            double worst = -kInf;
            for (const double eta : {0.01, 0.1}) {
              for (int i = 0; i <= 4000; ++i) {
                const double x = -(1.0 - eta) + 2.0 * (1.0 - eta) * i / 4000.0;
                worst = std::max(worst, phi(x) - std::sqrt(2.0 / eta) * (1.0 - std::abs(x)));
              }
            }
            return Verdict{worst <= 1e-15, Detail()("max_excess", worst)};
          });

  s.check("shifted_distance_comparable",
          "(1-x)/4 <= 1-x+lambda phi(x) <= 2(1-x) and the mirrored bound for "
          "|lambda| <= sqrt(eta)/2, |x| <= 1-eta",
          "a shift by lambda phi(x) changes the distance to +-1 by at most a factor 4",
          [&] {
            int violations = 0;
            for (const double eta : {0.001, 0.01, 0.1, 0.5}) {
              const double lmax = 0.5 * std::sqrt(eta);
              for (int j = 0; j <= 20; ++j) {
                const double lambda = -lmax + 2.0 * lmax * j / 20.0;
                for (int i = 0; i <= 400; ++i) {
                  const double x = -(1.0 - eta) + 2.0 * (1.0 - eta) * i / 400.0;
                  const double up = 1.0 - x + lambda * phi(x);
                  const double dn = 1.0 + x + lambda * phi(x);
                  if (up < (1.0 - x) / 4.0 || up > 2.0 * (1.0 - x)) ++violations;
                  if (dn < (1.0 + x) / 4.0 || dn > 2.0 * (1.0 + x)) ++violations;
                }
              }
            }
            return Verdict{violations == 0, Detail()("violations", violations)};
          });

  s.check("kernel_bound_stable",
          "sup_y |A_k(y,h)| / (h^k theta^(2 beta - k)) is finite for h = 2^-4..2^-10 and "
          "changes by < 10% between the two finest levels, (k, beta) in {1,2,3} x "
          "{-0.25, 0, 0.5, 1}",
          "|A_k(y,h)| <= c h^k theta^(2 beta - k)", [&] {
            struct Cell {
              int k;
              double beta;
            };
            std::vector<Cell> cells;
            for (int k = 1; k <= 3; ++k)
              for (const double beta : {-0.25, 0.0, 0.5, 1.0}) cells.push_back({k, beta});
            const auto changes = parallel_map<double>(cells.size(), [&](std::size_t i) {
              double prev = 0.0;
              double change = 0.0;
              for (int j = 4; j <= 10; ++j) {
                const double r =
                    kernel_sup_ratio(cells[i].k, cells[i].beta, std::ldexp(1.0, -j)).ratio;
                if (!std::isfinite(r)) return kInf;
                if (j == 10) change = std::abs(r - prev) / prev;
                prev = r;
              }
              return change;
            });
            const double worst = *std::max_element(changes.begin(), changes.end());
            return Verdict{worst < 0.1, Detail()("max_rel_change", worst)};
          });

  s.check("change_of_variables",
          "int_{-1+eta}^{1-eta} g(x) f(x + lambda phi(x)) dx equals the psi-substituted "
          "integral to 0.1% for f = indicator of [0,1], g = w_{1/2,1/2}, eta = 0.08, "
          "lambda = 0.1",
          "change of variables y = x + lambda phi(x)", [&] {
            const double eta = 0.08;
            const double lambda = 0.1;
            auto f = [](double y) { return y >= 0.0 ? 1.0 : 0.0; };
            auto g = [](double x) { return phi(x); };
            const NormOrder one(1.0);
            Integrand left;
            left.g = [&](double x) { return g(x) * f(x + lambda * phi(x)); };
            left.breakpoints = {psi(lambda, 0.0)};
            const double lhs = integrand_norm(left, one, {-1.0 + eta, 1.0 - eta});
            const double shift = lambda * std::sqrt(2.0 * eta - eta * eta);
            Integrand right;
            right.g = [&](double y) {
              return f(y) * g(psi(lambda, y)) * psi_derivative(lambda, y);
            };
            right.breakpoints = {0.0};
            const double rhs =
                integrand_norm(right, one, {-1.0 + eta + shift, 1.0 - eta + shift});
            const double rel = std::abs(lhs - rhs) / lhs;
            return Verdict{rel <= 1e-3, Detail()("lhs", lhs)("rhs", rhs)("rel_error", rel)};
          });

  return s.take();
}

}  // namespace modlab::detail
