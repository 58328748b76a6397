#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "modlab/errors.hpp"
#include "modlab/extremals.hpp"
#include "modlab/moduli.hpp"
#include "modlab/parallel.hpp"
#include "modlab/rates.hpp"

using namespace modlab;

namespace {

UpsilonSpec spec(int k, double q, double p, double alpha = 0.0, double beta = 0.0) {
  UpsilonSpec s;
  s.k = k;
  s.q = NormOrder(q);
  s.p = std::isinf(p) ? NormOrder::infinity() : NormOrder(p);
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

SweepResult power_sweep(double a, double b, double noise, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-noise, noise);
  SweepResult s;
  for (int j = 3; j <= 10; ++j) {
    const double x = std::ldexp(1.0, -j);
    s.abscissae.push_back(x);
    s.values.push_back(3.0 * std::pow(x, a) * std::pow(std::abs(std::log(x)), b) *
                       (1.0 + u(rng)));
  }
  return s;
}

}  // namespace

TEST_CASE("upsilon cases") {
  const double d = 0.1;
  const double l = std::abs(std::log(d));
  CHECK(upsilon(spec(2, 1, kInf), d) == doctest::Approx(d * d));
  CHECK(upsilon(spec(2, 1, kInf, 0.0, 0.5), d) == doctest::Approx(d * d * l));
  CHECK(upsilon(spec(3, 1, 2), d) == doctest::Approx(d));
  CHECK(upsilon(spec(1, 1, kInf), d) == doctest::Approx(d));
  CHECK(upsilon(spec(1, 1, 2), d) == doctest::Approx(d * std::sqrt(l)));
  CHECK(upsilon(spec(1, 2, 3), d) == doctest::Approx(std::pow(d, 1.0 / 3.0)));
  CHECK_THROWS_AS((void)upsilon(spec(2, 2, 2), d), SpecError);
}

TEST_CASE("upsilon_exponents match upsilon") {
  for (const auto& s : {spec(2, 1, kInf, 0.5, 0.0), spec(1, 1, 2), spec(3, 2, 5)}) {
    const auto e = upsilon_exponents(s);
    const double d = 0.01;
    CHECK(upsilon(s, d) ==
          doctest::Approx(std::pow(d, e.exponent) * std::pow(std::abs(std::log(d)), e.log_power)));
  }
}

TEST_CASE("mpoly_rate examples") {
  const int n = 10;
  const double lg = std::log(11.0);
  const auto a = mpoly_rate(spec(2, 1, kInf), n);
  CHECK(a.lower == doctest::Approx(0.01));
  CHECK_FALSE(a.is_bracket());
  const auto b = mpoly_rate(spec(2, 1, kInf, 0.0, 0.5), n);
  CHECK(b.lower == doctest::Approx(0.01));
  CHECK(b.upper == doctest::Approx(0.01 * lg));
  const auto c = mpoly_rate(spec(1, 1, 2), n);
  CHECK(c.lower == doctest::Approx(0.1));
  CHECK(c.upper == doctest::Approx(0.1 * std::sqrt(lg)));
  CHECK(mpoly_rate(spec(1, 1, kInf), n).lower == doctest::Approx(0.1));
  CHECK(mpoly_rate(spec(3, 2, kInf), n).lower == doctest::Approx(0.1));
  CHECK_THROWS_AS((void)mpoly_rate(spec(2, 1, kInf, -0.2, 0.0), n), SpecError);
}

TEST_CASE("fit_rate recovers exact power laws") {
  const auto f = fit_rate(power_sweep(1.5, 0.0, 0.0, 1), RateModel::pure_power);
  CHECK(f.exponent == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f.constant == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.r_squared == doctest::Approx(1.0));
  const auto g = fit_rate(power_sweep(2.0, 1.0, 0.0, 1), RateModel::power_log);
  CHECK(g.exponent == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(g.log_power == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit_rate_auto(power_sweep(2.0, 1.0, 0.0, 1)).model == RateModel::power_log);
}

TEST_CASE("fit_rate with 2% noise") {
  const auto f = fit_rate(power_sweep(1.0, 0.0, 0.02, 42), RateModel::pure_power);
  CHECK(std::abs(f.exponent - 1.0) <= 0.03);
}

TEST_CASE("fit_rate rejects degenerate input") {
  SweepResult s = power_sweep(1.0, 0.0, 0.0, 1);
  s.abscissae.resize(4);
  s.values.resize(4);
  CHECK_THROWS_AS((void)fit_rate(s, RateModel::pure_power), DegenerateFitError);
  SweepResult z = power_sweep(1.0, 0.0, 0.0, 1);
  z.values[2] = 0.0;
  CHECK_THROWS_AS((void)fit_rate(z, RateModel::pure_power), DegenerateFitError);
}

TEST_CASE("dyadic deltas and default degrees") {
  const auto d = dyadic_deltas();
  REQUIRE(d.size() == 8);
  CHECK(d.front() == 0.125);
  CHECK(d.back() == std::ldexp(1.0, -10));
  CHECK(default_degrees() == std::vector<int>{4, 6, 8, 12, 16, 24, 32, 48, 64});
}

TEST_CASE("family sweep of heaviside decays like delta") {
  FamilySpec fs;
  fs.k = 1;
  fs.q = NormOrder(1.0);
  const auto sweep = family_sup_sweep([](double) { return catalog_get("heaviside"); }, fs,
                                      dyadic_deltas(3, 8));
  const auto fit = fit_rate(sweep, RateModel::pure_power);
  CHECK(std::abs(fit.exponent - 1.0) <= 0.15);
}

TEST_CASE("family sweep of a constant gives zeros") {
  FamilySpec fs;
  fs.k = 2;
  fs.q = NormOrder(2.0);
  const auto sweep =
      family_sup_sweep([](double) { return catalog_get("constant"); }, fs, dyadic_deltas(3, 6));
  for (const double v : sweep.values) CHECK(v <= 1e-10);
}

TEST_CASE("summarize_ratios") {
  CHECK(summarize_ratios({1, 2, 4, 8}, {1.0, 1.1, 0.9, 1.0}).passed);
  CHECK_FALSE(summarize_ratios({1, 2, 4, 8}, {1.0, 2.0, 4.0, 8.0}).passed);
}

TEST_CASE("jackson and inverse checks") {
  const auto poly = jackson_check(monomial_polynomial({1.0, 2.0}), 2, {}, NormOrder(2.0),
                                  {8, 16});
  CHECK(poly.vacuous);
  CHECK(poly.ratios.empty());
  const auto h = catalog_get("heaviside").descriptor;
  const auto j = jackson_check(h, 1, {}, NormOrder(1.0), {4, 8, 16, 32});
  CHECK(j.passed);
  // In L_2 the sum of E_i grows like delta^(-1/2) and matches the modulus.
  const auto inv = inverse_check(h, 1, {}, NormOrder(2.0), {0.125, 0.0625, 0.03125});
  CHECK(inv.passed);
  CHECK_THROWS_AS((void)inverse_check(h, 1, {}, NormOrder(1.0), {0.01}), InvalidArgumentError);
}

TEST_CASE("derivative transfer check") {
  const auto f = catalog_get("truncated_power_origin", {{"k", 3}}).descriptor;
  const auto c = derivative_transfer_check(f, 2, 1, {}, NormOrder(2.0), {0.125, 0.0625, 0.03125});
  CHECK(c.passed);
  CHECK_THROWS_AS((void)derivative_transfer_check(catalog_get("oscillating_step").descriptor, 2,
                                                  1, {}, NormOrder(1.0), {0.125}),
                  DerivativeUnavailableError);
}

TEST_CASE("embedding_check") {
  // g = 2x and f'' = 2: ||2x||_1 / ||2||_1 = 2 / 4.
  const auto r = embedding_check(monomial_polynomial({0.0, 0.0, 1.0}), 1, 0.0, 0.0, 0.0,
                                 NormOrder(1.0));
  CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-10));
  const auto c = embedding_check(constant_function(1.0), 0, 0.0, 0.0, 0.3, NormOrder(2.0));
  CHECK(c.vacuous);
  // alpha - gamma lies outside J_inf and g(1) = 3 != 0.
  CHECK_THROWS_AS((void)embedding_check(monomial_polynomial({0.0, 0.0, 0.0, 1.0}), 1, 0.0, 0.0,
                                        0.9, NormOrder::infinity()),
                  IntegrabilityError);
  CHECK_THROWS_AS((void)embedding_check(constant_function(1.0), 0, 0.0, 0.0, 1.0, NormOrder(1.0)),
                  InvalidArgumentError);
}

TEST_CASE("parallel_map keeps index order and rethrows the first error") {
  const auto v = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  CHECK_THROWS_WITH((void)parallel_map<int>(10,
                                            [](std::size_t i) -> int {
                                              if (i == 3) throw std::runtime_error("three");
                                              if (i == 7) throw std::runtime_error("seven");
                                              return 0;
                                            }),
                    "three");
}

TEST_CASE("worker_count honours the environment") {
  ::setenv("MODULUS_LAB_WORKERS", "3", 1);
  CHECK(worker_count() == 3);
  ::setenv("MODULUS_LAB_WORKERS", "junk", 1);
  CHECK(worker_count() >= 1);
  ::unsetenv("MODULUS_LAB_WORKERS");
  CHECK(worker_count() >= 1);
}
