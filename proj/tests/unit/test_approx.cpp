#include <cmath>
#include <vector>

#include "doctest.h"
#include "modlab/approx.hpp"
#include "modlab/errors.hpp"
#include "modlab/extremals.hpp"
#include "oracles.hpp"

using namespace modlab;

TEST_CASE("polynomials are reproduced exactly") {
  const FunctionDescriptor p = monomial_polynomial({0.3, -1.0, 0.0, 2.0});
  for (const double q : {1.0, 2.0, 3.0, kInf}) {
    const auto r = best_approx(p, 3, {0.5, 0.2}, std::isinf(q) ? NormOrder::infinity()
                                                               : NormOrder(q));
    CHECK(r.error < 1e-9);
  }
}

TEST_CASE("sup-norm examples") {
  const FunctionDescriptor x = monomial_polynomial({0.0, 1.0});
  CHECK(best_approx(x, 0, {}, NormOrder::infinity()).error == doctest::Approx(1.0).epsilon(1e-8));
  const FunctionDescriptor x2 = monomial_polynomial({0.0, 0.0, 1.0});
  const auto r = best_approx(x2, 1, {}, NormOrder::infinity());
  // By symmetry the best line is a constant c; minimize max |x^2 - c| over c.
  auto err = [](double c) {
    return oracle::dense_max([c](double t) { return std::abs(t * t - c); }, -1.0, 1.0, 20000);
  };
  const double c = oracle::golden_min(err, -1.0, 2.0);
  CHECK(r.error == doctest::Approx(err(c)).epsilon(1e-6));
  CHECK(r.error == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.residual_stats.alternation_count >= 3);
}

TEST_CASE("L_4 constant approximation of x") {
  const FunctionDescriptor x = monomial_polynomial({0.0, 1.0});
  const auto r = best_approx(x, 0, {}, NormOrder(4.0));
  CHECK(r.error == doctest::Approx(std::pow(0.4, 0.25)).epsilon(1e-6));
}

TEST_CASE("L_3 linear approximation of |x| against a golden-section oracle") {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::abs(x); };
  f.breakpoints = {0.0};
  auto cost = [](double c) {
    return oracle::midpoint([c](double t) { return std::pow(std::abs(std::abs(t) - c), 3.0); },
                            -1.0, 1.0, 20000);
  };
  const double c = oracle::golden_min(cost, 0.0, 1.0);
  const double want = std::cbrt(cost(c));
  const auto r = best_approx(f, 1, {}, NormOrder(3.0));
  CHECK(r.error == doctest::Approx(want).epsilon(1e-5));
  CHECK(r.error == doctest::Approx(std::cbrt(1.0 / 16.0)).epsilon(1e-5));
}

TEST_CASE("L_1 approximation of heaviside by constants") {
  // Any c in [0, 1] gives ||H - c||_1 = c + (1 - c) = 1.
  const auto h = catalog_get("heaviside").descriptor;
  CHECK(best_approx(h, 0, {}, NormOrder(1.0)).error == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("L_2 error of e^x against a Gram oracle") {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::exp(x); };
  // Orthogonal projection onto span{1, x}: c0 = sinh(1), c1 = 3/e.
  const double s = std::sinh(1.0);
  const double c1 = 3.0 / std::exp(1.0);
  const double want = std::sqrt(oracle::midpoint(
      [&](double x) {
        const double d = std::exp(x) - s - c1 * x;
        return d * d;
      },
      -1.0, 1.0));
  CHECK(best_approx(f, 1, {}, NormOrder(2.0)).error == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("irls agrees with least squares at q = 2") {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::exp(x) * std::sin(2.0 * x); };
  const double ls = best_approx(f, 4, {0.5, 0.5}, NormOrder(2.0)).error;
  const double ir = irls_approx(f, 4, {0.5, 0.5}, NormOrder(2.0)).error;
  CHECK(ir == doctest::Approx(ls).epsilon(1e-6));
}

TEST_CASE("remez_ratio examples") {
  const ChebyshevPoly one = ChebyshevPoly::from_monomial({1.0});
  CHECK(remez_ratio(one, std::nullopt, {}, NormOrder(1.0)).ratio == 1.0);
  const auto r = remez_ratio(one, Interval{0.9, 1.0}, {}, NormOrder(1.0));
  CHECK(r.ratio == doctest::Approx(2.0 / 1.9).epsilon(1e-10));
  CHECK(r.capacity == doctest::Approx(std::acos(0.9)).epsilon(1e-8));
  const ChebyshevPoly x = ChebyshevPoly::from_monomial({0.0, 1.0});
  CHECK_THROWS_AS((void)remez_ratio(x, Interval{-1.0, 1.0}, {}, NormOrder(1.0)), DivisionError);
}

TEST_CASE("sign_changes") {
  const std::vector<double> grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
  CHECK(sign_changes([](double) { return 1.0; }, grid) == 0);
  CHECK(sign_changes([](double x) { return x; }, grid) == 1);
  CHECK(sign_changes([](double x) { return std::cos(3.0 * x); }, grid) == 2);
}

TEST_CASE("best-approximation residual alternates at least n + 2 times") {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::exp(x); };
  for (const int n : {2, 5, 8}) {
    const auto r = best_approx(f, n, {}, NormOrder::infinity());
    CHECK(r.residual_stats.alternation_count >= n + 2);
  }
}

TEST_CASE("best_approx rejects bad arguments") {
  const FunctionDescriptor x = monomial_polynomial({0.0, 1.0});
  CHECK_THROWS_AS((void)best_approx(x, -1, {}, NormOrder(2.0)), InvalidArgumentError);
  CHECK_THROWS_AS((void)best_approx(x, 2, {-1.5, 0.0}, NormOrder(1.0)), IntegrabilityError);
}
