#include <cmath>

#include "doctest.h"
#include "modlab/differences.hpp"
#include "modlab/errors.hpp"
#include "modlab/extremals.hpp"
#include "modlab/moduli.hpp"
#include "modlab/quadrature.hpp"
#include "oracles.hpp"

using namespace modlab;

namespace {

ModulusRequest request(int k, double delta, JacobiWeight w, NormOrder q) {
  ModulusRequest r;
  r.k = k;
  r.delta = delta;
  r.weight = w;
  r.q = q;
  return r;
}

}  // namespace

TEST_CASE("main part vanishes on polynomials of degree below k") {
  const FunctionDescriptor p = monomial_polynomial({1.0, 1.0, -0.5});
  for (const double q : {1.0, 2.0}) {
    const auto r = main_part_modulus(p, request(3, 0.1, {0.5, 0.5}, NormOrder(q)));
    CHECK(r.value <= 1e-10);
  }
}

TEST_CASE("heaviside main part against a measure oracle") {
  const auto f = catalog_get("heaviside").descriptor;
  const double delta = 0.1;
  const auto r = main_part_modulus(f, request(1, delta, {}, NormOrder(1.0)));
  // |Delta_{h phi}(f, x)| = 1 exactly when |x| <= h phi(x)/2; the measure
  // grows with h, so the supremum sits at h = delta.
  const double lim = 1.0 - 2.0 * delta * delta;
  const double measure = oracle::midpoint(
      [&](double x) { return std::abs(x) <= 0.5 * delta * phi(x) ? 1.0 : 0.0; }, -lim, lim,
      2000000);
  CHECK(r.value == doctest::Approx(measure).epsilon(0.05));
  CHECK(r.value == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("oscillating step keeps a main part bounded below") {
  const auto f = catalog_get("oscillating_step", {{"k", 1}, {"delta", 1.0 / 16}, {"p", kInf}});
  const auto r = main_part_modulus(f.descriptor, request(1, 1.0 / 16, {}, NormOrder(1.0)));
  CHECK(r.value >= 0.05);
}

TEST_CASE("boundary moduli vanish when the strip misses the support") {
  FunctionDescriptor bump;
  bump.eval = [](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; };
  bump.support = Interval{-0.5, 0.5};
  bump.breakpoints = {-0.5, 0.5};
  const auto req = request(1, 0.1, {}, NormOrder(1.0));
  CHECK(boundary_modulus(bump, req, BoundarySide::forward_at_minus_one).value == 0.0);
  CHECK(boundary_modulus(bump, req, BoundarySide::backward_at_plus_one).value == 0.0);
}

TEST_CASE("boundary modulus of the normalized spike scales like eps^(1/q-1/p)") {
  // Calibrate at the first delta, then require stability under halving.
  for (const auto& [k, q, p] : {std::tuple{2, 1.0, kInf}, std::tuple{2, 1.0, 2.0},
                                std::tuple{3, 2.0, kInf}}) {
    double first = 0.0;
    for (int j = 3; j <= 6; ++j) {
      const double delta = std::ldexp(1.0, -j);
      const double eps = 2.0 * k * k * delta * delta;
      const auto e = catalog_get("truncated_power", {{"k", k}, {"p", p}, {"epsilon", eps}});
      const double v =
          boundary_modulus(e.descriptor, request(k, delta, {}, NormOrder(q)),
                           BoundarySide::backward_at_plus_one)
              .value;
      const double ratio = v / std::pow(eps, 1.0 / q - (std::isinf(p) ? 0.0 : 1.0 / p));
      if (j == 3) first = ratio;
      CHECK(ratio > 0.0);
      CHECK(ratio / first == doctest::Approx(1.0).epsilon(0.5));
    }
  }
}

TEST_CASE("boundary moduli of x_+ match a dense-grid oracle") {
  // x_+ is 0 near -1 and linear near +1, so both second-order one-sided
  // differences vanish on strips of width 2k^2 delta^2 = 0.08.
  const auto f = catalog_get("truncated_power_origin", {{"k", 2}}).descriptor;
  const auto req = request(2, 0.1, {}, NormOrder(1.0));
  double oracle_value = 0.0;
  const double strip = 0.08;
  for (int i = 1; i <= 64; ++i) {
    const double h = strip * i / 64;
    oracle_value = std::max(
        oracle_value,
        oracle::midpoint([&](double x) { return std::abs(f(x + 2 * h) - 2 * f(x + h) + f(x)); },
                         -1.0, -1.0 + strip, 20000));
    oracle_value = std::max(
        oracle_value,
        oracle::midpoint([&](double x) { return std::abs(f(x) - 2 * f(x - h) + f(x - 2 * h)); },
                         1.0 - strip, 1.0, 20000));
  }
  const double fwd = boundary_modulus(f, req, BoundarySide::forward_at_minus_one).value;
  const double bwd = boundary_modulus(f, req, BoundarySide::backward_at_plus_one).value;
  CHECK(oracle_value <= 1e-12);
  CHECK(fwd <= 1e-12);
  CHECK(bwd <= 1e-12);
}

TEST_CASE("dt_modulus sums its components") {
  CHECK(combine({0.1, 0.0}, {0.02, 0.0}, {0.03, 0.0}).total == doctest::Approx(0.15));
  const auto r = dt_modulus(constant_function(3.0), request(2, 0.1, {0.5, 0.5}, NormOrder(2.0)));
  CHECK(r.total <= 1e-10);
  const auto h = dt_modulus(catalog_get("heaviside").descriptor, request(1, 0.1, {}, NormOrder(1.0)));
  CHECK(h.total == doctest::Approx(0.1).epsilon(0.05));
  CHECK(h.forward == 0.0);
  CHECK(h.backward == 0.0);
  CHECK(h.total == doctest::Approx(h.main + h.forward + h.backward));
}

TEST_CASE("main_part_norm of a single step against direct quadrature") {
  FunctionDescriptor f;
  f.eval = [](double x) { return std::exp(x); };
  const double h = 0.05;
  const double lim = 1.0 - 2.0 * 4.0 * h * h;
  const double direct = oracle::midpoint(
      [&](double x) {
        return std::abs(difference(f.eval, {2, h * phi(x), Direction::symmetric, {-1.0, 1.0}}, x));
      },
      -lim, lim);
  CHECK(main_part_norm(f, 2, h, {}, NormOrder(1.0)) == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("modulus request validation") {
  const auto f = catalog_get("heaviside").descriptor;
  CHECK_THROWS_AS((void)dt_modulus(f, request(1, 0.9, {}, NormOrder(1.0))), InvalidArgumentError);
  CHECK_THROWS_AS((void)dt_modulus(f, request(2, 0.3, {}, NormOrder(1.0))), InvalidArgumentError);
  CHECK_THROWS_AS((void)dt_modulus(f, request(1, 0.0, {}, NormOrder(1.0))), InvalidArgumentError);
}
