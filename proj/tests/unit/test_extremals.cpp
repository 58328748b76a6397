#include <cmath>

#include "doctest.h"
#include "modlab/differences.hpp"
#include "modlab/errors.hpp"
#include "modlab/extremals.hpp"
#include "modlab/quadrature.hpp"
#include "oracles.hpp"

using namespace modlab;

TEST_CASE("heaviside values") {
  const auto e = catalog_get("heaviside");
  CHECK(e.descriptor(-0.3) == 0.0);
  CHECK(e.descriptor(0.0) == 1.0);
  CHECK(e.descriptor(0.8) == 1.0);
  CHECK(e.order == 1);
}

TEST_CASE("truncated_power is a unit spike at +1") {
  const auto e = catalog_get("truncated_power", {{"k", 2}, {"epsilon", 0.08}});
  CHECK(e.descriptor(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.descriptor(0.9) == 0.0);
  CHECK(weighted_norm(e.descriptor, e.norm_weight, e.norm_p) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(certify_k_monotone(e.descriptor, 2).certified);
}

TEST_CASE("truncated_power norm in L_2 with a weight") {
  const double eps = 0.05;
  const auto e = catalog_get("truncated_power",
                             {{"k", 3}, {"epsilon", eps}, {"beta", 0.5}, {"p", 2}});
  const double oracle_value = std::sqrt(oracle::midpoint(
      [&](double x) {
        const double v = e.descriptor(x) * std::sqrt(1.0 - x);
        return v * v;
      },
      1.0 - eps, 1.0));
  const double norm = weighted_norm(e.descriptor, e.norm_weight, e.norm_p);
  CHECK(norm == doctest::Approx(oracle_value).epsilon(1e-6));
  // Unit sphere up to the shape constant ||w (t)_+^2||_2 on [0, 1].
  CHECK(norm == doctest::Approx(std::sqrt(oracle::midpoint(
                    [](double t) { return t * t * t * t * (1.0 - t); }, 0.0, 1.0)))
                    .epsilon(1e-6));
}

TEST_CASE("oscillating_step norms against a dense oracle") {
  const auto e = catalog_get("oscillating_step", {{"k", 1}, {"delta", 1.0 / 16}});
  const auto& f = e.descriptor;
  for (const double q : {1.0, 2.0}) {
    const double oracle_value = std::pow(
        oracle::midpoint([&](double x) { return std::pow(std::abs(f(x)), q); }, -1.0, 1.0,
                         400000),
        1.0 / q);
    CHECK(weighted_norm(f, {}, NormOrder(q)) == doctest::Approx(oracle_value).epsilon(1e-4));
  }
  CHECK(f(0.01) == 1.0);
  CHECK(f(0.07) == -1.0);
  CHECK(f(0.05) == 0.0);
  CHECK(f(-0.2) == 0.0);
}

TEST_CASE("constant and truncated_power_origin entries") {
  CHECK(catalog_get("constant", {{"c", 2.5}}).descriptor(0.4) == 2.5);
  const auto t = catalog_get("truncated_power_origin", {{"k", 3}});
  CHECK(t.descriptor(0.5) == doctest::Approx(0.25));
  CHECK(t.descriptor(-0.5) == 0.0);
}

TEST_CASE("chebyshev_partition knots") {
  const auto p2 = chebyshev_partition(2);
  REQUIRE(p2.knots.size() == 3);
  CHECK(p2.knots[0] == doctest::Approx(1.0));
  CHECK(std::abs(p2.knots[1]) < 1e-15);
  CHECK(p2.knots[2] == doctest::Approx(-1.0));
  const auto p4 = chebyshev_partition(4);
  CHECK(p4.knots[1] == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(p4.length(1) == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0));
  const auto p100 = chebyshev_partition(100);
  for (int i = 1; i < 100; ++i) {
    const double r = p100.length(i + 1) / p100.length(i);
    CHECK(r <= 3.0);
    CHECK(r >= 1.0 / 3.0);
  }
  CHECK_THROWS_AS((void)chebyshev_partition(1), ParamRangeError);
}

TEST_CASE("d_interval endpoints solve x +- h phi(x)/2 = t") {
  const Interval d = d_interval(0.0, 0.2);
  CHECK(d.lo == doctest::Approx(-0.1 / std::sqrt(1.01)).epsilon(1e-12));
  CHECK(d.hi == doctest::Approx(0.1 / std::sqrt(1.01)).epsilon(1e-12));
  const Interval e = d_interval(0.6, 0.1);
  CHECK(e.lo + 0.05 * phi(e.lo) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(e.hi - 0.05 * phi(e.hi) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS((void)catalog_get("nonexistent"), UnknownEntryError);
  CHECK_THROWS_AS((void)catalog_get("heaviside", {{"bogus", 1}}), ParamRangeError);
  CHECK_THROWS_AS((void)catalog_get("truncated_power", {{"epsilon", 2.0}}), ParamRangeError);
  CHECK_THROWS_AS((void)catalog_get("oscillating_step", {{"delta", 0.9}}), ParamRangeError);
}

TEST_CASE("catalog_list names every entry once") {
  const auto list = catalog_list();
  CHECK(list.size() >= 8);
  for (const auto& info : list) {
    CHECK_NOTHROW((void)catalog_get(info.name));
    CHECK_FALSE(info.defining_result.empty());
  }
}
