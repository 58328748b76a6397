#include "modlab/verify.hpp"

#include <exception>

#include "modlab/errors.hpp"
#include "verify_support.hpp"

namespace modlab {

namespace detail {

void SuiteBuilder::check(std::string name, std::string invariant, std::string citation,
                         const std::function<Verdict()>& body) {
  CheckOutcome o;
  o.suite = suite_;
  o.name = std::move(name);
  o.invariant = std::move(invariant);
  o.citation = std::move(citation);
  try {
    Verdict v = body();
    o.passed = v.passed;
    o.detail = std::move(v.detail);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail = std::string("threw ") + e.what();
  }
  out_.push_back(std::move(o));
}

}  // namespace detail

std::vector<std::string> suite_names() {
  return {"core", "differences", "moduli", "kernels", "extremals", "approx", "rates"};
}

std::vector<CheckOutcome> run_suite(const std::string& name, std::uint64_t seed) {
  using Runner = std::vector<CheckOutcome> (*)(std::uint64_t);
  auto runner_for = [](const std::string& s) -> Runner {
    if (s == "core") return detail::verify_core;
    if (s == "differences") return detail::verify_differences;
    if (s == "moduli") return detail::verify_moduli;
    if (s == "kernels") return detail::verify_kernels;
    if (s == "extremals") return detail::verify_extremals;
    if (s == "approx") return detail::verify_approx;
    if (s == "rates") return detail::verify_rates;
    return nullptr;
  };
  if (name == "all") {
    std::vector<CheckOutcome> all;
    for (const auto& s : suite_names()) {
      auto part = runner_for(s)(seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  const Runner r = runner_for(name);
  if (r == nullptr) throw InvalidArgumentError("unknown suite '" + name + "'");
  return r(seed);
}

}  // namespace modlab
