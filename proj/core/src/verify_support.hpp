#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modlab/verify.hpp"

namespace modlab::detail {

struct Verdict {
  bool passed = false;
  std::string detail;
};

/// Collects outcomes of one suite; a check that throws is recorded as failed.
class SuiteBuilder {
 public:
  SuiteBuilder(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), seed_(seed) {}

  void check(std::string name, std::string invariant, std::string citation,
             const std::function<Verdict()>& body);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::vector<CheckOutcome> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::uint64_t seed_;
  std::vector<CheckOutcome> out_;
};

/// "key=value" pairs joined by spaces, numbers with 6 significant digits.
class Detail {
 public:
  Detail() { os_.precision(6); }
  template <class T>
  Detail& operator()(const char* key, const T& value) {
    if (!first_) os_ << ' ';
    first_ = false;
    os_ << key << '=' << value;
    return *this;
  }
  [[nodiscard]] std::string str() const { return os_.str(); }
  operator std::string() const { return str(); }

 private:
  std::ostringstream os_;
  bool first_ = true;
};

std::vector<CheckOutcome> verify_core(std::uint64_t seed);
std::vector<CheckOutcome> verify_differences(std::uint64_t seed);
std::vector<CheckOutcome> verify_moduli(std::uint64_t seed);
std::vector<CheckOutcome> verify_kernels(std::uint64_t seed);
std::vector<CheckOutcome> verify_extremals(std::uint64_t seed);
std::vector<CheckOutcome> verify_approx(std::uint64_t seed);
std::vector<CheckOutcome> verify_rates(std::uint64_t seed);

}  // namespace modlab::detail
