#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace modlab {

/// Base of every numerical failure raised by the library. The CLI maps any
/// Error to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define MODLAB_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

MODLAB_DEFINE_ERROR(IntegrabilityError);
MODLAB_DEFINE_ERROR(SingularityError);
MODLAB_DEFINE_ERROR(DegenerateNodesError);
MODLAB_DEFINE_ERROR(DegenerateError);
MODLAB_DEFINE_ERROR(DerivativeUnavailableError);
MODLAB_DEFINE_ERROR(UnknownEntryError);
MODLAB_DEFINE_ERROR(ParamRangeError);
MODLAB_DEFINE_ERROR(SolverStallError);
MODLAB_DEFINE_ERROR(DivisionError);
MODLAB_DEFINE_ERROR(SpecError);
MODLAB_DEFINE_ERROR(DegenerateFitError);
MODLAB_DEFINE_ERROR(InvalidArgumentError);

#undef MODLAB_DEFINE_ERROR

}  // namespace modlab
