#pragma once

#include <stdexcept>
#include <string>

namespace matrad {

// Every library failure derives from Error; name() is the stable tag used
// in reports and by the command-line runner.
class Error : public std::runtime_error {
 public:
  Error(const char* name, const std::string& what)
      : std::runtime_error(std::string(name) + ": " + what), name_(name) {}
  const char* name() const noexcept { return name_; }

 private:
  const char* name_;
};

#define MATRAD_ERROR(Name)                                       \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

MATRAD_ERROR(RankDeficient)
MATRAD_ERROR(NotPSD)
MATRAD_ERROR(DomainError)
MATRAD_ERROR(EmptyDomain)
MATRAD_ERROR(NonFinite)
MATRAD_ERROR(OrderNotInWallachSet)
MATRAD_ERROR(NonIntegrable)
MATRAD_ERROR(DivergentIntegral)
MATRAD_ERROR(UnsupportedOrder)
MATRAD_ERROR(OddOrderUnsupported)
MATRAD_ERROR(ExistenceViolation)
MATRAD_ERROR(OrderNotAdmissible)
MATRAD_ERROR(UnsupportedDimension)
MATRAD_ERROR(PipelineNotClosedForm)
MATRAD_ERROR(OddKUnsupported)
MATRAD_ERROR(NoSuchCheck)

#undef MATRAD_ERROR

// Pole of a gamma factor. `factor` is the index j in the product
// Gamma(alpha - j/2), or -1 when the caller names the factor in `what`.
class PoleError : public Error {
 public:
  PoleError(int factor, const std::string& what)
      : Error("PoleError", what), factor_(factor) {}
  int factor() const noexcept { return factor_; }

 private:
  int factor_;
};

}  // namespace matrad
