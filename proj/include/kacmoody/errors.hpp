#pragma once

#include <stdexcept>
#include <string>

namespace kacmoody {

// Base of every domain error raised by the library. The CLI maps these to
// exit code 1; anything else escaping is a usage error or a crash.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define KACMOODY_DEFINE_ERROR(Name)       \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

KACMOODY_DEFINE_ERROR(ParseError);
KACMOODY_DEFINE_ERROR(InternalInconsistency);
KACMOODY_DEFINE_ERROR(ResourceLimit);
KACMOODY_DEFINE_ERROR(SearchBudgetExceeded);
KACMOODY_DEFINE_ERROR(Undecided);
KACMOODY_DEFINE_ERROR(NotARoot);
KACMOODY_DEFINE_ERROR(NotPrenilpotent);
KACMOODY_DEFINE_ERROR(NonIntegralConstant);
KACMOODY_DEFINE_ERROR(NotAUnit);
KACMOODY_DEFINE_ERROR(DeniedDenominator);
KACMOODY_DEFINE_ERROR(NilpotencyCapExceeded);
KACMOODY_DEFINE_ERROR(IntegralityError);
KACMOODY_DEFINE_ERROR(NotProportional);
KACMOODY_DEFINE_ERROR(RelationFailed);
KACMOODY_DEFINE_ERROR(OutOfFixture);
KACMOODY_DEFINE_ERROR(NotInGroup);

#undef KACMOODY_DEFINE_ERROR

class InvalidGcm : public Error {
 public:
  enum class Reason { Shape, Diagonal, Positivity, ZeroSymmetry, Decomposable };

  InvalidGcm(Reason reason, int row, int col, const std::string& what)
      : Error(what), reason_(reason), row_(row), col_(col) {}

  Reason reason() const { return reason_; }
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  Reason reason_;
  int row_;
  int col_;
};

}  // namespace kacmoody
