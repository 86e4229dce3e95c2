#pragma once

#include <stdexcept>
#include <string>

namespace ellgen {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ELLGEN_DEFINE_ERROR(Name, Base)   \
  class Name : public Base {              \
   public:                                \
    using Base::Base;                     \
  }

// arith
ELLGEN_DEFINE_ERROR(LevelMismatch, Error);
ELLGEN_DEFINE_ERROR(DivisionByZero, Error);

// series
ELLGEN_DEFINE_ERROR(PrecMismatch, Error);
ELLGEN_DEFINE_ERROR(NonUnitConstantTerm, Error);
ELLGEN_DEFINE_ERROR(BadConstantTerm, Error);
ELLGEN_DEFINE_ERROR(FactorNotUnitModQn, Error);

// genus
ELLGEN_DEFINE_ERROR(InsufficientXPrecision, Error);

// input parsing; everything below ParseError maps to exit code 3 in the CLI
ELLGEN_DEFINE_ERROR(ParseError, Error);
ELLGEN_DEFINE_ERROR(BadChernData, ParseError);
ELLGEN_DEFINE_ERROR(BadSplitChernData, ParseError);

// modforms
ELLGEN_DEFINE_ERROR(IncompatibleParity, Error);
ELLGEN_DEFINE_ERROR(BadLevelDivisibility, Error);
ELLGEN_DEFINE_ERROR(NonPrimitiveCharacter, Error);
ELLGEN_DEFINE_ERROR(ExcludedEisenstein, Error);
ELLGEN_DEFINE_ERROR(UnsupportedLevel, Error);
ELLGEN_DEFINE_ERROR(SpanFailure, Error);
ELLGEN_DEFINE_ERROR(PrecisionInsufficient, Error);

#undef ELLGEN_DEFINE_ERROR

}  // namespace ellgen
