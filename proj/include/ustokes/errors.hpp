#pragma once

#include <stdexcept>
#include <string>

namespace ustokes {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define USTOKES_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

USTOKES_DEFINE_ERROR(InvalidIndex);
USTOKES_DEFINE_ERROR(DomainError);
USTOKES_DEFINE_ERROR(InvalidArgument);
/// A flow description violates one of its defining equations.
USTOKES_DEFINE_ERROR(SpecError);
/// A particular solution would leave the separable mode family (log or t*exp terms).
USTOKES_DEFINE_ERROR(ResonanceError);
USTOKES_DEFINE_ERROR(PreconditionError);
/// A 1/r pressure mode; its potential needs log r.
USTOKES_DEFINE_ERROR(MonopoleError);
USTOKES_DEFINE_ERROR(QuadratureBudgetError);
USTOKES_DEFINE_ERROR(GridTooCoarse);
USTOKES_DEFINE_ERROR(NotDivergenceFree);
USTOKES_DEFINE_ERROR(MonopoleFluxError);
USTOKES_DEFINE_ERROR(ExtrapolationError);
/// Raised when an exact operation is requested on a black-box field.
USTOKES_DEFINE_ERROR(NotAnalytic);
USTOKES_DEFINE_ERROR(ParseError);
/// A closed-loop integral of the candidate pressure gradient does not vanish.
class PathDependenceError : public Error {
 public:
  PathDependenceError(const std::string& what, double loop_value) : Error(what), loop_value_(loop_value) {}
  double loop_value() const { return loop_value_; }

 private:
  double loop_value_;
};

#undef USTOKES_DEFINE_ERROR

}  // namespace ustokes
