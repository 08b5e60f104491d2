#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

// Base for every failure raised by the library. Callers that only care about
// "something numerical went wrong" catch this; the harness maps it to exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HURWITZ_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

// transform
HURWITZ_DEFINE_ERROR(DegenerateFiber);
HURWITZ_DEFINE_ERROR(SingularFiber);
HURWITZ_DEFINE_ERROR(SectionFailed);
HURWITZ_DEFINE_ERROR(NoConventionFound);
// opcalc
HURWITZ_DEFINE_ERROR(PolarSingularity);
// gauge
HURWITZ_DEFINE_ERROR(IllConditionedFrame);
HURWITZ_DEFINE_ERROR(SingularAxis);
// separation
HURWITZ_DEFINE_ERROR(NotARoot);
// harness
HURWITZ_DEFINE_ERROR(ConfigInvalid);
HURWITZ_DEFINE_ERROR(IoError);

#undef HURWITZ_DEFINE_ERROR

}  // namespace hurwitz
