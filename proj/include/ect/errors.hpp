#pragma once

#include <stdexcept>
#include <string>

namespace ect {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ECT_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// planar-embed
ECT_DEFINE_ERROR(MissingCoordinates);
ECT_DEFINE_ERROR(EulerCheckFailed);
// compression
ECT_DEFINE_ERROR(DegenerateGraph);
ECT_DEFINE_ERROR(SameParityParallel);
ECT_DEFINE_ERROR(NotACycle);
// matching / oracle
ECT_DEFINE_ERROR(TooLarge);
// pocket-tiling
ECT_DEFINE_ERROR(NoEvenCycle);
ECT_DEFINE_ERROR(SharedBoundaryNotPath);
ECT_DEFINE_ERROR(QuasiPerfectViolation);
ECT_DEFINE_ERROR(PseudoPocketWithoutEvenCycle);
// primal-dual
ECT_DEFINE_ERROR(DesignationFlip);
ECT_DEFINE_ERROR(ZeroRateDeadlock);
ECT_DEFINE_ERROR(NonTermination);
ECT_DEFINE_ERROR(InfeasibleInput);
ECT_DEFINE_ERROR(RatioViolation);
// generators / io
ECT_DEFINE_ERROR(OddK);
ECT_DEFINE_ERROR(InvalidParameter);
ECT_DEFINE_ERROR(ParseError);

#undef ECT_DEFINE_ERROR

}  // namespace ect
