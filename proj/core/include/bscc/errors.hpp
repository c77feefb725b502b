#pragma once

#include <stdexcept>
#include <string>

namespace bscc {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define BSCC_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& msg) : Error(msg) {}      \
  }

BSCC_DEFINE_ERROR(InvalidNodes);             // non-increasing or duplicate node sets
BSCC_DEFINE_ERROR(TooFewNodes);              // fewer points than the construction needs
BSCC_DEFINE_ERROR(IndexError);               // basis/coefficient index out of range
BSCC_DEFINE_ERROR(DomainError);              // query point outside the knot span
BSCC_DEFINE_ERROR(DegreeError);              // operation needs a higher spline degree
BSCC_DEFINE_ERROR(ShapeError);               // mismatched vector/matrix dimensions
BSCC_DEFINE_ERROR(SingularMatrix);           // pivot below tolerance during factorization
BSCC_DEFINE_ERROR(ReconstructionInfeasible); // fewer than 4 survivor results
BSCC_DEFINE_ERROR(ExtrapolationError);       // evaluation point outside survivor span
BSCC_DEFINE_ERROR(NumericalOverflow);        // non-finite value produced
BSCC_DEFINE_ERROR(InvalidCount);             // node-count request out of range
BSCC_DEFINE_ERROR(InvalidRange);             // empty or inverted interval
BSCC_DEFINE_ERROR(InvalidStragglerCount);    // straggler count breaks feasibility
BSCC_DEFINE_ERROR(DegenerateReference);      // relative error against an all-zero reference
BSCC_DEFINE_ERROR(MissingInput);             // required bound input not supplied
BSCC_DEFINE_ERROR(InvalidInput);             // malformed argument or config entry
BSCC_DEFINE_ERROR(IoError);                  // file read/write failure

#undef BSCC_DEFINE_ERROR

}  // namespace bscc
