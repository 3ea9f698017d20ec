#pragma once

#include <stdexcept>
#include <string>

namespace meetpd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MEETPD_DEFINE_ERROR(Name) \
  class Name : public Error {     \
   public:                        \
    using Error::Error;           \
  }

// poset-core
MEETPD_DEFINE_ERROR(CycleError);
MEETPD_DEFINE_ERROR(DuplicateElement);
MEETPD_DEFINE_ERROR(UnknownElement);
MEETPD_DEFINE_ERROR(NotASemilattice);
MEETPD_DEFINE_ERROR(InvalidSubset);

// incidence-algebra
MEETPD_DEFINE_ERROR(PosetMismatch);
MEETPD_DEFINE_ERROR(NoLeastElement);
MEETPD_DEFINE_ERROR(NotInRelation);

// meet-matrix
MEETPD_DEFINE_ERROR(NotMeetClosed);
MEETPD_DEFINE_ERROR(NotLowerClosed);
MEETPD_DEFINE_ERROR(EvaluationError);
MEETPD_DEFINE_ERROR(DimensionMismatch);
MEETPD_DEFINE_ERROR(NotDiagonalForm);

// pd-analysis
MEETPD_DEFINE_ERROR(NegativeScalar);
MEETPD_DEFINE_ERROR(ComponentNotCertified);
MEETPD_DEFINE_ERROR(NumericalFailure);

// arithmetic
MEETPD_DEFINE_ERROR(ArityMismatch);
MEETPD_DEFINE_ERROR(UnknownBuiltin);

// io
MEETPD_DEFINE_ERROR(ParseError);

#undef MEETPD_DEFINE_ERROR

}  // namespace meetpd
