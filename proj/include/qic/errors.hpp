#pragma once

#include <stdexcept>
#include <string>

namespace qic {

// Root of every error raised by the library. Each failure mode has its own
// subclass so callers (and tests) can tell a trace violation from a PSD one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QIC_DEFINE_ERROR(Name)            \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

// matcore
QIC_DEFINE_ERROR(SizeError);
QIC_DEFINE_ERROR(ConvergenceError);
QIC_DEFINE_ERROR(HermiticityError);
QIC_DEFINE_ERROR(NotPsdError);
QIC_DEFINE_ERROR(NonFiniteError);

// qstate
QIC_DEFINE_ERROR(TraceError);
QIC_DEFINE_ERROR(NormError);
QIC_DEFINE_ERROR(RankError);
QIC_DEFINE_ERROR(WeightError);

// qinfo / encoding
QIC_DEFINE_ERROR(DistributionError);
QIC_DEFINE_ERROR(RangeError);
QIC_DEFINE_ERROR(EnsembleError);
QIC_DEFINE_ERROR(SearchError);

// transition
QIC_DEFINE_ERROR(PreconditionError);

// protosim
QIC_DEFINE_ERROR(ProtocolError);
QIC_DEFINE_ERROR(ModelViolation);
QIC_DEFINE_ERROR(ReductionError);
QIC_DEFINE_ERROR(SliceError);

// io
QIC_DEFINE_ERROR(FormatError);

#undef QIC_DEFINE_ERROR

}  // namespace qic
