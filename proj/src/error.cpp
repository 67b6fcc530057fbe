#include "stlopt/error.hpp"

namespace stlopt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::InvalidInterval: return "invalid interval";
    case ErrorCode::InsufficientHorizon: return "insufficient horizon";
    case ErrorCode::UnknownChannel: return "unknown channel";
    case ErrorCode::UnalignedTime: return "unaligned time";
    case ErrorCode::EmptyWindow: return "empty window";
    case ErrorCode::NestedTemporalAvg: return "nested temporal unsupported by avg semantics";
    case ErrorCode::UntilAvg: return "until unsupported by avg semantics";
    case ErrorCode::MissingAgmScale: return "missing agm scale for channel";
    case ErrorCode::AgmDomain: return "agm input out of [-1,1]";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace stlopt
