#include "dar/error.hpp"

namespace dar {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DegenerateSeries: return "DegenerateSeries";
    case ErrorKind::SingularTerm: return "SingularTerm";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::SingularSigma: return "SingularSigma";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace dar
