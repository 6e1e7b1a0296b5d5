#pragma once

#include <stdexcept>
#include <string>

namespace skewtent {

// Base class for everything the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct SlopeOutOfRange : Error { using Error::Error; };
struct NotSelfMap : Error { using Error::Error; };
struct NotRenormalizable : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };
struct SlopeTooSmall : Error { using Error::Error; };
struct ZeroMass : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotExpanding : Error { using Error::Error; };
struct InvalidTarget : Error { using Error::Error; };
struct BracketFailure : Error { using Error::Error; };
struct NoRootInUnitInterval : Error { using Error::Error; };
struct LapOverflow : Error { using Error::Error; };

}  // namespace skewtent
