#pragma once

#include <stdexcept>
#include <string>

namespace g2lab {

// All library failures derive from this so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDivisor : Error { using Error::Error; };
struct NotImaginary : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct DegreeUnderflow : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct BadTriple : Error { using Error::Error; };
struct SingularMetric : Error { using Error::Error; };
struct LeftDomain : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SignatureMismatch : Error { using Error::Error; };
struct ZeroReference : Error { using Error::Error; };
struct NormDrift : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };
struct BadConfig : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace g2lab
