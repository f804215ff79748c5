#pragma once

#include <stdexcept>
#include <string>

namespace qmet {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct SizeExceeded : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };
struct NegativeEigenvalue : Error { using Error::Error; };
struct SupportViolation : Error { using Error::Error; };
struct ZeroVariance : Error { using Error::Error; };
struct UnknownPreset : Error { using Error::Error; };
struct BadParameters : Error { using Error::Error; };
struct DegenerateComponent : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };
struct SpecParseError : Error { using Error::Error; };

} // namespace qmet
