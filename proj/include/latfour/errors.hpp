#pragma once

#include <stdexcept>
#include <string>

namespace latfour {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generator matrix is (numerically) singular.
struct SingularGenerator : Error { using Error::Error; };

/// A frequency search box would enumerate more candidates than the cap allows.
struct TruncationOverflow : Error { using Error::Error; };

/// Requested band does not fit the sampling grid (2K+1 > N).
struct BandExceedsGrid : Error { using Error::Error; };

/// Exponent outside the admissible range of the requested norm or check.
struct BadExponent : Error { using Error::Error; };

/// Exponent pair (p,q) with 1/p - 1/q < 0 where a nonnegative gap is required.
struct BadExponentPair : Error { using Error::Error; };

/// A weight value is missing for a dual point present in the spectrum.
struct MissingWeight : Error { using Error::Error; };

/// Tiling search box too small to decide coverage of a sample point.
struct InsufficientShiftRadius : Error { using Error::Error; };

/// Invalid experiment configuration (bad flag, key, or input file).
struct ConfigError : Error { using Error::Error; };

} // namespace latfour
