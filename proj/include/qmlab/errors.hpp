#pragma once

#include <stdexcept>
#include <string>

namespace qmlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroNormError : Error { using Error::Error; };
struct GridMismatchError : Error { using Error::Error; };
struct BoundaryLeakError : Error { using Error::Error; };
struct TruncationTooSmallError : Error { using Error::Error; };
struct ShapeMismatchError : Error { using Error::Error; };
struct ConfigInvalidError : Error { using Error::Error; };
struct InsufficientSnapshotsError : Error { using Error::Error; };
struct UnsupportedPotentialError : Error { using Error::Error; };
struct PhaseUnwrapError : Error { using Error::Error; };
struct NonpositiveMassError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct SchemaMismatchError : Error { using Error::Error; };

}  // namespace qmlab
