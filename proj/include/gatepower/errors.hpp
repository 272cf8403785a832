#pragma once

#include <stdexcept>
#include <string>

namespace gatepower {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitianInput : Error { using Error::Error; };
struct NonOrthonormalBasis : Error { using Error::Error; };
struct NonUnitaryInput : Error { using Error::Error; };
struct UnknownGate : Error { using Error::Error; };
struct DecompositionFailed : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct FitDiverged : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct MissingMeasure : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace gatepower
