#pragma once

#include <stdexcept>
#include <string>

namespace cocycle_lab {

enum class ErrorKind {
    // numkernel
    NotHermitian,
    DidNotConverge,
    DegenerateLeadingEigenvalue,
    DimensionMismatch,
    // groups
    NotAssociative,
    NoIdentity,
    NotBijectiveRows,
    NotUnitary,
    NotHomomorphism,
    ScalarAtNonIdentity,
    // cohomology
    GroupMismatch,
    NonCommutingPair,
    GroupTooLarge,
    SnapFailed,
    // projrep
    CocycleMismatch,
    CocycleValueMismatch,
    NonIntegerMultiplicity,
    DegenerateSplit,
    DimensionOverflow,
    // bounds
    NotFoundWithinCap,
    // twisted
    Mismatch,
    IndexOutOfRange,
    NotSubWindow,
    NotCovariant,
    // mps
    NotInjective,
    NotSymmetric,
    NotProjectivelyConsistent,
    UnknownName,
    // io / cli
    InvalidInput,
    Usage,
};

const char* to_string(ErrorKind kind) noexcept;

/// Numerical failures are the ones that can disappear with a different seed or tolerance;
/// everything else means the inputs themselves are unacceptable.
bool is_numerical_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cocycle_lab
