#include "cocycle_lab/error.hpp"

namespace cocycle_lab {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::DidNotConverge: return "DidNotConverge";
        case ErrorKind::DegenerateLeadingEigenvalue: return "DegenerateLeadingEigenvalue";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotAssociative: return "NotAssociative";
        case ErrorKind::NoIdentity: return "NoIdentity";
        case ErrorKind::NotBijectiveRows: return "NotBijectiveRows";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotHomomorphism: return "NotHomomorphism";
        case ErrorKind::ScalarAtNonIdentity: return "ScalarAtNonIdentity";
        case ErrorKind::GroupMismatch: return "GroupMismatch";
        case ErrorKind::NonCommutingPair: return "NonCommutingPair";
        case ErrorKind::GroupTooLarge: return "GroupTooLarge";
        case ErrorKind::SnapFailed: return "SnapFailed";
        case ErrorKind::CocycleMismatch: return "CocycleMismatch";
        case ErrorKind::CocycleValueMismatch: return "CocycleValueMismatch";
        case ErrorKind::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
        case ErrorKind::DegenerateSplit: return "DegenerateSplit";
        case ErrorKind::DimensionOverflow: return "DimensionOverflow";
        case ErrorKind::NotFoundWithinCap: return "NotFoundWithinCap";
        case ErrorKind::Mismatch: return "Mismatch";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NotSubWindow: return "NotSubWindow";
        case ErrorKind::NotCovariant: return "NotCovariant";
        case ErrorKind::NotInjective: return "NotInjective";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NotProjectivelyConsistent: return "NotProjectivelyConsistent";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

bool is_numerical_failure(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DidNotConverge:
        case ErrorKind::DegenerateLeadingEigenvalue:
        case ErrorKind::DegenerateSplit:
        case ErrorKind::NonIntegerMultiplicity:
        case ErrorKind::NotProjectivelyConsistent:
        case ErrorKind::SnapFailed:
        case ErrorKind::DimensionOverflow:
        case ErrorKind::NotFoundWithinCap:
            return true;
        default:
            return false;
    }
}

}  // namespace cocycle_lab
