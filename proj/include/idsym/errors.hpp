#pragma once

#include <stdexcept>
#include <string>

namespace idsym {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct NotPositive : Error {
    using Error::Error;
};
struct NotUnitary : Error {
    using Error::Error;
};
struct NotIdempotent : Error {
    using Error::Error;
};
struct NotSymmetry : Error {
    using Error::Error;
};
struct NearSingular : Error {
    using Error::Error;
};
struct InconsistentRank : Error {
    using Error::Error;
};
struct CompletionImpossible : Error {
    using Error::Error;
};
struct NotExists : Error {
    using Error::Error;
};
struct BadParam : Error {
    using Error::Error;
};
struct NotApplicable : Error {
    using Error::Error;
};
struct NotMember : Error {
    using Error::Error;
};

/// A constructed value failed its own postcondition check. Indicates either
/// corrupted input that slipped past validation or tolerances set too tight.
struct CertificationFailed : Error {
    using Error::Error;
};

/// Malformed matrix file; the message carries the offending field path.
struct SchemaError : Error {
    using Error::Error;
};

}  // namespace idsym
