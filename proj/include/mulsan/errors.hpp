#pragma once

#include <stdexcept>
#include <string>

namespace mulsan {

// Root of the library's exception hierarchy. UsageError covers malformed
// inputs and contract violations a caller can fix; CryptoError covers
// failures of the cryptographic operations themselves.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : Error {
    using Error::Error;
};

struct CryptoError : Error {
    using Error::Error;
};

// --- usage / input errors ---------------------------------------------------

struct DimensionMismatch : UsageError {
    using UsageError::UsageError;
};

struct CountMismatch : UsageError {
    using UsageError::UsageError;
};

struct ParseError : UsageError {
    using UsageError::UsageError;
};

struct SchemaViolation : UsageError {
    using UsageError::UsageError;
};

struct UnknownField : UsageError {
    using UsageError::UsageError;
};

struct DanglingSanitizeEvent : UsageError {
    using UsageError::UsageError;
};

struct NothingPending : UsageError {
    using UsageError::UsageError;
};

struct UnknownRecord : UsageError {
    using UsageError::UsageError;
};

// --- crypto errors ----------------------------------------------------------

struct ZeroInverse : CryptoError {
    using CryptoError::CryptoError;
};

struct EntropyFailure : CryptoError {
    using CryptoError::CryptoError;
};

struct SamplingExhausted : CryptoError {
    using CryptoError::CryptoError;
};

struct InversionExhausted : CryptoError {
    using CryptoError::CryptoError;
};

struct NotAdmissible : CryptoError {
    using CryptoError::CryptoError;
};

// The bottom output of sanitization: the carried fixed-part signature does
// not verify under the signer's public key.
struct InvalidFixedSignature : CryptoError {
    using CryptoError::CryptoError;
};

struct PreconditionViolated : CryptoError {
    using CryptoError::CryptoError;
};

} // namespace mulsan
